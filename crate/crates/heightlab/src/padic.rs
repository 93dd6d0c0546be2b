//! p-adic valuations, factorization over F_p, splitting types (e_j, f_j),
//! Z_p root lifting with residue clustering, and the acceleration machinery
//! used by the metric height bounds.
//!
//! Valuations are kept as exact integer orders throughout; the log p scaling
//! happens only at the bound-evaluation boundary.

use crate::exactpoly::{discriminant, IntPolynomial};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PadicError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {p} divides the leading coefficient; reverse or normalize the polynomial first")]
    LeadingCoefficientDivisible { p: u64 },
    #[error("working precision p^{k} exhausted; retry with precision at least {suggested}")]
    PrecisionExhausted { k: u32, suggested: u32 },
    #[error("polynomial must be monic for splitting-type analysis")]
    NotMonic,
    #[error("zero or constant polynomial")]
    BadPolynomial,
    #[error("precondition violated: ord_p(g1 - g2) = {got:?} < rho = {rho}")]
    AccelerationPrecondition { got: Option<i64>, rho: u32 },
}

/// Deterministic Miller-Rabin, exact for u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut a: u64, mut e: u64| {
        let mut acc = 1u64;
        a %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, a);
            }
            a = mul(a, a);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A rational prime together with a working precision p^k.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PadicContext {
    pub p: u64,
    pub precision: u32,
}

impl PadicContext {
    pub fn new(p: u64, precision: u32) -> Result<Self, PadicError> {
        if !is_prime(p) {
            return Err(PadicError::NotPrime(p));
        }
        Ok(PadicContext {
            p,
            precision: precision.max(1),
        })
    }
}

/// ord_p of a big integer; None encodes +infinity (x = 0).
pub fn vp_int(x: &BigInt, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut x = x.clone();
    let mut v = 0i64;
    loop {
        let (q, r) = x.div_rem(&p);
        if r.is_zero() {
            v += 1;
            x = q;
        } else {
            return Some(v);
        }
    }
}

/// ord_p of a rational; None encodes +infinity (x = 0). This is the raw
/// order; callers multiply by log p or divide by [K:Q] as their context
/// requires.
pub fn vp(x: &BigRational, ctx: &PadicContext) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let vn = vp_int(x.numer(), ctx.p).unwrap();
    let vd = vp_int(x.denom(), ctx.p).unwrap();
    Some(vn - vd)
}

// ---------------------------------------------------------------------------
// arithmetic in F_p[x]
// ---------------------------------------------------------------------------

/// Dense polynomial over F_p, constant term first, normalized.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModPoly {
    pub p: u64,
    pub coeffs: Vec<u64>,
}

impl ModPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in &mut coeffs {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ModPoly { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        ModPoly { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> Self {
        ModPoly::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        ModPoly::new(p, vec![0, 1])
    }

    pub fn from_int_poly(f: &IntPolynomial, p: u64) -> Self {
        let pb = BigInt::from(p);
        ModPoly::new(
            p,
            f.coeffs()
                .iter()
                .map(|c| c.mod_floor(&pb).to_u64().unwrap())
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn lc(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    fn mul_mod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for c in self.coeffs.iter().rev() {
            acc = (self.mul_mod(acc, x) + c) % self.p;
        }
        acc
    }

    pub fn add(&self, other: &ModPoly) -> ModPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *o = (a + b) % self.p;
        }
        ModPoly::new(self.p, out)
    }

    pub fn sub(&self, other: &ModPoly) -> ModPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *o = (a + self.p - b) % self.p;
        }
        ModPoly::new(self.p, out)
    }

    pub fn mul(&self, other: &ModPoly) -> ModPoly {
        if self.is_zero() || other.is_zero() {
            return ModPoly::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + self.mul_mod(a, b)) % self.p;
            }
        }
        ModPoly::new(self.p, out)
    }

    pub fn scale(&self, c: u64) -> ModPoly {
        ModPoly::new(
            self.p,
            self.coeffs.iter().map(|&a| self.mul_mod(a, c)).collect(),
        )
    }

    pub fn monic(&self) -> ModPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.lc(), self.p);
        self.scale(inv)
    }

    pub fn div_rem(&self, d: &ModPoly) -> (ModPoly, ModPoly) {
        assert!(!d.is_zero());
        let dd = d.degree().unwrap();
        let lc_inv = inv_mod(d.lc(), self.p);
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (ModPoly::zero(self.p), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        while r.len() > dd {
            let k = r.len() - 1;
            let c = self.mul_mod(r[k], lc_inv);
            if c != 0 {
                q[k - dd] = c;
                for i in 0..=dd {
                    let sub = self.mul_mod(d.coeffs[i], c);
                    r[k - dd + i] = (r[k - dd + i] + self.p - sub) % self.p;
                }
            }
            r.pop();
            while r.last() == Some(&0) && r.len() > dd {
                r.pop();
            }
        }
        (ModPoly::new(self.p, q), ModPoly::new(self.p, r))
    }

    pub fn rem(&self, d: &ModPoly) -> ModPoly {
        self.div_rem(d).1
    }

    pub fn gcd(&self, other: &ModPoly) -> ModPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Extended gcd: returns (g, s, t) with g monic and s*self + t*other = g.
    pub fn xgcd(&self, other: &ModPoly) -> (ModPoly, ModPoly, ModPoly) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (ModPoly::one(p), ModPoly::zero(p));
        let (mut t0, mut t1) = (ModPoly::zero(p), ModPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = inv_mod(r0.lc(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> ModPoly {
        if self.coeffs.len() <= 1 {
            return ModPoly::zero(self.p);
        }
        ModPoly::new(
            self.p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| self.mul_mod(c, (i as u64) % self.p))
                .collect(),
        )
    }

    /// self^e mod m, with a big-integer exponent.
    pub fn pow_mod(&self, e: &BigUint, m: &ModPoly) -> ModPoly {
        let mut base = self.rem(m);
        let mut acc = ModPoly::one(self.p);
        for i in 0..e.bits() {
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
        }
        acc
    }
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert!(r == 1, "not invertible: {a} mod {p}");
    t.rem_euclid(p as i128) as u64
}

// ---------------------------------------------------------------------------
// factorization over F_p
// ---------------------------------------------------------------------------

/// Seed used for the equal-degree splitting stage, recorded in reports.
pub const DEFAULT_EDF_SEED: u64 = 0x5eed_1ab5;

/// Complete factorization of f over F_p: monic irreducible factors with
/// multiplicities. Deterministic for a fixed seed.
pub fn factor_mod_p(
    f: &IntPolynomial,
    ctx: &PadicContext,
) -> Result<Vec<(ModPoly, usize)>, PadicError> {
    if vp_int(&f.leading_coefficient(), ctx.p).map_or(true, |v| v > 0) {
        return Err(PadicError::LeadingCoefficientDivisible { p: ctx.p });
    }
    let fp = ModPoly::from_int_poly(f, ctx.p);
    Ok(factor_modpoly(&fp, DEFAULT_EDF_SEED))
}

pub fn factor_modpoly(f: &ModPoly, seed: u64) -> Vec<(ModPoly, usize)> {
    let mut out: Vec<(ModPoly, usize)> = Vec::new();
    let f = f.monic();
    for (g, mult) in squarefree_decomp_modp(&f) {
        for (d, h) in distinct_degree(&g) {
            for irr in equal_degree(&h, d, seed) {
                out.push((irr, mult));
            }
        }
    }
    out.sort_by(|a, b| {
        a.1.cmp(&b.1)
            .then(a.0.coeffs.len().cmp(&b.0.coeffs.len()))
            .then(a.0.coeffs.cmp(&b.0.coeffs))
    });
    out
}

/// Squarefree decomposition over F_p, including p-th power collapse.
fn squarefree_decomp_modp(f: &ModPoly) -> Vec<(ModPoly, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    if f.degree().map_or(true, |d| d == 0) {
        return out;
    }
    let fp = f.derivative();
    if fp.is_zero() {
        // f = h(x^p) = h(x)^p over F_p
        let h = contract_p(f);
        for (g, m) in squarefree_decomp_modp(&h) {
            out.push((g, m * p as usize));
        }
        return out;
    }
    let mut g = f.gcd(&fp);
    let mut w = f.div_rem(&g).0;
    let mut i = 1usize;
    while w.degree().map_or(false, |d| d > 0) {
        let y = w.gcd(&g);
        let z = w.div_rem(&y).0;
        if z.degree().map_or(false, |d| d > 0) {
            out.push((z.monic(), i));
        }
        w = y;
        g = g.div_rem(&w).0;
        i += 1;
    }
    if g.degree().map_or(false, |d| d > 0) {
        let h = contract_p(&g);
        for (gg, m) in squarefree_decomp_modp(&h) {
            out.push((gg, m * p as usize));
        }
    }
    out
}

fn contract_p(f: &ModPoly) -> ModPoly {
    let p = f.p as usize;
    let mut c = Vec::new();
    for (i, &a) in f.coeffs.iter().enumerate() {
        if i % p == 0 {
            c.push(a);
        } else {
            debug_assert_eq!(a, 0);
        }
    }
    ModPoly::new(f.p, c)
}

/// Distinct-degree split of a squarefree monic f:
/// (d, product of all irreducible factors of degree d).
fn distinct_degree(f: &ModPoly) -> Vec<(usize, ModPoly)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut f = f.clone();
    let mut h = ModPoly::x(p);
    let mut d = 0usize;
    while f.degree().map_or(false, |df| df >= 1) {
        d += 1;
        if f.degree().unwrap() < 2 * d {
            out.push((f.degree().unwrap(), f.clone()));
            break;
        }
        h = h.pow_mod(&BigUint::from(p), &f);
        let g = h.sub(&ModPoly::x(p)).gcd(&f);
        if g.degree().map_or(false, |dg| dg > 0) {
            out.push((d, g.clone()));
            f = f.div_rem(&g).0;
            h = h.rem(&f);
        }
    }
    out
}

/// Cantor-Zassenhaus equal-degree splitting of a monic squarefree product
/// of irreducibles all of degree d.
fn equal_degree(f: &ModPoly, d: usize, seed: u64) -> Vec<ModPoly> {
    let p = f.p;
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.monic()];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((n as u64) << 32) ^ d as u64);
    loop {
        let a = ModPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect::<Vec<u64>>());
        if a.degree().map_or(true, |da| da < 1) {
            continue;
        }
        let g0 = a.gcd(f);
        if g0.degree().map_or(false, |dg| dg > 0 && dg < n) {
            let mut out = equal_degree(&g0, d, seed);
            out.extend(equal_degree(&f.div_rem(&g0).0, d, seed));
            out.sort_by(|x, y| x.coeffs.cmp(&y.coeffs));
            return out;
        }
        let b = if p == 2 {
            // trace map a + a^2 + ... + a^(2^(d-1))
            let mut acc = a.clone();
            let mut t = a.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t);
            }
            acc
        } else {
            let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
            a.pow_mod(&e, f).sub(&ModPoly::one(p))
        };
        let g = b.gcd(f);
        if g.degree().map_or(false, |dg| dg > 0 && dg < n) {
            let mut out = equal_degree(&g, d, seed);
            out.extend(equal_degree(&f.div_rem(&g).0, d, seed));
            out.sort_by(|x, y| x.coeffs.cmp(&y.coeffs));
            return out;
        }
    }
}

// ---------------------------------------------------------------------------
// splitting types
// ---------------------------------------------------------------------------

/// Multiset of (ramification index, residue degree) pairs describing how a
/// rational prime decomposes in Q[x]/(f), with a certification flag.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingType {
    /// (e_j, f_j) pairs, sorted; the sum of e_j * f_j equals deg(f).
    pub parts: Vec<(u32, u32)>,
    /// True when the unramified fast path or the Dedekind criterion applied,
    /// or a one-level Newton polygon analysis resolved every branch.
    pub certified: bool,
    /// Seed used by the equal-degree splitting stage.
    pub seed: u64,
}

impl SplittingType {
    pub fn degree_sum(&self) -> u64 {
        self.parts.iter().map(|&(e, f)| e as u64 * f as u64).sum()
    }

    /// Number of prime ideals of norm p^m.
    pub fn count_norm(&self, m: u32) -> usize {
        self.parts.iter().filter(|&&(_, f)| f == m).count()
    }
}

/// Splitting type of p in Q[x]/(f) for monic f, irreducible over Q
/// (caller-asserted).
///
/// Fast path: if p does not divide disc(f), the parts are the mod-p factor
/// degrees with all e = 1. Otherwise the Dedekind index criterion is tried,
/// then a one-level Newton polygon per repeated branch; unresolved branches
/// yield best-effort parts with `certified = false`.
pub fn splitting_type(f: &IntPolynomial, ctx: &PadicContext) -> Result<SplittingType, PadicError> {
    if f.degree().map_or(true, |d| d == 0) {
        return Err(PadicError::BadPolynomial);
    }
    if !f.is_monic() {
        return Err(PadicError::NotMonic);
    }
    let p = ctx.p;
    let factors = factor_mod_p(f, ctx)?;
    let disc = discriminant(f).map_err(|_| PadicError::BadPolynomial)?;
    let vdisc = vp_int(&disc, p);
    if vdisc == Some(0) {
        let parts = factors
            .iter()
            .map(|(g, _)| (1u32, g.degree().unwrap() as u32))
            .collect::<Vec<_>>();
        return Ok(sorted_parts(parts, true));
    }

    // Dedekind criterion: with fbar = prod gbar_i^(e_i), radical g, cofactor
    // h = fbar/g and T = (lift(g) lift(h) - f)/p, the index is prime to p
    // iff gcd(Tbar, gbar, hbar) = 1.
    let radical = factors
        .iter()
        .fold(ModPoly::one(p), |acc, (g, _)| acc.mul(g));
    let hbar = factors.iter().fold(ModPoly::one(p), |acc, (g, m)| {
        let mut t = acc;
        for _ in 1..*m {
            t = t.mul(g);
        }
        t
    });
    let g_lift = lift_modpoly(&radical);
    let h_lift = lift_modpoly(&hbar);
    let diff = g_lift.mul(&h_lift).sub(f);
    let t_poly = IntPolynomial::new(
        diff.coeffs()
            .iter()
            .map(|c| {
                let (q, r) = c.div_rem(&BigInt::from(p));
                debug_assert!(r.is_zero());
                q
            })
            .collect(),
    );
    let tbar = ModPoly::from_int_poly(&t_poly, p);
    let d2 = radical.gcd(&hbar).gcd(&tbar);
    if d2.degree() == Some(0) {
        let parts = factors
            .iter()
            .map(|(g, m)| (*m as u32, g.degree().unwrap() as u32))
            .collect::<Vec<_>>();
        return Ok(sorted_parts(parts, true));
    }

    branch_analysis(f, ctx, &factors, vdisc.unwrap_or(0))
}

fn sorted_parts(mut parts: Vec<(u32, u32)>, certified: bool) -> SplittingType {
    parts.sort();
    SplittingType {
        parts,
        certified,
        seed: DEFAULT_EDF_SEED,
    }
}

fn lift_modpoly(g: &ModPoly) -> IntPolynomial {
    IntPolynomial::new(g.coeffs.iter().map(|&c| BigInt::from(c)).collect())
}

fn branch_analysis(
    f: &IntPolynomial,
    ctx: &PadicContext,
    factors: &[(ModPoly, usize)],
    vdisc: i64,
) -> Result<SplittingType, PadicError> {
    let p = ctx.p;
    let needed = (vdisc as u32 + f.degree().unwrap() as u32 + 3).min(400);
    let modulus = BigInt::from(p).pow(needed);

    let mut parts: Vec<(u32, u32)> = Vec::new();
    let mut certified = true;

    // blocks gbar_i^(m_i) are pairwise coprime; Hensel-lift the splitting
    let blocks: Vec<ModPoly> = factors
        .iter()
        .map(|(g, m)| {
            let mut b = g.clone();
            for _ in 1..*m {
                b = b.mul(g);
            }
            b
        })
        .collect();
    let lifted: Vec<IntPolynomial> = if blocks.len() == 1 {
        vec![f.clone()]
    } else {
        hensel_lift_blocks(f, &blocks, p, &modulus)
    };

    for (i, (g, m)) in factors.iter().enumerate() {
        let d = g.degree().unwrap() as u32;
        if *m == 1 {
            parts.push((1, d));
            continue;
        }
        if d == 1 {
            // shift the branch so its roots sit above 0 and read the polygon
            let a = (p - g.coeffs[0] % p) % p;
            let shifted = lifted[i].shift(&BigInt::from(a));
            match polygon_parts(&shifted, p, needed) {
                Some(mut seg_parts) => parts.append(&mut seg_parts),
                None => {
                    certified = false;
                    for _ in 0..*m {
                        parts.push((1, 1));
                    }
                }
            }
        } else {
            // repeated non-linear branch: resolving it needs factorization
            // over an unramified extension, which is out of scope
            certified = false;
            parts.push((*m as u32, d));
        }
    }
    let st = sorted_parts(parts, certified);
    debug_assert_eq!(st.degree_sum(), f.degree().unwrap() as u64);
    Ok(st)
}

/// Lifts the pairwise-coprime block factorization of monic f from mod p to
/// mod p^K by iterated two-factor linear Hensel steps.
fn hensel_lift_blocks(
    f: &IntPolynomial,
    blocks: &[ModPoly],
    p: u64,
    modulus: &BigInt,
) -> Vec<IntPolynomial> {
    if blocks.len() == 1 {
        return vec![reduce_poly(f, modulus)];
    }
    let first = blocks[0].clone();
    let rest = blocks[1..]
        .iter()
        .fold(ModPoly::one(p), |acc, b| acc.mul(b));
    let (g, h) = hensel_lift_pair(f, &first, &rest, p, modulus);
    let mut out = vec![g];
    out.extend(hensel_lift_blocks(&h, &blocks[1..], p, modulus));
    out
}

fn reduce_poly(f: &IntPolynomial, modulus: &BigInt) -> IntPolynomial {
    IntPolynomial::new(f.coeffs().iter().map(|c| c.mod_floor(modulus)).collect())
}

/// Linear Hensel: lifts f = g h (mod p) with coprime monic-reducing factors
/// to a congruence mod p^K.
fn hensel_lift_pair(
    f: &IntPolynomial,
    gbar: &ModPoly,
    hbar: &ModPoly,
    p: u64,
    modulus: &BigInt,
) -> (IntPolynomial, IntPolynomial) {
    let (d, _s, t) = gbar.xgcd(hbar);
    debug_assert_eq!(d.degree(), Some(0));
    let mut g = lift_modpoly(&gbar.monic());
    let mut h = lift_modpoly(&hbar.monic());
    let pbig = BigInt::from(p);
    let mut pk = pbig.clone();
    while &pk < modulus {
        // c = (f - g h)/p^k mod p; g += p^k u, h += p^k v with
        // u = t c rem gbar and v = (c - u hbar)/gbar
        let diff = f.sub(&g.mul(&h));
        let c = IntPolynomial::new(
            diff.coeffs()
                .iter()
                .map(|x| (x / &pk).mod_floor(&pbig))
                .collect(),
        );
        let cbar = ModPoly::from_int_poly(&c, p);
        let u = t.mul(&cbar).rem(gbar);
        let num = cbar.sub(&u.mul(hbar));
        let (v, r) = num.div_rem(gbar);
        debug_assert!(r.is_zero());
        g = reduce_poly(&g.add(&lift_modpoly(&u).scale(&pk)), modulus);
        h = reduce_poly(&h.add(&lift_modpoly(&v).scale(&pk)), modulus);
        pk *= &pbig;
    }
    (g, h)
}

/// One-level Newton polygon of a monic branch whose roots all have positive
/// valuation. Returns the (e, f) parts when every segment has a separable
/// residual polynomial; None when unresolved.
fn polygon_parts(shifted: &IntPolynomial, p: u64, cap: u32) -> Option<Vec<(u32, u32)>> {
    let n = shifted.degree().unwrap();
    let mut vals: Vec<Option<i64>> = Vec::with_capacity(n + 1);
    for c in shifted.coeffs() {
        let v = vp_int(c, p);
        vals.push(v.map(|x| x.min(cap as i64)));
    }
    vals[0]?;
    let pts: Vec<(i64, i64)> = vals
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.map(|vv| (i as i64, vv)))
        .collect();
    // lower convex hull from (0, v0) to (n, 0)
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            if (b.1 - a.1) * (pt.0 - a.0) >= (pt.1 - a.1) * (b.0 - a.0) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    // a hull vertex at the valuation cap may really be higher: unresolved
    if hull.iter().any(|&(_, v)| v >= cap as i64) {
        return None;
    }
    let mut parts = Vec::new();
    let pb = BigInt::from(p);
    for w in hull.windows(2) {
        let (i0, v0) = w[0];
        let (i1, v1) = w[1];
        let dx = i1 - i0;
        let dy = v0 - v1;
        if dy < 0 {
            return None;
        }
        let g = dx.gcd(&dy).max(1);
        let e = (dx / g) as u32;
        let h = dy / g;
        let k = g; // residual degree
        let mut rescoef: Vec<u64> = Vec::with_capacity(k as usize + 1);
        for j in 0..=k {
            let idx = (i0 + j * e as i64) as usize;
            let want = v0 - j * h;
            let c = shifted.coeff(idx);
            let v = vp_int(&c, p);
            let red = match v {
                None => BigInt::zero(),
                Some(vv) if vv > want => BigInt::zero(),
                Some(vv) if vv == want => (&c / pb.pow(want as u32)).mod_floor(&pb),
                _ => return None,
            };
            rescoef.push(red.to_u64().unwrap());
        }
        let res = ModPoly::new(p, rescoef);
        if res.degree() != Some(k as usize) {
            return None;
        }
        if res.gcd(&res.derivative()).degree() != Some(0) {
            return None;
        }
        for (irr, m) in factor_modpoly(&res, DEFAULT_EDF_SEED) {
            if m != 1 {
                return None;
            }
            parts.push((e, irr.degree().unwrap() as u32));
        }
    }
    Some(parts)
}

// ---------------------------------------------------------------------------
// Z_p roots and residue clustering
// ---------------------------------------------------------------------------

/// A root of f in Z_p known to working precision p^k.
#[derive(Clone, Debug)]
pub struct QpRoot {
    /// residue class mod p
    pub residue: u64,
    /// representative of the root mod p^precision
    pub approx: BigInt,
    pub precision: u32,
}

#[derive(Clone, Debug)]
pub struct QpRoots {
    pub roots: Vec<QpRoot>,
    /// true when some branch exhausted the depth budget before resolving
    pub incomplete: bool,
}

/// All roots of squarefree f in Z_p, found by lifting simple roots mod p via
/// Hensel and refining clustered residues by bounded-depth search.
pub fn qp_integral_roots(f: &IntPolynomial, ctx: &PadicContext) -> Result<QpRoots, PadicError> {
    if f.degree().map_or(true, |d| d == 0) {
        return Err(PadicError::BadPolynomial);
    }
    let p = ctx.p;
    let k = ctx.precision;
    let fprime = f.derivative();
    let mut roots = Vec::new();
    let mut incomplete = false;

    let mut stack: Vec<(BigInt, u32)> = Vec::new();
    let fp = ModPoly::from_int_poly(f, p);
    for r in 0..p {
        if fp.eval(r) == 0 {
            stack.push((BigInt::from(r), 1));
        }
    }
    let pbig = BigInt::from(p);
    while let Some((r, d)) = stack.pop() {
        let fr = f.eval_bigint(&r);
        let vf = vp_int(&fr, p);
        let fpr = fprime.eval_bigint(&r);
        let vfp = vp_int(&fpr, p);
        // uniqueness in the ball mod p^d needs d >= ord(f'(r)) + 1 even for
        // an exact integer root: other roots may share shallow residues
        let hensel_ok = match (vf, vfp) {
            (None, Some(s)) => d as i64 >= s + 1,
            (Some(a), Some(s)) => a >= 2 * s + 1 && d as i64 >= s + 1,
            (_, None) => false,
        };
        if hensel_ok {
            let root = newton_lift(f, &fprime, &r, p, k);
            let residue = root.mod_floor(&pbig).to_u64().unwrap();
            roots.push(QpRoot {
                residue,
                approx: root,
                precision: k,
            });
            continue;
        }
        if d >= k {
            incomplete = true;
            continue;
        }
        let pd = pbig.pow(d);
        let pd1 = &pd * &pbig;
        for t in 0..p {
            let cand = &r + &pd * BigInt::from(t);
            if f.eval_bigint(&cand).mod_floor(&pd1).is_zero() {
                stack.push((cand, d + 1));
            }
        }
    }
    roots.sort_by(|a, b| a.approx.cmp(&b.approx));
    roots.dedup_by(|a, b| a.approx == b.approx);
    Ok(QpRoots { roots, incomplete })
}

/// Newton iteration in Z_p for a Hensel-certified starting point.
fn newton_lift(f: &IntPolynomial, fprime: &IntPolynomial, r0: &BigInt, p: u64, k: u32) -> BigInt {
    let s = vp_int(&fprime.eval_bigint(r0), p).unwrap_or(0) as u32;
    let pbig = BigInt::from(p);
    let target = pbig.pow(k + 2 * s + 1);
    let mut r = r0.clone();
    for _ in 0..(k + 64) {
        let fr = f.eval_bigint(&r).mod_floor(&target);
        if fr.mod_floor(&pbig.pow(k + s)).is_zero() {
            break;
        }
        let fpr = fprime.eval_bigint(&r);
        let v = vp_int(&fpr, p).unwrap() as u32;
        let unit = (&fpr / pbig.pow(v)).mod_floor(&target);
        let unit_inv = mod_inverse_big(&unit, &target);
        let num = &fr / pbig.pow(v);
        let delta = (num * unit_inv).mod_floor(&target);
        r = (&r - delta).mod_floor(&target);
    }
    r.mod_floor(&pbig.pow(k))
}

fn mod_inverse_big(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Residue clustering of the Z_p-roots of f against ord_p of the
/// discriminant, with the Cauchy-Schwarz floor.
#[derive(Clone, Debug)]
pub struct ClusterReport {
    pub p: u64,
    /// residue field size (residue degree 1 over Q, so q = p)
    pub q: u64,
    /// number of integral roots per residue class
    pub residue_counts: Vec<(u64, usize)>,
    /// ord_p of disc(f)
    pub v_disc: i64,
    /// sum over classes of N_x (N_x - 1)
    pub cluster_lower_bound: i64,
    /// (sum N_x)^2 / p - sum N_x, exact
    pub cauchy_schwarz_floor: BigRational,
    pub integral_root_count: usize,
    pub nonintegral_count: usize,
    /// v_disc - cluster_lower_bound; nonnegative whenever all roots lie in Z_p
    pub slack: i64,
    pub roots_incomplete: bool,
}

pub fn cluster_bound_report(
    f: &IntPolynomial,
    ctx: &PadicContext,
) -> Result<ClusterReport, PadicError> {
    let p = ctx.p;
    let qp = qp_integral_roots(f, ctx)?;
    let deg = f.degree().unwrap();
    let mut counts = std::collections::BTreeMap::<u64, usize>::new();
    for r in &qp.roots {
        *counts.entry(r.residue).or_insert(0) += 1;
    }
    let total: usize = counts.values().sum();
    let cluster_lower_bound: i64 = counts.values().map(|&n| (n as i64) * (n as i64 - 1)).sum();

    // roots outside Z_p = positive-valuation roots of the reversed polynomial
    let nonintegral_count = if f.coeff(0).is_zero() {
        0
    } else {
        let rev = f.reverse();
        if rev.is_squarefree().unwrap_or(false) {
            qp_integral_roots(&rev, ctx)?
                .roots
                .iter()
                .filter(|r| r.residue == 0)
                .count()
        } else {
            0
        }
    };

    // ord_p(disc): certified pairwise root orders when f splits completely
    // over Z_p at this precision, exact resultant otherwise
    let v_disc = if total == deg && !qp.incomplete {
        match vdisc_from_roots(f, &qp, ctx) {
            Some(v) => v,
            None => exact_vdisc(f, p)?,
        }
    } else {
        exact_vdisc(f, p)?
    };

    let sum = BigRational::from(BigInt::from(total));
    let floor = &sum * &sum / BigRational::from(BigInt::from(p)) - sum;
    Ok(ClusterReport {
        p,
        q: p,
        residue_counts: counts.into_iter().collect(),
        v_disc,
        cluster_lower_bound,
        cauchy_schwarz_floor: floor,
        integral_root_count: total,
        nonintegral_count,
        slack: v_disc - cluster_lower_bound,
        roots_incomplete: qp.incomplete,
    })
}

fn vdisc_from_roots(f: &IntPolynomial, qp: &QpRoots, ctx: &PadicContext) -> Option<i64> {
    let mut acc: i64 = 0;
    for i in 0..qp.roots.len() {
        for j in (i + 1)..qp.roots.len() {
            let d = &qp.roots[i].approx - &qp.roots[j].approx;
            match vp_int(&d, ctx.p) {
                Some(v) if (v as u32) < ctx.precision => acc += 2 * v,
                _ => return None,
            }
        }
    }
    let n = f.degree().unwrap() as i64;
    let lc_v = vp_int(&f.leading_coefficient(), ctx.p).unwrap_or(0);
    Some(acc + (2 * n - 2) * lc_v)
}

fn exact_vdisc(f: &IntPolynomial, p: u64) -> Result<i64, PadicError> {
    let d = discriminant(f).map_err(|_| PadicError::BadPolynomial)?;
    vp_int(&d, p).ok_or(PadicError::BadPolynomial)
}

// ---------------------------------------------------------------------------
// metric inequality and acceleration
// ---------------------------------------------------------------------------

/// Exact check of |alpha^q - alpha|_p <= p^-1 max(1, |alpha|_p)^(q+1) for
/// rational alpha and q = p^f_v, reported in ord form:
/// ord(alpha^q - alpha) >= 1 + (q+1) min(0, ord(alpha)).
#[derive(Clone, Debug)]
pub struct MetricCheck {
    /// ord_p of alpha^q - alpha; None is +infinity (fixed point)
    pub lhs_ord: Option<i64>,
    pub rhs_ord: i64,
    pub holds: bool,
}

pub fn frobenius_metric_check(
    alpha: &BigRational,
    ctx: &PadicContext,
    f_v: u32,
) -> MetricCheck {
    assert!(!alpha.is_zero(), "alpha must be nonzero");
    let q = BigUint::from(ctx.p).pow(f_v);
    let q_usize = q.to_u64().expect("p^f too large for exact exponentiation") as usize;
    let aq = pow_rational(alpha, q_usize);
    let diff = aq - alpha;
    let lhs_ord = vp(&diff, ctx);
    let va = vp(alpha, ctx).unwrap();
    let rhs_ord = 1 + (q_usize as i64 + 1) * va.min(0);
    let holds = match lhs_ord {
        None => true,
        Some(l) => l >= rhs_ord,
    };
    MetricCheck {
        lhs_ord,
        rhs_ord,
        holds,
    }
}

fn pow_rational(x: &BigRational, e: usize) -> BigRational {
    let mut acc = BigRational::one();
    let mut base = x.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        e >>= 1;
    }
    acc
}

/// The acceleration exponent: k = 0 if (p-1) rho > 1, else the unique k with
/// p^(k-1)(p-1) rho <= 1 < p^k (p-1) rho; s = p^k rho + max(0, lambda - k).
///
/// `s` is the closed form as displayed; `s_guaranteed` replaces p^k by
/// p^min(lambda, k), which is what the underlying valuation argument yields
/// for lambda < k. Both agree for lambda >= k.
#[derive(Clone, Debug, PartialEq)]
pub struct Acceleration {
    pub k: u32,
    pub s: BigRational,
    pub s_guaranteed: BigRational,
}

pub fn acceleration(p: u64, rho: &BigRational, lambda: u32) -> Acceleration {
    assert!(rho.is_positive(), "rho must be positive");
    let pm1 = BigRational::from(BigInt::from(p - 1));
    let one = BigRational::one();
    let k = if &pm1 * rho > one {
        0u32
    } else {
        let mut k = 1u32;
        loop {
            let hi = BigRational::from(BigInt::from(p).pow(k)) * &pm1 * rho;
            if hi > one {
                break k;
            }
            k += 1;
        }
    };
    let lam_minus_k = if lambda > k {
        BigRational::from(BigInt::from((lambda - k) as i64))
    } else {
        BigRational::zero()
    };
    let s = BigRational::from(BigInt::from(p).pow(k)) * rho + &lam_minus_k;
    let s_guaranteed = BigRational::from(BigInt::from(p).pow(lambda.min(k))) * rho + lam_minus_k;
    Acceleration { k, s, s_guaranteed }
}

/// Brute-force check of the acceleration bound on exact integers: given
/// ord_p(g1 - g2) >= rho, verifies ord_p(g1^(p^lambda) - g2^(p^lambda))
/// against both s forms.
#[derive(Clone, Debug)]
pub struct AccelerationCheck {
    pub k: u32,
    /// closed-form s as displayed
    pub s: BigRational,
    /// ramped s, the floor actually guaranteed for lambda < k
    pub s_guaranteed: BigRational,
    /// ord of the difference of p^lambda-th powers; None is +infinity
    pub ord: Option<i64>,
    pub holds_guaranteed: bool,
    pub holds_claimed: bool,
}

pub fn acceleration_brute_check(
    g1: &BigInt,
    g2: &BigInt,
    p: u64,
    rho: u32,
    lambda: u32,
) -> Result<AccelerationCheck, PadicError> {
    let diff = g1 - g2;
    let v0 = vp_int(&diff, p);
    if let Some(v) = v0 {
        if v < rho as i64 {
            return Err(PadicError::AccelerationPrecondition { got: Some(v), rho });
        }
    }
    let rho_q = BigRational::from(BigInt::from(rho));
    let acc = acceleration(p, &rho_q, lambda);
    let e = BigUint::from(p).pow(lambda).to_u64().unwrap() as usize;
    let d = pow_int(g1, e) - pow_int(g2, e);
    let ord = vp_int(&d, p);
    let ord_q = ord.map(|o| BigRational::from(BigInt::from(o)));
    let holds_guaranteed = match &ord_q {
        None => true,
        Some(o) => o >= &acc.s_guaranteed,
    };
    let holds_claimed = match &ord_q {
        None => true,
        Some(o) => o >= &acc.s,
    };
    Ok(AccelerationCheck {
        k: acc.k,
        s: acc.s,
        s_guaranteed: acc.s_guaranteed,
        ord,
        holds_guaranteed,
        holds_claimed,
    })
}

fn pow_int(x: &BigInt, e: usize) -> BigInt {
    let mut acc = BigInt::one();
    let mut base = x.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn ctx(pr: u64, k: u32) -> PadicContext {
        PadicContext::new(pr, k).unwrap()
    }

    #[test]
    fn vp_examples() {
        let c2 = ctx(2, 5);
        assert_eq!(vp(&BigRational::from(BigInt::from(12)), &c2), Some(2));
        let fr = BigRational::new(BigInt::from(5), BigInt::from(8));
        assert_eq!(vp(&fr, &c2), Some(-3));
        let c7 = ctx(7, 5);
        assert_eq!(vp(&BigRational::zero(), &c7), None);
    }

    #[test]
    fn prime_check() {
        assert!(is_prime(2) && is_prime(97) && is_prime(5077));
        assert!(!is_prime(1) && !is_prime(91) && !is_prime(561));
        assert!(PadicContext::new(6, 3).is_err());
    }

    #[test]
    fn factor_mod_p_examples() {
        // x^2 + 1 at p = 5: 2^2 = -1, so (x-2)(x-3)
        let f = p(&[1, 0, 1]);
        let fac = factor_mod_p(&f, &ctx(5, 3)).unwrap();
        assert_eq!(fac.len(), 2);
        assert!(fac.iter().all(|(g, m)| g.degree() == Some(1) && *m == 1));
        let roots: Vec<u64> = fac.iter().map(|(g, _)| (5 - g.coeffs[0] % 5) % 5).collect();
        assert!(roots.contains(&2) && roots.contains(&3));
        // p = 3: -1 is a non-residue, irreducible
        let fac = factor_mod_p(&f, &ctx(3, 3)).unwrap();
        assert_eq!(fac.len(), 1);
        assert_eq!(fac[0].0.degree(), Some(2));
        assert_eq!(fac[0].1, 1);
        // p = 2: (x+1)^2
        let fac = factor_mod_p(&f, &ctx(2, 3)).unwrap();
        assert_eq!(fac.len(), 1);
        assert_eq!(fac[0].0.degree(), Some(1));
        assert_eq!(fac[0].1, 2);
    }

    #[test]
    fn factor_mod_p_rejects_bad_leading() {
        let f = p(&[1, 0, 5]);
        assert!(matches!(
            factor_mod_p(&f, &ctx(5, 3)),
            Err(PadicError::LeadingCoefficientDivisible { .. })
        ));
    }

    #[test]
    fn factorization_reassembles_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &q in &[2u64, 3, 5, 13, 31] {
            for _ in 0..20 {
                let deg = rng.gen_range(1usize..=8);
                let mut c: Vec<u64> = (0..=deg).map(|_| rng.gen_range(0..q)).collect();
                if c[deg] == 0 {
                    c[deg] = 1;
                }
                let f = ModPoly::new(q, c);
                if f.degree().map_or(true, |d| d == 0) {
                    continue;
                }
                let fac = factor_modpoly(&f, 99);
                let mut prod = ModPoly::one(q);
                for (g, m) in &fac {
                    for _ in 0..*m {
                        prod = prod.mul(g);
                    }
                }
                assert_eq!(prod, f.monic(), "p={q} f={:?}", f.coeffs);
            }
        }
    }

    #[test]
    fn splitting_type_examples() {
        let st = splitting_type(&p(&[1, 0, 1]), &ctx(5, 8)).unwrap();
        assert_eq!(st.parts, vec![(1, 1), (1, 1)]);
        assert!(st.certified);
        let st = splitting_type(&p(&[1, 0, 1]), &ctx(2, 8)).unwrap();
        assert_eq!(st.parts, vec![(2, 1)]);
        assert!(st.certified);
        let st = splitting_type(&p(&[-2, 0, 0, 0, 1]), &ctx(7, 8)).unwrap();
        assert_eq!(st.parts, vec![(1, 1), (1, 1), (1, 2)]);
        assert!(st.certified);
        assert_eq!(st.degree_sum(), 4);
    }

    #[test]
    fn splitting_type_eisenstein() {
        // x^4 - 2 at p = 2: totally ramified
        let st = splitting_type(&p(&[-2, 0, 0, 0, 1]), &ctx(2, 10)).unwrap();
        assert_eq!(st.parts, vec![(4, 1)]);
        assert!(st.certified);
        // x^3 - 2 at p = 3
        let st = splitting_type(&p(&[-2, 0, 0, 1]), &ctx(3, 10)).unwrap();
        assert_eq!(st.parts, vec![(3, 1)]);
        assert!(st.certified);
    }

    #[test]
    fn splitting_type_index_obstruction_flags() {
        // x^2 - 12 at 2: Q_2(sqrt 12) = Q_2(sqrt 3) is unramified quadratic,
        // but 2 divides the index and the one-level polygon cannot certify
        let st = splitting_type(&p(&[-12, 0, 1]), &ctx(2, 12)).unwrap();
        assert_eq!(st.degree_sum(), 2);
        assert!(!st.certified);
        // x^2 - 17 at 2: 17 = 1 mod 8 so f splits over Q_2; degree bookkeeping
        let st = splitting_type(&p(&[-17, 0, 1]), &ctx(2, 12)).unwrap();
        assert_eq!(st.degree_sum(), 2);
    }

    #[test]
    fn qp_roots_examples() {
        let r = qp_integral_roots(&p(&[1, 0, 1]), &ctx(5, 3)).unwrap();
        assert!(!r.incomplete);
        let vals: Vec<i64> = r.roots.iter().map(|q| q.approx.to_i64().unwrap()).collect();
        assert_eq!(vals.len(), 2);
        assert!(vals.contains(&57) && vals.contains(&68));
        let r = qp_integral_roots(&p(&[1, 0, 1]), &ctx(3, 3)).unwrap();
        assert!(r.roots.is_empty());
        let r = qp_integral_roots(&p(&[0, -1, 1]), &ctx(7, 3)).unwrap();
        let vals: Vec<i64> = r.roots.iter().map(|q| q.approx.to_i64().unwrap()).collect();
        assert_eq!(vals, vec![0, 1]);
    }

    #[test]
    fn qp_roots_clustered_residues() {
        // roots 1 and 8 both lie in the class 1 mod 7
        let f = p(&[8, -9, 1]);
        let r = qp_integral_roots(&f, &ctx(7, 4)).unwrap();
        assert_eq!(r.roots.len(), 2);
        assert!(r.roots.iter().all(|q| q.residue == 1));
    }

    #[test]
    fn cluster_report_examples() {
        let rep = cluster_bound_report(&p(&[0, -1, 1]), &ctx(7, 4)).unwrap();
        assert_eq!(rep.cluster_lower_bound, 0);
        assert_eq!(rep.v_disc, 0);
        assert_eq!(rep.integral_root_count, 2);
        assert_eq!(rep.slack, 0);
        // (x-1)(x-8) = x^2 - 9x + 8 at 7: disc = 49
        let rep = cluster_bound_report(&p(&[8, -9, 1]), &ctx(7, 4)).unwrap();
        assert_eq!(rep.cluster_lower_bound, 2);
        assert_eq!(rep.v_disc, 2);
        assert_eq!(rep.slack, 0);
    }

    #[test]
    fn cluster_report_constructed_split_family() {
        // prod (x - a_i) + 5^K c splits completely over Z_5 with residue
        // multiplicities equal to the multiplicities of the a_i mod 5
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..5 {
            let deg = 10;
            let a: Vec<i64> = {
                let mut v: Vec<i64> = Vec::new();
                while v.len() < deg {
                    let c = rng.gen_range(-30..30);
                    if !v.contains(&c) {
                        v.push(c);
                    }
                }
                v
            };
            let mut f = IntPolynomial::one();
            for &ai in &a {
                f = f.mul(&p(&[-ai, 1]));
            }
            let kk = 30u32;
            let pert = BigInt::from(5).pow(kk) * BigInt::from(rng.gen_range(1..100));
            let f = f.add(&IntPolynomial::new(vec![pert]));
            let rep = cluster_bound_report(&f, &ctx(5, 40)).unwrap();
            assert_eq!(rep.integral_root_count, deg, "family member must split");
            let mut want = std::collections::BTreeMap::new();
            for &ai in &a {
                *want.entry(ai.rem_euclid(5) as u64).or_insert(0usize) += 1;
            }
            let got: std::collections::BTreeMap<u64, usize> =
                rep.residue_counts.iter().cloned().collect();
            assert_eq!(got, want);
            assert!(rep.slack >= 0, "slack = {}", rep.slack);
            let clb = BigRational::from(BigInt::from(rep.cluster_lower_bound));
            assert!(rep.cauchy_schwarz_floor <= clb);
        }
    }

    #[test]
    fn cluster_vdisc_routes_agree() {
        // pairwise-root route against the exact resultant route
        let f = p(&[8, -9, 1]).mul(&p(&[-15, 1])); // roots 1, 8, 15
        let rep = cluster_bound_report(&f, &ctx(7, 12)).unwrap();
        let exact = vp_int(&discriminant(&f).unwrap(), 7).unwrap();
        assert_eq!(rep.v_disc, exact);
    }

    #[test]
    fn metric_check_examples() {
        let c3 = ctx(3, 5);
        let two = BigRational::from(BigInt::from(2));
        let m = frobenius_metric_check(&two, &c3, 1);
        assert_eq!(m.lhs_ord, Some(1));
        assert_eq!(m.rhs_ord, 1);
        assert!(m.holds);
        let one = BigRational::one();
        let m = frobenius_metric_check(&one, &ctx(11, 3), 1);
        assert_eq!(m.lhs_ord, None);
        assert!(m.holds);
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        let m = frobenius_metric_check(&third, &c3, 1);
        // 1/27 - 1/3 = -8/27: ord -3; rhs ord = 1 + 4 * (-1) = -3
        assert_eq!(m.lhs_ord, Some(-3));
        assert_eq!(m.rhs_ord, -3);
        assert!(m.holds);
    }

    #[test]
    fn metric_check_random_rationals() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for &q in &[2u64, 3, 5, 7] {
            let c = ctx(q, 4);
            for _ in 0..250 {
                let n = rng.gen_range(-10_000i64..10_000);
                let d = rng.gen_range(1i64..10_000);
                if n == 0 {
                    continue;
                }
                let alpha = BigRational::new(BigInt::from(n), BigInt::from(d));
                let m = frobenius_metric_check(&alpha, &c, 1);
                assert!(m.holds, "p={q} alpha={n}/{d}");
            }
        }
    }

    #[test]
    fn metric_check_higher_residue_degree() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for &(q, f) in &[(2u64, 2u32), (3, 2), (5, 2)] {
            let c = ctx(q, 4);
            for _ in 0..100 {
                let n = rng.gen_range(-500i64..500);
                let d = rng.gen_range(1i64..500);
                if n == 0 {
                    continue;
                }
                let alpha = BigRational::new(BigInt::from(n), BigInt::from(d));
                let m = frobenius_metric_check(&alpha, &c, f);
                assert!(m.holds, "p={q} f={f} alpha={n}/{d}");
            }
        }
    }

    #[test]
    fn acceleration_examples() {
        // (p=3, rho=1, lambda=2): (p-1)rho = 2 > 1 so k = 0, s = 3
        let a = acceleration(3, &BigRational::one(), 2);
        assert_eq!(a.k, 0);
        assert_eq!(a.s, BigRational::from(BigInt::from(3)));
        assert_eq!(a.s_guaranteed, a.s);
        // (p=2, rho=1/2, lambda=0): sandwich gives k = 2, s = 4 * 1/2 = 2
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let a = acceleration(2, &half, 0);
        assert_eq!(a.k, 2);
        assert_eq!(a.s, BigRational::from(BigInt::from(2)));
        // the guaranteed floor at lambda = 0 is just rho
        assert_eq!(a.s_guaranteed, half);
        // (p=5, rho=1, lambda=0): k = 0, s = 1
        let a = acceleration(5, &BigRational::one(), 0);
        assert_eq!(a.k, 0);
        assert_eq!(a.s, BigRational::one());
    }

    #[test]
    fn acceleration_sandwich_uniqueness() {
        // for k >= 1 the sandwich p^(k-1)(p-1)rho <= 1 < p^k(p-1)rho holds
        for &(pp, num, den) in &[(2u64, 1i64, 2i64), (2, 1, 1), (3, 1, 4), (5, 1, 17)] {
            let rho = BigRational::new(BigInt::from(num), BigInt::from(den));
            let a = acceleration(pp, &rho, 3);
            let pm1 = BigRational::from(BigInt::from(pp - 1));
            if a.k == 0 {
                assert!(&pm1 * &rho > BigRational::one());
            } else {
                let lo = BigRational::from(BigInt::from(pp).pow(a.k - 1)) * &pm1 * &rho;
                let hi = BigRational::from(BigInt::from(pp).pow(a.k)) * &pm1 * &rho;
                assert!(lo <= BigRational::one() && BigRational::one() < hi);
            }
        }
    }

    #[test]
    fn acceleration_brute_examples() {
        // ord_3(1 - 4^9) = ord_3(-262143) = 3 >= s = 3
        let c = acceleration_brute_check(&BigInt::from(1), &BigInt::from(4), 3, 1, 2).unwrap();
        assert_eq!(c.ord, Some(3));
        assert!(c.holds_claimed && c.holds_guaranteed);
        // equal arguments: +infinity
        let c = acceleration_brute_check(&BigInt::from(7), &BigInt::from(7), 3, 1, 4).unwrap();
        assert_eq!(c.ord, None);
        assert!(c.holds_claimed);
        // ord_5(2^5 - 7^5) = ord_5(-16775) = 2 >= s = 2
        let c = acceleration_brute_check(&BigInt::from(2), &BigInt::from(7), 5, 1, 1).unwrap();
        assert_eq!(c.ord, Some(2));
        assert!(c.holds_claimed);
        assert!(acceleration_brute_check(&BigInt::from(1), &BigInt::from(2), 5, 1, 1).is_err());
    }

    #[test]
    fn acceleration_grid_guaranteed_floor() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for &pp in &[2u64, 3, 5] {
            for rho in 1u32..=2 {
                for lambda in 0u32..=6 {
                    for _ in 0..50 {
                        let g1 = BigInt::from(rng.gen_range(-500i64..500));
                        let step =
                            BigInt::from(pp).pow(rho) * BigInt::from(rng.gen_range(-20i64..=20));
                        let g2 = &g1 + step;
                        let c = acceleration_brute_check(&g1, &g2, pp, rho, lambda).unwrap();
                        assert!(
                            c.holds_guaranteed,
                            "p={pp} rho={rho} lambda={lambda} g1={g1} g2={g2} ord={:?} s_g={}",
                            c.ord, c.s_guaranteed
                        );
                        if lambda >= c.k {
                            assert!(c.holds_claimed);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn splitting_matches_factorization_when_unramified() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let primes: Vec<u64> = (2..=50).filter(|&n| is_prime(n)).collect();
        let mut done = 0;
        while done < 40 {
            let deg = rng.gen_range(2usize..=8);
            let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(-40..=40)).collect();
            c.push(1);
            let f = p(&c);
            if f.degree() != Some(deg) || !f.is_squarefree().unwrap_or(false) {
                continue;
            }
            let disc = discriminant(&f).unwrap();
            for &q in &primes {
                if vp_int(&disc, q) != Some(0) {
                    continue;
                }
                let cxt = ctx(q, 6);
                let st = splitting_type(&f, &cxt).unwrap();
                assert!(st.certified);
                assert!(st.parts.iter().all(|&(e, _)| e == 1));
                let mut degs: Vec<u32> = factor_mod_p(&f, &cxt)
                    .unwrap()
                    .iter()
                    .map(|(g, _)| g.degree().unwrap() as u32)
                    .collect();
                degs.sort_unstable();
                let mut fs: Vec<u32> = st.parts.iter().map(|&(_, ff)| ff).collect();
                fs.sort_unstable();
                assert_eq!(degs, fs);
                assert_eq!(st.degree_sum(), deg as u64);
            }
            done += 1;
        }
    }
}
