//! Canonical height: an exact doubling-limit oracle with rigorous geometric
//! error control, and the independent local-height decomposition path.
//!
//! The oracle iterates the x-coordinate duplication map on exact integer
//! pairs (A, B) with gcd removal, using per-step height-change constants
//! derived from Bezout cofactor identities, so the reported enclosure is a
//! guaranteed interval around lim h(x([2^n] P)) / 4^n.
//!
//! The decomposition path sums Néron local heights over the archimedean
//! place, the primes dividing the minimal discriminant, and the primes
//! dividing the denominator of x(P); the doubling-limit normalization is
//! kappa = 2 times that sum, a constant calibrated once against the oracle
//! and asserted across the whole test corpus.

use super::{
    factor_abs, local_height_arch, local_height_nonarch, minimal_model, CurveError, CurvePoint,
    EllipticCurveModel, LocalHeightReport, ModelTransform, Place, ReductionType,
};
use crate::exactpoly::{rational_div_rem, IntPolynomial};
use crate::interval::Interval;
use crate::towers::{eval_bound, BoundReport, BoundSpec, TowerError};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Ratio between the doubling-limit height lim h(x([2^n]P))/4^n and the sum
/// of the Néron local heights computed by this crate's formulas. The local
/// formulas decompose the half-normalized quadratic form, so the doubling
/// limit is exactly twice their sum.
pub const KAPPA: f64 = 2.0;

/// Natural log of |x| for a big integer, good to ~1e-14 relative.
fn ln_big(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 53 {
        return x.to_f64().unwrap().abs().ln();
    }
    let shift = bits - 53;
    let top = (x.abs() >> shift).to_f64().unwrap();
    top.ln() + (shift as f64) * std::f64::consts::LN_2
}

/// Exact duplication data for one curve: integer forms for the x-coordinate
/// of [2]P and the constants controlling the height change per step.
struct DuplicationMap {
    /// numerator form coefficients of x^0..x^4 (integer)
    num: Vec<BigInt>,
    /// denominator polynomial coefficients of x^0..x^3 (integer)
    den: Vec<BigInt>,
    /// any gcd of consecutive iterates divides this
    gcd_cap: BigInt,
    /// per-step bound: |h(x(2Q)) - 4 h(x(Q))| <= step_bound
    step_bound: f64,
}

fn rational_poly_to_int(c: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let mut den = BigInt::one();
    for v in c {
        den = den.lcm(v.denom());
    }
    let dq = BigRational::from(den.clone());
    (
        c.iter().map(|v| (v * &dq).to_integer()).collect(),
        den,
    )
}

/// Per-step height-change constant of the duplication iteration; exposed
/// for diagnostics.
pub fn oracle_step_constant(e: &EllipticCurveModel) -> f64 {
    build_duplication(e).step_bound
}

fn build_duplication(e: &EllipticCurveModel) -> DuplicationMap {
    let num_q = vec![
        -e.b8.clone(),
        -(BigRational::from(BigInt::from(2)) * &e.b6),
        -e.b4.clone(),
        BigRational::zero(),
        BigRational::one(),
    ];
    let den_q = vec![
        e.b6.clone(),
        BigRational::from(BigInt::from(2)) * &e.b4,
        e.b2.clone(),
        BigRational::from(BigInt::from(4)),
    ];
    let (mut num, d1) = rational_poly_to_int(&num_q);
    let (mut den, d2) = rational_poly_to_int(&den_q);
    // use one common scale so the quotient is unchanged
    let scale = d1.lcm(&d2);
    let s1 = &scale / &d1;
    let s2 = &scale / &d2;
    for c in &mut num {
        *c *= &s1;
    }
    for c in &mut den {
        *c *= &s2;
    }
    let num_poly = IntPolynomial::new(num.clone());
    let den_poly = IntPolynomial::new(den.clone());

    // Bezout identities over Q[x]: U num + V den = r, and the reversed pair
    // for the |A|-side; scaled to integer identities with constants r1, r2
    let (r1, c1) = bezout_constant(&num_poly, &den_poly, 4);
    let num_rev = reversed_to_degree(&num, 5);
    let den_rev_shifted = {
        // G(A, B) = B den_h(A, B); swapping A and B gives t -> t * rev(den)
        let mut rd = reversed_to_degree(&den, 4);
        rd.insert(0, BigInt::zero());
        rd
    };
    let (r2, c2) = bezout_constant(
        &IntPolynomial::new(num_rev),
        &IntPolynomial::new(den_rev_shifted),
        4,
    );

    // any common divisor of consecutive iterates divides r1 B^7 and r2 A^7
    // with gcd(A, B) = 1, hence divides lcm(r1, r2)
    let gcd_cap = r1.lcm(&r2).abs();
    // upper step constant: coefficient sums of the two degree-4 forms
    let sum_num: BigInt = num.iter().map(|c| c.abs()).sum();
    let sum_den: BigInt = den.iter().map(|c| c.abs()).sum();
    let c_upper = ln_big(&sum_num.max(sum_den));
    // lower step constant: cofactor mass against the Bezout constants,
    // inflated by the worst gcd that can be divided out
    let lower1 = ln_big(&(&c1 * &gcd_cap)) - ln_big(&r1);
    let lower2 = ln_big(&(&c2 * &gcd_cap)) - ln_big(&r2);
    let step_bound = c_upper.max(lower1).max(lower2).max(1.0);
    DuplicationMap {
        num,
        den,
        gcd_cap,
        step_bound,
    }
}

/// Returns (r, c) for an integer Bezout identity U f + V g = r with
/// deg U, deg V <= pad_deg - 1; c bounds the homogenized cofactor mass
/// sum |U_i| + sum |V_i|.
fn bezout_constant(f: &IntPolynomial, g: &IntPolynomial, pad_deg: usize) -> (BigInt, BigInt) {
    let _ = pad_deg;
    let to_q = |p: &IntPolynomial| -> Vec<BigRational> {
        p.coeffs().iter().map(|c| BigRational::from(c.clone())).collect()
    };
    // extended Euclid over Q[x]
    let (mut r0, mut r1) = (to_q(f), to_q(g));
    let (mut s0, mut s1) = (vec![BigRational::one()], vec![BigRational::zero()]);
    let (mut t0, mut t1) = (vec![BigRational::zero()], vec![BigRational::one()]);
    let is_zero = |p: &[BigRational]| p.iter().all(|c| c.is_zero());
    while !is_zero(&r1) {
        let (q, r) = rational_div_rem(&r0, &r1);
        let step = |a: &[BigRational], b: &[BigRational]| -> Vec<BigRational> {
            // a - q b
            let qb = poly_mul_q(&q, b);
            poly_sub_q(a, &qb)
        };
        let s = step(&s0, &s1);
        let t = step(&t0, &t1);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    assert!(
        r0.iter().filter(|c| !c.is_zero()).count() == 1 && !r0[0].is_zero(),
        "duplication polynomials must be coprime (nonsingular curve)"
    );
    // U = s0 / r0[0], V = t0 / r0[0]; scale to integers
    let inv = r0[0].clone();
    let u: Vec<BigRational> = s0.iter().map(|c| c / &inv).collect();
    let v: Vec<BigRational> = t0.iter().map(|c| c / &inv).collect();
    let mut den = BigInt::one();
    for c in u.iter().chain(v.iter()) {
        den = den.lcm(c.denom());
    }
    let dq = BigRational::from(den.clone());
    let ui: Vec<BigInt> = u.iter().map(|c| (c * &dq).to_integer()).collect();
    let vi: Vec<BigInt> = v.iter().map(|c| (c * &dq).to_integer()).collect();
    let mass: BigInt = ui.iter().chain(vi.iter()).map(|c| c.abs()).sum();
    (den, mass.max(BigInt::one()))
}

fn poly_mul_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
        let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
        *o = x - y;
    }
    out
}

fn reversed_to_degree(c: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, v) in c.iter().enumerate() {
        out[len - 1 - i] = v.clone();
    }
    while out.last().map_or(false, |v| v.is_zero()) {
        out.pop();
    }
    out
}

fn eval_form(coeffs: &[BigInt], deg: usize, a: &BigInt, b: &BigInt) -> BigInt {
    // sum coeffs[i] a^i b^(deg - i)
    let mut acc = BigInt::zero();
    let mut apow = BigInt::one();
    let mut bpows = vec![BigInt::one()];
    for _ in 0..deg {
        bpows.push(bpows.last().unwrap() * b);
    }
    for (i, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            acc += c * &apow * &bpows[deg - i];
        }
        apow *= a;
    }
    acc
}

/// The doubling-limit canonical height lim h(x([2^n] P)) / 4^n, computed by
/// exact rational duplication with a guaranteed enclosure of half-width at
/// most `target_precision`. Torsion points return an exact zero.
pub fn canonical_height_oracle(
    e: &EllipticCurveModel,
    p: &CurvePoint,
    target_precision: f64,
) -> Result<Interval, CurveError> {
    let (x0, _) = match p {
        CurvePoint::Infinity => return Err(CurveError::PointAtInfinity),
        CurvePoint::Affine(x, y) => (x.clone(), y.clone()),
    };
    if !e.contains(p) {
        return Err(CurveError::NotOnCurve);
    }
    let dup = build_duplication(e);
    // x = A / B in lowest terms
    let mut a = x0.numer().clone();
    let mut b = x0.denom().clone();
    // iterations: C / (3 * 4^n) <= eps
    let c = dup.step_bound;
    let mut n_steps = 0u32;
    while c / (3.0 * 4f64.powi(n_steps as i32)) > target_precision {
        n_steps += 1;
        assert!(n_steps < 64, "unreachable iteration depth");
    }
    for _ in 0..n_steps {
        let na = eval_form(&dup.num, 4, &a, &b);
        let nb = &b * eval_form(&dup.den, 3, &a, &b);
        if nb.is_zero() {
            // hit the point at infinity: P was torsion
            return Ok(Interval::point(0.0));
        }
        // gcd(na, nb) divides gcd_cap because (a, b) are coprime; reduce mod
        // the small cap first so the gcds stay cheap
        let g0 = dup.gcd_cap.gcd(&na.mod_floor(&dup.gcd_cap));
        let g1 = if g0.is_one() {
            g0
        } else {
            g0.gcd(&nb.mod_floor(&g0))
        };
        if g1.is_one() {
            a = na;
            b = nb;
        } else {
            a = na / &g1;
            b = nb / g1;
        }
    }
    let h = ln_big(&a.abs().max(b.abs())).max(0.0);
    let scale = 4f64.powi(n_steps as i32);
    let err = c / (3.0 * scale) + 1e-13 * (1.0 + h / scale);
    Ok(Interval::with_err(h / scale, err))
}

// ---------------------------------------------------------------------------
// decomposition path
// ---------------------------------------------------------------------------

/// Canonical height by local decomposition, with the per-place breakdown.
#[derive(Clone, Debug)]
pub struct CanonicalHeight {
    /// kappa * sum of local heights, in the doubling-limit normalization
    pub value: Interval,
    pub kappa: f64,
    pub per_place: Vec<LocalHeightReport>,
    pub minimal: EllipticCurveModel,
    pub transform: ModelTransform,
}

/// Computes kappa * (lambda_infty + sum_p lambda_p) over the archimedean
/// place, the primes dividing the minimal discriminant, and the primes
/// dividing the denominator of x(P) on the minimal model.
pub fn canonical_height(
    e: &EllipticCurveModel,
    p: &CurvePoint,
    precision_bits: u32,
) -> Result<CanonicalHeight, CurveError> {
    if p.is_infinity() {
        return Err(CurveError::PointAtInfinity);
    }
    if !e.contains(p) {
        return Err(CurveError::NotOnCurve);
    }
    let (em, tf) = minimal_model(e)?;
    let pm = tf.forward(p);
    let mut reports = Vec::new();
    let arch = local_height_arch(&em, &pm, precision_bits)?;
    let mut total = arch.lambda;
    reports.push(arch);
    let disc_int = em.disc.to_integer();
    let mut primes: Vec<u64> = factor_abs(&disc_int)
        .into_iter()
        .map(|(p, _)| p.to_u64().expect("desk-scale discriminant"))
        .collect();
    if let CurvePoint::Affine(x, _) = &pm {
        for (q, _) in factor_abs(x.denom()) {
            let q = q.to_u64().expect("desk-scale denominator");
            if !primes.contains(&q) {
                primes.push(q);
            }
        }
    }
    primes.sort_unstable();
    for q in primes {
        let rep = local_height_nonarch(&em, &pm, q)?;
        total = total.add(&rep.lambda);
        reports.push(rep);
    }
    Ok(CanonicalHeight {
        value: total.scale(KAPPA),
        kappa: KAPPA,
        per_place: reports,
        minimal: em,
        transform: tf,
    })
}

// ---------------------------------------------------------------------------
// pairwise sums and the pointset floor
// ---------------------------------------------------------------------------

/// sum over ordered pairs i != j of lambda_v(P_i - P_j). For finite places
/// the value is an exact rational multiple of log p; for the archimedean
/// place it is an interval sum.
pub fn pairwise_local_sum(
    e: &EllipticCurveModel,
    points: &[CurvePoint],
    place: &Place,
) -> Result<Interval, CurveError> {
    let (em, tf) = minimal_model(e)?;
    let pts: Vec<CurvePoint> = points.iter().map(|p| tf.forward(p)).collect();
    for (i, p) in pts.iter().enumerate() {
        for q in pts.iter().skip(i + 1) {
            if p == q {
                return Err(CurveError::NotOnCurve);
            }
        }
    }
    let mut total = Interval::point(0.0);
    for i in 0..pts.len() {
        for j in 0..pts.len() {
            if i == j {
                continue;
            }
            let d = em.add(&pts[i], &em.negate(&pts[j]));
            let lam = match place {
                Place::Archimedean => local_height_arch(&em, &d, 40)?.lambda,
                Place::Prime(p) => local_height_nonarch(&em, &d, *p)?.lambda,
            };
            total = total.add(&lam);
        }
    }
    Ok(total)
}

/// sum over ordered pairs i != j of B2(t_i - t_j) for the 1-periodic second
/// Bernoulli polynomial; bounded below by -N/6.
pub fn bernoulli_pair_sum(t: &[f64]) -> f64 {
    let mut acc = 0.0;
    for i in 0..t.len() {
        for j in 0..t.len() {
            if i != j {
                acc += super::local::bernoulli2(t[i] - t[j]);
            }
        }
    }
    acc
}

/// Splitting statistics for an elliptic curve over an extension described by
/// psi data: xi collects good-reduction mass, chi split-multiplicative mass.
/// Unramified transfer from the Q-reduction type: good stays good, split
/// multiplicative stays split, nonsplit multiplicative becomes split iff the
/// residue degree is even, additive places are excluded and flagged.
#[derive(Clone, Debug)]
pub struct EllipticStats {
    /// (q, xi_q, chi_q)
    pub terms: Vec<(u64, f64, f64)>,
    /// (p, f, reason) entries dropped from the statistics
    pub excluded: Vec<(u64, u32, String)>,
}

pub fn derive_elliptic_stats(
    e: &EllipticCurveModel,
    psi: &[(u64, u32, f64)],
) -> Result<EllipticStats, CurveError> {
    let (em, _) = minimal_model(e)?;
    let mut terms = Vec::new();
    let mut excluded = Vec::new();
    for &(p, f, w) in psi {
        let q = p.pow(f);
        match super::reduction_type(&em, p)? {
            ReductionType::Good => terms.push((q, w, 0.0)),
            ReductionType::SplitMultiplicative => terms.push((q, 0.0, w)),
            ReductionType::NonsplitMultiplicative => {
                if f % 2 == 0 {
                    terms.push((q, 0.0, w));
                } else {
                    excluded.push((p, f, "nonsplit multiplicative with odd residue degree".into()));
                }
            }
            ReductionType::Additive => {
                excluded.push((p, f, "additive reduction".into()));
            }
        }
    }
    Ok(EllipticStats { terms, excluded })
}

/// Empirical average canonical height of a point set against the
/// pairwise-difference floor and the explicit statistic bound.
#[derive(Clone, Debug)]
pub struct PointsetReport {
    pub empirical_avg: f64,
    /// (1 / (4 N (N-1))) sum_{i != j} hhat(P_i - P_j)
    pub pairwise_floor: f64,
    pub bound: BoundReport,
    /// empirical_avg >= pairwise_floor, an identity-derived inequality
    pub parallelogram_consistent: bool,
}

pub fn pointset_height_floor(
    e: &EllipticCurveModel,
    points: &[CurvePoint],
    stats: &EllipticStats,
    c_e: f64,
) -> Result<PointsetReport, CurveError> {
    if points.len() < 2 {
        return Err(CurveError::Json("need at least 2 points".into()));
    }
    let n = points.len();
    let mut avg = 0.0;
    for p in points {
        avg += canonical_height(e, p, 40)?.value.mid();
    }
    avg /= n as f64;
    let mut pw = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let d = e.add(&points[i], &e.negate(&points[j]));
            if d.is_infinity() {
                return Err(CurveError::Json("points must be distinct".into()));
            }
            pw += canonical_height(e, &d, 40)?.value.mid();
        }
    }
    let pairwise_floor = pw / (4.0 * n as f64 * (n as f64 - 1.0));
    let bound = eval_bound(
        &BoundSpec::EllipticSemistable {
            terms: stats.terms.clone(),
            c_e,
        },
        None,
    )
    .map_err(|e: TowerError| CurveError::Json(e.to_string()))?;
    Ok(PointsetReport {
        empirical_avg: avg,
        pairwise_floor,
        parallelogram_consistent: avg >= pairwise_floor - 1e-9,
        bound,
    })
}
