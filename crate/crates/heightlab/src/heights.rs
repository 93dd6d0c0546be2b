//! Weil height, relative Mahler measure and relative height with respect to
//! the embeddings of a base field K = Q[y]/(g), and the inequalities
//! connecting absolute and relative discriminants.
//!
//! An element is described by its monic minimal polynomial f_K in O_K[x]
//! with coefficient representatives reduced mod g. The absolute minimal
//! polynomial data comes from the norm form prod_sigma sigma(f_K), computed
//! exactly through resultants; per-embedding quantities come from certified
//! root enclosures of the embedded polynomials.

use crate::exactpoly::{
    certified_roots_with_errors, complex_roots, discriminant, mahler_measure, resultant,
    ComplexInterval, IntPolynomial, PolyError,
};
use crate::interval::Interval;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HeightError {
    #[error("zero or constant polynomial has no height")]
    BadPolynomial,
    #[error("relative minimal polynomial must be monic in x")]
    NotMonic,
    #[error("base polynomial must be squarefree with degree >= 1")]
    BadBase,
    #[error("embedding index {index} out of range (base degree {count})")]
    EmbeddingIndex { index: usize, count: usize },
    #[error("precision exhausted while {0}")]
    Precision(String),
    #[error("polynomial error: {0}")]
    Poly(#[from] PolyError),
    #[error("invalid relative element JSON: {0}")]
    Json(String),
}

/// Logarithmic Weil height: log M(f) / deg(f), in natural-log units.
/// The caller asserts irreducibility of f.
pub fn weil_height(f: &IntPolynomial, precision_bits: u32) -> Result<Interval, HeightError> {
    let n = match f.degree() {
        None | Some(0) => return Err(HeightError::BadPolynomial),
        Some(n) => n,
    };
    let m = mahler_measure(f, precision_bits)?;
    // M >= 1 for a nonzero integer polynomial, so the height is >= 0
    let m = Interval::new(m.lo.max(1.0), m.hi.max(1.0));
    let h = m.ln().div_u32(n as u32);
    Ok(Interval::new(h.lo.max(0.0), h.hi.max(0.0)))
}

// ---------------------------------------------------------------------------
// relative elements
// ---------------------------------------------------------------------------

/// An algebraic number presented relative to a base field K = Q[y]/(g):
/// a monic polynomial f_K(x) = x^m + b_{m-1} x^{m-1} + ... + b_0 whose
/// coefficients are polynomials in y of degree < deg(g).
#[derive(Clone, Debug, PartialEq)]
pub struct RelativeElement {
    base: IntPolynomial,
    /// rel_coeffs[j] is the coefficient of x^j as a poly in y, constant first
    rel_coeffs: Vec<Vec<BigRational>>,
}

impl RelativeElement {
    pub fn new(
        base: IntPolynomial,
        rel_coeffs: Vec<Vec<BigRational>>,
    ) -> Result<Self, HeightError> {
        let gdeg = match base.degree() {
            None | Some(0) => return Err(HeightError::BadBase),
            Some(d) => d,
        };
        if rel_coeffs.len() < 2 {
            return Err(HeightError::NotMonic);
        }
        let lead = rel_coeffs.last().unwrap();
        let monic =
            lead.first().map_or(false, |c| c.is_one()) && lead.iter().skip(1).all(|c| c.is_zero());
        if !monic {
            return Err(HeightError::NotMonic);
        }
        let mut reduced = Vec::with_capacity(rel_coeffs.len());
        for c in rel_coeffs {
            reduced.push(reduce_mod_g(&c, &base, gdeg));
        }
        Ok(RelativeElement {
            base,
            rel_coeffs: reduced,
        })
    }

    pub fn base(&self) -> &IntPolynomial {
        &self.base
    }

    /// m = deg_x f_K = [K(alpha) : K].
    pub fn rel_degree(&self) -> usize {
        self.rel_coeffs.len() - 1
    }

    /// [K : Q].
    pub fn base_degree(&self) -> usize {
        self.base.degree().unwrap()
    }

    pub fn rel_coeffs(&self) -> &[Vec<BigRational>] {
        &self.rel_coeffs
    }

    /// f_K(x, y0) as a rational-coefficient polynomial in x.
    fn eval_y_rational(&self, y0: &BigRational) -> Vec<BigRational> {
        self.rel_coeffs
            .iter()
            .map(|c| horner_rational(c, y0))
            .collect()
    }

    /// Parses {"base": [ints], "relpoly": [[rational strings]]}.
    pub fn from_json(text: &str) -> Result<Self, HeightError> {
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| HeightError::Json(e.to_string()))?;
        let base = v
            .get("base")
            .and_then(|b| b.as_array())
            .ok_or_else(|| HeightError::Json("missing \"base\" array".into()))?;
        let base_coeffs: Result<Vec<BigInt>, HeightError> = base
            .iter()
            .map(|c| {
                c.as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| HeightError::Json("base coefficients must be integers".into()))
            })
            .collect();
        let rel = v
            .get("relpoly")
            .and_then(|r| r.as_array())
            .ok_or_else(|| HeightError::Json("missing \"relpoly\" array".into()))?;
        let mut rel_coeffs = Vec::new();
        for row in rel {
            let row = row
                .as_array()
                .ok_or_else(|| HeightError::Json("relpoly rows must be arrays".into()))?;
            let mut out = Vec::new();
            for c in row {
                let s = c
                    .as_str()
                    .map(|s| s.to_string())
                    .or_else(|| c.as_i64().map(|n| n.to_string()))
                    .ok_or_else(|| {
                        HeightError::Json("relpoly entries must be rational strings".into())
                    })?;
                out.push(
                    parse_rational(&s)
                        .ok_or_else(|| HeightError::Json(format!("bad rational {s:?}")))?,
                );
            }
            rel_coeffs.push(out);
        }
        RelativeElement::new(IntPolynomial::new(base_coeffs?), rel_coeffs)
    }
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(BigRational::from(n))
    }
}

fn reduce_mod_g(c: &[BigRational], g: &IntPolynomial, gdeg: usize) -> Vec<BigRational> {
    let mut r: Vec<BigRational> = c.to_vec();
    let glead = BigRational::from(g.leading_coefficient());
    while r.len() > gdeg {
        let k = r.len() - 1;
        let q = &r[k] / &glead;
        for i in 0..=gdeg {
            let sub = BigRational::from(g.coeff(i)) * &q;
            r[k - gdeg + i] -= sub;
        }
        debug_assert!(r[k].is_zero());
        r.pop();
    }
    while r.last().map_or(false, |x| x.is_zero()) {
        r.pop();
    }
    r
}

fn horner_rational(c: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for v in c.iter().rev() {
        acc = acc * x + v;
    }
    acc
}

// ---------------------------------------------------------------------------
// complex-interval evaluation of coefficient polynomials
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug)]
struct CBox {
    re: Interval,
    im: Interval,
}

impl CBox {
    fn point(z: Complex64) -> CBox {
        CBox {
            re: Interval::point(z.re),
            im: Interval::point(z.im),
        }
    }

    fn from_root(b: &ComplexInterval) -> CBox {
        CBox { re: b.re, im: b.im }
    }

    fn add(&self, o: &CBox) -> CBox {
        CBox {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
    }

    fn mul(&self, o: &CBox) -> CBox {
        CBox {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    fn center(&self) -> Complex64 {
        Complex64::new(self.re.mid(), self.im.mid())
    }

    fn radius(&self) -> f64 {
        0.5 * self.re.width() + 0.5 * self.im.width()
    }

    /// Enclosure of |z| over the box.
    fn abs_interval(&self) -> Interval {
        let c = self.center().norm();
        let r = self.radius();
        Interval::new(
            ((c - r) * (1.0 - 1e-14)).max(0.0),
            (c + r) * (1.0 + 1e-14) + 1e-320,
        )
    }
}

fn eval_poly_cbox(c: &[BigRational], z: &CBox) -> CBox {
    let mut acc = CBox::point(Complex64::new(0.0, 0.0));
    for v in c.iter().rev() {
        let vb = CBox {
            re: Interval::from_rational(v),
            im: Interval::point(0.0),
        };
        acc = acc.mul(z).add(&vb);
    }
    acc
}

// ---------------------------------------------------------------------------
// embeddings
// ---------------------------------------------------------------------------

/// Certified embeddings of the base field, ordered canonically: real roots
/// of g ascending, then complex pairs by ascending real part with the
/// positive-imaginary member first.
pub fn base_embeddings(g: &IntPolynomial) -> Result<Vec<ComplexInterval>, HeightError> {
    if g.degree().map_or(true, |d| d == 0) {
        return Err(HeightError::BadBase);
    }
    if !g.is_squarefree()? {
        return Err(HeightError::BadBase);
    }
    let mut boxes = complex_roots(g, 1e-8)?;
    boxes.sort_by(|a, b| {
        let ra = a.im.lo == 0.0 && a.im.hi == 0.0;
        let rb = b.im.lo == 0.0 && b.im.hi == 0.0;
        rb.cmp(&ra)
            .then(a.re.mid().total_cmp(&b.re.mid()))
            .then(b.im.mid().total_cmp(&a.im.mid()))
    });
    Ok(boxes)
}

// ---------------------------------------------------------------------------
// norm form and relative discriminant
// ---------------------------------------------------------------------------

/// prod_sigma sigma(f_K(x)), computed exactly as a y-resultant by evaluation
/// and Lagrange interpolation, normalized to a primitive integer polynomial
/// with positive leading coefficient. Equals the minimal polynomial of alpha
/// over Q raised to [K(alpha) : Q(alpha)], up to that normalization.
pub fn norm_minpoly(e: &RelativeElement) -> Result<IntPolynomial, HeightError> {
    let m = e.rel_degree();
    let gdeg = e.base_degree();
    let target_deg = m * gdeg;
    let mut xs: Vec<BigRational> = Vec::new();
    let mut ys: Vec<BigRational> = Vec::new();
    let mut x0 = BigInt::zero();
    while xs.len() < target_deg + 1 {
        let xq = BigRational::from(x0.clone());
        // sample points 0, 1, -1, 2, -2, ...
        x0 = if x0.is_positive() {
            -x0
        } else {
            -x0 + BigInt::one()
        };
        let coeffs_y = rel_eval_x(e, &xq);
        if coeffs_y.is_empty() {
            continue;
        }
        let val = norm_of_y_poly(&coeffs_y, e.base());
        xs.push(xq);
        ys.push(val);
    }
    let poly = lagrange_interpolate(&xs, &ys);
    let mut den = BigInt::one();
    for c in &poly {
        den = num_integer::lcm(den.clone(), c.denom().clone());
    }
    let ints: Vec<BigInt> = poly
        .iter()
        .map(|c| (c * BigRational::from(den.clone())).to_integer())
        .collect();
    let mut f = IntPolynomial::new(ints).primitive_part();
    if f.leading_coefficient().is_negative() {
        f = f.neg();
    }
    Ok(f)
}

/// f_K with x specialized to a rational: the resulting polynomial in y.
fn rel_eval_x(e: &RelativeElement, x0: &BigRational) -> Vec<BigRational> {
    let gdeg = e.base_degree();
    let mut out = vec![BigRational::zero(); gdeg];
    let mut xpow = BigRational::one();
    for c in &e.rel_coeffs {
        for (i, v) in c.iter().enumerate() {
            out[i] += v * &xpow;
        }
        xpow *= x0;
    }
    while out.last().map_or(false, |c| c.is_zero()) {
        out.pop();
    }
    out
}

/// prod over roots beta of g of h(beta), exact: Res(g, h) normalized by the
/// leading coefficients.
fn norm_of_y_poly(h: &[BigRational], g: &IntPolynomial) -> BigRational {
    if h.is_empty() {
        return BigRational::zero();
    }
    let gdeg = g.degree().unwrap() as u32;
    if h.len() == 1 {
        return pow_rat(&h[0], gdeg);
    }
    let mut den = BigInt::one();
    for c in h {
        den = num_integer::lcm(den.clone(), c.denom().clone());
    }
    let hz = IntPolynomial::new(
        h.iter()
            .map(|c| (c * BigRational::from(den.clone())).to_integer())
            .collect(),
    );
    let res = resultant(g, &hz).expect("nonzero inputs");
    let hdeg = hz.degree().unwrap() as u32;
    let num = BigRational::from(res);
    let scale = pow_rat(&BigRational::from(den), gdeg)
        * pow_rat(&BigRational::from(g.leading_coefficient()), hdeg);
    num / scale
}

fn pow_rat(x: &BigRational, e: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

fn lagrange_interpolate(xs: &[BigRational], ys: &[BigRational]) -> Vec<BigRational> {
    let n = xs.len();
    let mut acc = vec![BigRational::zero(); n];
    for i in 0..n {
        let mut b = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for j in 0..n {
            if j == i {
                continue;
            }
            let mut nb = vec![BigRational::zero(); b.len() + 1];
            for (k, c) in b.iter().enumerate() {
                nb[k + 1] += c;
                nb[k] -= c * &xs[j];
            }
            b = nb;
            denom *= &xs[i] - &xs[j];
        }
        let w = &ys[i] / denom;
        for (k, c) in b.iter().enumerate() {
            acc[k] += c * &w;
        }
    }
    while acc.last().map_or(false, |c| c.is_zero()) {
        acc.pop();
    }
    acc
}

/// disc_x(f_K) as an element of K = Q[y]/(g), represented by its reduced
/// polynomial in y. Computed by interpolation over integer y-samples; f_K is
/// monic in x so no sample degenerates.
pub fn relative_discriminant(e: &RelativeElement) -> Result<Vec<BigRational>, HeightError> {
    let m = e.rel_degree();
    if m < 1 {
        return Err(HeightError::NotMonic);
    }
    if m == 1 {
        return Ok(vec![BigRational::one()]);
    }
    let gdeg = e.base_degree();
    let tdeg = (2 * m - 1) * gdeg.saturating_sub(1) + 1;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut y0 = BigInt::zero();
    while xs.len() < tdeg + 1 {
        let yq = BigRational::from(y0.clone());
        y0 = if y0.is_positive() {
            -y0
        } else {
            -y0 + BigInt::one()
        };
        let fx = e.eval_y_rational(&yq);
        let mut den = BigInt::one();
        for c in &fx {
            den = num_integer::lcm(den.clone(), c.denom().clone());
        }
        let fz = IntPolynomial::new(
            fx.iter()
                .map(|c| (c * BigRational::from(den.clone())).to_integer())
                .collect(),
        );
        let d = discriminant(&fz).map_err(HeightError::Poly)?;
        // disc(c f) = c^(2m-2) disc(f)
        let scale = pow_rat(&BigRational::from(den), (2 * m - 2) as u32);
        xs.push(yq);
        ys.push(BigRational::from(d) / scale);
    }
    let poly = lagrange_interpolate(&xs, &ys);
    Ok(reduce_mod_g(&poly, e.base(), gdeg))
}

/// N_{K/Q} of a base-field element given by its reduced representative.
pub fn base_norm(delta: &[BigRational], g: &IntPolynomial) -> BigRational {
    norm_of_y_poly(delta, g)
}

// ---------------------------------------------------------------------------
// relative Mahler measures and heights
// ---------------------------------------------------------------------------

/// Relative Mahler measure with respect to embedding `index`:
/// prod over the m roots of sigma(f_K) of max(1, |root|).
pub fn relative_mahler(
    e: &RelativeElement,
    embedding_index: usize,
    precision_bits: u32,
) -> Result<Interval, HeightError> {
    let embs = base_embeddings(e.base())?;
    if embedding_index >= embs.len() {
        return Err(HeightError::EmbeddingIndex {
            index: embedding_index,
            count: embs.len(),
        });
    }
    relative_mahler_at(e, &embs[embedding_index], precision_bits)
}

fn relative_mahler_at(
    e: &RelativeElement,
    beta: &ComplexInterval,
    precision_bits: u32,
) -> Result<Interval, HeightError> {
    let roots = embedded_roots(e, beta)?;
    let mut acc = Interval::point(1.0);
    for r in &roots {
        acc = acc.mul(&r.abs_interval().max_with_one());
    }
    if acc.relative_width() > 2f64.powi(-(precision_bits.min(40) as i32)) {
        return Err(HeightError::Precision(
            "relative Mahler measure interval too wide".into(),
        ));
    }
    Ok(acc)
}

/// Certified roots of sigma(f_K) where sigma sends y into the enclosed root.
fn embedded_roots(
    e: &RelativeElement,
    beta: &ComplexInterval,
) -> Result<Vec<ComplexInterval>, HeightError> {
    let z = CBox::from_root(beta);
    let mut coeffs = Vec::with_capacity(e.rel_coeffs.len());
    let mut errs = Vec::with_capacity(e.rel_coeffs.len());
    for c in &e.rel_coeffs {
        let v = eval_poly_cbox(c, &z);
        coeffs.push(v.center());
        errs.push(v.radius() * (1.0 + 1e-12) + 1e-300);
    }
    certified_roots_with_errors(&coeffs, &errs).map_err(|err| match err {
        PolyError::PrecisionExhausted => {
            HeightError::Precision("isolating roots of the embedded polynomial".into())
        }
        other => HeightError::Poly(other),
    })
}

/// Per-embedding relative Mahler measures and heights, the independent
/// global height from the norm form, and the decomposition identity data.
#[derive(Clone, Debug)]
pub struct RelativeHeightReport {
    pub per_embedding_mahler: Vec<Interval>,
    pub per_embedding_height: Vec<Interval>,
    /// h(alpha) computed independently from norm_minpoly
    pub global_height: Interval,
    /// (1/[K:Q]) sum_sigma h_sigma
    pub average_relative_height: Interval,
    /// N_{K/Q}(disc(f_K)), exact
    pub norm_relative_disc: BigRational,
    /// true when the two height routes overlap as intervals
    pub decomposition_consistent: bool,
}

pub fn relative_height_decomposition(
    e: &RelativeElement,
    precision_bits: u32,
) -> Result<RelativeHeightReport, HeightError> {
    let m = e.rel_degree() as u32;
    let embs = base_embeddings(e.base())?;
    let mut mahlers = Vec::new();
    let mut heights = Vec::new();
    let mut sum = Interval::point(0.0);
    for b in &embs {
        let mm = relative_mahler_at(e, b, precision_bits)?;
        let mm = Interval::new(mm.lo.max(1.0), mm.hi.max(1.0));
        let h = mm.ln().div_u32(m);
        mahlers.push(mm);
        heights.push(h);
        sum = sum.add(&h);
    }
    let avg = sum.div_u32(embs.len() as u32);
    let norm = norm_minpoly(e)?;
    let global = weil_height(&norm, precision_bits)?;
    let delta = relative_discriminant(e)?;
    let norm_disc = base_norm(&delta, e.base());
    let consistent = global.overlaps(&avg);
    Ok(RelativeHeightReport {
        per_embedding_mahler: mahlers,
        per_embedding_height: heights,
        global_height: global,
        average_relative_height: avg,
        norm_relative_disc: norm_disc,
        decomposition_consistent: consistent,
    })
}

/// Outcome of a certified inequality check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    /// lhs upper endpoint <= rhs lower endpoint
    Holds,
    /// intervals overlap at the precision cap; never a false verdict
    Inconclusive,
    /// lhs lower endpoint > rhs upper endpoint: a certified violation
    Violated,
}

#[derive(Clone, Debug)]
pub struct InequalityReport {
    pub lhs: Interval,
    pub rhs: Interval,
    pub status: CheckStatus,
}

/// Checks log|sigma(disc f_K)| <= m log m + (2m-2) log M_sigma(alpha) with
/// certified enclosures of both sides.
pub fn relative_mahler_inequality_check(
    e: &RelativeElement,
    embedding_index: usize,
) -> Result<InequalityReport, HeightError> {
    let embs = base_embeddings(e.base())?;
    if embedding_index >= embs.len() {
        return Err(HeightError::EmbeddingIndex {
            index: embedding_index,
            count: embs.len(),
        });
    }
    let beta = &embs[embedding_index];
    let m = e.rel_degree();
    let delta = relative_discriminant(e)?;
    let sig_disc = eval_poly_cbox(&delta, &CBox::from_root(beta));
    let abs_disc = sig_disc.abs_interval();
    if abs_disc.lo <= 0.0 {
        // a vanishing enclosure: log is -infinity, the bound holds vacuously
        return Ok(InequalityReport {
            lhs: Interval::new(f64::NEG_INFINITY, abs_disc.hi.max(1e-300).ln()),
            rhs: Interval::point(f64::INFINITY),
            status: CheckStatus::Holds,
        });
    }
    let lhs = abs_disc.ln();
    let msig = relative_mahler_at(e, beta, 40)?;
    let msig = Interval::new(msig.lo.max(1.0), msig.hi.max(1.0));
    let mf = m as f64;
    let rhs = Interval::point(mf)
        .mul(&Interval::point(mf).ln())
        .add(&msig.ln().scale(2.0 * mf - 2.0));
    let status = if lhs.hi <= rhs.lo {
        CheckStatus::Holds
    } else if lhs.lo > rhs.hi {
        CheckStatus::Violated
    } else {
        CheckStatus::Inconclusive
    };
    Ok(InequalityReport { lhs, rhs, status })
}

/// Exact comparison data for the absolute-vs-relative discriminant identity:
/// reports disc(norm_minpoly), N_{K/Q}(disc f_K) and their ratio, without
/// asserting any relation between them.
#[derive(Clone, Debug)]
pub struct DiscIdentityProbe {
    pub abs_disc: BigInt,
    pub norm_rel_disc: BigRational,
    pub ratio: Option<BigRational>,
    /// factorization of the ratio (numerator minus denominator exponents),
    /// smallest primes first
    pub ratio_factorization: Vec<(BigInt, i32)>,
}

pub fn disc_identity_probe(e: &RelativeElement) -> Result<DiscIdentityProbe, HeightError> {
    let f = norm_minpoly(e)?;
    let abs_disc = discriminant(&f)?;
    let delta = relative_discriminant(e)?;
    let norm_rel = base_norm(&delta, e.base());
    let ratio = if norm_rel.is_zero() {
        None
    } else {
        Some(BigRational::from(abs_disc.clone()) / &norm_rel)
    };
    let fact = ratio.as_ref().map(factor_ratio).unwrap_or_default();
    Ok(DiscIdentityProbe {
        abs_disc,
        norm_rel_disc: norm_rel,
        ratio,
        ratio_factorization: fact,
    })
}

fn factor_ratio(r: &BigRational) -> Vec<(BigInt, i32)> {
    let mut out = std::collections::BTreeMap::<BigInt, i32>::new();
    for (v, sign) in [(r.numer().abs(), 1i32), (r.denom().abs(), -1i32)] {
        let mut n = v;
        let mut d = BigInt::from(2);
        while (&d * &d) <= n && d < BigInt::from(1_000_000) {
            while (&n % &d).is_zero() {
                *out.entry(d.clone()).or_insert(0) += sign;
                n /= &d;
            }
            d += 1;
        }
        if n > BigInt::one() {
            *out.entry(n).or_insert(0) += sign;
        }
    }
    out.into_iter().filter(|(_, e)| *e != 0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn rat(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    /// relative element from integer coefficient polys in y, constant first
    fn rel(base: &[i64], coeffs: &[&[i64]]) -> RelativeElement {
        RelativeElement::new(
            p(base),
            coeffs
                .iter()
                .map(|c| c.iter().map(|&v| rat(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn weil_height_examples() {
        // x^3 - 2: log 2 / 3
        let h = weil_height(&p(&[-2, 0, 0, 1]), 40).unwrap();
        let want = std::f64::consts::LN_2 / 3.0;
        assert!(h.contains(want), "[{}, {}]", h.lo, h.hi);
        assert!((h.mid() - 0.2310490601866484).abs() < 1e-12);
        // x - 1: a root of unity
        let h = weil_height(&p(&[-1, 1]), 40).unwrap();
        assert!(h.lo == 0.0 && h.hi < 1e-12);
        // golden ratio: (1/2) log phi, the totally-real floor attained
        let h = weil_height(&p(&[-1, -1, 1]), 40).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!(h.contains(phi.ln() / 2.0));
        assert!((h.mid() - 0.2406059125).abs() < 1e-9);
        assert!(weil_height(&p(&[7]), 40).is_err());
    }

    #[test]
    fn weil_height_reverse_invariance() {
        for c in [[-2i64, 0, 0, 1], [3, -1, 0, 2], [5, 1, 1, 1]] {
            let f = p(&c);
            let a = weil_height(&f, 40).unwrap();
            let b = weil_height(&f.reverse(), 40).unwrap();
            assert!(a.overlaps(&b), "{f}");
        }
    }

    #[test]
    fn kronecker_cyclotomic_heights_vanish() {
        for n in 1..=50usize {
            let f = crate::exactpoly::cyclotomic(n);
            let h = weil_height(&f, 40).unwrap();
            assert!(h.contains(0.0), "Phi_{n}");
            assert!(h.width() < 2f64.powi(-30), "Phi_{n} width {}", h.width());
        }
    }

    #[test]
    fn norm_minpoly_examples() {
        // K = Q (g = y), f_K = x^2 - 2
        let e = rel(&[0, 1], &[&[-2], &[0], &[1]]);
        assert_eq!(norm_minpoly(&e).unwrap(), p(&[-2, 0, 1]));
        // g = y^2 - 2, f_K = x^2 - y -> x^4 - 2
        let e = rel(&[-2, 0, 1], &[&[0, -1], &[0], &[1]]);
        assert_eq!(norm_minpoly(&e).unwrap(), p(&[-2, 0, 0, 0, 1]));
        // g = y^2 - 2, f_K = x - y -> x^2 - 2
        let e = rel(&[-2, 0, 1], &[&[0, -1], &[1]]);
        assert_eq!(norm_minpoly(&e).unwrap(), p(&[-2, 0, 1]));
    }

    #[test]
    fn relative_mahler_oracle_values() {
        // The two embeddings y -> +-sqrt(2) give sigma(f_K) = x^2 -+ sqrt 2;
        // each has both roots of modulus 2^(1/4), so both relative Mahler
        // measures equal sqrt 2 (direct root computation oracle). The
        // decomposition identity pins it: h(2^(1/4)) = log 2 / 4 must be the
        // average of the relative heights.
        let e = rel(&[-2, 0, 1], &[&[0, -1], &[0], &[1]]);
        let m0 = relative_mahler(&e, 0, 30).unwrap();
        let m1 = relative_mahler(&e, 1, 30).unwrap();
        let s2 = 2f64.sqrt();
        assert!(m0.contains(s2), "sigma_0: [{}, {}]", m0.lo, m0.hi);
        assert!(m1.contains(s2), "sigma_1: [{}, {}]", m1.lo, m1.hi);
        // identity base field reduces to the absolute Mahler measure:
        // x^2 - 2 has both roots of modulus sqrt 2, so M = 2
        let e = rel(&[0, 1], &[&[-2], &[0], &[1]]);
        let m = relative_mahler(&e, 0, 30).unwrap();
        assert!(m.contains(2.0));
        assert!(relative_mahler(&e, 1, 30).is_err());
    }

    #[test]
    fn relative_height_decomposition_examples() {
        // K = Q: single term equals the Weil height of x^3 - 2
        let e = rel(&[0, 1], &[&[-2], &[0], &[0], &[1]]);
        let rep = relative_height_decomposition(&e, 35).unwrap();
        assert!(rep.decomposition_consistent);
        assert!(rep.global_height.contains(std::f64::consts::LN_2 / 3.0));
        // g = y^2 - 2, f_K = x^2 - y: h(2^(1/4)) = log 2 / 4
        let e = rel(&[-2, 0, 1], &[&[0, -1], &[0], &[1]]);
        let rep = relative_height_decomposition(&e, 35).unwrap();
        assert!(rep.decomposition_consistent);
        assert!(rep.global_height.contains(std::f64::consts::LN_2 / 4.0));
        assert!(rep
            .average_relative_height
            .contains(std::f64::consts::LN_2 / 4.0));
        // g = y^2 + 1, f_K = x - y: alpha = i, every height vanishes
        let e = rel(&[1, 0, 1], &[&[0, -1], &[1]]);
        let rep = relative_height_decomposition(&e, 35).unwrap();
        assert!(rep.global_height.contains(0.0));
        assert!(rep.average_relative_height.width() < 1e-9);
        for h in &rep.per_embedding_height {
            assert!(h.contains(0.0));
        }
    }

    #[test]
    fn relative_mahler_inequality_examples() {
        // g = y, f_K = x^2 - x - 1: lhs = log 5, rhs = 2 log 2 + 2 log phi
        let e = rel(&[0, 1], &[&[-1], &[-1], &[1]]);
        let rep = relative_mahler_inequality_check(&e, 0).unwrap();
        assert_eq!(rep.status, CheckStatus::Holds);
        assert!(rep.lhs.contains(5f64.ln()));
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!(rep.rhs.contains(2.0 * 2f64.ln() + 2.0 * phi.ln()));
        // equality case x^2 + 1: lhs = rhs = log 4; enclosures cannot
        // strictly separate, but a violation must never be reported
        let e = rel(&[0, 1], &[&[1], &[0], &[1]]);
        let rep = relative_mahler_inequality_check(&e, 0).unwrap();
        assert_ne!(rep.status, CheckStatus::Violated);
        // g = y^2 - 2, f_K = x^2 - y, both embeddings
        let e = rel(&[-2, 0, 1], &[&[0, -1], &[0], &[1]]);
        for idx in 0..2 {
            let rep = relative_mahler_inequality_check(&e, idx).unwrap();
            assert_eq!(rep.status, CheckStatus::Holds, "embedding {idx}");
        }
    }

    #[test]
    fn disc_probe_examples() {
        // K = Q: ratio 1
        let e = rel(&[0, 1], &[&[-1], &[-1], &[1]]);
        let probe = disc_identity_probe(&e).unwrap();
        assert_eq!(probe.ratio, Some(BigRational::one()));
        // g = y^2 - 2, f_K = x^2 - y: D(x^4 - 2) = -2048, N(4y) = -32,
        // ratio 64 = disc(K)^2 (oracle: direct resultants by hand)
        let e = rel(&[-2, 0, 1], &[&[0, -1], &[0], &[1]]);
        let probe = disc_identity_probe(&e).unwrap();
        assert_eq!(probe.abs_disc, BigInt::from(-2048));
        assert_eq!(probe.norm_rel_disc, BigRational::from(BigInt::from(-32)));
        assert_eq!(probe.ratio, Some(BigRational::from(BigInt::from(64))));
        assert_eq!(probe.ratio_factorization, vec![(BigInt::from(2), 6)]);
        // g = y^2 + 1, f_K = x^2 - y: D(x^4 + 1) = 256, N(4y) = 16, ratio 16
        let e = rel(&[1, 0, 1], &[&[0, -1], &[0], &[1]]);
        let probe = disc_identity_probe(&e).unwrap();
        assert_eq!(probe.abs_disc, BigInt::from(256));
        assert_eq!(probe.norm_rel_disc, BigRational::from(BigInt::from(16)));
        assert_eq!(probe.ratio, Some(BigRational::from(BigInt::from(16))));
    }

    #[test]
    fn json_roundtrip() {
        let text = r#"{"base": [-2, 0, 1], "relpoly": [["0", "-1"], ["0"], ["1"]]}"#;
        let e = RelativeElement::from_json(text).unwrap();
        assert_eq!(e.base_degree(), 2);
        assert_eq!(e.rel_degree(), 2);
        assert_eq!(norm_minpoly(&e).unwrap(), p(&[-2, 0, 0, 0, 1]));
        let text = r#"{"base": [-5, 0, 1], "relpoly": [["-1/2", "1/2"], ["1"]]}"#;
        let e = RelativeElement::from_json(text).unwrap();
        assert_eq!(e.rel_degree(), 1);
        assert!(RelativeElement::from_json("{}").is_err());
        assert!(
            RelativeElement::from_json(r#"{"base":[1,1],"relpoly":[["1/0"],["1"]]}"#).is_err()
        );
    }

    #[test]
    fn power_height_family() {
        // h(2^(k/n)) = (k/n) log 2: the minimal polynomial of 2^(k/n) with
        // gcd(k, n) = g is x^(n/g) - 2^(k/g)
        for (k, n) in [(1u32, 2usize), (1, 5), (2, 6), (3, 12), (5, 12)] {
            let g = num_integer::gcd(k as usize, n);
            let kk = (k as usize / g) as u32;
            let nn = n / g;
            let mut c = vec![BigInt::zero(); nn + 1];
            c[0] = -BigInt::from(2).pow(kk);
            c[nn] = BigInt::one();
            let f = IntPolynomial::new(c);
            let h = weil_height(&f, 40).unwrap();
            let want = (k as f64 / n as f64) * std::f64::consts::LN_2;
            assert!(h.contains(want), "k={k} n={n}: [{} {}]", h.lo, h.hi);
        }
    }
}
