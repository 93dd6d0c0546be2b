//! Certified complex root isolation by simultaneous iteration.
//!
//! The finder runs Aberth–Ehrlich iteration on f64 complex approximations,
//! then certifies the result with Weierstrass-style inclusion disks: for
//! pairwise distinct approximations z_1..z_n of a degree-n polynomial f, the
//! disks of radius n * |f(z_i) / (lc * prod_{j != i} (z_i - z_j))| around the
//! z_i jointly contain all roots, and any connected component made of k disks
//! contains exactly k roots. When all disks are pairwise disjoint each one
//! isolates a single root. Residuals are evaluated with a running error
//! bound, so the radii are honest upper bounds.

use super::{IntPolynomial, PolyError};
use crate::interval::{next_up, Interval};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// A rectangular enclosure of one complex root.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexInterval {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexInterval {
    pub fn center(&self) -> Complex64 {
        Complex64::new(self.re.mid(), self.im.mid())
    }

    pub fn width(&self) -> f64 {
        self.re.width().max(self.im.width())
    }

    /// Enclosure of the modulus of every point in the box.
    pub fn abs_interval(&self) -> Interval {
        let c = self.center();
        let r = 0.5 * self.re.width().max(0.0) + 0.5 * self.im.width().max(0.0);
        let m = c.norm();
        let lo = (m - r).max(0.0);
        let hi = m + r;
        // widen for the norm() rounding itself
        Interval::new((lo * (1.0 - 1e-14)).max(0.0), hi * (1.0 + 1e-14) + f64::MIN_POSITIVE)
    }

    pub fn disjoint(&self, other: &ComplexInterval) -> bool {
        !(self.re.overlaps(&other.re) && self.im.overlaps(&other.im))
    }
}

/// f64 polynomial with per-coefficient error radii; scaled image of an exact
/// integer polynomial.
struct ApproxPoly {
    coeffs: Vec<Complex64>,
    errs: Vec<f64>,
}

impl ApproxPoly {
    fn from_int(f: &IntPolynomial) -> ApproxPoly {
        let coeffs: Vec<Complex64> = f
            .coeffs()
            .iter()
            .map(|c| Complex64::new(c.to_f64().unwrap_or(f64::INFINITY), 0.0))
            .collect();
        let errs: Vec<f64> = coeffs.iter().map(|c| c.re.abs() * 2.3e-16).collect();
        ApproxPoly { coeffs, errs }
    }

    /// Horner evaluation with a rigorous running error bound.
    fn eval_with_err(&self, z: Complex64) -> (Complex64, f64) {
        let u = 2.3e-16; // > 2^-52, covers complex mul/add rounding
        let az = z.norm();
        let mut acc = Complex64::new(0.0, 0.0);
        let mut err = 0.0f64;
        for i in (0..self.coeffs.len()).rev() {
            acc = acc * z + self.coeffs[i];
            err = err * az + self.errs[i] + 6.0 * u * acc.norm();
        }
        (acc, err)
    }

    fn eval_derivative(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in (1..self.coeffs.len()).rev() {
            acc = acc * z + self.coeffs[i] * (i as f64);
        }
        acc
    }
}

/// Returns exactly deg(f) pairwise disjoint certified boxes, each of width
/// at most `target_width`, jointly covering all complex roots of f.
///
/// Errors if f is not squarefree or if `target_width` is below what f64
/// arithmetic can certify for this polynomial.
pub fn complex_roots(
    f: &IntPolynomial,
    target_width: f64,
) -> Result<Vec<ComplexInterval>, PolyError> {
    let n = match f.degree() {
        None | Some(0) => return Err(PolyError::ZeroPolynomial),
        Some(n) => n,
    };
    if !f.is_squarefree()? {
        return Err(PolyError::NotSquarefree);
    }
    let fp = f.primitive_part();
    let ap = ApproxPoly::from_int(&fp);
    let mut z = initial_guesses(&ap, n);
    aberth(&ap, &mut z);
    polish(&ap, &mut z);
    pair_conjugates(&fp, &mut z);
    let boxes = certify(&ap, &z, Some(&fp))?;
    let widest = boxes.iter().map(|b| b.width()).fold(0.0, f64::max);
    if widest > target_width {
        return Err(PolyError::PrecisionExhausted);
    }
    Ok(boxes)
}

/// Certified roots of a polynomial given by f64 complex coefficients with
/// per-coefficient error radii (constant term first). Used for embedded
/// images of relative minimal polynomials, where coefficients are algebraic
/// numbers known only by enclosures.
pub fn certified_roots_with_errors(
    coeffs: &[Complex64],
    errs: &[f64],
) -> Result<Vec<ComplexInterval>, PolyError> {
    assert_eq!(coeffs.len(), errs.len());
    let mut coeffs = coeffs.to_vec();
    let mut errs = errs.to_vec();
    while coeffs.len() > 1 && coeffs.last().unwrap().norm() <= *errs.last().unwrap() {
        coeffs.pop();
        errs.pop();
    }
    let n = coeffs.len() - 1;
    if n == 0 {
        return Err(PolyError::ZeroPolynomial);
    }
    let ap = ApproxPoly { coeffs, errs };
    let mut z = initial_guesses(&ap, n);
    aberth(&ap, &mut z);
    polish(&ap, &mut z);
    certify(&ap, &z, None)
}

fn initial_guesses(p: &ApproxPoly, n: usize) -> Vec<Complex64> {
    // Cauchy-style radius: 1 + max |a_i / a_n|
    let an = p.coeffs[n].norm();
    let r = 1.0
        + p.coeffs[..n]
            .iter()
            .map(|c| c.norm() / an)
            .fold(0.0, f64::max);
    let r = r.min(1e100);
    (0..n)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            Complex64::from_polar(0.5 * r.max(1.0), th) + Complex64::new(0.01, 0.13)
        })
        .collect()
}

fn aberth(p: &ApproxPoly, z: &mut [Complex64]) {
    let n = z.len();
    for _ in 0..400 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (fv, _) = p.eval_with_err(z[i]);
            let dv = p.eval_derivative(z[i]);
            if fv.norm() == 0.0 {
                continue;
            }
            let newton = if dv.norm() > 0.0 { fv / dv } else { Complex64::new(1e-3, 1e-3) };
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let d = z[i] - z[j];
                    if d.norm() > 0.0 {
                        s += 1.0 / d;
                    }
                }
            }
            let denom = 1.0 - newton * s;
            let corr = if denom.norm() > 1e-300 { newton / denom } else { newton };
            z[i] -= corr;
            moved = moved.max(corr.norm() / (1.0 + z[i].norm()));
        }
        if moved < 1e-15 {
            break;
        }
    }
}

fn polish(p: &ApproxPoly, z: &mut [Complex64]) {
    for zi in z.iter_mut() {
        for _ in 0..4 {
            let (fv, _) = p.eval_with_err(*zi);
            let dv = p.eval_derivative(*zi);
            if dv.norm() == 0.0 {
                break;
            }
            let step = fv / dv;
            if !step.re.is_finite() || !step.im.is_finite() {
                break;
            }
            *zi -= step;
            if step.norm() <= 1e-17 * (1.0 + zi.norm()) {
                break;
            }
        }
    }
}

/// For real polynomials, match roots into conjugate pairs and symmetrize;
/// roots without a distinct partner are snapped to the real axis.
fn pair_conjugates(f: &IntPolynomial, z: &mut [Complex64]) {
    let _ = f; // coefficients of an IntPolynomial are always real
    let n = z.len();
    let mut used = vec![false; n];
    for i in 0..n {
        if used[i] {
            continue;
        }
        if z[i].im.abs() < 1e-10 * (1.0 + z[i].norm()) {
            // candidate real root: check no distinct conjugate partner nearby
            let mut partner = None;
            for j in 0..n {
                if j != i && !used[j] && (z[j] - z[i].conj()).norm() < 1e-9 * (1.0 + z[i].norm()) && (z[j] - z[i]).norm() > 1e-13 * (1.0 + z[i].norm()) {
                    partner = Some(j);
                    break;
                }
            }
            if partner.is_none() {
                z[i] = Complex64::new(z[i].re, 0.0);
                used[i] = true;
                continue;
            }
        }
        // find the closest conjugate partner and symmetrize
        let mut best = None;
        let mut best_d = f64::INFINITY;
        for j in 0..n {
            if j != i && !used[j] {
                let d = (z[j] - z[i].conj()).norm();
                if d < best_d {
                    best_d = d;
                    best = Some(j);
                }
            }
        }
        if let Some(j) = best {
            if best_d < 1e-8 * (1.0 + z[i].norm()) {
                let a = 0.5 * (z[i] + z[j].conj());
                z[i] = a;
                z[j] = a.conj();
                used[i] = true;
                used[j] = true;
            }
        }
    }
}

/// Rigorous upper bound for |f(z)| with exact integer coefficients: the f64
/// components of z are dyadic rationals, so the Horner evaluation is exact.
fn exact_residual_upper(f: &IntPolynomial, z: Complex64) -> f64 {
    let zre = BigRational::from_float(z.re).expect("finite");
    let zim = BigRational::from_float(z.im).expect("finite");
    let mut are = BigRational::zero();
    let mut aim = BigRational::zero();
    for c in f.coeffs().iter().rev() {
        // (are + i aim) * (zre + i zim) + c
        let nre = &are * &zre - &aim * &zim + BigRational::from(c.clone());
        let nim = &are * &zim + &aim * &zre;
        are = nre;
        aim = nim;
    }
    let norm2 = &are * &are + &aim * &aim;
    ratio_to_f64_upper(norm2.numer(), norm2.denom()).sqrt() * (1.0 + 1e-14)
}

/// Upper bound of a nonnegative big rational as f64, overflow-safe.
fn ratio_to_f64_upper(num: &BigInt, den: &BigInt) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let num = num.abs();
    let den = den.abs();
    let shift = den.bits() as i64 - num.bits() as i64 + 64;
    let scaled = if shift >= 0 {
        (num << shift as u64) / &den
    } else {
        num / (&den << (-shift) as u64)
    };
    let q = scaled.to_f64().unwrap_or(f64::INFINITY) * (1.0 + 1e-12);
    q * 2f64.powi(-shift as i32)
}

fn certify(
    p: &ApproxPoly,
    z: &[Complex64],
    exact: Option<&IntPolynomial>,
) -> Result<Vec<ComplexInterval>, PolyError> {
    let n = z.len();
    let an = p.coeffs[n].norm() * (1.0 - 1e-15) - p.errs[n];
    if an <= 0.0 {
        return Err(PolyError::PrecisionExhausted);
    }
    let mut boxes = Vec::with_capacity(n);
    for i in 0..n {
        let num = match exact {
            Some(f) => exact_residual_upper(f, z[i]),
            None => {
                let (fv, fe) = p.eval_with_err(z[i]);
                (fv.norm() + fe) * (1.0 + 1e-15)
            }
        };
        let mut prod_lo = 1.0f64;
        for j in 0..n {
            if j != i {
                let d = (z[i] - z[j]).norm() * (1.0 - 1e-15);
                if d <= 0.0 {
                    return Err(PolyError::PrecisionExhausted);
                }
                prod_lo *= d;
            }
        }
        let an_eff = match exact {
            Some(f) => {
                let v = f.leading_coefficient().to_f64().unwrap_or(f64::INFINITY).abs();
                v * (1.0 - 1e-15)
            }
            None => an,
        };
        let r = ((n as f64) * num / (an_eff * prod_lo)) * (1.0 + 1e-12) + 1e-320;
        let r = next_up(r);
        boxes.push(ComplexInterval {
            re: Interval::new(z[i].re - r, z[i].re + r),
            im: Interval::new(z[i].im - r, z[i].im + r),
        });
    }
    // pairwise disjointness certifies one root per disk (hence per box)
    for i in 0..n {
        for j in (i + 1)..n {
            let ri = 0.5 * boxes[i].re.width();
            let rj = 0.5 * boxes[j].re.width();
            let d = (z[i] - z[j]).norm() * (1.0 - 1e-15);
            if d <= ri + rj {
                return Err(PolyError::PrecisionExhausted);
            }
        }
    }
    Ok(boxes)
}

/// Certified enclosure of the Mahler measure |lc(f)| * prod max(1, |root|),
/// counting multiplicity; f need not be irreducible or squarefree.
///
/// The result has relative width at most 2^-precision_bits or an error is
/// returned. f64 endpoints support precision up to about 44 bits.
pub fn mahler_measure(f: &IntPolynomial, precision_bits: u32) -> Result<Interval, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if precision_bits > 48 {
        return Err(PolyError::PrecisionExhausted);
    }
    let (content, parts) = f.squarefree_decomposition();
    let mut acc = Interval::from_bigint(&content);
    acc = Interval::new(acc.lo.abs().min(acc.hi.abs()), acc.hi.abs().max(acc.lo.abs()));
    for (g, k) in &parts {
        let gm = mahler_squarefree(g)?;
        acc = acc.mul(&gm.powi(*k as u32));
    }
    if acc.relative_width() > 2f64.powi(-(precision_bits as i32)) {
        return Err(PolyError::PrecisionExhausted);
    }
    Ok(acc)
}

fn mahler_squarefree(g: &IntPolynomial) -> Result<Interval, PolyError> {
    let n = g.degree().unwrap();
    if n == 0 {
        let c = Interval::from_bigint(&g.leading_coefficient());
        return Ok(Interval::new(c.lo.abs().min(c.hi.abs()), c.lo.abs().max(c.hi.abs())));
    }
    let boxes = complex_roots(g, 1e-7)?;
    let mut acc = Interval::from_bigint(&g.leading_coefficient());
    acc = Interval::new(acc.lo.abs().min(acc.hi.abs()), acc.lo.abs().max(acc.hi.abs()));
    for b in &boxes {
        acc = acc.mul(&b.abs_interval().max_with_one());
    }
    Ok(acc)
}

/// Certified enclosure of the house: the maximum modulus of the roots.
/// Requires f squarefree.
pub fn house(f: &IntPolynomial, precision_bits: u32) -> Result<Interval, PolyError> {
    match f.degree() {
        None | Some(0) => return Err(PolyError::ZeroPolynomial),
        _ => {}
    }
    if precision_bits > 48 {
        return Err(PolyError::PrecisionExhausted);
    }
    let boxes = complex_roots(f, 1e-7)?;
    let mut lo = 0.0f64;
    let mut hi = 0.0f64;
    for b in &boxes {
        let a = b.abs_interval();
        lo = lo.max(a.lo);
        hi = hi.max(a.hi);
    }
    Ok(Interval::new(lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::IntPolynomial;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn roots_of_x2_plus_1() {
        let boxes = complex_roots(&p(&[1, 0, 1]), 1e-10).unwrap();
        assert_eq!(boxes.len(), 2);
        let mut ims: Vec<f64> = boxes.iter().map(|b| b.im.mid()).collect();
        ims.sort_by(f64::total_cmp);
        assert!((ims[0] + 1.0).abs() < 1e-12);
        assert!((ims[1] - 1.0).abs() < 1e-12);
        for b in &boxes {
            assert!(b.re.contains(0.0));
        }
    }

    #[test]
    fn roots_of_golden_quadratic() {
        // oracle: quadratic formula (1 +- sqrt 5)/2
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let boxes = complex_roots(&p(&[-1, -1, 1]), 1e-10).unwrap();
        let mut res: Vec<f64> = boxes.iter().map(|b| b.re.mid()).collect();
        res.sort_by(f64::total_cmp);
        assert!((res[0] - (1.0 - phi)).abs() < 1e-12, "{}", res[0]);
        assert!((res[1] - phi).abs() < 1e-12);
    }

    #[test]
    fn roots_of_x3_minus_2() {
        // oracle: cube root of 2 and a conjugate pair
        let boxes = complex_roots(&p(&[-2, 0, 0, 1]), 1e-9).unwrap();
        assert_eq!(boxes.len(), 3);
        let real: Vec<&ComplexInterval> =
            boxes.iter().filter(|b| b.im.contains(0.0)).collect();
        assert_eq!(real.len(), 1);
        assert!((real[0].re.mid() - 2f64.powf(1.0 / 3.0)).abs() < 1e-12);
        for i in 0..3 {
            for j in (i + 1)..3 {
                assert!(boxes[i].disjoint(&boxes[j]));
            }
        }
    }

    #[test]
    fn non_squarefree_rejected() {
        assert_eq!(
            complex_roots(&p(&[1, -2, 1]), 1e-9).unwrap_err(),
            PolyError::NotSquarefree
        );
    }

    #[test]
    fn mahler_linear_and_quadratics() {
        // 2x - 3: M = max(|a0|, |a1|) = 3
        let m = mahler_measure(&p(&[-3, 2]), 40).unwrap();
        assert!(m.contains(3.0), "[{}, {}]", m.lo, m.hi);
        // golden ratio
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let m = mahler_measure(&p(&[-1, -1, 1]), 40).unwrap();
        assert!(m.contains(phi));
        assert!((m.mid() - 1.6180339887).abs() < 1e-9);
    }

    #[test]
    fn mahler_lehmer_polynomial() {
        // oracle: the root finder itself, value matches the classical
        // decimal expansion to 7 places
        let lehmer = p(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        let m = mahler_measure(&lehmer, 40).unwrap();
        assert!((m.mid() - 1.17628081826).abs() < 1e-8, "[{}, {}]", m.lo, m.hi);
    }

    #[test]
    fn mahler_multiplicative_over_products() {
        let f = p(&[-1, -1, 1]);
        let g = p(&[-2, 0, 0, 1]);
        let mf = mahler_measure(&f, 40).unwrap();
        let mg = mahler_measure(&g, 40).unwrap();
        let mfg = mahler_measure(&f.mul(&g), 40).unwrap();
        let prod = mf.mul(&mg);
        assert!(prod.overlaps(&mfg));
    }

    #[test]
    fn mahler_counts_multiplicity() {
        let f = p(&[-2, 1]); // x - 2, M = 2
        let f2 = f.mul(&f); // M = 4
        let m = mahler_measure(&f2, 40).unwrap();
        assert!(m.contains(4.0));
    }

    #[test]
    fn house_examples() {
        let h = house(&p(&[1, 0, 1]), 40).unwrap();
        assert!(h.contains(1.0));
        let h = house(&p(&[-2, 0, 1]), 40).unwrap();
        assert!((h.mid() - 2f64.sqrt()).abs() < 1e-12);
        let h = house(&p(&[-2, 0, 0, 1]), 40).unwrap();
        assert!((h.mid() - 2f64.powf(1.0 / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn random_corpus_disjoint_boxes_count_equals_degree() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let mut done = 0;
        while done < 60 {
            let deg = rng.gen_range(2..=10);
            let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-50..=50)).collect();
            if c[deg] == 0 {
                c[deg] = 1;
            }
            let f = p(&c);
            if f.degree() != Some(deg) || !f.is_squarefree().unwrap_or(false) {
                continue;
            }
            let boxes = complex_roots(&f, 1e-6).expect("random squarefree poly certifies");
            assert_eq!(boxes.len(), deg);
            for i in 0..boxes.len() {
                for j in (i + 1)..boxes.len() {
                    assert!(boxes[i].disjoint(&boxes[j]));
                }
            }
            done += 1;
        }
    }

    #[test]
    fn discriminant_matches_product_form_at_certified_roots() {
        // product-form oracle: D = lc^(2n-2) prod_{i<j} (a_i - a_j)^2
        use crate::exactpoly::discriminant;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let mut done = 0;
        while done < 40 {
            let deg = rng.gen_range(2..=8);
            let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-20..=20)).collect();
            if c[deg] == 0 {
                c[deg] = 3;
            }
            let f = p(&c);
            if f.degree() != Some(deg) || !f.is_squarefree().unwrap_or(false) {
                continue;
            }
            let boxes = match complex_roots(&f, 1e-7) {
                Ok(b) => b,
                Err(_) => continue,
            };
            let mut prod = num_complex::Complex64::new(1.0, 0.0);
            for i in 0..boxes.len() {
                for j in (i + 1)..boxes.len() {
                    let d = boxes[i].center() - boxes[j].center();
                    prod *= d * d;
                }
            }
            let lc = f.leading_coefficient().to_string().parse::<f64>().unwrap();
            let approx = lc.powi((2 * deg - 2) as i32) * prod.re;
            let exact = discriminant(&f).unwrap().to_string().parse::<f64>().unwrap();
            let scale = exact.abs().max(approx.abs()).max(1.0);
            assert!(
                ((approx - exact) / scale).abs() < 1e-6,
                "f = {f}: product form {approx} vs exact {exact}"
            );
            done += 1;
        }
    }
}
