//! Néron local heights.
//!
//! Non-archimedean places use the explicit valuation formulas per reduction
//! type on a minimal model, kept exact as rational multiples of log p. The
//! archimedean place uses the q-series
//!   lambda = -1/2 B2(Im z / Im tau) log|q| - log|1 - u|
//!            - sum_{n>=1} log|(1 - q^n u)(1 - q^n u^{-1})|
//! with the period lattice and elliptic logarithm computed through Legendre
//! integrals (Carlson symmetric form), the basis Gauss-reduced so that the
//! series converges geometrically with an explicit tail bound.

use super::{
    rational_mod_p, CurveError, CurvePoint, EllipticCurveModel, ReductionType,
};
use crate::exactpoly::{complex_roots, IntPolynomial};
use crate::interval::Interval;
use crate::padic::{vp, PadicContext};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq)]
pub enum Place {
    Archimedean,
    Prime(u64),
}

/// One local height value with its provenance.
#[derive(Clone, Debug)]
pub struct LocalHeightReport {
    pub place: Place,
    pub reduction: Option<ReductionType>,
    /// lambda_v in nats
    pub lambda: Interval,
    /// exact rational r with lambda = r log p, when the place is finite
    pub lambda_over_logp: Option<BigRational>,
    pub ord_disc: Option<i64>,
    /// alpha(P) for singular multiplicative points
    pub alpha: Option<BigRational>,
    /// k_v = -ord_v(j) at multiplicative places
    pub kv: Option<i64>,
    /// whether the smooth-reduction formula applied
    pub smooth_path: bool,
    /// series terms used at the archimedean place
    pub series_terms: Option<usize>,
}

/// Second Bernoulli polynomial B2(t) = t^2 - t + 1/6 on [0,1), extended
/// 1-periodically.
pub fn bernoulli2(t: f64) -> f64 {
    let t = t - t.floor();
    t * t - t + 1.0 / 6.0
}

fn bernoulli2_rational(t: &BigRational) -> BigRational {
    let t = t - t.floor();
    &t * &t - &t + BigRational::new(BigInt::one(), BigInt::from(6))
}

// ---------------------------------------------------------------------------
// non-archimedean local heights
// ---------------------------------------------------------------------------

/// Néron local height at a finite place of a minimal integral model, exact
/// as a rational multiple of log p.
///
/// Smooth-reduction points use
///   lambda = 1/2 max(ord_p(1/x), 0) log p + 1/12 ord_p(disc) log p;
/// singular multiplicative points use 1/2 B2(alpha) ord_p(disc) log p with
/// alpha = min(ord_p(2y + a1 x + a3)/ord_p(disc), 1/2) (the same formula
/// covers the nonsplit case: it is the split formula over the unramified
/// quadratic extension, and all inputs are p-rational); singular additive
/// points use the two-torsion / three-torsion polynomial case split.
pub fn local_height_nonarch(
    e: &EllipticCurveModel,
    p_point: &CurvePoint,
    p: u64,
) -> Result<LocalHeightReport, CurveError> {
    let (x, y) = match p_point {
        CurvePoint::Infinity => return Err(CurveError::PointAtInfinity),
        CurvePoint::Affine(x, y) => (x, y),
    };
    if !e.contains(p_point) {
        return Err(CurveError::NotOnCurve);
    }
    assert!(e.is_integral(), "local heights need a minimal integral model");
    let ctx = PadicContext::new(p, 2).map_err(|_| CurveError::NotPrime(p))?;
    let red = super::reduction_type(e, p)?;
    let n_disc = vp(&e.disc, &ctx).unwrap();
    let vx = vp(x, &ctx);

    // reduction of P is singular iff both partial derivatives vanish there
    let singular = match vx {
        Some(v) if v < 0 => false, // reduces to the point at infinity
        None | Some(_) => {
            // x (and then y) are p-integral on an integral model when
            // ord_p(x) >= 0
            let xm = rational_mod_p(x, p);
            let ym = rational_mod_p(y, p);
            let a1 = rational_mod_p(&e.a1, p);
            let a2 = rational_mod_p(&e.a2, p);
            let a3 = rational_mod_p(&e.a3, p);
            let a4 = rational_mod_p(&e.a4, p);
            let dy = (2 * ym + mulp(a1, xm, p) + a3) % p;
            let dx = (3 * mulp(xm, xm, p) % p + 2 * mulp(a2, xm, p) % p + a4 + 4 * p
                - mulp(a1, ym, p))
                % p;
            dy == 0 && dx == 0
        }
    };

    let logp = Interval::point(p as f64).ln();
    let third = |r: BigRational| -> (Interval, BigRational) {
        let iv = Interval::from_rational(&r).mul(&logp);
        (iv, r)
    };

    if !singular {
        // lambda = 1/2 max(-ord x, 0) log p + 1/12 ord(disc) log p
        let m = match vx {
            Some(v) if v < 0 => BigRational::new(BigInt::from(-v), BigInt::from(2)),
            _ => BigRational::zero(),
        };
        let r = m + BigRational::new(BigInt::from(n_disc), BigInt::from(12));
        let (lambda, r) = third(r);
        return Ok(LocalHeightReport {
            place: Place::Prime(p),
            reduction: Some(red),
            lambda,
            lambda_over_logp: Some(r),
            ord_disc: Some(n_disc),
            alpha: None,
            kv: None,
            smooth_path: true,
            series_terms: None,
        });
    }

    match red {
        ReductionType::Good => unreachable!("good reduction has no singular points"),
        ReductionType::SplitMultiplicative | ReductionType::NonsplitMultiplicative => {
            let w = BigRational::from(BigInt::from(2)) * y + &e.a1 * x + &e.a3;
            let vw = vp(&w, &ctx);
            let half = BigRational::new(BigInt::one(), BigInt::from(2));
            let alpha = match vw {
                None => half.clone(),
                Some(v) => {
                    let a = BigRational::new(BigInt::from(v), BigInt::from(n_disc));
                    if a < half {
                        a
                    } else {
                        half.clone()
                    }
                }
            };
            let b2a = bernoulli2_rational(&alpha);
            let r = half * b2a * BigRational::from(BigInt::from(n_disc));
            let (lambda, r) = third(r);
            let kv = vp(&e.j, &ctx).map(|v| -v);
            Ok(LocalHeightReport {
                place: Place::Prime(p),
                reduction: Some(red),
                lambda,
                lambda_over_logp: Some(r),
                ord_disc: Some(n_disc),
                alpha: Some(alpha),
                kv,
                smooth_path: false,
                series_terms: None,
            })
        }
        ReductionType::Additive => {
            // F(P) = (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
            // (two-torsion polynomial); G(P) = psi3(x)^2 (three-torsion)
            let w = BigRational::from(BigInt::from(2)) * y + &e.a1 * x + &e.a3;
            let v_f = vp(&w, &ctx).map(|v| 2 * v);
            let psi3 = BigRational::from(BigInt::from(3)) * x * x * x * x
                + &e.b2 * x * x * x
                + BigRational::from(BigInt::from(3)) * &e.b4 * x * x
                + BigRational::from(BigInt::from(3)) * &e.b6 * x
                + &e.b8;
            let v_g = vp(&psi3, &ctx).map(|v| 2 * v);
            let twelfth = BigRational::new(BigInt::from(n_disc), BigInt::from(12));
            let first_branch = match (v_g, v_f) {
                (_, None) => false,         // F = 0: use the G branch
                (None, Some(_)) => true,    // G = 0: use the F branch
                (Some(g), Some(f)) => g >= 3 * f,
            };
            let r = if first_branch {
                let f = v_f.expect("checked");
                -BigRational::new(BigInt::from(f), BigInt::from(6)) + twelfth
            } else {
                let g = v_g.expect("checked");
                -BigRational::new(BigInt::from(g), BigInt::from(16)) + twelfth
            };
            let (lambda, r) = third(r);
            Ok(LocalHeightReport {
                place: Place::Prime(p),
                reduction: Some(red),
                lambda,
                lambda_over_logp: Some(r),
                ord_disc: Some(n_disc),
                alpha: None,
                kv: None,
                smooth_path: false,
                series_terms: None,
            })
        }
    }
}

fn mulp(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

// ---------------------------------------------------------------------------
// archimedean local height
// ---------------------------------------------------------------------------

/// Carlson's symmetric elliptic integral R_F for nonnegative real arguments
/// (at most one zero).
fn carlson_rf(mut x: f64, mut y: f64, mut z: f64) -> f64 {
    for _ in 0..60 {
        let lam = x.sqrt() * y.sqrt() + y.sqrt() * z.sqrt() + z.sqrt() * x.sqrt();
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        let mu = (x + y + z) / 3.0;
        let dev = ((x - mu).abs().max((y - mu).abs()).max((z - mu).abs())) / mu;
        if dev < 1e-12 {
            break;
        }
    }
    let mu = (x + y + z) / 3.0;
    let dx = 1.0 - x / mu;
    let dy = 1.0 - y / mu;
    let dz = 1.0 - z / mu;
    let e2 = dx * dy + dy * dz + dz * dx;
    let e3 = dx * dy * dz;
    (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / mu.sqrt()
}

/// Complete elliptic integral K(k) = R_F(0, 1 - k^2, 1).
fn elliptic_k(k2: f64) -> f64 {
    carlson_rf(0.0, (1.0 - k2).max(1e-300), 1.0)
}

/// Incomplete integral F(phi, k) for phi in [0, pi], via
/// F = sin(phi) R_F(cos^2 phi, 1 - k^2 sin^2 phi, 1) and the reflection
/// F(phi) = 2K - F(pi - phi) past pi/2.
fn elliptic_f(phi: f64, k2: f64) -> f64 {
    if phi > std::f64::consts::FRAC_PI_2 {
        return 2.0 * elliptic_k(k2) - elliptic_f(std::f64::consts::PI - phi, k2);
    }
    let s = phi.sin();
    let c = phi.cos();
    s * carlson_rf(c * c, (1.0 - k2 * s * s).max(1e-300), 1.0)
}

/// Period lattice data and the elliptic logarithm for E/R.
struct Uniformization {
    tau: Complex64,
    z_norm: Complex64,
}

/// Computes tau = omega2 / omega1 and z(P)/omega1 for the invariant
/// differential dx / (2y + a1 x + a3), using the real cases:
/// three real branch roots (rectangular lattice, with the bounded component
/// offset by tau/2) or one real root (rhombic lattice).
fn uniformize(e: &EllipticCurveModel, x: f64) -> Result<Uniformization, CurveError> {
    // roots of the two-torsion polynomial 4 X^3 + b2 X^2 + 2 b4 X + b6
    let mut den = BigInt::one();
    for c in [&e.b6, &e.b4, &e.b2] {
        den = num_integer::lcm(den.clone(), c.denom().clone());
    }
    let dq = BigRational::from(den);
    let poly = IntPolynomial::new(vec![
        (&e.b6 * &dq).to_integer(),
        (BigRational::from(BigInt::from(2)) * &e.b4 * &dq).to_integer(),
        (&e.b2 * &dq).to_integer(),
        (BigRational::from(BigInt::from(4)) * &dq).to_integer(),
    ]);
    let boxes = complex_roots(&poly, 1e-8)
        .map_err(|err| CurveError::Precision(format!("branch roots: {err}")))?;

    if e.disc.is_positive() {
        // rectangular: e1 > e2 > e3 all real
        let mut reals: Vec<f64> = boxes.iter().map(|b| b.re.mid()).collect();
        reals.sort_by(f64::total_cmp);
        let (e3, e2, e1) = (reals[0], reals[1], reals[2]);
        let k2 = (e2 - e3) / (e1 - e3);
        let kc2 = 1.0 - k2;
        let kk = elliptic_k(k2);
        let kkc = elliptic_k(kc2);
        let s13 = (e1 - e3).sqrt();
        let tau = Complex64::new(0.0, kkc / kk);
        let omega1 = 2.0 * kk / s13;
        let z = if x >= e2 + (e1 - e2) * 0.5 || x >= e1 {
            // unbounded component
            let xx = x.max(e1);
            let arg = ((e1 - e3) / (xx - e3)).clamp(0.0, 1.0).sqrt();
            let phi = arg.asin();
            Complex64::new(elliptic_f(phi, k2) / s13, 0.0)
        } else {
            // bounded component: z = omega2/2 + t
            let xx = x.clamp(e3, e2);
            let arg = ((xx - e3) / (e2 - e3)).clamp(0.0, 1.0).sqrt();
            let phi = arg.asin();
            let t = elliptic_f(phi, k2) / s13;
            Complex64::new(t, kkc / s13)
        };
        Ok(Uniformization {
            tau,
            z_norm: z / omega1,
        })
    } else {
        // rhombic: one real root, complex pair beta +- i gamma
        let mut sorted: Vec<&crate::exactpoly::ComplexInterval> = boxes.iter().collect();
        sorted.sort_by(|a, b| a.im.mid().abs().total_cmp(&b.im.mid().abs()));
        let e1 = sorted[0].re.mid();
        let cbox = sorted
            .iter()
            .find(|b| b.im.mid() > 0.0)
            .expect("complex pair");
        let beta = cbox.re.mid();
        let gamma = cbox.im.mid();
        let a = ((e1 - beta) * (e1 - beta) + gamma * gamma).sqrt();
        let k2 = (0.5 * (1.0 - (e1 - beta) / a)).clamp(0.0, 1.0);
        let kk = elliptic_k(k2);
        let kkc = elliptic_k(1.0 - k2);
        let sa = a.sqrt();
        let omega1 = 2.0 * kk / sa;
        let tau = Complex64::new(0.5, 0.5 * kkc / kk);
        let xx = x.max(e1);
        let cosphi = ((a - (xx - e1)) / (a + (xx - e1))).clamp(-1.0, 1.0);
        let phi = cosphi.acos();
        let z = (2.0 * kk - elliptic_f(phi, k2)) / (2.0 * sa);
        Ok(Uniformization {
            tau,
            z_norm: Complex64::new(z / omega1, 0.0),
        })
    }
}

/// Gauss-reduces the basis so that |Re tau| <= 1/2 and |tau| >= 1, tracking
/// the normalized elliptic logarithm, then reduces z into the fundamental
/// cell with 0 <= Im z / Im tau < 1.
fn reduce_basis(mut tau: Complex64, mut z: Complex64) -> (Complex64, Complex64) {
    for _ in 0..64 {
        let n = tau.re.round();
        tau -= Complex64::new(n, 0.0);
        if tau.norm() >= 1.0 - 1e-15 {
            break;
        }
        z = -z / tau;
        tau = -1.0 / tau;
    }
    if tau.im < 0.0 {
        tau = -tau;
        z = -z;
    }
    let m = (z.im / tau.im).floor();
    z -= tau * m;
    z -= Complex64::new(z.re.floor(), 0.0);
    (tau, z)
}

/// Néron local height at the archimedean place via the theta-quotient
/// q-series, with a rigorous geometric tail bound.
pub fn local_height_arch(
    e: &EllipticCurveModel,
    p: &CurvePoint,
    precision_bits: u32,
) -> Result<LocalHeightReport, CurveError> {
    let x = match p {
        CurvePoint::Infinity => return Err(CurveError::PointAtInfinity),
        CurvePoint::Affine(x, _) => x.to_f64().unwrap(),
    };
    if !e.contains(p) {
        return Err(CurveError::NotOnCurve);
    }
    let uni = uniformize(e, x)?;
    let (tau, z) = reduce_basis(uni.tau, uni.z_norm);
    let q = cexp(Complex64::new(0.0, 1.0) * tau * 2.0 * std::f64::consts::PI);
    let u = cexp(Complex64::new(0.0, 1.0) * z * 2.0 * std::f64::consts::PI);
    let qabs = q.norm();
    if qabs >= 0.5 {
        return Err(CurveError::Precision("period lattice too skew".into()));
    }
    let t = z.im / tau.im;
    let log_qabs = qabs.ln();
    let mut lam = -0.5 * bernoulli2(t) * log_qabs;
    lam -= (Complex64::new(1.0, 0.0) - u).norm().max(1e-300).ln();
    let mut qn = q;
    let mut terms = 1usize;
    let tol = 2f64.powi(-(precision_bits.min(46) as i32 + 2));
    let mut tail;
    loop {
        let a = Complex64::new(1.0, 0.0) - qn * u;
        let b = Complex64::new(1.0, 0.0) - qn / u;
        lam -= a.norm().ln() + b.norm().ln();
        terms += 1;
        qn *= q;
        // |q^n u| <= |q|^n and |q^n / u| <= |q|^(n-1) in the reduced cell
        let worst = qn.norm() / u.norm().min(1.0);
        tail = 2.0 * worst / (1.0 - qabs) / (1.0 - qabs);
        if tail < tol || terms > 10_000 {
            break;
        }
    }
    let width = tail + 1e-12 * (1.0 + lam.abs());
    Ok(LocalHeightReport {
        place: Place::Archimedean,
        reduction: None,
        lambda: Interval::with_err(lam, width),
        lambda_over_logp: None,
        ord_disc: None,
        alpha: None,
        kv: None,
        smooth_path: false,
        series_terms: Some(terms),
    })
}

fn cexp(w: Complex64) -> Complex64 {
    let m = w.re.exp();
    Complex64::new(m * w.im.cos(), m * w.im.sin())
}

/// j(tau) from the q-expansion; used to validate the period computation.
#[cfg(test)]
fn j_from_tau(tau: Complex64) -> Complex64 {
    let q = cexp(Complex64::new(0.0, 1.0) * tau * 2.0 * std::f64::consts::PI);
    let coeffs = [
        744.0,
        196_884.0,
        21_493_760.0,
        864_299_970.0,
        20_245_856_256.0,
        333_202_640_600.0,
    ];
    let mut j = 1.0 / q + Complex64::new(coeffs[0], 0.0);
    let mut qn = Complex64::new(1.0, 0.0);
    for c in &coeffs[1..] {
        qn *= q;
        j += qn * *c;
    }
    j
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::{curve_from_i64, minimal_model};

    fn rat(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    #[test]
    fn carlson_basics() {
        // R_F(0, 1, 1) = pi / 2 and K(0) = pi / 2
        assert!((carlson_rf(0.0, 1.0, 1.0) - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        // K(k) for k^2 = 1/2 equals Gauss's lemniscatic-type value
        let k = elliptic_k(0.5);
        assert!((k - 1.8540746773013719).abs() < 1e-12);
        // F(phi, 0) = phi
        for phi in [0.3, 1.0, 2.5] {
            assert!((elliptic_f(phi, 0.0) - phi).abs() < 1e-12);
        }
    }

    #[test]
    fn bernoulli_periodic() {
        assert!((bernoulli2(0.0) - 1.0 / 6.0).abs() < 1e-15);
        assert!((bernoulli2(0.5) + 1.0 / 12.0).abs() < 1e-15);
        assert!((bernoulli2(1.25) - bernoulli2(0.25)).abs() < 1e-15);
    }

    #[test]
    fn periods_reproduce_j_invariant() {
        // positive and negative discriminant curves
        for a in [
            [0i64, 0, 1, -1, 0], // disc 37 > 0
            [0, 0, 0, -1, 0],    // disc 64 > 0, full 2-torsion
            [0, 0, 1, 0, 0],     // disc -27
            [0, 0, 0, 1, 0],     // disc -64
            [1, 0, 1, 4, -6],    // a general curve
        ] {
            let e = curve_from_i64(a).unwrap();
            let x = 10.0_f64.max(e.b2.to_f64().unwrap().abs() + 5.0);
            let uni = uniformize(&e, x).unwrap();
            let (tau, _) = reduce_basis(uni.tau, uni.z_norm);
            let j_exact = e.j.to_f64().unwrap();
            let j_series = j_from_tau(tau);
            // the truncated q-expansion leaves an O(1) absolute tail near
            // the corner of the fundamental domain (j close to 0)
            let tol = 1.0 + 1e-4 * j_exact.abs();
            assert!(j_series.im.abs() < tol, "{a:?}");
            assert!(
                (j_series.re - j_exact).abs() < tol,
                "{a:?}: series {} vs exact {}",
                j_series.re,
                j_exact
            );
        }
    }

    #[test]
    fn two_torsion_elliptic_log_is_half_period() {
        // x = e1 must map to z = 1/2 mod the lattice
        let e = curve_from_i64([0, 0, 0, -1, 0]).unwrap(); // y^2 = x^3 - x
        let uni = uniformize(&e, 1.0).unwrap(); // (1, 0) is 2-torsion, e1 = 1
        assert!((uni.z_norm.re - 0.5).abs() < 1e-9);
        assert!(uni.z_norm.im.abs() < 1e-12);
        // x = 0 is e2, the far end of the egg: z = (omega1 + omega2)/2
        let uni = uniformize(&e, 0.0).unwrap();
        assert!((uni.z_norm - (uni.tau * 0.5 + 0.5)).norm() < 1e-9);
        // x = -1 is e3, the near end: z = omega2 / 2
        let uni = uniformize(&e, -1.0).unwrap();
        assert!((uni.z_norm - uni.tau * 0.5).norm() < 1e-9);
    }

    #[test]
    fn nonarch_split_multiplicative_example() {
        // 37a at p = 37 and P = (0, 0): w = 1 has ord 0, the point is
        // nonsingular, so the smooth path gives (1/12) log 37
        let e = curve_from_i64([0, 0, 1, -1, 0]).unwrap();
        let rep = local_height_nonarch(&e, &CurvePoint::xy(0, 0), 37).unwrap();
        assert!(rep.smooth_path);
        let want = 37f64.ln() / 12.0;
        assert!(rep.lambda.contains(want));
        assert_eq!(
            rep.lambda_over_logp,
            Some(BigRational::new(BigInt::one(), BigInt::from(12)))
        );
        // good reduction and integral x: lambda = 0 at p = 2
        let rep = local_height_nonarch(&e, &CurvePoint::xy(0, 0), 2).unwrap();
        assert!(rep.lambda.contains(0.0) && rep.lambda.width() < 1e-15);
    }

    #[test]
    fn nonarch_singular_multiplicative_example() {
        // y^2 = x^3 + 3x^2 + 49 is nonsplit multiplicative at 7 with node at
        // (0,0); P = (0,7) reduces there: alpha = min(ord(14)/2, 1/2) = 1/2,
        // lambda = (1/2) B2(1/2) * 2 log 7 = -log 7 / 12
        let e = curve_from_i64([0, 3, 0, 0, 49]).unwrap();
        let (em, tf) = minimal_model(&e).unwrap();
        let pm = tf.forward(&CurvePoint::xy(0, 7));
        let rep = local_height_nonarch(&em, &pm, 7).unwrap();
        assert!(!rep.smooth_path);
        assert_eq!(rep.reduction, Some(ReductionType::NonsplitMultiplicative));
        assert_eq!(rep.alpha, Some(BigRational::new(BigInt::one(), BigInt::from(2))));
        assert!(rep.lambda.contains(-(7f64.ln()) / 12.0));
    }

    #[test]
    fn nonarch_singular_additive_example() {
        // y^2 = x^3 + 9x + 9 has additive reduction at 3; P = (0, 3) reduces
        // to the cusp: F(P) = 36 (v = 2), G(P) = 6561 (v = 8 >= 6), so
        // lambda = (-2/6 + 6/12) log 3 = log 3 / 6
        let e = curve_from_i64([0, 0, 0, 9, 9]).unwrap();
        assert_eq!(
            crate::elliptic::reduction_type(&e, 3).unwrap(),
            ReductionType::Additive
        );
        let rep = local_height_nonarch(&e, &CurvePoint::xy(0, 3), 3).unwrap();
        assert!(!rep.smooth_path);
        assert!(rep.lambda.contains(3f64.ln() / 6.0), "{:?}", rep.lambda);
    }

    #[test]
    fn arch_dominant_term_for_large_x() {
        // lambda_infty ~ (1/2) log|x| for points far out on the curve
        let e = curve_from_i64([0, 0, 1, -1, 0]).unwrap();
        // find a rational point with large x: multiples of (0,0) wander; use
        // an exact non-rational test x instead via a synthetic point on the
        // curve: y^2 + y = x^3 - x at x = 1000 has real y; emulate with the
        // nearest rational point by solving y exactly is not possible, so
        // use x = 6 with y from the curve equation: 6^3 - 6 = 210, y^2 + y -
        // 210 = 0, y = 14: P = (6, 14) is rational and on the curve.
        let p = CurvePoint::xy(6, 14);
        assert!(e.contains(&p));
        let rep = local_height_arch(&e, &p, 40).unwrap();
        let approx = 0.5 * 6f64.ln();
        assert!(
            (rep.lambda.mid() - approx).abs() < 0.5,
            "lambda = {:?} vs half log x = {}",
            rep.lambda,
            approx
        );
    }

    #[test]
    fn arch_egg_component_finite() {
        // 2-torsion on the bounded component of y^2 = x^3 - x
        let e = curve_from_i64([0, 0, 0, -1, 0]).unwrap();
        let rep = local_height_arch(&e, &CurvePoint::xy(0, 0), 40).unwrap();
        assert!(rep.lambda.mid().is_finite());
        let _ = rat(0);
    }
}
