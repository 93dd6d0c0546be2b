//! Real intervals with dyadic (f64) endpoints and outward rounding.
//!
//! Every arithmetic operation rounds the lower endpoint down and the upper
//! endpoint up by at least one ulp, so the true real result is always
//! contained in the returned interval. Transcendental functions (`ln`, `exp`)
//! use the libm implementations padded by two ulps, which covers their
//! worst-case error.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Next f64 above `x` (toward +inf).
pub fn next_up(x: f64) -> f64 {
    if x.is_nan() || x == f64::INFINITY {
        return x;
    }
    if x == 0.0 {
        return f64::from_bits(1);
    }
    let bits = x.to_bits();
    if x > 0.0 {
        f64::from_bits(bits + 1)
    } else {
        f64::from_bits(bits - 1)
    }
}

/// Next f64 below `x` (toward -inf).
pub fn next_down(x: f64) -> f64 {
    if x.is_nan() || x == f64::NEG_INFINITY {
        return x;
    }
    if x == 0.0 {
        return -f64::from_bits(1);
    }
    let bits = x.to_bits();
    if x > 0.0 {
        f64::from_bits(bits - 1)
    } else {
        f64::from_bits(bits + 1)
    }
}

fn down2(x: f64) -> f64 {
    next_down(next_down(x))
}

fn up2(x: f64) -> f64 {
    next_up(next_up(x))
}

/// A closed real interval `[lo, hi]` with f64 endpoints.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "interval endpoints out of order: [{lo}, {hi}]");
        Interval { lo, hi }
    }

    /// Exact point interval.
    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    /// Interval around an f64 that may carry up to `err` of absolute error.
    pub fn with_err(x: f64, err: f64) -> Self {
        Interval {
            lo: next_down(x - err),
            hi: next_up(x + err),
        }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// Width divided by the smallest absolute value in the interval.
    pub fn relative_width(&self) -> f64 {
        let m = self.lo.abs().min(self.hi.abs());
        if m == 0.0 {
            f64::INFINITY
        } else {
            self.width() / m
        }
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval::new(next_down(self.lo + other.lo), next_up(self.hi + other.hi))
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        Interval::new(next_down(self.lo - other.hi), next_up(self.hi - other.lo))
    }

    pub fn neg(&self) -> Interval {
        Interval::new(-self.hi, -self.lo)
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let cands = [
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        ];
        let lo = cands.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = cands.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Interval::new(next_down(lo), next_up(hi))
    }

    pub fn scale(&self, c: f64) -> Interval {
        self.mul(&Interval::point(c))
    }

    /// `max(1, x)` applied endpoint-wise; exact at the clamp.
    pub fn max_with_one(&self) -> Interval {
        Interval::new(self.lo.max(1.0), self.hi.max(1.0))
    }

    /// Natural logarithm. Requires a strictly positive interval.
    pub fn ln(&self) -> Interval {
        assert!(self.lo > 0.0, "ln of non-positive interval [{}, {}]", self.lo, self.hi);
        Interval::new(down2(self.lo.ln()), up2(self.hi.ln()))
    }

    pub fn exp(&self) -> Interval {
        Interval::new(down2(self.lo.exp()).max(0.0), up2(self.hi.exp()))
    }

    /// Integer power, n >= 0.
    pub fn powi(&self, n: u32) -> Interval {
        let mut acc = Interval::point(1.0);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Division by an exact positive integer.
    pub fn div_u32(&self, n: u32) -> Interval {
        let d = n as f64;
        Interval::new(next_down(self.lo / d), next_up(self.hi / d))
    }

    /// Tight enclosure of a big integer.
    pub fn from_bigint(x: &BigInt) -> Interval {
        let f = x.to_f64().unwrap_or(if x.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        });
        Interval::new(down2(f), up2(f))
    }

    /// Tight enclosure of a big rational.
    pub fn from_rational(x: &BigRational) -> Interval {
        if x.is_zero() {
            return Interval::point(0.0);
        }
        let n = x.numer().to_f64().unwrap_or(if x.numer().is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        });
        let d = x.denom().to_f64().unwrap_or(f64::INFINITY);
        let q = n / d;
        Interval::new(down2(q - q.abs() * 1e-15), up2(q + q.abs() * 1e-15))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn outward_rounding_widens() {
        let a = Interval::point(1.0);
        let b = Interval::point(3.0);
        let s = a.add(&b);
        assert!(s.lo < 4.0 && s.hi > 4.0 || s.contains(4.0));
        assert!(s.contains(4.0));
    }

    #[test]
    fn ln_exp_contains_truth() {
        let x = Interval::point(2.0);
        assert!(x.ln().contains(std::f64::consts::LN_2));
        assert!(Interval::point(1.0).exp().contains(std::f64::consts::E));
    }

    proptest! {
        #[test]
        fn mul_contains_product(a in -1e6f64..1e6, b in -1e6f64..1e6) {
            let ia = Interval::with_err(a, 1e-9);
            let ib = Interval::with_err(b, 1e-9);
            prop_assert!(ia.mul(&ib).contains(a * b));
        }

        #[test]
        fn add_sub_contains(a in -1e9f64..1e9, b in -1e9f64..1e9) {
            let ia = Interval::point(a);
            let ib = Interval::point(b);
            prop_assert!(ia.add(&ib).contains(a + b));
            prop_assert!(ia.sub(&ib).contains(a - b));
        }
    }
}
