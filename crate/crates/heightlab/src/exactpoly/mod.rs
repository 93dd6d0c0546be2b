//! Exact polynomial arithmetic over Z and Q, and certified complex root
//! isolation. Everything downstream (heights, splitting types, curve
//! invariants) consumes these kernels.
//!
//! Polynomials are stored constant term first. The zero polynomial is the
//! empty coefficient vector; all constructors trim leading zeros so the
//! leading coefficient of a nonzero polynomial is never zero.

mod roots;

pub use roots::{
    certified_roots_with_errors, complex_roots, house, mahler_measure, ComplexInterval,
};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolyError {
    #[error("constant polynomial has no discriminant")]
    ConstantDiscriminant,
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not squarefree; take the squarefree part first")]
    NotSquarefree,
    #[error("requested precision is beyond what the root finder can certify")]
    PrecisionExhausted,
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A polynomial with exact integer coefficients, constant term first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({})", self)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{}", a)?,
                1 if a.is_one() => write!(f, "x")?,
                1 => write!(f, "{}x", a)?,
                _ if a.is_one() => write!(f, "x^{}", i)?,
                _ => write!(f, "{}x^{}", a, i)?,
            }
        }
        Ok(())
    }
}

impl IntPolynomial {
    /// Builds a polynomial from coefficients, constant term first.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPolynomial { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// The monomial x.
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// x^n - a.
    pub fn xn_minus(n: usize, a: i64) -> Self {
        let mut c = vec![BigInt::zero(); n + 1];
        c[0] = BigInt::from(-a);
        c[n] = BigInt::one();
        Self::new(c)
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading_coefficient(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coefficient().is_one()
    }

    /// gcd of the coefficients, with the sign of the leading coefficient.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        if self.leading_coefficient().is_negative() {
            -g
        } else {
            g
        }
    }

    /// f / content(f); content(primitive_part(f)) == 1.
    pub fn primitive_part(&self) -> IntPolynomial {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        IntPolynomial::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    pub fn eval_bigint(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> IntPolynomial {
        if self.coeffs.len() <= 1 {
            return IntPolynomial::zero();
        }
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn add(&self, other: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        IntPolynomial::new(out)
    }

    pub fn sub(&self, other: &IntPolynomial) -> IntPolynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Coefficients reversed: x^deg * f(1/x).
    pub fn reverse(&self) -> IntPolynomial {
        let mut c = self.coeffs.clone();
        c.reverse();
        IntPolynomial::new(c)
    }

    /// f(x + a).
    pub fn shift(&self, a: &BigInt) -> IntPolynomial {
        let mut acc = IntPolynomial::zero();
        let xa = IntPolynomial::new(vec![a.clone(), BigInt::one()]);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&xa);
            acc = acc.add(&IntPolynomial::new(vec![c.clone()]));
        }
        acc
    }

    /// f(g(x)).
    pub fn compose(&self, g: &IntPolynomial) -> IntPolynomial {
        let mut acc = IntPolynomial::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g);
            acc = acc.add(&IntPolynomial::new(vec![c.clone()]));
        }
        acc
    }

    /// Pseudo-division: lc(d)^(deg f - deg d + 1) * f = q*d + r with
    /// deg r < deg d. Requires d nonzero.
    pub fn pseudo_div_rem(&self, d: &IntPolynomial) -> (IntPolynomial, IntPolynomial) {
        assert!(!d.is_zero());
        let dd = d.degree().unwrap();
        let lc = d.leading_coefficient();
        let mut r = self.clone();
        let mut q = IntPolynomial::zero();
        if self.degree().map_or(true, |df| df < dd) {
            return (IntPolynomial::zero(), r);
        }
        let steps = self.degree().unwrap() - dd + 1;
        for _ in 0..steps {
            let rd = match r.degree() {
                Some(v) if v >= dd => v,
                _ => {
                    r = r.scale(&lc);
                    q = q.scale(&lc);
                    continue;
                }
            };
            let t_coeff = r.leading_coefficient();
            let shift = rd - dd;
            // r <- lc*r - t * x^shift * d
            let mut t = vec![BigInt::zero(); shift + 1];
            t[shift] = t_coeff;
            let t = IntPolynomial::new(t);
            r = r.scale(&lc).sub(&t.mul(d));
            q = q.scale(&lc).add(&t);
        }
        (q, r)
    }

    /// Exact division over Q, panicking if the division is not exact.
    pub fn div_exact(&self, d: &IntPolynomial) -> IntPolynomial {
        let (q, r) = rational_div_rem(&to_rational_poly(self), &to_rational_poly(d));
        assert!(
            r.iter().all(|c| c.is_zero()),
            "div_exact: {} not divisible by {}",
            self,
            d
        );
        assert!(
            q.iter().all(|c| c.is_integer()),
            "div_exact: quotient of {} by {} is not integral",
            self,
            d
        );
        IntPolynomial::new(q.iter().map(|c| c.to_integer()).collect())
    }

    /// Subresultant-based gcd (primitive part).
    pub fn gcd(&self, other: &IntPolynomial) -> IntPolynomial {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let (_, r) = a.pseudo_div_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        let mut g = a.primitive_part();
        if g.leading_coefficient().is_negative() {
            g = g.neg();
        }
        g
    }

    /// True iff gcd(f, f') is constant.
    pub fn is_squarefree(&self) -> Result<bool, PolyError> {
        match self.degree() {
            None => Err(PolyError::ZeroPolynomial),
            Some(0) => Err(PolyError::ZeroPolynomial),
            Some(_) => Ok(self.gcd(&self.derivative()).degree() == Some(0)),
        }
    }

    /// Largest squarefree divisor (primitive).
    pub fn squarefree_part(&self) -> IntPolynomial {
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.primitive_part();
        }
        self.primitive_part().div_exact(&g).primitive_part()
    }

    /// Squarefree decomposition: returns (content, [(g_k, k)]) with
    /// f = content * prod g_k^k, each g_k primitive squarefree.
    pub fn squarefree_decomposition(&self) -> (BigInt, Vec<(IntPolynomial, usize)>) {
        assert!(!self.is_zero());
        let content = self.content();
        let f = self.primitive_part();
        if f.degree() == Some(0) {
            return (content, vec![]);
        }
        // Yun's algorithm over Q, valid in characteristic zero.
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        if a0.degree() == Some(0) {
            return (content, vec![(f, 1)]);
        }
        let mut out = Vec::new();
        let mut b = f.div_exact(&a0);
        let mut c = fp.div_exact(&a0);
        let mut k = 1usize;
        loop {
            let d = c.sub(&b.derivative());
            if d.is_zero() {
                if b.degree().map_or(false, |d| d > 0) {
                    out.push((b.primitive_part(), k));
                }
                break;
            }
            let a = b.gcd(&d);
            if a.degree().map_or(false, |d| d > 0) {
                out.push((a.primitive_part(), k));
            }
            b = b.div_exact(&a);
            c = d.div_exact(&a);
            k += 1;
            if b.degree() == Some(0) {
                break;
            }
        }
        (content, out)
    }
}

pub(crate) fn to_rational_poly(f: &IntPolynomial) -> Vec<BigRational> {
    f.coeffs.iter().map(|c| BigRational::from(c.clone())).collect()
}

pub(crate) fn rational_div_rem(
    num: &[BigRational],
    den: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>) {
    let dd = den.len() - 1;
    assert!(!den.is_empty() && !den[dd].is_zero());
    let mut r: Vec<BigRational> = num.to_vec();
    if r.len() <= dd {
        return (vec![BigRational::zero()], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - dd];
    while r.len() > dd {
        let k = r.len() - 1;
        let c = &r[k] / &den[dd];
        if !c.is_zero() {
            q[k - dd] = c.clone();
            for i in 0..=dd {
                let v = &den[i] * &c;
                r[k - dd + i] -= v;
            }
        }
        r.pop();
        while r.last().map_or(false, |c| c.is_zero()) && r.len() > dd {
            r.pop();
        }
    }
    while r.last().map_or(false, |c| c.is_zero()) {
        r.pop();
    }
    (q, r)
}

/// Exact resultant of two nonzero integer polynomials via the subresultant
/// polynomial remainder sequence. Res(f, g) = lc(f)^deg(g) * prod g(alpha_i).
pub fn resultant(f: &IntPolynomial, g: &IntPolynomial) -> Result<BigInt, PolyError> {
    if f.is_zero() || g.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    Ok(resultant_inner(f.clone(), g.clone()))
}

fn resultant_inner(f: IntPolynomial, g: IntPolynomial) -> BigInt {
    let (mut a, mut b) = (f, g);
    let mut sign = BigInt::one();
    if a.degree().unwrap() < b.degree().unwrap() {
        if a.degree().unwrap() % 2 == 1 && b.degree().unwrap() % 2 == 1 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if b.degree() == Some(0) {
        return sign * b.leading_coefficient().pow(a.degree().unwrap() as u32);
    }
    // Res(ca*A, cb*B) = ca^deg(B) cb^deg(A) Res(A, B) with signed contents
    let ca = a.content();
    let cb = b.content();
    let mut t = ca.pow(b.degree().unwrap() as u32) * cb.pow(a.degree().unwrap() as u32) * sign;
    let mut ap = a.primitive_part();
    let mut bp = b.primitive_part();
    let mut g_coef = BigInt::one();
    let mut h_coef = BigInt::one();
    loop {
        let da = ap.degree().unwrap();
        let db = bp.degree().unwrap();
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            t = -t;
        }
        let (_, r) = ap.pseudo_div_rem(&bp);
        if r.is_zero() {
            return BigInt::zero();
        }
        ap = bp;
        let divisor = &g_coef * h_coef.pow(delta as u32);
        bp = IntPolynomial::new(r.coeffs().iter().map(|c| c / &divisor).collect());
        g_coef = ap.leading_coefficient();
        h_coef = if delta == 0 {
            h_coef
        } else {
            // h = g^delta / h^(delta-1), exact by subresultant theory
            let num = g_coef.pow(delta as u32);
            let den = h_coef.pow(delta as u32 - 1);
            &num / &den
        };
        if bp.degree() == Some(0) {
            let da = ap.degree().unwrap() as u32;
            let num = bp.leading_coefficient().pow(da);
            let den = h_coef.pow(da.saturating_sub(1));
            return t * (&num / &den);
        }
    }
}

/// Exact discriminant: D = (-1)^(n(n-1)/2) Res(f, f') / lc(f).
pub fn discriminant(f: &IntPolynomial) -> Result<BigInt, PolyError> {
    match f.degree() {
        None => Err(PolyError::ZeroPolynomial),
        Some(0) => Err(PolyError::ConstantDiscriminant),
        Some(n) => {
            let fp = f.derivative();
            if fp.is_zero() {
                return Ok(BigInt::zero());
            }
            let res = resultant(f, &fp)?;
            let lc = f.leading_coefficient();
            let q = &res / &lc;
            debug_assert_eq!(&q * &lc, res);
            let sign = if (n * (n - 1) / 2) % 2 == 1 { -1 } else { 1 };
            Ok(q * BigInt::from(sign))
        }
    }
}

/// The n-th cyclotomic polynomial, computed by exact division of x^n - 1.
pub fn cyclotomic(n: usize) -> IntPolynomial {
    assert!(n >= 1);
    if n == 1 {
        return IntPolynomial::from_i64(&[-1, 1]);
    }
    let mut num = IntPolynomial::xn_minus(n, 1);
    for d in 1..n {
        if n % d == 0 {
            num = num.div_exact(&cyclotomic(d));
        }
    }
    num
}

/// Parses the one-polynomial-per-line text format: space-separated integer
/// coefficients, constant term first; `#` starts a comment.
pub fn parse_poly_file(text: &str) -> Result<Vec<IntPolynomial>, PolyError> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        out.push(parse_poly_line(line, idx + 1)?);
    }
    Ok(out)
}

/// Parses a single line of space-separated coefficients, constant first.
pub fn parse_poly_line(line: &str, line_no: usize) -> Result<IntPolynomial, PolyError> {
    let mut coeffs = Vec::new();
    for tok in line.split_whitespace() {
        let c: BigInt = tok.parse().map_err(|e| PolyError::Parse {
            line: line_no,
            msg: format!("bad coefficient {tok:?}: {e}"),
        })?;
        coeffs.push(c);
    }
    if coeffs.is_empty() {
        return Err(PolyError::Parse {
            line: line_no,
            msg: "empty polynomial".into(),
        });
    }
    Ok(IntPolynomial::new(coeffs))
}

/// Renders a polynomial in the text format (constant term first).
pub fn poly_to_line(f: &IntPolynomial) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    f.coeffs()
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}
