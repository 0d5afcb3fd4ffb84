use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Field, Ring, Rational, ScalarError};

/// An element `a + b√d` of a quadratic extension of the rationals.
///
/// `d` is a squarefree integer other than 0 and 1. Values with `b = 0` are
/// stored with the label `d = 0`, so a rational number compares equal to
/// itself regardless of which extension it was computed in. Arithmetic
/// between two irrational values with different labels is a domain
/// mismatch: the operator impls panic, the `checked_*` methods return
/// [`ScalarError::DomainMismatch`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    d: i64,
}

/// Writes `n = s² · d` with `d` squarefree (sign carried by `d`).
///
/// Trial division runs up to the cube root of the unfactored part; the
/// remaining cofactor has at most two prime factors, so it is either a
/// perfect square or squarefree.
pub fn squarefree_decompose(n: &BigInt) -> (BigInt, BigInt) {
    if n.is_zero() {
        return (BigInt::zero(), BigInt::zero());
    }
    let sign = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut m = n.abs();
    let mut s = BigInt::one();
    let mut d = BigInt::one();
    let mut p = BigInt::from(2u32);
    while &p * &p * &p <= m {
        let mut e = 0u32;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        for _ in 0..e / 2 {
            s *= &p;
        }
        if e % 2 == 1 {
            d *= &p;
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    if !m.is_one() {
        let r = m.sqrt();
        if &r * &r == m {
            s *= r;
        } else {
            d *= m;
        }
    }
    (s, sign * d)
}

impl QuadExt {
    /// `a + b√d`; `d` must already be squarefree and not in {0, 1}.
    pub fn new(a: Rational, b: Rational, d: i64) -> Result<Self, ScalarError> {
        let (s, core) = squarefree_decompose(&BigInt::from(d));
        if d == 0 || d == 1 || !s.is_one() || core != BigInt::from(d) {
            return Err(ScalarError::InvalidExtension(d));
        }
        Ok(Self::canonical(a, b, d))
    }

    fn canonical(a: Rational, b: Rational, d: i64) -> Self {
        if b.is_zero() {
            QuadExt { a, b, d: 0 }
        } else {
            QuadExt { a, b, d }
        }
    }

    pub fn rational(a: Rational) -> Self {
        QuadExt { a, b: Rational::zero(), d: 0 }
    }

    /// The square root of a rational, in `Q(√d)` with `d` its squarefree part.
    pub fn sqrt(r: &Rational) -> Self {
        let prod = r.numer() * r.denom();
        let (s, d) = squarefree_decompose(&prod);
        let den = Rational::from_bigint(r.denom().clone());
        let coeff = Rational::from_bigint(s) / den;
        if d.is_one() || d.is_zero() {
            return QuadExt::rational(coeff);
        }
        let d: i64 = i64::try_from(d).expect("squarefree part fits in i64");
        QuadExt::canonical(Rational::zero(), coeff, d)
    }

    /// `√d` for a squarefree label.
    pub fn sqrt_of(d: i64) -> Result<Self, ScalarError> {
        Self::new(Rational::zero(), Rational::one(), d)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// The extension label, or 0 when the value is rational.
    pub fn label(&self) -> i64 {
        self.d
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.b.is_zero().then_some(&self.a)
    }

    pub fn conjugate(&self) -> Self {
        QuadExt { a: self.a.clone(), b: -self.b.clone(), d: self.d }
    }

    /// Real embedding with `√d > 0`; `None` when `d < 0` and `b ≠ 0`.
    pub fn to_f64(&self) -> Option<f64> {
        if self.b.is_zero() {
            return Some(self.a.to_f64());
        }
        if self.d < 0 {
            return None;
        }
        Some(self.a.to_f64() + self.b.to_f64() * (self.d as f64).sqrt())
    }

    fn joint_label(&self, o: &Self) -> Result<i64, ScalarError> {
        match (self.d, o.d) {
            (0, d) | (d, 0) => Ok(d),
            (d1, d2) if d1 == d2 => Ok(d1),
            (d1, d2) => Err(ScalarError::DomainMismatch(d1, d2)),
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, ScalarError> {
        let d = self.joint_label(o)?;
        Ok(Self::canonical(&self.a + &o.a, &self.b + &o.b, d))
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self, ScalarError> {
        let d = self.joint_label(o)?;
        Ok(Self::canonical(&self.a - &o.a, &self.b - &o.b, d))
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self, ScalarError> {
        let d = self.joint_label(o)?;
        let dd = Rational::from(d);
        let a = &self.a * &o.a + &(&self.b * &o.b) * &dd;
        let b = &self.a * &o.b + &self.b * &o.a;
        Ok(Self::canonical(a, b, d))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, ScalarError> {
        self.joint_label(o)?;
        self.checked_mul(&o.inv()?)
    }
}

impl From<Rational> for QuadExt {
    fn from(r: Rational) -> Self {
        QuadExt::rational(r)
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let root = format!("sqrt({})", self.d);
        let b_part = if self.b.is_one() {
            root
        } else if (-self.b.clone()).is_one() {
            format!("-{root}")
        } else {
            format!("{}*{root}", self.b)
        };
        if self.a.is_zero() {
            write!(f, "{b_part}")
        } else if b_part.starts_with('-') {
            write!(f, "{} - {}", self.a, &b_part[1..])
        } else {
            write!(f, "{} + {b_part}", self.a)
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! panicking_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr for QuadExt {
            type Output = QuadExt;
            fn $m(self, o: QuadExt) -> QuadExt {
                self.$checked(&o).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

panicking_op!(Add, add, checked_add);
panicking_op!(Sub, sub, checked_sub);
panicking_op!(Mul, mul, checked_mul);
panicking_op!(Div, div, checked_div);

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { a: -self.a, b: -self.b, d: self.d }
    }
}

impl Ring for QuadExt {
    fn zero() -> Self {
        QuadExt::rational(Rational::zero())
    }
    fn one() -> Self {
        QuadExt::rational(Rational::one())
    }
    fn from_rational(r: &Rational) -> Self {
        QuadExt::rational(r.clone())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl Field for QuadExt {
    fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivideByZero);
        }
        let dd = Rational::from(self.d);
        let norm = &self.a * &self.a - &(&self.b * &self.b) * &dd;
        let a = self.a.clone() / norm.clone();
        let b = -self.b.clone() / norm;
        Ok(Self::canonical(a, b, self.d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    #[test]
    fn sqrt_minus_three_squares_to_minus_three() {
        let r = QuadExt::sqrt_of(-3).unwrap();
        assert_eq!(r.clone() * r, QuadExt::from(Rational::from(-3)));
    }

    #[test]
    fn zero_is_label_free() {
        let z5 = QuadExt::new(q(0, 1), q(0, 1), 5).unwrap();
        let z7 = QuadExt::new(q(0, 1), q(0, 1), 7).unwrap();
        assert_eq!(z5, z7);
        assert_eq!(z5, QuadExt::zero());
        let x = QuadExt::new(q(2, 1), q(1, 1), 5).unwrap();
        assert_eq!(x.clone() - x, QuadExt::zero());
    }

    #[test]
    fn labels_must_be_squarefree() {
        assert!(QuadExt::sqrt_of(12).is_err());
        assert!(QuadExt::sqrt_of(1).is_err());
        assert!(QuadExt::sqrt_of(0).is_err());
        assert!(QuadExt::sqrt_of(-1).is_ok());
    }

    #[test]
    fn mixed_extensions_are_rejected() {
        let a = QuadExt::sqrt_of(2).unwrap();
        let b = QuadExt::sqrt_of(3).unwrap();
        assert_eq!(a.checked_add(&b), Err(ScalarError::DomainMismatch(2, 3)));
        assert_eq!(a.checked_mul(&b), Err(ScalarError::DomainMismatch(2, 3)));
        // rationals mix with anything
        let r = QuadExt::from(q(1, 2));
        assert!(a.checked_add(&r).is_ok());
    }

    #[test]
    fn sqrt_normalizes_to_squarefree_label() {
        // 1260 = 6^2 * 35
        let r = QuadExt::sqrt(&Rational::from(1260));
        assert_eq!(r.label(), 35);
        assert_eq!(r.b(), &Rational::from(6));
        let half = QuadExt::sqrt(&q(9, 4));
        assert_eq!(half, QuadExt::from(q(3, 2)));
        let s = QuadExt::sqrt(&q(-3, 4));
        assert_eq!(s.clone() * s, QuadExt::from(q(-3, 4)));
    }

    #[test]
    fn squarefree_decomposition() {
        for n in [-1260i64, 1, -1, 2, 72, 1_000_003 * 1_000_003, 999_983 * 2 * 2 * 3] {
            let (s, d) = squarefree_decompose(&BigInt::from(n));
            assert_eq!(&s * &s * &d, BigInt::from(n), "n = {n}");
            let (s2, _) = squarefree_decompose(&d);
            assert!(s2.is_one(), "{d} not squarefree");
        }
    }

    #[test]
    fn inverse() {
        let x = QuadExt::new(q(3, 1), q(-2, 5), 7).unwrap();
        assert_eq!(x.clone() * x.inv().unwrap(), QuadExt::one());
        assert_eq!(QuadExt::zero().inv(), Err(ScalarError::DivideByZero));
    }
}
