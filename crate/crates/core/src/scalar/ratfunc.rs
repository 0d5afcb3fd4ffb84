use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::{Field, Poly, Ring, Rational, ScalarError};

/// A rational function in one indeterminate `t` over the rationals.
///
/// Always stored with `gcd(num, den) = 1` and `den` monic, so two values are
/// equal iff their representations are identical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly<Rational>,
    den: Poly<Rational>,
}

impl RatFunc {
    pub fn new(num: Poly<Rational>, den: Poly<Rational>) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        let lead = den.leading().expect("nonzero").inv().expect("nonzero");
        let scale = |p: &Poly<Rational>| p.map_scalar(|c| c.clone() * lead.clone());
        Ok(RatFunc { num: scale(&num), den: scale(&den) })
    }

    pub fn from_poly(p: Poly<Rational>) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Self::from_poly(Poly::x())
    }

    /// Shorthand for `(a t + b) / (c t + d)`-style literals: polynomial
    /// coefficients given lowest degree first.
    pub fn from_coeffs(num: &[i64], den: &[i64]) -> Result<Self, ScalarError> {
        let p = |c: &[i64]| Poly::new(c.iter().map(|&n| Rational::from(n)).collect());
        Self::new(p(num), p(den))
    }

    pub fn numer(&self) -> &Poly<Rational> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<Rational> {
        &self.den
    }

    pub fn as_constant(&self) -> Option<Rational> {
        (self.num.degree().unwrap_or(0) == 0 && self.den.degree() == Some(0))
            .then(|| self.num.coeff(0))
    }

    /// Specialize `t ↦ t0`.
    pub fn eval(&self, t0: &Rational) -> Result<Rational, ScalarError> {
        let d = self.den.eval(t0);
        if d.is_zero() {
            return Err(ScalarError::EvaluationPole(t0.clone()));
        }
        Ok(self.num.eval(t0) / d)
    }

    /// Specialize into any field containing the rationals (for example
    /// `t ↦ √−3`).
    pub fn eval_in<F: Field>(&self, t0: &F) -> Result<F, ScalarError> {
        let lift = |p: &Poly<Rational>| {
            p.coeffs()
                .iter()
                .rev()
                .fold(F::zero(), |acc, c| acc * t0.clone() + F::from_rational(c))
        };
        let d = lift(&self.den);
        if d.is_zero() {
            return Err(ScalarError::DivideByZero);
        }
        lift(&self.num).try_div(&d)
    }
}

impl From<Rational> for RatFunc {
    fn from(r: Rational) -> Self {
        Self::from_poly(Poly::constant(r))
    }
}

impl Add for RatFunc {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        if self.den == o.den {
            return Self::new(self.num + o.num, self.den).expect("nonzero");
        }
        Self::new(
            self.num * o.den.clone() + o.num * self.den.clone(),
            self.den * o.den,
        )
        .expect("nonzero")
    }
}

impl Sub for RatFunc {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Mul for RatFunc {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.num.is_zero() || o.num.is_zero() {
            return Self::zero();
        }
        Self::new(self.num * o.num, self.den * o.den).expect("nonzero")
    }
}

impl Div for RatFunc {
    type Output = Self;
    /// Panics on a zero divisor.
    fn div(self, o: Self) -> Self {
        self.try_div(&o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for RatFunc {
    type Output = Self;
    fn neg(self) -> Self {
        RatFunc { num: -self.num, den: self.den }
    }
}

impl Ring for RatFunc {
    fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }
    fn one() -> Self {
        RatFunc { num: Poly::one(), den: Poly::one() }
    }
    fn from_rational(r: &Rational) -> Self {
        Self::from(r.clone())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        RatFunc { num: self.num.map_scalar(|c| c.clone() * r.clone()), den: self.den.clone() }
    }
}

impl Field for RatFunc {
    fn inv(&self) -> Result<Self, ScalarError> {
        if self.num.is_zero() {
            return Err(ScalarError::DivideByZero);
        }
        Self::new(self.den.clone(), self.num.clone())
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &Poly<Rational>| {
            let s = p.to_string();
            if s.contains(' ') || s.contains('*') || s.contains('/') {
                format!("({s})")
            } else {
                s
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
