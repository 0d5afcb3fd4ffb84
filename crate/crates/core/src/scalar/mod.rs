//! Exact scalar domains.
//!
//! Everything downstream is generic over [`Ring`] (transvectants only need
//! ring operations plus rational constants) or [`Field`] (projective
//! geometry needs division). Three concrete fields are provided:
//! [`Rational`], [`QuadExt`] for `a + b√d`, and [`RatFunc`] for rational
//! functions in one indeterminate `t`. [`Poly`] and [`MPoly`] are rings used
//! for polynomial arithmetic and symbolic checks in the coefficients of a
//! form.

mod mpoly;
mod poly;
mod quad;
mod ratfunc;
mod rational;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use mpoly::MPoly;
pub use poly::Poly;
pub use quad::{squarefree_decompose, QuadExt};
pub use ratfunc::RatFunc;
pub use rational::Rational;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("malformed scalar: zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivideByZero,
    #[error("domain mismatch: Q(sqrt {0}) vs Q(sqrt {1})")]
    DomainMismatch(i64, i64),
    #[error("invalid extension label {0}: must be a squarefree integer other than 0 and 1")]
    InvalidExtension(i64),
    #[error("rational function has a pole at t = {0}")]
    EvaluationPole(Rational),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
}

/// A commutative ring with exact equality that contains the rationals.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn is_zero(&self) -> bool;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from(n))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn scale(&self, r: &Rational) -> Self {
        self.clone() * Self::from_rational(r)
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

/// A field: a [`Ring`] with exact inverses of nonzero elements.
pub trait Field: Ring {
    fn inv(&self) -> Result<Self, ScalarError>;

    fn try_div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self.clone() * other.inv()?)
    }
}
