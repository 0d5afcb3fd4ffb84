use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Ring, Rational};

/// Sparse multivariate polynomial over the rationals in variables
/// `a0, a1, ...`.
///
/// Used as the coefficient ring of a "generic" binary form, so that a
/// covariant computed by the ordinary transvectant code comes out as an
/// explicit polynomial in the coefficients. Exponent vectors carry no
/// trailing zeros, so constants need no variable count.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    terms: BTreeMap<Vec<u16>, Rational>,
}

impl MPoly {
    /// The variable `a_i`.
    pub fn var(i: usize) -> Self {
        let mut e = vec![0u16; i + 1];
        e[i] = 1;
        MPoly { terms: BTreeMap::from([(e, Rational::one())]) }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Vec<u16>, Rational)>) -> Self {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(trim(e), c);
        }
        out
    }

    fn add_term(&mut self, e: Vec<u16>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u16], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the monomial with exponent vector `e`.
    pub fn coeff(&self, e: &[u16]) -> Rational {
        self.terms.get(&trim(e.to_vec())).cloned().unwrap_or_else(Rational::zero)
    }

    /// Substitute rational values for the variables.
    pub fn eval(&self, values: &[Rational]) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (e, c)| {
            let m = e.iter().enumerate().fold(c.clone(), |m, (i, &k)| m * values[i].pow(k as u32));
            acc + m
        })
    }

    /// `Some(λ)` when `other = λ · self` with `λ ≠ 0`.
    pub fn proportionality(&self, other: &Self) -> Option<Rational> {
        if self.terms.len() != other.terms.len() || self.is_zero() {
            return None;
        }
        let (e0, c0) = self.terms.iter().next()?;
        let lambda = other.terms.get(e0)?.clone() / c0.clone();
        (self.scale(&lambda) == *other).then_some(lambda)
    }
}

fn trim(mut e: Vec<u16>) -> Vec<u16> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn add_exponents(a: &[u16], b: &[u16]) -> Vec<u16> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
        .collect()
}

impl Add for MPoly {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        for (e, c) in o.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl Sub for MPoly {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Mul for MPoly {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                out.add_term(add_exponents(ea, eb), ca * cb);
            }
        }
        out
    }
}

impl Neg for MPoly {
    type Output = Self;
    fn neg(self) -> Self {
        MPoly { terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl Ring for MPoly {
    fn zero() -> Self {
        MPoly { terms: BTreeMap::new() }
    }
    fn one() -> Self {
        Self::from_rational(&Rational::one())
    }
    fn from_rational(r: &Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(Vec::new(), r.clone());
        out
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        MPoly { terms: self.terms.iter().map(|(e, c)| (e.clone(), c * r)).collect() }
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| if p == 1 { format!("a{i}") } else { format!("a{i}^{p}") })
                .collect();
            let neg = c.signum() < 0;
            if k > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            let abs = c.abs();
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{abs}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{abs}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
