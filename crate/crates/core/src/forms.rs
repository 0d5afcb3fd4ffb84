//! Binary forms and transvectants.
//!
//! A form of degree `m` is stored as `c_0 .. c_m`, meaning
//! `Σ c_k x1^(m-k) x2^k`. Transvectants use the factorial normalization
//!
//! ```text
//! (A,B)_r = (m-r)!(n-r)!/(m! n!) Σ_k (-1)^k C(r,k) ∂^r A/∂x1^(r-k)∂x2^k · ∂^r B/∂x1^k∂x2^(r-k)
//! ```
//!
//! which gives `(x1², x2²)_1 = x1 x2` and makes the Hessian of a quartic
//! start with `(a0 a2/3 - a1²/8) x1⁴`.

use std::fmt;

use thiserror::Error;

use crate::geometry::ConicPoint;
use crate::scalar::{Field, Poly, Ring, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("transvectant index {r} out of range for degrees {m} and {n}")]
    TransvectantRange { r: usize, m: usize, n: usize },
    #[error("expected a form of degree {expected}, got degree {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("operation requires a nonzero form")]
    ZeroForm,
    #[error("malformed point: both projective coordinates are zero")]
    MalformedPoint,
    #[error("form-from-roots needs at least one point")]
    EmptyRoots,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryForm<R> {
    coeffs: Vec<R>,
}

fn factorial(n: usize) -> Rational {
    (1..=n as i64).fold(Rational::from(1), |acc, k| acc * Rational::from(k))
}

fn binomial(n: usize, k: usize) -> Rational {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `n! / (n-k)!`
fn falling(n: usize, k: usize) -> Rational {
    ((n - k + 1)..=n).fold(Rational::from(1), |acc, j| acc * Rational::from(j as i64))
}

impl<R: Ring> BinaryForm<R> {
    /// Coefficients `c_0 .. c_m`; the degree is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "a form needs at least one coefficient");
        BinaryForm { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| R::from_i64(c)).collect())
    }

    pub fn zero(degree: usize) -> Self {
        Self::new(vec![R::zero(); degree + 1])
    }

    pub fn constant(c: R) -> Self {
        Self::new(vec![c])
    }

    /// The linear form `p x1 + q x2`.
    pub fn linear(p: R, q: R) -> Self {
        Self::new(vec![p, q])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    /// Coefficient of `x1^(m-k) x2^k`.
    pub fn coeff(&self, k: usize) -> &R {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Ring::is_zero)
    }

    /// The value of a degree-0 form.
    pub fn as_scalar(&self) -> Option<&R> {
        (self.coeffs.len() == 1).then(|| &self.coeffs[0])
    }

    pub fn expect_degree(&self, degree: usize) -> Result<(), FormError> {
        if self.degree() != degree {
            return Err(FormError::DegreeMismatch { expected: degree, found: self.degree() });
        }
        Ok(())
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> BinaryForm<S> {
        BinaryForm { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn scale_by(&self, c: &R) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map(|x| x.scale(r))
    }

    /// Sum of two forms of equal degree.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "adding forms of different degree");
        BinaryForm {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Rational::from(-1)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![R::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        BinaryForm { coeffs: out }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(R::one()), |acc, _| acc.mul(self))
    }

    /// `∂^(i+j) / ∂x1^i ∂x2^j`.
    pub fn partial(&self, i: usize, j: usize) -> Self {
        let m = self.degree();
        if i + j > m {
            return Self::zero(0);
        }
        let coeffs = (j..=m - i)
            .map(|k| {
                let c = &self.coeffs[k];
                if c.is_zero() {
                    R::zero()
                } else {
                    c.scale(&(falling(m - k, i) * falling(k, j)))
                }
            })
            .collect();
        BinaryForm { coeffs }
    }

    /// The linear substitution `x1 ↦ p x1 + q x2`, `x2 ↦ r x1 + s x2`.
    pub fn substitute(&self, p: &R, q: &R, r: &R, s: &R) -> Self {
        let m = self.degree();
        let l1 = Self::linear(p.clone(), q.clone());
        let l2 = Self::linear(r.clone(), s.clone());
        let pows1: Vec<Self> = (0..=m).map(|k| l1.pow(k as u32)).collect();
        let pows2: Vec<Self> = (0..=m).map(|k| l2.pow(k as u32)).collect();
        let mut out = Self::zero(m);
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out = out.add(&pows1[m - k].mul(&pows2[k]).scale_by(c));
        }
        out
    }
}

/// The r-th transvectant `(a, b)_r`.
pub fn transvectant<R: Ring>(
    a: &BinaryForm<R>,
    b: &BinaryForm<R>,
    r: usize,
) -> Result<BinaryForm<R>, FormError> {
    let (m, n) = (a.degree(), b.degree());
    if r > m || r > n {
        return Err(FormError::TransvectantRange { r, m, n });
    }
    let norm = factorial(m - r) * factorial(n - r) / (factorial(m) * factorial(n));
    let mut acc = BinaryForm::zero(m + n - 2 * r);
    for k in 0..=r {
        let term = a.partial(r - k, k).mul(&b.partial(k, r - k));
        let mut c = binomial(r, k) * norm.clone();
        if k % 2 == 1 {
            c = -c;
        }
        acc = acc.add(&term.scale(&c));
    }
    Ok(acc)
}

/// Value of a transvectant of total order zero.
pub fn joint_invariant<R: Ring>(a: &BinaryForm<R>, b: &BinaryForm<R>, r: usize) -> Result<R, FormError> {
    let t = transvectant(a, b, r)?;
    t.as_scalar().cloned().ok_or(FormError::DegreeMismatch { expected: 2 * r, found: a.degree() + b.degree() })
}

/// `He(Φ) = (Φ, Φ)_2` for a quartic.
pub fn hessian<R: Ring>(phi: &BinaryForm<R>) -> Result<BinaryForm<R>, FormError> {
    phi.expect_degree(4)?;
    if phi.is_zero() {
        return Err(FormError::ZeroForm);
    }
    transvectant(phi, phi, 2)
}

/// The two fundamental invariants of a binary quartic,
/// `j2 = (Φ,Φ)_4` and `j3 = (Φ,(Φ,Φ)_2)_4`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuarticInvariants<R> {
    pub j2: R,
    pub j3: R,
}

pub fn quartic_invariants<R: Ring>(phi: &BinaryForm<R>) -> Result<QuarticInvariants<R>, FormError> {
    let h = hessian(phi)?;
    Ok(QuarticInvariants { j2: joint_invariant(phi, phi, 4)?, j3: joint_invariant(phi, &h, 4)? })
}

/// `Π (q_i x1 - p_i x2)` over the parameters `[p_i, q_i]`.
pub fn form_from_roots<F: Field>(params: &[ConicPoint<F>]) -> Result<BinaryForm<F>, FormError> {
    if params.is_empty() {
        return Err(FormError::EmptyRoots);
    }
    params.iter().try_fold(BinaryForm::constant(F::one()), |acc, pt| {
        if pt.p().is_zero() && pt.q().is_zero() {
            return Err(FormError::MalformedPoint);
        }
        Ok(acc.mul(&BinaryForm::linear(pt.q().clone(), -pt.p().clone())))
    })
}

/// Whether `f` has no repeated linear factor over the algebraic closure.
pub fn is_squarefree<F: Field>(f: &BinaryForm<F>) -> Result<bool, FormError> {
    if f.is_zero() {
        return Err(FormError::ZeroForm);
    }
    // multiplicity of x2 = number of vanishing leading coefficients
    let at_infinity = f.coeffs.iter().take_while(|c| c.is_zero()).count();
    if at_infinity > 1 {
        return Ok(false);
    }
    let affine = Poly::new(f.coeffs.iter().rev().cloned().collect());
    Ok(affine.is_squarefree())
}

impl<R: Ring> fmt::Display for BinaryForm<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.degree();
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match (m - k, k) {
                (0, 0) => String::new(),
                (i, j) => {
                    let p = |v: &str, e: usize| match e {
                        0 => String::new(),
                        1 => v.to_string(),
                        _ => format!("{v}^{e}"),
                    };
                    [p("x1", i), p("x2", j)].into_iter().filter(|s| !s.is_empty()).collect::<Vec<_>>().join("*")
                }
            };
            let cs = c.to_string();
            let cs = if cs.contains(' ') { format!("({cs})") } else { cs };
            parts.push(match (mono.is_empty(), cs.as_str()) {
                (true, _) => cs,
                (false, "1") => mono,
                (false, "-1") => format!("-{mono}"),
                _ => format!("{cs}*{mono}"),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl<R: Ring> fmt::Debug for BinaryForm<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryForm({self})")
    }
}

/// `x1 x2 (x1 - x2)(x1 + x2)`, the harmonic quartic with roots `0, ∞, 1, -1`.
pub fn theta<R: Ring>() -> BinaryForm<R> {
    BinaryForm::from_i64(&[0, 1, 0, -1, 0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{MPoly, QuadExt, RatFunc};

    type Q = Rational;

    fn f(c: &[i64]) -> BinaryForm<Q> {
        BinaryForm::from_i64(c)
    }

    fn pt(p: i64, q: i64) -> ConicPoint<Q> {
        ConicPoint::new(Q::from(p), Q::from(q)).unwrap()
    }

    #[test]
    fn first_transvectant_of_squares() {
        let v = transvectant(&f(&[1, 0, 0]), &f(&[0, 0, 1]), 1).unwrap();
        assert_eq!(v, f(&[0, 1, 0]));
    }

    #[test]
    fn chord_point_w() {
        // (x1(x1+x2), x2(x1-x2))_1 ∝ x1² - 2x1x2 - x2²
        let w = transvectant(&f(&[1, 1, 0]), &f(&[0, 1, -1]), 1).unwrap();
        let target = f(&[1, -2, -1]);
        assert!(!w.is_zero());
        let lambda = w.coeff(0).clone();
        assert_eq!(w, target.scale(&lambda));
    }

    #[test]
    fn theta_self_invariants() {
        let th: BinaryForm<Q> = theta();
        let qi = quartic_invariants(&th).unwrap();
        assert_eq!(qi.j2, Q::frac(1, 2));
        assert_eq!(qi.j3, Q::from(0));
        assert!(!hessian(&th).unwrap().is_zero());
    }

    #[test]
    fn range_errors() {
        let e = transvectant(&f(&[1, 0]), &f(&[1, 0, 0]), 2).unwrap_err();
        assert_eq!(e, FormError::TransvectantRange { r: 2, m: 1, n: 2 });
        assert!(matches!(hessian(&f(&[1, 0, 0])), Err(FormError::DegreeMismatch { .. })));
        assert_eq!(hessian(&f(&[0, 0, 0, 0, 0])), Err(FormError::ZeroForm));
    }

    #[test]
    fn hessian_of_fourth_powers_vanishes() {
        assert!(hessian(&f(&[1, 4, 6, 4, 1])).unwrap().is_zero());
        assert!(hessian(&f(&[1, 0, 0, 0, 0])).unwrap().is_zero());
        // (2x1 - 3x2)^4
        let l = f(&[2, -3]);
        assert!(hessian(&l.pow(4)).unwrap().is_zero());
        assert!(!hessian(&l.pow(3).mul(&f(&[1, 1]))).unwrap().is_zero());
    }

    #[test]
    fn hessian_coefficients_symbolic() {
        let a: Vec<MPoly> = (0..5).map(MPoly::var).collect();
        let phi = BinaryForm::new(a.clone());
        let he = hessian(&phi).unwrap();
        let c = |x: Q| MPoly::from_rational(&x);
        assert_eq!(*he.coeff(0), c(Q::frac(1, 3)) * a[0].clone() * a[2].clone() - c(Q::frac(1, 8)) * a[1].clone() * a[1].clone());
        assert_eq!(*he.coeff(1), a[0].clone() * a[3].clone() - c(Q::frac(1, 6)) * a[1].clone() * a[2].clone());
        assert_eq!(*he.coeff(4), c(Q::frac(1, 3)) * a[2].clone() * a[4].clone() - c(Q::frac(1, 8)) * a[3].clone() * a[3].clone());
    }

    #[test]
    fn x1_fourth_plus_x2_fourth_j3_vanishes() {
        assert_eq!(quartic_invariants(&f(&[1, 0, 0, 0, 1])).unwrap().j3, Q::from(0));
    }

    #[test]
    fn form_from_roots_conventions() {
        // {0} -> x1
        assert_eq!(form_from_roots(&[pt(0, 1)]).unwrap(), f(&[1, 0]));
        // {∞} -> x2 up to sign
        assert_eq!(form_from_roots(&[pt(1, 0)]).unwrap(), f(&[0, -1]));
        // {0, ∞, 1, -1} -> ∝ x1 x2 (x1 - x2)(x1 + x2)
        let th = form_from_roots(&[pt(0, 1), pt(1, 0), pt(1, 1), pt(-1, 1)]).unwrap();
        assert_eq!(th, theta::<Q>().scale(&Q::from(-1)));
        assert_eq!(form_from_roots::<Q>(&[]), Err(FormError::EmptyRoots));
    }

    #[test]
    fn g_t_from_sigma_row() {
        let t = RatFunc::t();
        let ff = (t.clone() - RatFunc::one()) / (t.clone() + RatFunc::one());
        let one = RatFunc::one;
        let cp = |p: RatFunc, q: RatFunc| ConicPoint::new(p, q).unwrap();
        let row = [
            cp(RatFunc::zero(), one()),
            cp(t.clone(), one()),
            cp(one(), RatFunc::zero()),
            cp(one(), one()),
            cp(ff.clone(), one()),
            cp(-one(), one()),
        ];
        let g = form_from_roots(&row).unwrap();
        let delta = BinaryForm::new(vec![one(), -t.clone()])
            .mul(&BinaryForm::new(vec![one(), -ff]));
        let expected = theta::<RatFunc>().mul(&delta);
        let lambda = g.coeff(1).clone() / expected.coeff(1).clone();
        assert_eq!(g, expected.scale_by(&lambda));
    }

    #[test]
    fn squarefree_checks() {
        let g4 = form_from_roots(&[pt(0, 1), pt(4, 1), pt(1, 0), pt(1, 1), Q::frac(3, 5).into(), pt(-1, 1)]).unwrap();
        assert!(is_squarefree(&g4).unwrap());
        assert!(!is_squarefree(&f(&[0, 0, 1, 0, 0, 0, 0])).unwrap());
        assert!(!is_squarefree(&f(&[0, 0, 0, 1])).unwrap());
        assert!(is_squarefree(&f(&[0, 1, 1])).unwrap());
        assert_eq!(is_squarefree(&f(&[0, 0])), Err(FormError::ZeroForm));
    }

    #[test]
    fn g_t_at_sqrt_minus_one_is_not_squarefree() {
        let i = QuadExt::sqrt_of(-1).unwrap();
        let one = QuadExt::one();
        let ff = (i.clone() - one.clone()) / (i.clone() + one.clone());
        assert_eq!(ff, i);
        let delta = BinaryForm::new(vec![one.clone(), -i]).mul(&BinaryForm::new(vec![one, -ff]));
        let g = theta::<QuadExt>().mul(&delta);
        assert!(!is_squarefree(&g).unwrap());
    }
}
