//! The plane `P(S_2)` of binary quadratics and its conic `a1² = 4 a0 a2`.
//!
//! A conic point is a parameter `[p, q]` on the projective line; it sits on
//! the conic as `(q x1 - p x2)²`, so `[0, 1]` is `x1²` and `[1, 0]` (∞) is
//! `x2²`. Lines are stored by their pole with respect to the conic: the
//! pole of the line through two points is their first transvectant, the
//! meet of two lines is the first transvectant of the poles, and a point
//! is on a line iff the second transvectant with the pole vanishes.

use std::fmt;

use thiserror::Error;

use crate::forms::{joint_invariant, transvectant, BinaryForm, FormError};
use crate::scalar::{Field, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("malformed point: all coordinates are zero")]
    MalformedPoint,
    #[error("cannot join a point with itself")]
    DegenerateJoin,
    #[error("cannot meet a line with itself")]
    DegenerateMeet,
    #[error("cross-ratio needs four distinct points")]
    DegenerateCrossRatio,
    #[error("no unique Möbius map: repeated source or target points")]
    NoUniqueMap,
    #[error("point lies on the conic, so it defines no involution")]
    DegenerateInvolution,
    #[error("singular matrix")]
    SingularMap,
    #[error("point is not on the conic")]
    NotOnConic,
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A point `[p, q]` of the projective line, read as the parameter `p/q`.
#[derive(Clone)]
pub struct ConicPoint<F> {
    p: F,
    q: F,
}

impl<F: Field> ConicPoint<F> {
    pub fn new(p: F, q: F) -> Result<Self, GeometryError> {
        if p.is_zero() && q.is_zero() {
            return Err(GeometryError::MalformedPoint);
        }
        Ok(ConicPoint { p, q })
    }

    pub fn finite(s: F) -> Self {
        ConicPoint { p: s, q: F::one() }
    }

    pub fn infinity() -> Self {
        ConicPoint { p: F::one(), q: F::zero() }
    }

    pub fn p(&self) -> &F {
        &self.p
    }

    pub fn q(&self) -> &F {
        &self.q
    }

    pub fn is_infinity(&self) -> bool {
        self.q.is_zero()
    }

    /// `p/q`, or `None` at infinity.
    pub fn affine(&self) -> Option<F> {
        self.p.try_div(&self.q).ok()
    }

    /// Representative with `q = 1`, or `[1, 0]`.
    pub fn normalized(&self) -> Self {
        match self.affine() {
            Some(s) => Self::finite(s),
            None => Self::infinity(),
        }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> ConicPoint<G> {
        ConicPoint { p: f(&self.p), q: f(&self.q) }
    }

    /// The linear form `q x1 - p x2` whose square is the point on the conic.
    pub fn linear_form(&self) -> BinaryForm<F> {
        BinaryForm::linear(self.q.clone(), -self.p.clone())
    }
}

impl<F: Field> From<F> for ConicPoint<F> {
    fn from(s: F) -> Self {
        Self::finite(s)
    }
}

impl<F: Field> PartialEq for ConicPoint<F> {
    fn eq(&self, o: &Self) -> bool {
        det(self, o).is_zero()
    }
}

impl<F: Field> fmt::Display for ConicPoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.affine() {
            Some(s) => write!(f, "{s}"),
            None => write!(f, "inf"),
        }
    }
}

impl<F: Field> fmt::Debug for ConicPoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.p, self.q)
    }
}

fn det<F: Field>(x: &ConicPoint<F>, y: &ConicPoint<F>) -> F {
    x.p.clone() * y.q.clone() - y.p.clone() * x.q.clone()
}

/// A point of the plane, i.e. a nonzero binary quadratic up to scale.
#[derive(Clone)]
pub struct PlanePoint<F> {
    form: BinaryForm<F>,
}

impl<F: Field> PlanePoint<F> {
    pub fn new(form: BinaryForm<F>) -> Result<Self, GeometryError> {
        form.expect_degree(2)?;
        if form.is_zero() {
            return Err(GeometryError::MalformedPoint);
        }
        Ok(PlanePoint { form })
    }

    pub fn from_coeffs(a0: F, a1: F, a2: F) -> Result<Self, GeometryError> {
        Self::new(BinaryForm::new(vec![a0, a1, a2]))
    }

    pub fn form(&self) -> &BinaryForm<F> {
        &self.form
    }

    pub fn a(&self, k: usize) -> &F {
        self.form.coeff(k)
    }

    pub fn on_conic(&self) -> bool {
        let (a0, a1, a2) = (self.a(0).clone(), self.a(1).clone(), self.a(2).clone());
        (a1.clone() * a1 - F::from_i64(4) * a0 * a2).is_zero()
    }

    /// The conic parameter of a point on the conic.
    pub fn conic_parameter(&self) -> Result<ConicPoint<F>, GeometryError> {
        if !self.on_conic() {
            return Err(GeometryError::NotOnConic);
        }
        // (q x1 - p x2)² = q² x1² - 2pq x1x2 + p² x2²
        if self.a(0).is_zero() {
            Ok(ConicPoint::infinity())
        } else {
            let p = -self.a(1).clone() * F::from_rational(&crate::scalar::Rational::frac(1, 2));
            ConicPoint::new(p, self.a(0).clone())
        }
    }

    /// Coefficients scaled so the first nonzero one is 1.
    pub fn normalized(&self) -> [F; 3] {
        let lead = self.form.coeffs().iter().find(|c| !c.is_zero()).expect("nonzero point");
        let inv = lead.inv().expect("nonzero");
        [0, 1, 2].map(|k| self.a(k).clone() * inv.clone())
    }
}

impl<F: Field> PartialEq for PlanePoint<F> {
    fn eq(&self, o: &Self) -> bool {
        let (x, y) = (self.form.coeffs(), o.form.coeffs());
        (0..3).all(|i| ((i + 1)..3).all(|j| (x[i].clone() * y[j].clone() - x[j].clone() * y[i].clone()).is_zero()))
    }
}

impl<F: Field> fmt::Display for PlanePoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.form)
    }
}

impl<F: Field> fmt::Debug for PlanePoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PlanePoint({})", self.form)
    }
}

/// A line, represented by its pole with respect to the conic.
#[derive(Clone)]
pub struct LineByPole<F> {
    pole: PlanePoint<F>,
}

impl<F: Field> PartialEq for LineByPole<F> {
    fn eq(&self, o: &Self) -> bool {
        self.pole == o.pole
    }
}

impl<F: Field> LineByPole<F> {
    pub fn polar_of(pole: PlanePoint<F>) -> Self {
        LineByPole { pole }
    }

    pub fn pole(&self) -> &PlanePoint<F> {
        &self.pole
    }

    /// Tangent line to the conic at `t`.
    pub fn tangent(t: &ConicPoint<F>) -> Self {
        LineByPole { pole: veronese(t) }
    }
}

impl<F: Field> fmt::Display for LineByPole<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "polar of {}", self.pole)
    }
}

impl<F: Field> fmt::Debug for LineByPole<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Line(pole = {})", self.pole.form)
    }
}

/// Möbius map `s ↦ (a s + b) / (c s + d)` on conic parameters, up to scale.
///
/// On binary forms the same map is the substitution
/// `x1 ↦ d x1 - b x2, x2 ↦ -c x1 + a x2`, which is how it acts on the plane.
#[derive(Clone)]
pub struct Mobius<F> {
    m: [F; 4],
}

impl<F: Field> Mobius<F> {
    pub fn new(a: F, b: F, c: F, d: F) -> Result<Self, GeometryError> {
        let mob = Mobius { m: [a, b, c, d] };
        if mob.det().is_zero() {
            return Err(GeometryError::SingularMap);
        }
        Ok(mob)
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self, GeometryError> {
        Self::new(F::from_i64(a), F::from_i64(b), F::from_i64(c), F::from_i64(d))
    }

    pub fn identity() -> Self {
        Mobius { m: [F::one(), F::zero(), F::zero(), F::one()] }
    }

    pub fn entries(&self) -> &[F; 4] {
        &self.m
    }

    pub fn det(&self) -> F {
        let [a, b, c, d] = self.m.clone();
        a * d - b * c
    }

    pub fn apply(&self, x: &ConicPoint<F>) -> ConicPoint<F> {
        let [a, b, c, d] = self.m.clone();
        ConicPoint {
            p: a * x.p.clone() + b * x.q.clone(),
            q: c * x.p.clone() + d * x.q.clone(),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let [a, b, c, d] = self.m.clone();
        let [e, f, g, h] = other.m.clone();
        Mobius {
            m: [
                a.clone() * e.clone() + b.clone() * g.clone(),
                a * f.clone() + b * h.clone(),
                c.clone() * e + d.clone() * g,
                c * f + d * h,
            ],
        }
    }

    pub fn inverse(&self) -> Self {
        let [a, b, c, d] = self.m.clone();
        Mobius { m: [d, -b, -c, a] }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// Sends `0, ∞, 1` to `x, y, z`.
    fn from_standard_frame(x: &ConicPoint<F>, y: &ConicPoint<F>, z: &ConicPoint<F>) -> Result<Self, GeometryError> {
        // columns λy and μx with λy + μx = z
        let dxy = det(y, x);
        if dxy.is_zero() {
            return Err(GeometryError::NoUniqueMap);
        }
        let lambda = det(z, x).try_div(&dxy)?;
        let mu = det(y, z).try_div(&dxy)?;
        if lambda.is_zero() || mu.is_zero() {
            return Err(GeometryError::NoUniqueMap);
        }
        Mobius::new(
            lambda.clone() * y.p.clone(),
            mu.clone() * x.p.clone(),
            lambda * y.q.clone(),
            mu * x.q.clone(),
        )
    }

    /// The unique map sending `src[i]` to `dst[i]`.
    pub fn through(src: [&ConicPoint<F>; 3], dst: [&ConicPoint<F>; 3]) -> Result<Self, GeometryError> {
        let s = Self::from_standard_frame(src[0], src[1], src[2])?;
        let d = Self::from_standard_frame(dst[0], dst[1], dst[2])?;
        Ok(d.compose(&s.inverse()))
    }

    /// The map sending `x, y, z` to `0, ∞, 1`.
    pub fn normalizing(x: &ConicPoint<F>, y: &ConicPoint<F>, z: &ConicPoint<F>) -> Result<Self, GeometryError> {
        Ok(Self::from_standard_frame(x, y, z)?.inverse())
    }

    /// Symmetric-square action on the plane.
    pub fn on_plane(&self, pt: &PlanePoint<F>) -> PlanePoint<F> {
        let [a, b, c, d] = self.m.clone();
        let form = pt.form.substitute(&d, &-b, &-c, &a);
        PlanePoint { form }
    }

    pub fn on_line(&self, line: &LineByPole<F>) -> LineByPole<F> {
        LineByPole { pole: self.on_plane(&line.pole) }
    }
}

impl<F: Field> PartialEq for Mobius<F> {
    fn eq(&self, o: &Self) -> bool {
        let (x, y) = (&self.m, &o.m);
        (0..4).all(|i| ((i + 1)..4).all(|j| (x[i].clone() * y[j].clone() - x[j].clone() * y[i].clone()).is_zero()))
    }
}

impl<F: Field> fmt::Display for Mobius<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.m;
        write!(f, "s -> ({a}*s + {b})/({c}*s + {d})")
    }
}

impl<F: Field> fmt::Debug for Mobius<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mobius[[{}, {}], [{}, {}]]", self.m[0], self.m[1], self.m[2], self.m[3])
    }
}

pub fn veronese<F: Field>(t: &ConicPoint<F>) -> PlanePoint<F> {
    let l = t.linear_form();
    PlanePoint { form: l.mul(&l) }
}

/// Line through two distinct points.
pub fn join<F: Field>(p1: &PlanePoint<F>, p2: &PlanePoint<F>) -> Result<LineByPole<F>, GeometryError> {
    let pole = transvectant(&p1.form, &p2.form, 1)?;
    if pole.is_zero() {
        return Err(GeometryError::DegenerateJoin);
    }
    Ok(LineByPole { pole: PlanePoint { form: pole } })
}

/// Intersection of two distinct lines.
pub fn meet<F: Field>(l1: &LineByPole<F>, l2: &LineByPole<F>) -> Result<PlanePoint<F>, GeometryError> {
    let form = transvectant(&l1.pole.form, &l2.pole.form, 1)?;
    if form.is_zero() {
        return Err(GeometryError::DegenerateMeet);
    }
    Ok(PlanePoint { form })
}

pub fn incident<F: Field>(pt: &PlanePoint<F>, line: &LineByPole<F>) -> bool {
    joint_invariant(&pt.form, &line.pole.form, 2).map(|v| v.is_zero()).unwrap_or(false)
}

pub fn collinear<F: Field>(a: &PlanePoint<F>, b: &PlanePoint<F>, c: &PlanePoint<F>) -> bool {
    match join(a, b) {
        Ok(l) => incident(c, &l),
        Err(_) => true,
    }
}

/// The chord through two conic points, or the tangent when they coincide.
pub fn chord<F: Field>(a: &ConicPoint<F>, b: &ConicPoint<F>) -> LineByPole<F> {
    if a == b {
        return LineByPole::tangent(a);
    }
    // (u², v²)_1 = (uv) · (u, v)_1 for linear u, v, so the pole is ∝ uv
    let pole = a.linear_form().mul(&b.linear_form());
    LineByPole { pole: PlanePoint { form: pole } }
}

/// `((a-c)(b-d)) / ((a-d)(b-c))`, evaluated on projective pairs.
pub fn cross_ratio<F: Field>(
    a: &ConicPoint<F>,
    b: &ConicPoint<F>,
    c: &ConicPoint<F>,
    d: &ConicPoint<F>,
) -> Result<F, GeometryError> {
    let pts = [a, b, c, d];
    for i in 0..4 {
        for j in (i + 1)..4 {
            if pts[i] == pts[j] {
                return Err(GeometryError::DegenerateCrossRatio);
            }
        }
    }
    let num = det(a, c) * det(b, d);
    let den = det(a, d) * det(b, c);
    Ok(num.try_div(&den)?)
}

/// `σ_Q`: sends a conic point `T` to the second intersection of `QT` with the conic.
pub fn involution_from_point<F: Field>(q: &PlanePoint<F>) -> Result<Mobius<F>, GeometryError> {
    if q.on_conic() {
        return Err(GeometryError::DegenerateInvolution);
    }
    let (a0, a1, a2) = (q.a(0).clone(), q.a(1).clone(), q.a(2).clone());
    Mobius::new(-a1.clone(), -F::from_i64(2) * a2, F::from_i64(2) * a0, a1)
}

/// The other intersection of the line `QT` with the conic; `T` itself when
/// `QT` is tangent.
pub fn second_intersection<F: Field>(q: &PlanePoint<F>, t: &ConicPoint<F>) -> Result<ConicPoint<F>, GeometryError> {
    Ok(involution_from_point(q)?.apply(t))
}

/// `ff(t) = (t - 1)/(t + 1)` as a Möbius map.
pub fn ff<F: Field>() -> Mobius<F> {
    Mobius::from_i64(1, -1, 1, 1).expect("nonsingular")
}
