//! Joint invariants of a quartic and a quadratic, invariants of binary
//! sextics, and the derivation of `U6` and `U10`.
//!
//! Raw sextic invariants are built from transvectants of `f` and its
//! quartic covariant `i = (f, f)_4`:
//!
//! ```text
//! J2  = (f, f)_6
//! J4  = (i, i)_4
//! J6  = (i, (i, i)_2)_4          nested recipe
//! J6' = (y1, y1)_2               quadratic recipe, y1 = (f, i)_4
//! J10 = (y3, y1)_2               y2 = (i, y1)_2, y3 = (i, y2)_2
//! ```
//!
//! `I2 = J2`; `I4`, `I6`, `I10` are fixed linear combinations
//!
//! ```text
//! I4  = c J4 + c' I2²
//! I6  = c J6 + c' I2 I4
//! I10 = c J10 + c' I2⁵ + c'' I2³ I4
//! ```
//!
//! whose constants are solved once so that on `G_t` they agree with
//! the closed formulas in `δ02` and `β12`. The `I6` form leaves out
//! `I2³`; including it instead of `I2 I4` would give a different but
//! equally valid normalization.

use std::sync::OnceLock;

use num_bigint::BigInt;
use thiserror::Error;

use crate::forms::{joint_invariant, theta, transvectant, BinaryForm, FormError};
use crate::linalg::{kernel, primitive_integer_vector, rank, ratfunc_relations};
use crate::scalar::{MPoly, Poly, RatFunc, Rational, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Form(#[from] FormError),
    #[error("derivation failed: {0}")]
    Derivation(String),
}

/// Joint invariants of a quartic `Θ` and a quadratic `Δ`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairInvariants<R> {
    pub theta20: R,
    pub theta30: R,
    pub delta02: R,
    pub beta12: R,
    pub beta22: R,
    pub beta33: R,
}

pub fn pair_invariants<R: Ring>(th: &BinaryForm<R>, delta: &BinaryForm<R>) -> Result<PairInvariants<R>, FormError> {
    th.expect_degree(4)?;
    delta.expect_degree(2)?;
    if th.is_zero() || delta.is_zero() {
        return Err(FormError::ZeroForm);
    }
    let h = transvectant(th, th, 2)?;
    let t = transvectant(th, &h, 1)?;
    let d2 = delta.mul(delta);
    Ok(PairInvariants {
        theta20: joint_invariant(th, th, 4)?,
        theta30: joint_invariant(th, &h, 4)?,
        delta02: joint_invariant(delta, delta, 2)?,
        beta12: joint_invariant(th, &d2, 4)?,
        beta22: joint_invariant(&h, &d2, 4)?,
        beta33: joint_invariant(&t, &d2.mul(delta), 6)?,
    })
}

/// `Δ_t = (x1 - t x2)(x1 - ff(t) x2)` over `ℚ(t)`.
pub fn delta_t() -> BinaryForm<RatFunc> {
    let t = RatFunc::t();
    let one = RatFunc::one();
    let ff = (t.clone() - one.clone()) / (t.clone() + one.clone());
    BinaryForm::linear(one.clone(), -t).mul(&BinaryForm::linear(one, -ff))
}

/// `G_t = Θ Δ_t`, the sextic of the normal form `Σ(t)`.
pub fn g_t() -> BinaryForm<RatFunc> {
    theta::<RatFunc>().mul(&delta_t())
}

/// `(t + 1) G_t`, which has polynomial coefficients.
fn g_t_cleared() -> BinaryForm<Poly<Rational>> {
    let p = |c: &[i64]| Poly::new(c.iter().map(|&x| Rational::from(x)).collect());
    let d = BinaryForm::linear(p(&[1]), p(&[0, -1])).mul(&BinaryForm::linear(p(&[1, 1]), p(&[1, -1])));
    theta::<Poly<Rational>>().mul(&d)
}

/// Which degree-6 transvectant stands behind `I6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SixRecipe {
    /// `(i, (i, i)_2)_4`
    Nested,
    /// `(y1, y1)_2` with `y1 = (f, i)_4`
    Quadratic,
}

impl SixRecipe {
    pub fn describe(self) -> &'static str {
        match self {
            SixRecipe::Nested => "(i,(i,i)_2)_4",
            SixRecipe::Quadratic => "(y1,y1)_2",
        }
    }
}

/// Unnormalized transvectant invariants of a sextic.
#[derive(Debug, Clone, PartialEq)]
pub struct RawInvariants<R> {
    pub j2: R,
    pub j4: R,
    pub j6_nested: R,
    pub j6_quadratic: R,
    pub j10: R,
}

impl<R: Ring> RawInvariants<R> {
    fn j6(&self, recipe: SixRecipe) -> &R {
        match recipe {
            SixRecipe::Nested => &self.j6_nested,
            SixRecipe::Quadratic => &self.j6_quadratic,
        }
    }
}

pub fn raw_invariants<R: Ring>(f: &BinaryForm<R>) -> Result<RawInvariants<R>, FormError> {
    f.expect_degree(6)?;
    let i = transvectant(f, f, 4)?;
    let y1 = transvectant(f, &i, 4)?;
    let y2 = transvectant(&i, &y1, 2)?;
    let y3 = transvectant(&i, &y2, 2)?;
    Ok(RawInvariants {
        j2: joint_invariant(f, f, 6)?,
        j4: joint_invariant(&i, &i, 4)?,
        j6_nested: joint_invariant(&i, &transvectant(&i, &i, 2)?, 4)?,
        j6_quadratic: joint_invariant(&y1, &y1, 2)?,
        j10: joint_invariant(&y3, &y1, 2)?,
    })
}

/// Constants turning raw invariants into `I4`, `I6`, `I10`.
#[derive(Debug, Clone, PartialEq)]
pub struct Normalization {
    pub recipe: SixRecipe,
    /// Coefficients of `J4`, `I2²`.
    pub i4: [Rational; 2],
    /// Coefficients of `J6`, `I2 I4`.
    pub i6: [Rational; 2],
    /// Coefficients of `J10`, `I2⁵`, `I2³ I4`.
    pub i10: [Rational; 3],
}

/// `I2, I4, I6, I10` of a sextic.
#[derive(Debug, Clone, PartialEq)]
pub struct SexticInvariants<R> {
    pub i2: R,
    pub i4: R,
    pub i6: R,
    pub i10: R,
    pub recipe: SixRecipe,
}

impl<R: Ring> SexticInvariants<R> {
    pub fn from_raw(raw: &RawInvariants<R>, n: &Normalization) -> Self {
        let i2 = raw.j2.clone();
        let i4 = raw.j4.scale(&n.i4[0]) + i2.pow(2).scale(&n.i4[1]);
        let i6 = raw.j6(n.recipe).scale(&n.i6[0]) + (i2.clone() * i4.clone()).scale(&n.i6[1]);
        let i10 = raw.j10.scale(&n.i10[0]) + i2.pow(5).scale(&n.i10[1]) + (i2.pow(3) * i4.clone()).scale(&n.i10[2]);
        SexticInvariants { i2, i4, i6, i10, recipe: n.recipe }
    }

    /// Value of a product `I2^a I4^b I6^c I10^d`.
    pub fn monomial(&self, e: [u32; 4]) -> R {
        self.i2.pow(e[0]) * self.i4.pow(e[1]) * self.i6.pow(e[2]) * self.i10.pow(e[3])
    }
}

pub fn sextic_invariants<R: Ring>(f: &BinaryForm<R>) -> Result<SexticInvariants<R>, InvariantError> {
    sextic_invariants_with(f, SixRecipe::Nested)
}

pub fn sextic_invariants_with<R: Ring>(
    f: &BinaryForm<R>,
    recipe: SixRecipe,
) -> Result<SexticInvariants<R>, InvariantError> {
    let n = normalization(recipe)?;
    Ok(SexticInvariants::from_raw(&raw_invariants(f)?, n))
}

/// Products of `I2, I4, I6, I10` of a given degree, as exponent vectors,
/// in the order used for relation vectors.
pub fn degree_basis(degree: u32) -> Vec<[u32; 4]> {
    match degree {
        2 => vec![[1, 0, 0, 0]],
        4 => vec![[2, 0, 0, 0], [0, 1, 0, 0]],
        6 => vec![[3, 0, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0]],
        8 => vec![[4, 0, 0, 0], [2, 1, 0, 0], [0, 2, 0, 0], [1, 0, 1, 0]],
        10 => vec![[5, 0, 0, 0], [3, 1, 0, 0], [1, 2, 0, 0], [2, 0, 1, 0], [0, 1, 1, 0], [0, 0, 0, 1]],
        _ => Vec::new(),
    }
}

pub fn monomial_name(e: &[u32; 4]) -> String {
    let mut parts = Vec::new();
    for (k, name) in e.iter().zip(["I2", "I4", "I6", "I10"]) {
        match k {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{k}")),
        }
    }
    parts.join("*")
}

/// An integer linear combination of invariant products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub basis: Vec<[u32; 4]>,
    pub coeffs: Vec<BigInt>,
    pub recipe: SixRecipe,
}

impl Relation {
    pub fn eval<R: Ring>(&self, inv: &SexticInvariants<R>) -> R {
        self.basis.iter().zip(&self.coeffs).fold(R::zero(), |acc, (e, c)| {
            acc + inv.monomial(*e).scale(&Rational::from_bigint(c.clone()))
        })
    }

    pub fn coeffs_i64(&self) -> Vec<i64> {
        self.coeffs.iter().map(|c| i64::try_from(c).expect("coefficient fits in i64")).collect()
    }
}

impl std::fmt::Display for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .zip(&self.basis)
            .filter(|(c, _)| c.sign() != num_bigint::Sign::NoSign)
            .map(|(c, e)| format!("{c}*{}", monomial_name(e)))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Values on `G_t` of the quantities the derivations need.
#[derive(Debug, Clone)]
pub struct GtValues {
    pub pair: PairInvariants<RatFunc>,
    pub raw: RawInvariants<RatFunc>,
    /// Closed formulas for `I2, I4, I6, I10` in `x = δ02`, `y = β12`.
    pub targets: [RatFunc; 4],
}

fn q(n: i64, d: i64) -> Rational {
    Rational::frac(n, d)
}

/// Evaluates the closed formulas at given `x = δ02`, `y = β12`.
pub fn target_formulas<R: Ring>(x: &R, y: &R) -> [R; 4] {
    let i2 = x.scale(&q(11, 30));
    let i4 = y.pow(2).scale(&q(2, 1125)) + x.pow(2).scale(&q(124, 5625));
    let i6 = (x.clone() * y.pow(2)).scale(&q(91, 253125)) + x.pow(3).scale(&q(98, 1265625));
    let i10 = (x.clone() * y.pow(4)).scale(&q(416, 284765625))
        + (x.pow(3) * y.pow(2)).scale(&q(1141, 284765625))
        - x.pow(5).scale(&q(1372, 7119140625));
    [i2, i4, i6, i10]
}

pub fn gt_values() -> &'static GtValues {
    static CELL: OnceLock<GtValues> = OnceLock::new();
    CELL.get_or_init(|| {
        let pair = pair_invariants(&theta(), &delta_t()).expect("Θ and Δ_t are nonzero");
        let cleared = raw_invariants(&g_t_cleared()).expect("degree 6");
        let t1 = Poly::new(vec![Rational::from(1), Rational::from(1)]);
        let undo = |p: Poly<Rational>, k: u32| RatFunc::new(p, t1.pow(k)).expect("nonzero denominator");
        let raw = RawInvariants {
            j2: undo(cleared.j2, 2),
            j4: undo(cleared.j4, 4),
            j6_nested: undo(cleared.j6_nested, 6),
            j6_quadratic: undo(cleared.j6_quadratic, 6),
            j10: undo(cleared.j10, 10),
        };
        let targets = target_formulas(&pair.delta02, &pair.beta12);
        GtValues { pair, raw, targets }
    })
}

/// Solves `target = Σ c_i f_i` uniquely over ℚ.
fn match_target(funcs: &[RatFunc], target: &RatFunc, what: &str) -> Result<Vec<Rational>, InvariantError> {
    let mut all = funcs.to_vec();
    all.push(target.clone());
    let rel = ratfunc_relations(&all);
    let n = funcs.len();
    if rel.len() != 1 || rel[0][n].is_zero() {
        return Err(InvariantError::Derivation(format!(
            "{what}: expected a unique match on G_t, found {} relations",
            rel.len()
        )));
    }
    let last = rel[0][n].clone();
    Ok(rel[0][..n].iter().map(|c| -c.clone() / last.clone()).collect())
}

fn compute_normalization(recipe: SixRecipe) -> Result<Normalization, InvariantError> {
    let g = gt_values();
    let [_, t4, t6, t10] = g.targets.clone();
    let i2 = g.raw.j2.clone();
    let c4 = match_target(&[g.raw.j4.clone(), i2.pow(2)], &t4, "I4")?;
    let i4 = g.raw.j4.scale(&c4[0]) + i2.pow(2).scale(&c4[1]);
    let c6 = match_target(&[g.raw.j6(recipe).clone(), i2.clone() * i4.clone()], &t6, "I6")?;
    let c10 = match_target(&[g.raw.j10.clone(), i2.pow(5), i2.pow(3) * i4], &t10, "I10")?;
    Ok(Normalization {
        recipe,
        i4: [c4[0].clone(), c4[1].clone()],
        i6: [c6[0].clone(), c6[1].clone()],
        i10: [c10[0].clone(), c10[1].clone(), c10[2].clone()],
    })
}

pub fn normalization(recipe: SixRecipe) -> Result<&'static Normalization, InvariantError> {
    static NESTED: OnceLock<Result<Normalization, InvariantError>> = OnceLock::new();
    static QUADRATIC: OnceLock<Result<Normalization, InvariantError>> = OnceLock::new();
    let cell = match recipe {
        SixRecipe::Nested => &NESTED,
        SixRecipe::Quadratic => &QUADRATIC,
    };
    cell.get_or_init(|| compute_normalization(recipe)).as_ref().map_err(Clone::clone)
}

/// The normalized invariants evaluated on `G_t`.
pub fn gt_invariants(recipe: SixRecipe) -> Result<SexticInvariants<RatFunc>, InvariantError> {
    Ok(SexticInvariants::from_raw(&gt_values().raw, normalization(recipe)?))
}

/// Rational relations, on `G_t`, among the degree-`d` products.
pub fn relations_on_gt(degree: u32, recipe: SixRecipe) -> Result<Vec<Vec<Rational>>, InvariantError> {
    let inv = gt_invariants(recipe)?;
    let funcs: Vec<RatFunc> = degree_basis(degree).iter().map(|e| inv.monomial(*e)).collect();
    Ok(ratfunc_relations(&funcs))
}

fn compute_u6(recipe: SixRecipe) -> Result<Relation, InvariantError> {
    let rel = relations_on_gt(6, recipe)?;
    if rel.len() != 1 {
        return Err(InvariantError::Derivation(format!("degree 6 kernel has dimension {}", rel.len())));
    }
    Ok(Relation { basis: degree_basis(6), coeffs: primitive_integer_vector(&rel[0]), recipe })
}

/// `U6`: the unique degree-6 relation on `G_t`, over `(I2³, I2 I4, I6)`.
pub fn derive_u6(recipe: SixRecipe) -> Result<&'static Relation, InvariantError> {
    static NESTED: OnceLock<Result<Relation, InvariantError>> = OnceLock::new();
    static QUADRATIC: OnceLock<Result<Relation, InvariantError>> = OnceLock::new();
    let cell = match recipe {
        SixRecipe::Nested => &NESTED,
        SixRecipe::Quadratic => &QUADRATIC,
    };
    cell.get_or_init(|| compute_u6(recipe)).as_ref().map_err(Clone::clone)
}

/// `U6 I2²` and `U6 I4` written over the degree-10 basis.
pub fn u6_multiples_deg10(u6: &Relation) -> [Vec<Rational>; 2] {
    let basis10 = degree_basis(10);
    let lift = |shift: [u32; 4]| {
        let mut v = vec![Rational::from(0); basis10.len()];
        for (e, c) in u6.basis.iter().zip(&u6.coeffs) {
            let target = [e[0] + shift[0], e[1] + shift[1], e[2] + shift[2], e[3] + shift[3]];
            let k = basis10.iter().position(|b| *b == target).expect("product stays in the basis");
            v[k] = Rational::from_bigint(c.clone());
        }
        v
    };
    [lift([2, 0, 0, 0]), lift([0, 1, 0, 0])]
}

fn compute_u10(recipe: SixRecipe) -> Result<Relation, InvariantError> {
    let u6 = derive_u6(recipe)?;
    let ker = relations_on_gt(10, recipe)?;
    if ker.len() != 3 {
        return Err(InvariantError::Derivation(format!("degree 10 kernel has dimension {}", ker.len())));
    }
    for m in u6_multiples_deg10(u6) {
        if !crate::linalg::in_span(&ker, &m) {
            return Err(InvariantError::Derivation("U6 multiples are not in the degree 10 kernel".into()));
        }
    }
    // the kernel element with zero coordinates on I2⁵ and I2³I4
    let rows: Vec<Vec<Rational>> = (0..2).map(|c| ker.iter().map(|v| v[c].clone()).collect()).collect();
    let combos = kernel(&rows, ker.len());
    if combos.len() != 1 {
        return Err(InvariantError::Derivation(format!(
            "complement with zero I2^5, I2^3*I4 coordinates is {}-dimensional",
            combos.len()
        )));
    }
    let v: Vec<Rational> = (0..6)
        .map(|k| {
            ker.iter()
                .zip(&combos[0])
                .fold(Rational::from(0), |acc, (b, c)| acc + b[k].clone() * c.clone())
        })
        .collect();
    let [m1, m2] = u6_multiples_deg10(u6);
    if rank(&transpose(&[m1, m2, v.clone()]), 3) != 3 {
        return Err(InvariantError::Derivation("complement lies in the span of the U6 multiples".into()));
    }
    Ok(Relation { basis: degree_basis(10), coeffs: primitive_integer_vector(&v), recipe })
}

fn transpose(cols: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    (0..cols[0].len()).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect()
}

/// `U10`: the degree-10 relation on `G_t` with zero `I2⁵`, `I2³ I4`
/// coordinates, independent of `U6 I2²` and `U6 I4`.
pub fn derive_u10(recipe: SixRecipe) -> Result<&'static Relation, InvariantError> {
    static NESTED: OnceLock<Result<Relation, InvariantError>> = OnceLock::new();
    static QUADRATIC: OnceLock<Result<Relation, InvariantError>> = OnceLock::new();
    let cell = match recipe {
        SixRecipe::Nested => &NESTED,
        SixRecipe::Quadratic => &QUADRATIC,
    };
    cell.get_or_init(|| compute_u10(recipe)).as_ref().map_err(Clone::clone)
}

/// `(U6, U10)` of a sextic with the default recipe.
pub fn u6_u10<R: Ring>(f: &BinaryForm<R>) -> Result<(R, R, SexticInvariants<R>), InvariantError> {
    let inv = sextic_invariants(f)?;
    let u6 = derive_u6(SixRecipe::Nested)?.eval(&inv);
    let u10 = derive_u10(SixRecipe::Nested)?.eval(&inv);
    Ok((u6, u10, inv))
}

/// `U6` expanded as a polynomial in the coefficients `a0..a6` of a generic
/// sextic `Σ a_k x1^{6-k} x2^k`.
pub fn expanded_u6(recipe: SixRecipe) -> Result<MPoly, InvariantError> {
    let f = BinaryForm::new((0..7).map(MPoly::var).collect());
    let inv = sextic_invariants_with(&f, recipe)?;
    Ok(derive_u6(recipe)?.eval(&inv))
}
