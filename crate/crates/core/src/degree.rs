//! Assignments of four marked points to letters, their extensions to
//! ricochet sextuples, and the count of sextuples through a general
//! quadruple.
//!
//! An assignment `L_i → z_i` extends when some `Σ(t)` carries the same
//! cross-ratio on the letters `L_i` as the `z_i` do. Clearing denominators
//! of `⟨s_L1(t), .., s_L4(t)⟩ = ⟨z_1, .., z_4⟩` gives a polynomial in `t` of
//! degree 2, 1 or 0 for types 2, 3, 4; each admissible root `t0` yields the
//! extension `μ(Σ(t0))` with `μ` fixed by three of the marked points.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use thiserror::Error;

use crate::geometry::{cross_ratio, ConicPoint, GeometryError, Mobius};
use crate::letters::Letter;
use crate::linalg::primitive_integer_vector;
use crate::rico::sigma_sextuple;
use crate::scalar::{Poly, QuadExt, RatFunc, Rational, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegreeError {
    #[error("need four distinct points")]
    InvalidQuadruple,
    #[error("quadruple is not general: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Genericity(Vec<GenericityViolation>),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Ways a quadruple can fail to be general.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenericityViolation {
    HarmonicQuadruple,
    /// The cross-ratio equation vanishes identically.
    IdenticallyZero(Assignment),
    /// The equation has lower degree than the type predicts.
    DegreeDrop(Assignment),
    RepeatedRoot(Assignment),
    /// A root gives a degenerate `Σ(t0)`.
    InadmissibleRoot(Assignment),
    /// A sextuple is reached by a number of assignment/extension pairs
    /// other than the order of the shuffle group.
    OrbitSize { hits: usize },
}

impl fmt::Display for GenericityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::HarmonicQuadruple => write!(f, "the four points are harmonic"),
            Self::IdenticallyZero(a) => write!(f, "{a}: equation vanishes identically"),
            Self::DegreeDrop(a) => write!(f, "{a}: equation drops degree"),
            Self::RepeatedRoot(a) => write!(f, "{a}: repeated root"),
            Self::InadmissibleRoot(a) => write!(f, "{a}: root gives a degenerate sextuple"),
            Self::OrbitSize { hits } => write!(f, "a sextuple is reached {hits} times instead of 8"),
        }
    }
}

/// A placement of the four marked points (by index) into four letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    /// Letters in increasing order.
    pub letters: [Letter; 4],
    /// `targets[i]` is the index of the marked point placed at `letters[i]`.
    pub targets: [usize; 4],
}

impl Assignment {
    pub fn new(pairs: [(Letter, usize); 4]) -> Option<Self> {
        let mut pairs = pairs;
        pairs.sort();
        let letters = pairs.map(|p| p.0);
        let targets = pairs.map(|p| p.1);
        let distinct = |xs: &[usize]| (0..4).all(|i| ((i + 1)..4).all(|j| xs[i] != xs[j]));
        let ok = distinct(&letters.map(Letter::index)) && distinct(&targets) && targets.iter().all(|&t| t < 4);
        ok.then_some(Assignment { letters, targets })
    }

    /// Number of letters among `{A, C, D, F}`.
    pub fn kind(&self) -> usize {
        self.letters.iter().filter(|l| l.is_harmonic()).count()
    }

    pub fn unknown_letters(&self) -> Vec<Letter> {
        Letter::ALL.into_iter().filter(|l| !self.letters.contains(l)).collect()
    }

    /// The assignment `perm(L) → z` for each `L → z`.
    pub fn relabel(&self, perm: &crate::shuffle::LetterPerm) -> Self {
        let pairs = [0, 1, 2, 3].map(|i| (perm.apply(self.letters[i]), self.targets[i]));
        Assignment::new(pairs).expect("a permutation keeps letters distinct")
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().zip(&self.targets).map(|(l, t)| format!("{l}->z{}", t + 1)).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// All `C(6,4) · 4! = 360` assignments, in a fixed order.
pub fn enumerate_assignments() -> Vec<Assignment> {
    let mut out = Vec::with_capacity(360);
    for a in 0..6 {
        for b in (a + 1)..6 {
            for c in (b + 1)..6 {
                for d in (c + 1)..6 {
                    let letters = [a, b, c, d].map(Letter::from_index);
                    for p in PERMS4 {
                        out.push(Assignment { letters, targets: p });
                    }
                }
            }
        }
    }
    out
}

const PERMS4: [[usize; 4]; 24] = [
    [0, 1, 2, 3], [0, 1, 3, 2], [0, 2, 1, 3], [0, 2, 3, 1], [0, 3, 1, 2], [0, 3, 2, 1],
    [1, 0, 2, 3], [1, 0, 3, 2], [1, 2, 0, 3], [1, 2, 3, 0], [1, 3, 0, 2], [1, 3, 2, 0],
    [2, 0, 1, 3], [2, 0, 3, 1], [2, 1, 0, 3], [2, 1, 3, 0], [2, 3, 0, 1], [2, 3, 1, 0],
    [3, 0, 1, 2], [3, 0, 2, 1], [3, 1, 0, 2], [3, 1, 2, 0], [3, 2, 0, 1], [3, 2, 1, 0],
];

/// `(type 2, type 3, type 4)` counts.
pub fn type_tally(assignments: &[Assignment]) -> (usize, usize, usize) {
    let count = |k| assignments.iter().filter(|a| a.kind() == k).count();
    (count(2), count(3), count(4))
}

/// A completion of an assignment to a ricochet sextuple.
#[derive(Debug, Clone)]
pub struct Extension {
    pub assignment: Assignment,
    pub t: QuadExt,
    /// Indexed by letter.
    pub points: [ConicPoint<QuadExt>; 6],
}

impl Extension {
    pub fn key(&self) -> SextupleKey {
        SextupleKey::new(&self.points)
    }
}

/// Order-independent identity of a sextuple: field label and sorted
/// normalized coordinates (`None` for ∞).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SextupleKey {
    pub label: i64,
    pub coords: Vec<Option<QuadExt>>,
}

impl SextupleKey {
    pub fn new(points: &[ConicPoint<QuadExt>]) -> Self {
        let mut coords: Vec<Option<QuadExt>> = points.iter().map(ConicPoint::affine).collect();
        coords.sort();
        let label = coords.iter().flatten().map(QuadExt::label).find(|&d| d != 0).unwrap_or(0);
        SextupleKey { label, coords }
    }
}

impl fmt::Display for SextupleKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.as_ref().map_or("inf".to_string(), |x| x.to_string())).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Minimal polynomial `c2 x² + c1 x + c0` (primitive, `c2 > 0`) of the
/// first unknown letter's value across the two type-2 extensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeTwoQuadratic {
    pub letter: Letter,
    /// `[c2, c1, c0]`.
    pub coeffs: [BigInt; 3],
}

impl TypeTwoQuadratic {
    pub fn discriminant(&self) -> BigInt {
        let [a, b, c] = &self.coeffs;
        b * b - BigInt::from(4) * a * c
    }
}

#[derive(Debug, Clone)]
pub struct ExtendOutcome {
    pub extensions: Vec<Extension>,
    pub quadratic: Option<TypeTwoQuadratic>,
}

fn standard_positions() -> &'static [ConicPoint<RatFunc>; 6] {
    static CELL: OnceLock<[ConicPoint<RatFunc>; 6]> = OnceLock::new();
    CELL.get_or_init(|| sigma_sextuple(&RatFunc::t()).expect("symbolic t is admissible"))
}

/// `⟨s_L1(t), .., s_L4(t)⟩` for a set of letters in increasing order.
fn letter_cross_ratio(letters: &[Letter; 4]) -> RatFunc {
    let s = standard_positions();
    let [a, b, c, d] = letters.map(|l| &s[l.index()]);
    cross_ratio(a, b, c, d).expect("standard positions are distinct")
}

fn quadruple_is_harmonic(z: &[ConicPoint<Rational>; 4]) -> Result<bool, GeometryError> {
    let k = cross_ratio(&z[0], &z[1], &z[2], &z[3])?;
    Ok([Rational::from(-1), Rational::from(2), Rational::frac(1, 2)].contains(&k))
}

fn check_quadruple(z: &[ConicPoint<Rational>; 4]) -> Result<(), DegreeError> {
    let distinct = (0..4).all(|i| ((i + 1)..4).all(|j| z[i] != z[j]));
    if !distinct {
        return Err(DegreeError::InvalidQuadruple);
    }
    Ok(())
}

fn lift(p: &ConicPoint<Rational>) -> ConicPoint<QuadExt> {
    p.map(|x| QuadExt::from(x.clone()))
}

/// Extensions of one assignment.
pub fn extend(z: &[ConicPoint<Rational>; 4], a: &Assignment) -> Result<ExtendOutcome, DegreeError> {
    check_quadruple(z)?;
    extend_checked(z, a, &letter_cross_ratio(&a.letters))
}

fn extend_checked(
    z: &[ConicPoint<Rational>; 4],
    a: &Assignment,
    r: &RatFunc,
) -> Result<ExtendOutcome, DegreeError> {
    let zs = a.targets.map(|i| &z[i]);
    let kappa = cross_ratio(zs[0], zs[1], zs[2], zs[3])?;
    let eq: Poly<Rational> = r.numer().clone() - r.denom().clone() * Poly::constant(kappa);
    let violation = |v: fn(Assignment) -> GenericityViolation| Err(DegreeError::Genericity(vec![v(*a)]));
    let expected = 4 - a.kind();
    let Some(deg) = eq.degree() else {
        return if a.kind() == 4 {
            Err(DegreeError::Genericity(vec![GenericityViolation::HarmonicQuadruple]))
        } else {
            violation(GenericityViolation::IdenticallyZero)
        };
    };
    if deg != expected {
        return violation(GenericityViolation::DegreeDrop);
    }
    let roots: Vec<QuadExt> = match deg {
        0 => Vec::new(),
        1 => vec![QuadExt::from(-eq.coeff(0) / eq.coeff(1))],
        _ => {
            let (c0, c1, c2) = (eq.coeff(0), eq.coeff(1), eq.coeff(2));
            let disc = c1.clone() * c1.clone() - Rational::from(4) * c2.clone() * c0;
            if disc.is_zero() {
                return violation(GenericityViolation::RepeatedRoot);
            }
            let root = QuadExt::sqrt(&disc);
            let two_a = QuadExt::from(Rational::from(2) * c2);
            let minus_b = QuadExt::from(-c1);
            vec![(minus_b.clone() + root.clone()) / two_a.clone(), (minus_b - root) / two_a]
        }
    };
    let zq = zs.map(lift);
    let mut extensions = Vec::with_capacity(roots.len());
    for t0 in roots {
        let Ok(sigma) = sigma_sextuple(&t0) else {
            return violation(GenericityViolation::InadmissibleRoot);
        };
        let src = a.letters.map(|l| &sigma[l.index()]);
        let mu = Mobius::through([src[0], src[1], src[2]], [&zq[0], &zq[1], &zq[2]])?;
        debug_assert!(mu.apply(src[3]) == zq[3]);
        let points = sigma.map(|p| mu.apply(&p).normalized());
        extensions.push(Extension { assignment: *a, t: t0, points });
    }
    let quadratic = (extensions.len() == 2).then(|| type_two_quadratic(a, &extensions)).flatten();
    Ok(ExtendOutcome { extensions, quadratic })
}

fn type_two_quadratic(a: &Assignment, ext: &[Extension]) -> Option<TypeTwoQuadratic> {
    let letter = a.unknown_letters()[0];
    let c1 = ext[0].points[letter.index()].affine()?;
    let c2 = ext[1].points[letter.index()].affine()?;
    let sum = (c1.clone() + c2.clone()).as_rational()?.clone();
    let prod = (c1 * c2).as_rational()?.clone();
    let v = primitive_integer_vector(&[Rational::from(1), -sum, prod]);
    Some(TypeTwoQuadratic { letter, coeffs: [v[0].clone(), v[1].clone(), v[2].clone()] })
}

/// One distinct sextuple found by the experiment.
#[derive(Debug, Clone)]
pub struct Configuration {
    pub key: SextupleKey,
    pub kind: usize,
    pub hits: usize,
}

#[derive(Debug, Clone)]
pub struct ExperimentReport {
    /// `(type 2, type 3, type 4)` assignment counts.
    pub tally: (usize, usize, usize),
    /// Extensions found per type, same order.
    pub extensions: (usize, usize, usize),
    pub configurations: Vec<Configuration>,
    /// Number of sextuples reached a given number of times.
    pub orbit_sizes: BTreeMap<usize, usize>,
    pub quadratics: Vec<(Assignment, TypeTwoQuadratic)>,
}

impl ExperimentReport {
    pub fn distinct(&self) -> usize {
        self.configurations.len()
    }

    pub fn distinct_of_type(&self, kind: usize) -> usize {
        self.configurations.iter().filter(|c| c.kind == kind).count()
    }
}

/// Extends all 360 assignments of `z` and counts distinct sextuples.
pub fn run_experiment(z: &[ConicPoint<Rational>; 4]) -> Result<ExperimentReport, DegreeError> {
    check_quadruple(z)?;
    let mut violations = Vec::new();
    if quadruple_is_harmonic(z)? {
        violations.push(GenericityViolation::HarmonicQuadruple);
    }
    let assignments = enumerate_assignments();
    let mut cache: BTreeMap<[Letter; 4], RatFunc> = BTreeMap::new();
    let mut found: BTreeMap<SextupleKey, (usize, usize)> = BTreeMap::new();
    let mut ext_count = [0usize; 5];
    let mut quadratics = Vec::new();
    for a in &assignments {
        let r = cache.entry(a.letters).or_insert_with(|| letter_cross_ratio(&a.letters));
        match extend_checked(z, a, r) {
            Ok(out) => {
                ext_count[a.kind()] += out.extensions.len();
                for e in &out.extensions {
                    let entry = found.entry(e.key()).or_insert((0, a.kind()));
                    entry.0 += 1;
                }
                if let Some(q) = out.quadratic {
                    quadratics.push((*a, q));
                }
            }
            Err(DegreeError::Genericity(v)) => {
                for x in v {
                    if !violations.contains(&x) {
                        violations.push(x);
                    }
                }
            }
            Err(e) => return Err(e),
        }
    }
    let mut orbit_sizes = BTreeMap::new();
    for (hits, _) in found.values() {
        *orbit_sizes.entry(*hits).or_insert(0) += 1;
        if *hits != 8 && !violations.contains(&GenericityViolation::OrbitSize { hits: *hits }) {
            violations.push(GenericityViolation::OrbitSize { hits: *hits });
        }
    }
    if !violations.is_empty() {
        return Err(DegreeError::Genericity(violations));
    }
    let configurations = found
        .into_iter()
        .map(|(key, (hits, kind))| Configuration { key, kind, hits })
        .collect();
    Ok(ExperimentReport {
        tally: type_tally(&assignments),
        extensions: (ext_count[2], ext_count[3], ext_count[4]),
        configurations,
        orbit_sizes,
        quadratics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shuffle::LetterPerm;
    use Letter::*;

    fn z(v: [i64; 4]) -> [ConicPoint<Rational>; 4] {
        v.map(|x| ConicPoint::finite(Rational::from(x)))
    }

    fn qe(n: i64, d: i64) -> QuadExt {
        QuadExt::from(Rational::frac(n, d))
    }

    #[test]
    fn tallies() {
        let all = enumerate_assignments();
        assert_eq!(all.len(), 360);
        assert_eq!(type_tally(&all), (144, 192, 24));
        assert_eq!(Assignment::new([(A, 0), (C, 1), (D, 2), (E, 3)]).unwrap().kind(), 3);
        assert_eq!(Assignment::new([(A, 0), (B, 1), (D, 2), (E, 3)]).unwrap().kind(), 2);
    }

    #[test]
    fn worked_type_three() {
        let a = Assignment::new([(A, 0), (C, 1), (D, 2), (E, 3)]).unwrap();
        let out = extend(&z([2, 3, 5, 7]), &a).unwrap();
        assert_eq!(out.extensions.len(), 1);
        let e = &out.extensions[0];
        assert_eq!(e.t, qe(11, 1));
        assert_eq!(e.points[B.index()], ConicPoint::finite(qe(95, 31)));
        assert_eq!(e.points[F.index()], ConicPoint::finite(qe(13, 5)));
    }

    #[test]
    fn worked_type_two() {
        let a = Assignment::new([(A, 0), (B, 1), (D, 2), (E, 3)]).unwrap();
        let out = extend(&z([2, 3, 5, 7]), &a).unwrap();
        assert_eq!(out.extensions.len(), 2);
        let q = out.quadratic.unwrap();
        assert_eq!(q.letter, C);
        assert_eq!(q.coeffs, [13, -112, 217].map(BigInt::from));
        assert_eq!(q.discriminant(), BigInt::from(1260));
        for e in &out.extensions {
            let c = e.points[C.index()].affine().unwrap();
            assert_eq!(c.label(), 35);
            // f = (c + 10)/(8 - c)
            let f = (c.clone() + qe(10, 1)) / (qe(8, 1) - c);
            assert_eq!(e.points[F.index()], ConicPoint::finite(f));
        }
    }

    #[test]
    fn type_four_has_no_extension_unless_harmonic() {
        let a = Assignment::new([(A, 0), (C, 1), (D, 2), (F, 3)]).unwrap();
        assert!(extend(&z([2, 3, 5, 7]), &a).unwrap().extensions.is_empty());
        let harmonic = [ConicPoint::finite(Rational::from(0)), ConicPoint::infinity(), ConicPoint::finite(Rational::from(1)), ConicPoint::finite(Rational::from(-1))];
        assert_eq!(
            extend(&harmonic, &a).unwrap_err(),
            DegreeError::Genericity(vec![GenericityViolation::HarmonicQuadruple])
        );
        assert!(matches!(run_experiment(&harmonic), Err(DegreeError::Genericity(_))));
    }

    #[test]
    fn v_transports_the_worked_extension() {
        let zz = z([2, 3, 5, 7]);
        let a = Assignment::new([(A, 0), (C, 1), (D, 2), (E, 3)]).unwrap();
        let b = a.relabel(&LetterPerm::v());
        assert_eq!(b, Assignment::new([(D, 0), (F, 1), (A, 2), (B, 3)]).unwrap());
        let ea = &extend(&zz, &a).unwrap().extensions[0];
        let eb = &extend(&zz, &b).unwrap().extensions[0];
        assert_eq!(eb.points[E.index()], ConicPoint::finite(qe(95, 31)));
        assert_eq!(eb.points[C.index()], ConicPoint::finite(qe(13, 5)));
        assert_eq!(ea.key(), eb.key());
    }

    #[test]
    fn sixty_through_two_three_five_seven() {
        let r = run_experiment(&z([2, 3, 5, 7])).unwrap();
        assert_eq!(r.tally, (144, 192, 24));
        assert_eq!(r.extensions, (288, 192, 0));
        assert_eq!(r.distinct(), 60);
        assert_eq!(r.distinct_of_type(2), 36);
        assert_eq!(r.distinct_of_type(3), 24);
        assert_eq!(r.orbit_sizes, BTreeMap::from([(8, 60)]));
    }

    #[test]
    fn repeated_points_rejected() {
        assert_eq!(run_experiment(&z([2, 2, 5, 7])).unwrap_err(), DegreeError::InvalidQuadruple);
    }
}
