//! Pascal lines, the 60-line census, and the involutive and ricochet
//! constructions.

use std::fmt;

use thiserror::Error;

use crate::geometry::{
    chord, collinear, cross_ratio, incident, involution_from_point, join, meet, veronese, ConicPoint,
    GeometryError, LineByPole, Mobius, PlanePoint,
};
use crate::letters::Letter;
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PascalError {
    #[error("array has repeated points")]
    InvalidArray,
    #[error("degenerate chord configuration: the cross-hair points do not span a line")]
    DegeneratePascal,
    #[error("need six distinct points")]
    InvalidSextuple,
    #[error("degenerate involutive configuration: {0}")]
    DegenerateInvolutive(String),
    #[error("degenerate ricochet configuration: {}", fmt_collisions(.0))]
    DegenerateRico(Vec<(Letter, Letter)>),
    #[error("internal theorem violation: {0}")]
    TheoremViolation(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

fn fmt_collisions(c: &[(Letter, Letter)]) -> String {
    c.iter().map(|(a, b)| format!("{a} = {b}")).collect::<Vec<_>>().join(", ")
}

/// Six conic points in a 2×3 array `[[A, B, C], [F, E, D]]`.
#[derive(Clone, Debug)]
pub struct SexArray<F: Field> {
    pub top: [ConicPoint<F>; 3],
    pub bottom: [ConicPoint<F>; 3],
}

/// A labelled array of letters, in the same layout.
pub type LetterArray = [[Letter; 3]; 2];

impl<F: Field> SexArray<F> {
    pub fn new(top: [ConicPoint<F>; 3], bottom: [ConicPoint<F>; 3]) -> Result<Self, PascalError> {
        let arr = SexArray { top, bottom };
        if !all_distinct(&arr.points()) {
            return Err(PascalError::InvalidArray);
        }
        Ok(arr)
    }

    /// Fill a letter array from points indexed by letter.
    pub fn from_letters(points: &[ConicPoint<F>; 6], letters: &LetterArray) -> Result<Self, PascalError> {
        let pick = |row: &[Letter; 3]| row.map(|l| points[l.index()].clone());
        Self::new(pick(&letters[0]), pick(&letters[1]))
    }

    fn points(&self) -> Vec<&ConicPoint<F>> {
        self.top.iter().chain(&self.bottom).collect()
    }
}

pub(crate) fn all_distinct<F: Field>(pts: &[&ConicPoint<F>]) -> bool {
    (0..pts.len()).all(|i| ((i + 1)..pts.len()).all(|j| pts[i] != pts[j]))
}

/// A Pascal line with the three cross-hair points that define it.
#[derive(Clone, Debug)]
pub struct PascalLine<F: Field> {
    pub line: LineByPole<F>,
    pub crosshairs: [PlanePoint<F>; 3],
}

/// The Pascal line of an array: cross-hairs `AE ∩ BF`, `BD ∩ CE`, `AD ∩ CF`.
pub fn pascal<F: Field>(arr: &SexArray<F>) -> Result<PascalLine<F>, PascalError> {
    if !all_distinct(&arr.points()) {
        return Err(PascalError::InvalidArray);
    }
    let cross = |i: usize, j: usize| -> Result<PlanePoint<F>, PascalError> {
        let l1 = chord(&arr.top[i], &arr.bottom[j]);
        let l2 = chord(&arr.top[j], &arr.bottom[i]);
        meet(&l1, &l2).map_err(|_| PascalError::DegeneratePascal)
    };
    let crosshairs = [cross(0, 1)?, cross(1, 2)?, cross(0, 2)?];
    let line = join(&crosshairs[0], &crosshairs[1])
        .or_else(|_| join(&crosshairs[0], &crosshairs[2]))
        .or_else(|_| join(&crosshairs[1], &crosshairs[2]))
        .map_err(|_| PascalError::DegeneratePascal)?;
    if !crosshairs.iter().all(|p| incident(p, &line)) {
        return Err(PascalError::TheoremViolation(
            "cross-hair points of a hexagon inscribed in the conic are not collinear".into(),
        ));
    }
    Ok(PascalLine { line, crosshairs })
}

/// Every array Pascal-equivalent to `arr` (row swap and column permutations).
pub fn equivalent_arrays(arr: &LetterArray) -> Vec<LetterArray> {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out = Vec::with_capacity(12);
    for rows in [[0, 1], [1, 0]] {
        for p in PERMS {
            out.push([p.map(|c| arr[rows[0]][c]), p.map(|c| arr[rows[1]][c])]);
        }
    }
    out
}

fn canonical(arr: &LetterArray) -> LetterArray {
    equivalent_arrays(arr).into_iter().min().expect("nonempty")
}

/// Canonical representatives of the 60 Pascal-equivalence classes of
/// arrays, in increasing lexicographic order.
pub fn pascal_classes() -> Vec<LetterArray> {
    let mut reps: Vec<LetterArray> = Vec::new();
    permutations6(|perm| {
        let arr = [
            [perm[0], perm[1], perm[2]].map(Letter::from_index),
            [perm[3], perm[4], perm[5]].map(Letter::from_index),
        ];
        let c = canonical(&arr);
        if !reps.contains(&c) {
            reps.push(c);
        }
    });
    reps.sort();
    reps
}

pub(crate) fn permutations6(mut visit: impl FnMut(&[usize; 6])) {
    fn rec(k: usize, cur: &mut [usize; 6], used: &mut [bool; 6], visit: &mut dyn FnMut(&[usize; 6])) {
        if k == 6 {
            visit(cur);
            return;
        }
        for i in 0..6 {
            if !used[i] {
                used[i] = true;
                cur[k] = i;
                rec(k + 1, cur, used, visit);
                used[i] = false;
            }
        }
    }
    rec(0, &mut [0; 6], &mut [false; 6], &mut visit);
}

pub fn format_array(arr: &LetterArray) -> String {
    let row = |r: &[Letter; 3]| r.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",");
    format!("{};{}", row(&arr[0]), row(&arr[1]))
}

#[derive(Clone, Debug)]
pub struct CensusEntry<F: Field> {
    pub array: LetterArray,
    pub pascal: PascalLine<F>,
}

/// The 60 Pascal lines of a sextuple, grouped by coincidence.
#[derive(Clone, Debug)]
pub struct Census<F: Field> {
    pub entries: Vec<CensusEntry<F>>,
    /// Indices into `entries`, one group per distinct line.
    pub classes: Vec<Vec<usize>>,
}

impl<F: Field> Census<F> {
    pub fn distinct_lines(&self) -> usize {
        self.classes.len()
    }

    pub fn line_of(&self, arr: &LetterArray) -> Option<&LineByPole<F>> {
        let c = canonical(arr);
        self.entries.iter().find(|e| e.array == c).map(|e| &e.pascal.line)
    }
}

/// Pascal lines of all 60 classes for points labelled `A..F` in order.
pub fn all_pascals<F: Field>(points: &[ConicPoint<F>]) -> Result<Census<F>, PascalError> {
    let pts: [ConicPoint<F>; 6] = points.to_vec().try_into().map_err(|_| PascalError::InvalidSextuple)?;
    if !all_distinct(&pts.iter().collect::<Vec<_>>()) {
        return Err(PascalError::InvalidSextuple);
    }
    let entries = pascal_classes()
        .into_iter()
        .map(|array| {
            let pascal = pascal(&SexArray::from_letters(&pts, &array)?)?;
            Ok(CensusEntry { array, pascal })
        })
        .collect::<Result<Vec<_>, PascalError>>()?;
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, e) in entries.iter().enumerate() {
        match classes.iter_mut().find(|c| entries[c[0]].pascal.line == e.pascal.line) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    Ok(Census { entries, classes })
}

/// Six points cut on the conic by three lines through `q`.
#[derive(Clone, Debug)]
pub struct InvolutiveConfig<F: Field> {
    pub q: PlanePoint<F>,
    /// Indexed by letter: `A = T1, F = σ(T1), B = T2, E = σ(T2), C = T3, D = σ(T3)`.
    pub points: [ConicPoint<F>; 6],
}

impl<F: Field> InvolutiveConfig<F> {
    /// The base array and the three arrays obtained by switching the
    /// entries of one column.
    pub fn switched_arrays() -> [LetterArray; 4] {
        use Letter::*;
        [
            [[A, B, C], [F, E, D]],
            [[F, B, C], [A, E, D]],
            [[A, E, C], [F, B, D]],
            [[A, B, D], [F, E, C]],
        ]
    }

    pub fn pascals(&self) -> Result<Vec<PascalLine<F>>, PascalError> {
        Self::switched_arrays()
            .iter()
            .map(|arr| pascal(&SexArray::from_letters(&self.points, arr)?))
            .collect()
    }

    pub fn polar(&self) -> LineByPole<F> {
        LineByPole::polar_of(self.q.clone())
    }
}

pub fn build_involutive<F: Field>(
    q: &PlanePoint<F>,
    t1: &ConicPoint<F>,
    t2: &ConicPoint<F>,
    t3: &ConicPoint<F>,
) -> Result<InvolutiveConfig<F>, PascalError> {
    let sigma = involution_from_point(q).map_err(|_| PascalError::DegenerateInvolutive("Q lies on the conic".into()))?;
    let [a, b, c] = [t1, t2, t3].map(Clone::clone);
    let [f, e, d] = [&a, &b, &c].map(|t| sigma.apply(t));
    let points = [a, b, c, d, e, f];
    for i in 0..6 {
        for j in (i + 1)..6 {
            if points[i] == points[j] {
                return Err(PascalError::DegenerateInvolutive(format!(
                    "{} and {} coincide",
                    Letter::from_index(i),
                    Letter::from_index(j)
                )));
            }
        }
    }
    Ok(InvolutiveConfig { q: q.clone(), points })
}

/// The ricochet construction on a conic.
#[derive(Clone, Debug)]
pub struct RicoConfig<F: Field> {
    /// `A..F` indexed by [`Letter`].
    pub points: [ConicPoint<F>; 6],
    pub z: ConicPoint<F>,
    pub u: PlanePoint<F>,
    pub v: PlanePoint<F>,
    pub w: PlanePoint<F>,
    pub pline: LineByPole<F>,
    /// Modulus: the image of `B` once `A, C, D` are moved to `0, ∞, 1`.
    pub t: F,
}

impl<F: Field> RicoConfig<F> {
    pub fn point(&self, l: Letter) -> &ConicPoint<F> {
        &self.points[l.index()]
    }

    pub fn sigma_v(&self) -> Mobius<F> {
        involution_from_point(&self.v).expect("V is off the conic")
    }

    pub fn sigma_w(&self) -> Mobius<F> {
        involution_from_point(&self.w).expect("W is off the conic")
    }

    pub fn sigma_u(&self) -> Mobius<F> {
        involution_from_point(&self.u).expect("U is off the conic")
    }
}

/// Builds `V, F, W, Z, E, U` and the line `VW` from `A, C, D, B`.
pub fn build_ricochet<F: Field>(
    a: &ConicPoint<F>,
    c: &ConicPoint<F>,
    d: &ConicPoint<F>,
    b: &ConicPoint<F>,
) -> Result<RicoConfig<F>, PascalError> {
    let given = [(Letter::A, a), (Letter::C, c), (Letter::D, d), (Letter::B, b)];
    let mut collisions = Vec::new();
    for i in 0..4 {
        for j in (i + 1)..4 {
            if given[i].1 == given[j].1 {
                collisions.push((given[i].0, given[j].0));
            }
        }
    }
    if !collisions.is_empty() {
        return Err(PascalError::DegenerateRico(collisions));
    }

    let v = meet(&LineByPole::tangent(a), &LineByPole::tangent(c))?;
    let sigma_v = involution_from_point(&v)?;
    let f = sigma_v.apply(d);
    let w = meet(&chord(a, &f), &chord(c, d))?;
    let u = meet(&chord(a, d), &chord(c, &f))?;
    let z = sigma_v.apply(b);
    let e = involution_from_point(&w)?.apply(&z);
    let points = [a.clone(), b.clone(), c.clone(), d.clone(), e, f];

    let mut collisions = Vec::new();
    for i in 0..6 {
        for j in (i + 1)..6 {
            if points[i] == points[j] {
                collisions.push((Letter::from_index(i), Letter::from_index(j)));
            }
        }
    }
    if !collisions.is_empty() {
        return Err(PascalError::DegenerateRico(collisions));
    }

    let pline = join(&v, &w)?;
    if !incident(&u, &pline) {
        return Err(PascalError::TheoremViolation("U, V, W are not collinear".into()));
    }
    let harmonic = cross_ratio(a, c, d, &points[Letter::F.index()])?;
    if harmonic != F::from_i64(-1) {
        return Err(PascalError::TheoremViolation("A, C, D, F is not harmonic".into()));
    }
    let t = Mobius::normalizing(a, c, d)?
        .apply(b)
        .affine()
        .ok_or_else(|| PascalError::TheoremViolation("B normalizes to infinity".into()))?;
    Ok(RicoConfig { points, z, u, v, w, pline, t })
}

/// `ψ = σ_W ∘ σ_V`, checked against `σ_V ∘ σ_U`.
pub fn psi<F: Field>(cfg: &RicoConfig<F>) -> Result<Mobius<F>, PascalError> {
    let psi = cfg.sigma_w().compose(&cfg.sigma_v());
    let alt = cfg.sigma_v().compose(&cfg.sigma_u());
    if psi != alt {
        return Err(PascalError::TheoremViolation("σ_W∘σ_V differs from σ_V∘σ_U".into()));
    }
    Ok(psi)
}

/// Second intersection with the conic of the line through the conic point
/// `from` and the plane point `h`.
fn second_point<F: Field>(h: &PlanePoint<F>, from: &ConicPoint<F>) -> Option<ConicPoint<F>> {
    if h.on_conic() {
        let p = h.conic_parameter().ok()?;
        return (p != *from).then_some(p);
    }
    involution_from_point(h).ok().map(|s| s.apply(from))
}

/// `ω(B)`: meet `BF` with the p-line in `H1`, then take the second
/// intersection of `A H1`; the same point arises from `BD`, `H2` and `C`.
pub fn omega<F: Field>(cfg: &RicoConfig<F>, b0: &ConicPoint<F>) -> Result<ConicPoint<F>, PascalError> {
    let route = |through: Letter, pivot: Letter| -> Option<ConicPoint<F>> {
        let h = meet(&chord(b0, cfg.point(through)), &cfg.pline).ok()?;
        second_point(&h, cfg.point(pivot))
    };
    match (route(Letter::F, Letter::A), route(Letter::D, Letter::C)) {
        (Some(x), Some(y)) if x == y => Ok(x),
        (Some(_), Some(_)) => Err(PascalError::TheoremViolation("the two constructions of ω disagree".into())),
        (Some(x), None) | (None, Some(x)) => Ok(x),
        (None, None) => Err(PascalError::TheoremViolation("ω undefined".into())),
    }
}

/// Outcome of checking `pasc(A,B,C;F,E,D) = pasc(A,E,C;D,B,F) = VW`.
#[derive(Clone, Debug)]
pub struct RicochetReport<F: Field> {
    pub common_line: LineByPole<F>,
    pub first: PascalLine<F>,
    pub second: PascalLine<F>,
}

pub fn ricochet_arrays() -> [LetterArray; 2] {
    use Letter::*;
    [[[A, B, C], [F, E, D]], [[A, E, C], [D, B, F]]]
}

pub fn verify_ricochet_theorem<F: Field>(cfg: &RicoConfig<F>) -> Result<RicochetReport<F>, PascalError> {
    let [a1, a2] = ricochet_arrays();
    let first = pascal(&SexArray::from_letters(&cfg.points, &a1)?)?;
    let second = pascal(&SexArray::from_letters(&cfg.points, &a2)?)?;
    if first.line != second.line || first.line != cfg.pline {
        return Err(PascalError::TheoremViolation("the two ricochet Pascals differ from VW".into()));
    }
    Ok(RicochetReport { common_line: cfg.pline.clone(), first, second })
}

/// `true` when the three cross-hair points are collinear; used by checks
/// that sweep many arrays.
pub fn crosshairs_collinear<F: Field>(p: &PascalLine<F>) -> bool {
    collinear(&p.crosshairs[0], &p.crosshairs[1], &p.crosshairs[2])
}

/// The plane point of a conic point, handy for rendering.
pub fn plane_points<F: Field>(pts: &[ConicPoint<F>]) -> Vec<PlanePoint<F>> {
    pts.iter().map(veronese).collect()
}

impl<F: Field> fmt::Display for PascalLine<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.line)
    }
}
