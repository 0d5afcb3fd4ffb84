//! The normal form `Σ(t)`, alignment search and the membership test.

use thiserror::Error;

use crate::forms::{form_from_roots, is_squarefree};
use crate::geometry::{ff, ConicPoint, GeometryError, Mobius};
use crate::invariants::{u6_u10, InvariantError, SexticInvariants};
use crate::letters::Letter;
use crate::pascal::all_distinct;
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RicoError {
    #[error("need six distinct points")]
    InvalidSextuple,
    #[error("degenerate modulus: {0} and {1} coincide")]
    DegenerateSigma(Letter, Letter),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

/// `Σ(t) = (0, t, ∞, 1, ff(t), -1)` in letter order.
pub fn sigma_sextuple<F: Field>(t: &F) -> Result<[ConicPoint<F>; 6], RicoError> {
    let one = F::one();
    let pts = [
        ConicPoint::finite(F::zero()),
        ConicPoint::finite(t.clone()),
        ConicPoint::infinity(),
        ConicPoint::finite(one.clone()),
        ConicPoint::new(t.clone() - one.clone(), t.clone() + one.clone())?,
        ConicPoint::finite(-one),
    ];
    for i in 0..6 {
        for j in (i + 1)..6 {
            if pts[i] == pts[j] {
                return Err(RicoError::DegenerateSigma(Letter::from_index(i), Letter::from_index(j)));
            }
        }
    }
    Ok(pts)
}

/// A labelling of six points by letters that a Möbius map carries onto
/// `Σ(t)`.
#[derive(Debug, Clone)]
pub struct Alignment<F: Field> {
    /// `labels[L]` is the index of the point carrying letter `L`.
    pub labels: [usize; 6],
    /// Sends the labelled points to `Σ(t)`.
    pub witness: Mobius<F>,
    pub t: F,
}

/// Tests whether points given in letter order form an alignment.
pub fn check_alignment<F: Field>(by_letter: [&ConicPoint<F>; 6]) -> Option<(Mobius<F>, F)> {
    use Letter as L;
    let mu = Mobius::normalizing(by_letter[L::A.index()], by_letter[L::C.index()], by_letter[L::D.index()]).ok()?;
    aligned_under(&mu, by_letter)
}

fn aligned_under<F: Field>(mu: &Mobius<F>, by_letter: [&ConicPoint<F>; 6]) -> Option<(Mobius<F>, F)> {
    use Letter as L;
    if mu.apply(by_letter[L::F.index()]) != ConicPoint::finite(-F::one()) {
        return None;
    }
    let b = mu.apply(by_letter[L::B.index()]);
    if mu.apply(by_letter[L::E.index()]) != ff().apply(&b) {
        return None;
    }
    Some((mu.clone(), b.affine()?))
}

/// All alignments of a sextuple, found by trying the 720 labellings.
pub fn alignment_search<F: Field>(points: &[ConicPoint<F>]) -> Result<Vec<Alignment<F>>, RicoError> {
    if points.len() != 6 || !all_distinct(&points.iter().collect::<Vec<_>>()) {
        return Err(RicoError::InvalidSextuple);
    }
    let mut out = Vec::new();
    // one normalizing map per ordered choice of (A, C, D)
    for a in 0..6 {
        for c in (0..6).filter(|&c| c != a) {
            for d in (0..6).filter(|&d| d != a && d != c) {
                let mu = Mobius::normalizing(&points[a], &points[c], &points[d])?;
                let rest: Vec<usize> = (0..6).filter(|i| ![a, c, d].contains(i)).collect();
                for (b, e, f) in [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)] {
                    let labels = [a, rest[b], c, d, rest[e], rest[f]];
                    let by_letter = labels.map(|i| &points[i]);
                    if let Some((witness, t)) = aligned_under(&mu, by_letter) {
                        out.push(Alignment { labels, witness, t });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Outcome of the membership test by both routes.
#[derive(Debug, Clone)]
pub struct MembershipReport<F: Field> {
    pub invariants: SexticInvariants<F>,
    pub u6: F,
    pub u10: F,
    pub alignments: Vec<Alignment<F>>,
    /// `U6 = U10 = 0`.
    pub by_invariants: bool,
    /// At least one alignment exists.
    pub by_alignment: bool,
}

impl<F: Field> MembershipReport<F> {
    pub fn agreement(&self) -> bool {
        self.by_invariants == self.by_alignment
    }

    pub fn is_rico(&self) -> bool {
        self.by_alignment
    }
}

pub fn membership<F: Field>(points: &[ConicPoint<F>]) -> Result<MembershipReport<F>, RicoError> {
    if points.len() != 6 || !all_distinct(&points.iter().collect::<Vec<_>>()) {
        return Err(RicoError::InvalidSextuple);
    }
    let phi = form_from_roots(points).map_err(GeometryError::from)?;
    if !is_squarefree(&phi).map_err(GeometryError::from)? {
        return Err(RicoError::InvalidSextuple);
    }
    let (u6, u10, invariants) = u6_u10(&phi)?;
    let alignments = alignment_search(points)?;
    let by_invariants = u6.is_zero() && u10.is_zero();
    let by_alignment = !alignments.is_empty();
    Ok(MembershipReport { invariants, u6, u10, alignments, by_invariants, by_alignment })
}
