//! Letter permutations and the shuffle group `H(t)`.

use std::fmt;
use std::str::FromStr;

use crate::letters::Letter;
use crate::pascal::permutations6;
use crate::rico::{check_alignment, sigma_sextuple, RicoError};
use crate::scalar::Field;

/// A permutation of `A..F`; `self.apply(L)` is the image of `L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LetterPerm([Letter; 6]);

impl LetterPerm {
    pub fn identity() -> Self {
        LetterPerm(Letter::ALL)
    }

    /// From the images of `A..F`; `None` unless bijective.
    pub fn from_images(images: [Letter; 6]) -> Option<Self> {
        let mut seen = [false; 6];
        for l in images {
            if std::mem::replace(&mut seen[l.index()], true) {
                return None;
            }
        }
        Some(LetterPerm(images))
    }

    pub fn from_cycles(cycles: &[&[Letter]]) -> Option<Self> {
        let mut images = Letter::ALL;
        let mut touched = [false; 6];
        for cycle in cycles {
            for (i, &l) in cycle.iter().enumerate() {
                if std::mem::replace(&mut touched[l.index()], true) {
                    return None;
                }
                images[l.index()] = cycle[(i + 1) % cycle.len()];
            }
        }
        Some(LetterPerm(images))
    }

    pub fn apply(&self, l: Letter) -> Letter {
        self.0[l.index()]
    }

    pub fn images(&self) -> [Letter; 6] {
        self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        LetterPerm(other.0.map(|l| self.apply(l)))
    }

    pub fn inverse(&self) -> Self {
        let mut inv = Letter::ALL;
        for l in Letter::ALL {
            inv[self.apply(l).index()] = l;
        }
        LetterPerm(inv)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::identity(), |acc, _| acc.compose(self))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn cycles(&self) -> Vec<Vec<Letter>> {
        let mut seen = [false; 6];
        let mut out = Vec::new();
        for start in Letter::ALL {
            if seen[start.index()] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start.index()] = true;
            let mut l = self.apply(start);
            while l != start {
                seen[l.index()] = true;
                cycle.push(l);
                l = self.apply(l);
            }
            out.push(cycle);
        }
        out
    }

    /// `u = (A D C F)`.
    pub fn u() -> Self {
        use Letter::*;
        Self::from_cycles(&[&[A, D, C, F]]).expect("valid cycle")
    }

    /// `v = (A D)(B E)(C F)`.
    pub fn v() -> Self {
        use Letter::*;
        Self::from_cycles(&[&[A, D], &[B, E], &[C, F]]).expect("valid cycles")
    }

    pub fn all() -> Vec<Self> {
        let mut out = Vec::with_capacity(720);
        permutations6(|p| out.push(LetterPerm((*p).map(Letter::from_index))));
        out
    }
}

impl fmt::Display for LetterPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "e");
        }
        for c in cycles {
            let names: Vec<String> = c.iter().map(|l| l.to_string()).collect();
            write!(f, "({})", names.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for LetterPerm {
    type Err = String;

    /// Cycle notation such as `(A D C F)`, `(AB)(CD)` or `e`.
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s == "e" || s.is_empty() {
            return Ok(Self::identity());
        }
        let mut cycles: Vec<Vec<Letter>> = Vec::new();
        let mut current: Option<Vec<Letter>> = None;
        for ch in s.chars() {
            match ch {
                '(' if current.is_none() => current = Some(Vec::new()),
                ')' => cycles.push(current.take().ok_or("unbalanced ')'")?),
                c if c.is_whitespace() || c == ',' => {}
                c => {
                    let l = Letter::from_char(c).ok_or_else(|| format!("unknown letter {c:?}"))?;
                    current.as_mut().ok_or("letter outside a cycle")?.push(l);
                }
            }
        }
        if current.is_some() {
            return Err("unbalanced '('".into());
        }
        let refs: Vec<&[Letter]> = cycles.iter().map(Vec::as_slice).collect();
        Self::from_cycles(&refs).ok_or_else(|| "letter repeated across cycles".into())
    }
}

/// Whether relabelling `Σ(t)` by `z` gives another alignment.
pub fn shuffle_membership<F: Field>(z: &LetterPerm, t: &F) -> Result<bool, RicoError> {
    let sigma = sigma_sextuple(t)?;
    Ok(is_member(z, &sigma))
}

fn is_member<F: Field>(z: &LetterPerm, sigma: &[crate::geometry::ConicPoint<F>; 6]) -> bool {
    let by_letter = Letter::ALL.map(|l| &sigma[z.apply(l).index()]);
    check_alignment(by_letter).is_some()
}

#[derive(Debug, Clone)]
pub struct ShuffleGroup {
    pub elements: Vec<LetterPerm>,
}

impl ShuffleGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, z: &LetterPerm) -> bool {
        self.elements.contains(z)
    }

    pub fn is_closed(&self) -> bool {
        self.elements.iter().all(|a| {
            self.contains(&a.inverse()) && self.elements.iter().all(|b| self.contains(&a.compose(b)))
        })
    }

    /// Every element maps `{A, C, D, F}` onto itself.
    pub fn preserves_harmonic_letters(&self) -> bool {
        self.elements.iter().all(|z| Letter::HARMONIC.iter().all(|l| z.apply(*l).is_harmonic()))
    }

    /// Subgroup generated by `gens`.
    pub fn generated_by(gens: &[LetterPerm]) -> Vec<LetterPerm> {
        let mut out = vec![LetterPerm::identity()];
        let mut i = 0;
        while i < out.len() {
            for g in gens {
                let n = g.compose(&out[i]);
                if !out.contains(&n) {
                    out.push(n);
                }
            }
            i += 1;
        }
        out.sort();
        out
    }
}

/// `u⁴ = v² = (uv)² = e`.
pub fn dihedral_relations(u: &LetterPerm, v: &LetterPerm) -> bool {
    u.pow(4).is_identity() && v.pow(2).is_identity() && u.compose(v).pow(2).is_identity()
}

pub fn shuffle_group<F: Field>(t: &F) -> Result<ShuffleGroup, RicoError> {
    let sigma = sigma_sextuple(t)?;
    let mut elements: Vec<LetterPerm> = LetterPerm::all().into_iter().filter(|z| is_member(z, &sigma)).collect();
    elements.sort();
    Ok(ShuffleGroup { elements })
}
