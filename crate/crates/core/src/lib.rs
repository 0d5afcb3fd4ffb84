//! Exact computations around Pascal lines on a conic and the ricochet
//! configuration of six points.
//!
//! The crate is layered bottom-up:
//!
//! * [`scalar`]: exact fields (ℚ, ℚ(√d), ℚ(t)) and the rings used for
//!   symbolic checks;
//! * [`forms`]: binary forms and transvectants;
//! * [`geometry`]: the plane of binary quadratics with its conic, Möbius
//!   maps and involutions;
//! * [`pascal`]: Pascal lines, the 60-line census, involutive and ricochet
//!   constructions;
//! * [`linalg`]: exact kernels by fraction-free elimination;
//! * [`invariants`]: joint and sextic invariants, and the derivation of the
//!   degree 6 and 10 invariants `U6`, `U10` that cut out ricochet sextuples;
//! * [`rico`]: the normal form `Σ(t)`, alignment search and the membership
//!   test;
//! * [`shuffle`] and [`degree`]: the shuffle group and the enumeration
//!   showing that four general points lie in exactly 60 ricochet sextuples.

pub mod degree;
pub mod forms;
pub mod geometry;
pub mod invariants;
pub mod letters;
pub mod linalg;
pub mod pascal;
pub mod rico;
pub mod scalar;
pub mod shuffle;

pub use forms::{transvectant, BinaryForm};
pub use letters::Letter;
pub use geometry::{ConicPoint, LineByPole, Mobius, PlanePoint};
pub use scalar::{Field, QuadExt, RatFunc, Rational, Ring};
