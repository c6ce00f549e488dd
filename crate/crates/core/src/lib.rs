//! Exact-arithmetic toolkit for bi-orthogonal monoclinic parallelepipeds with
//! rational edges and diagonals, expressed through the s-parameters
//! `s ↦ ((1 − s²)/2s, (1 + s²)/2s)` of four Pythagorean triples.

pub mod asymptotics;
pub mod coverage;
pub mod error;
pub mod exact;
pub mod families;
pub mod fixtures;
pub mod geometry;
pub mod search;
pub mod sspace;

pub use error::{Error, Result};
pub use exact::Rational;
pub use sspace::SParams;
