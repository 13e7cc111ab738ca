//! Gröbner bases of linear difference ideals and finite-difference scheme generation.

pub mod algebra;
pub mod diffpoly;
pub mod engine;
pub mod numerics;
pub mod parser;
pub mod schemegen;
pub mod verify;

pub use algebra::{Coeff, Field, Param, ParamPoly, Rational};
pub use diffpoly::{DiffPoly, IndetId, Names, Ranking, ShiftMonomial};

/// Difference polynomial over rational functions in parameters.
pub type Poly = DiffPoly<Coeff>;
/// Difference polynomial over plain rationals.
pub type QPoly = DiffPoly<Rational>;
