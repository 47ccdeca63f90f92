//! Scalar fields, banded matrices, sparse bivariate polynomials and exact
//! rank.

pub mod band;
pub mod dynamic;
pub mod field;
pub mod poly;
pub mod rank;
pub mod scalar;

pub use band::BandMatrix;
pub use dynamic::DynPoly;
pub use field::{approx_eq, negligible, pochhammer, rat, Field, Mode, Rational, FLOAT_TOLERANCE};
pub use poly::{Exponent, SparsePoly2};
pub use rank::{rank_exact, rank_rational};
pub use scalar::{format_f64, Scalar};
