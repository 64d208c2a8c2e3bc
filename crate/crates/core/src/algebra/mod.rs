//! Exact Gaussian-rational arithmetic, sparse mixed polynomials and
//! holomorphic vector fields.

mod field;
mod mono;
mod poly;
mod scalar;

pub use field::HoloField;
pub use mono::Mono;
pub use poly::{HoloVar, MixedPoly};
pub use scalar::{factorial, parse_rat, rat, rat_int, GaussRat, Rat};
