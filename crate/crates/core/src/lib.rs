//! Exact computation and classification of graded Lie algebras of
//! infinitesimal CR automorphisms of weighted homogeneous models
//! Im w = P(z, z-bar) in C^3.

pub mod algebra;
pub mod catalog;
pub mod chains;
pub mod classify;
pub mod error;
pub mod linalg;
pub mod parse;
pub mod report;
pub mod tangency;
pub mod weights;

pub use algebra::{GaussRat, HoloField, MixedPoly, Mono, Rat};
pub use error::{Error, Result};
pub use weights::Weight;
