//! Exact finite computations for tensor products of categories,
//! profunctors and symmetric multicategories over finite sets.

pub mod error;
pub mod finkit;
pub mod perm;
pub mod vmatrix;

pub use error::{Error, Result};
pub mod audit;
pub mod catmon;
pub mod promod;
pub mod opdkit;
pub mod dsl;
