//! Exact linear algebra over prime fields.
//!
//! Everything downstream (Hom spaces, Ext groups, submodule lattices) reduces
//! to the row reductions in this module.

mod field;
mod matrix;
mod subspace;

pub use field::{all_vectors, Field, FieldElem, MAX_MODULUS};
pub use matrix::{Matrix, Rref};
pub use subspace::Subspace;
