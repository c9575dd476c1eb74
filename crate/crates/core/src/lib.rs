//! A workbench for morphisms determined by objects.
//!
//! Two exactly computable Hom-finite categories over a prime field are
//! provided: representations of acyclic quivers ([`quiver`]) and nilpotent
//! operators ([`tube`]). The [`determined`] engine runs against either one
//! through the [`Category`] trait.

pub mod ar;
pub mod category;
pub mod determined;
mod error;
pub mod linalg;
pub mod quiver;
pub mod suites;
pub mod tube;

pub use category::{
    Biproduct, Category, Extensions, Limits, Opposite, ShortExact, Summand, Translate,
};
pub use error::{Error, Result};
