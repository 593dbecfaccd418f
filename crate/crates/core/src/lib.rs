//! Wreath products `M ≀ Iₙ`, `M ≀ Sing(Iₙ)` and `M ≀ I` of a finite monoid `M`
//! with symmetric inverse monoids and the symmetric inverse category, their
//! generating sets and presentations, and machinery to check the
//! presentations at small sizes.

pub mod base;
pub mod error;
pub mod pperm;
pub mod presentations;
pub mod verify;
pub mod words;
pub mod wreath;

pub use error::{Error, Result};
