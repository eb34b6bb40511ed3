//! Erasure codes with (r, ℓ)-cooperative locality.
//!
//! A code has (r, ℓ)-cooperative locality when any ℓ erased symbols can be
//! rebuilt jointly from at most r intact symbols. This crate provides finite
//! field linear algebra, a linear-code model with brute-force oracles for
//! locality and minimum distance, the distance and rate bounds, several
//! explicit constructions with their repair algorithms, graph-based codes and
//! a simulation harness.
//!
//! Indices are 0-based everywhere.

pub mod algebra;
pub mod code;
pub mod combin;
pub mod constructions;
mod error;
pub mod graph;
pub mod par;
pub mod repair;
pub mod sim;

pub use algebra::{Field, Matrix};
pub use code::LinearCode;
pub use error::{Error, Result};
pub use par::Parallelism;
pub use repair::{ErasedWord, RepairReport, RepairStep};
