//! Quantitative distributive fairness.
//!
//! The crate scores resource allocations under six guiding principles of
//! fairness (difference, equality, equality of opportunity, greater good,
//! proportion, sufficiency). Scores are built from dispersion metrics
//! ([`dispersion`]) and social welfare functions ([`welfare`]) applied to the
//! inputs, outputs and utilities of a population ([`model`]). The
//! [`allocation`] module enumerates or optimises candidate allocations for
//! discrete and continuous division problems and ranks them.

pub mod allocation;
pub mod dispersion;
pub mod error;
pub mod model;
pub mod principles;
pub mod welfare;

pub use error::{FairnessError, Result};
pub use model::{Agent, AllocationContext, ValueVector};
