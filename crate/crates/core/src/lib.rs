//! Weak model sets from cut-and-project schemes, in exact arithmetic.
//!
//! The crate builds one-dimensional projection schemes of two kinds: planar
//! lattices with real quadratic coordinates projected to a physical and an
//! internal line, and the arithmetic scheme of integers paired with a finite
//! product of residue-class groups.  Point configurations are materialised on
//! finite regions without any floating-point decision, and their empirical
//! densities, pattern frequencies and topological classifications are
//! compared against exact limit values.

pub mod bfree;
pub mod configuration;
pub mod dynamics;
pub mod error;
pub mod exactnum;
#[cfg(test)]
pub(crate) mod fixtures;
pub mod rng;
pub mod scheme;
pub mod vanhove;
pub mod window;

pub use error::{Error, Result};
