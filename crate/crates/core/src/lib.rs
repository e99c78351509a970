//! Exact enumeration of pattern-avoiding indecomposable permutations.
//!
//! The crate pairs a brute-force oracle ([`brute_force`]) with the closed
//! forms ([`closed_forms`]) and generating-function identities
//! ([`identities`]) that describe the same counts, so every claimed number
//! can be checked two independent ways.

pub mod bijection;
pub mod brute_force;
pub mod closed_forms;
pub mod error;
pub mod identities;
pub mod pattern;
pub mod perm;
pub mod series;

pub use brute_force::{Oracle, Restrict};
pub use error::{Error, Result};
pub use pattern::VincularPattern;
pub use perm::Permutation;
