//! Filtered Khovanov–Rozansky homology from matrix factorizations.

pub mod algebra;
pub mod error;
pub mod invariants;
pub mod linalg;
pub mod link;
pub mod mf;
pub mod moy;
pub mod par;
pub mod suites;

pub use error::{Error, Result};
