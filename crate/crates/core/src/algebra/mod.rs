//! Exact coefficients, sparse polynomials and the potential toolkit.

pub mod coeff;
pub mod derived;
pub mod laurent;
pub mod poly;
pub mod potential;
pub mod rational;

pub use coeff::Coeff;
pub use laurent::Laurent;
pub use poly::{Mono, Poly};
pub use potential::Potential;
pub use rational::Q;
