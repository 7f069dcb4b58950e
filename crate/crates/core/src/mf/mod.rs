//! Matrix factorizations: explicit matrices, Koszul row form, reduced
//! models and their filtered cohomology.

pub mod engine;
pub mod koszul;
pub mod local;
pub mod matrix;
pub mod model;
pub mod ring;

pub use engine::{cohomology, filtration_level, Class, CohomOptions, Cohomology, FreeModel, ModElem, Reducer};
pub use koszul::{koszul, KoszulMF, KoszulRow};
pub use matrix::{GradedGen, MatrixFactorization, MfMap, PolyMatrix};
pub use local::{chain_check, ComposedMap, LocalMap};
pub use model::{apply_d, Elem, KoszulCohomology, Reduction};
pub use ring::{Relation, Ring};
