//! Lie algebras, reductive decompositions and the curvature of homogeneous
//! Riemannian spaces, with a catalog of cyclic examples.

pub mod catalog;
pub mod curvature;
pub mod error;
pub mod exec;
pub mod io;
pub mod lie;
pub mod metric;
pub mod reductive;
pub mod spectrum;
pub mod structure;
pub mod tensor;
pub mod verify;

pub use error::{GeoError, Result};
pub use exec::Execution;
pub use lie::{Bracket, Derivation, LieAlgebra, DEFAULT_TOL};
pub use metric::InvariantMetric;
pub use reductive::{HomogeneousSpace, ReductiveDecomposition};
pub use tensor::{Tensor3, Tensor4};
