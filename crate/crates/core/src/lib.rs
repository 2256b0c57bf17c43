//! Exact verification workbench for homological algebra over
//! finite-dimensional path algebras: tilting and cotilting checks,
//! Gorenstein dimensions, Auslander/Bass class membership, and the
//! named property suites the CLI exposes.

pub mod algebra;
pub mod bimodule;
pub mod catalog;
pub mod error;
pub mod field;
pub mod foxby;
pub mod gorenstein;
pub mod homology;
pub mod matrix;
pub mod module;
pub mod oracle;
pub mod tilting;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use matrix::{quotient_projection, LinSolver, Matrix};

/// Concrete aliases for the two fields the workbench ships with.
pub type MatrixFp = Matrix<PrimeField>;
pub type MatrixQ = Matrix<Rationals>;
