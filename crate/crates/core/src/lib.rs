//! Finite-dimensional algebras graded by finite groupoids, over the
//! rationals or a prime field.
//!
//! Everything is exact: scalars are arbitrary-precision rationals or
//! residues mod `p`, subspaces are stored as reduced row echelon bases, and
//! two subspaces are equal exactly when those bases are.

pub mod algebra;
pub mod analysis;
pub mod catalog;
pub mod constructions;
pub mod fixture;
pub mod graded;
pub mod groupoid;
pub mod ideals;
pub mod linalg;
pub mod scalar;

pub use algebra::{Algebra, AlgebraError, Element};
pub use graded::{GradedAlgebra, GradedError};
pub use groupoid::{Groupoid, GroupoidError};
pub use linalg::{Matrix, Subspace};
pub use scalar::{Field, Scalar};
