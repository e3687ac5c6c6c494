//! Builders for graded algebras: skew category algebras, crossed products
//! over groups, graded subalgebras of matrix rings, and the strongly graded
//! witness whose components are not all free of rank one.

mod crossed;
mod freeness;
mod matrix;
mod skew;
mod witness;

pub use crossed::{CrossedSystem, CrossedViolation};
pub use freeness::{is_free_rank_one, Freeness, FREENESS_ENUMERATION_CAP};
pub use matrix::{build_matrix_graded, MatrixGradingSpec};
pub use skew::{SkewSystem, SkewViolation};
pub use witness::{build_theorem5_witness, ComponentKind, ComponentReport, WitnessReport};

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::graded::GradedError;
use crate::groupoid::GroupoidError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("the section list is empty")]
    EmptySection,
    #[error("section entry {0} is not a morphism")]
    SectionOutOfRange(usize),
    #[error("the grading category is not cancellable")]
    NotCancellable,
    #[error("matrix unit ({i}, {j}) lies in two components")]
    OverlappingDegrees { i: usize, j: usize },
    #[error("shape error: {0}")]
    Shape(String),
    #[error("skew system axiom violated: {0:?}")]
    SkewAxiom(SkewViolation),
    #[error("crossed system axiom violated: {0:?}")]
    CrossedAxiom(CrossedViolation),
    #[error("crossed products are built over one-object groupoids only")]
    NotAGroup,
    #[error("the groupoid has no nonidentity morphism")]
    NoNonIdentityMorphism,
}
