use thiserror::Error;

use crate::exactla::{FieldSpec, LinalgError};

/// Errors raised by category, module and pipeline constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("duplicate name `{0}`")]
    Duplicate(String),
    #[error("malformed category data: {0}")]
    Malformed(String),
    #[error("category fails validation: {0}")]
    InvalidCategory(String),
    #[error("invalid bimodule: {0}")]
    InvalidBimodule(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid coefficient bimodule: {0}")]
    InvalidCoefficient(String),
    #[error("invalid ideal: {0}")]
    InvalidIdeal(String),
    #[error("coordinate vector has length {got}, Hom({x},{y}) has dimension {expected}")]
    CoordinateMismatch { x: String, y: String, expected: usize, got: usize },
    #[error("arguments live over different categories")]
    BaseMismatch,
    #[error("module sides are incompatible: {0}")]
    SideMismatch(String),
    #[error("category carries no triangular block structure")]
    NotTriangular,
    #[error("quiver presentation is not certified finite: {0}")]
    Finiteness(String),
    #[error("category is not basic: {0}")]
    NotBasic(String),
    #[error("resolution too short: need degree {needed}, have {have}")]
    ResolutionTooShort { needed: usize, have: usize },
    #[error("zero module")]
    ZeroModule,
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("sample module does not live over the quotient category")]
    SampleBaseMismatch,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
