//! Crate-wide error type.

use crate::construct::Violation;
use crate::exactlin::Rat;

#[derive(thiserror::Error, Debug)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("not an ideal: e_{} * e_{} escapes the subspace", .i + 1, .j + 1)]
    NotAnIdeal {
        i: usize,
        j: usize,
        defect: Vec<Rat>,
    },

    #[error("algebra is not left Leibniz")]
    NotLeftLeibniz,

    #[error("algebra is not a Lie algebra: {0}")]
    NotLie(String),

    #[error("not a quadratic Lie algebra: {0}")]
    NotQuadraticLie(String),

    #[error("operator is not skew-symmetric for the given metric: {0}")]
    NotSkew(String),

    #[error("operator is not a derivation: {0}")]
    NotDerivation(String),

    #[error("extension data fails {} equation(s); first: {}", .0.len(), .0.first().map(|v| v.equation.clone()).unwrap_or_default())]
    ValidationFailed(Vec<Violation>),

    #[error("map is not a 1-cocycle (delta does not vanish)")]
    NotCocycle,

    #[error("Lie algebra is not 2-step nilpotent")]
    NotTwoStepNilpotent,

    #[error("constraint violated: {0}")]
    ConstraintViolated(String),

    #[error("condition {name} failed")]
    ConditionFailed { name: String, defect: Vec<Rat> },

    #[error("map is not a representation: {0}")]
    NotRepresentation(String),

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("matrix is singular")]
    Singular,

    #[error("metric invariance does not match the requested side: {0}")]
    InvarianceMismatch(String),

    #[error("unknown catalog name: {0}")]
    UnknownName(String),

    #[error("bilinear form is not symmetric")]
    NotSymmetric,

    #[error("bilinear form is degenerate; kernel has dimension {}", .kernel_dim)]
    Degenerate {
        kernel_dim: usize,
        kernel_basis: Vec<Vec<Rat>>,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
