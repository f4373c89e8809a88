//! Error types shared across the crate.
//!
//! Metric-axiom errors carry the witnessing indices so a caller can point at
//! the exact offending entries of an input matrix.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Which precondition of a constructive operation failed, with the measured
/// quantity that violated it.
#[derive(Debug, Clone, PartialEq)]
pub enum Precondition {
    /// `d_H(f(A_X), A_Y)` exceeded the allowed epsilon.
    HausdorffTooLarge { measured: f64, epsilon: f64 },
    /// `max_{a in A_X} d_Y(f(a), g(a))` exceeded the allowed epsilon.
    NotClose { measured: f64, epsilon: f64 },
    /// The supplied map does not certify at the claimed epsilon.
    NotCertified {
        distortion: f64,
        defect: f64,
        epsilon: f64,
    },
}

impl std::fmt::Display for Precondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Precondition::HausdorffTooLarge { measured, epsilon } => write!(
                f,
                "Hausdorff distance {measured} exceeds epsilon {epsilon}"
            ),
            Precondition::NotClose { measured, epsilon } => {
                write!(f, "closeness {measured} exceeds epsilon {epsilon}")
            }
            Precondition::NotCertified {
                distortion,
                defect,
                epsilon,
            } => write!(
                f,
                "map does not certify at epsilon {epsilon} (distortion {distortion}, defect {defect})"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows} rows but row {row} has {cols} entries")]
    NotSquare { rows: usize, row: usize, cols: usize },
    #[error("entry d[{i}][{j}] is not a finite real")]
    NonFinite { i: usize, j: usize },
    #[error("diagonal entry d[{i}][{i}] = {value} is not zero")]
    NonZeroDiagonal { i: usize, value: f64 },
    #[error("asymmetric entries d[{i}][{j}] != d[{j}][{i}]")]
    Asymmetry { i: usize, j: usize },
    #[error("negative entry d[{i}][{j}]")]
    NegativeEntry { i: usize, j: usize },
    #[error("triangle inequality violated: d[{i}][{k}] > d[{i}][{j}] + d[{j}][{k}]")]
    TriangleViolation { i: usize, j: usize, k: usize },
    #[error("distinct points {i} and {j} are at zero distance")]
    ZeroOffDiagonal { i: usize, j: usize },

    #[error("subset is empty")]
    EmptySubset,
    #[error("index {index} out of range for a space with {n} points")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("problem size {size} exceeds the configured cap {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("operands live on different spaces")]
    MismatchedSpaces,
    #[error("invalid measure: {reason}")]
    InvalidMeasure { reason: String },
    #[error("Wasserstein exponent p = {p} must be >= 1")]
    InvalidExponent { p: f64 },
    #[error("map has {got} entries but its source space has {expected} points")]
    MapLengthMismatch { expected: usize, got: usize },
    #[error("relation is not a correspondence: {side} index {index} is not covered")]
    NotCorrespondence { side: &'static str, index: usize },

    #[error("permutation of length {n} is invalid at position {index}")]
    InvalidPermutation { n: usize, index: usize },
    #[error("group axiom violated: {reason}")]
    GroupAxiomViolation { reason: String },
    #[error("element {element} moves distances by {deviation}, beyond tolerance")]
    NotIsometric { element: usize, deviation: f64 },
    #[error("subset on the {side} side is not invariant under group element {element}")]
    NotInvariant { side: &'static str, element: usize },

    #[error("nets have different resolutions: {left} vs {right}")]
    ResolutionMismatch { left: u32, right: u32 },
    #[error("precondition failed: {0}")]
    PreconditionFailed(Precondition),
    #[error("scenario cap exceeded: {what}")]
    CapExceeded { what: String },
    #[error("incompatible group: {reason}")]
    IncompatibleGroup { reason: String },
    #[error("invalid scenario: {reason}")]
    InvalidScenario { reason: String },
}
