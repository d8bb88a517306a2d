use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// The norm-square of an amplitude had a nonzero √2 part, so the outcome
    /// probability is not rational. Only networks outside the balanced
    /// beam-splitter family can produce this.
    #[error("probability of pattern [{pattern}] is not rational")]
    NonRationalProbability { pattern: String },

    #[error("operation requires the {expected} convention")]
    ConventionMismatch { expected: &'static str },

    #[error("pattern [{pattern}] has a Fock normalization outside Q(i, sqrt2)")]
    NotRepresentable { pattern: String },

    #[error("mode index {index} out of range for {modes} modes")]
    ModeIndexOutOfRange { index: usize, modes: usize },

    #[error("mode count mismatch: expected {expected}, found {found}")]
    ModeCountMismatch { expected: usize, found: usize },

    #[error("photon number mismatch: expected {expected}, found {found}")]
    PhotonNumberMismatch { expected: usize, found: usize },

    #[error("{what} of {requested} exceeds the configured limit {limit}")]
    ResourceLimit { what: &'static str, requested: usize, limit: usize },

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("matrix is not unitary")]
    NotUnitary,
}

pub type Result<T> = std::result::Result<T, Error>;
