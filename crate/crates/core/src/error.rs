use thiserror::Error;

use crate::seshadri::HypothesisReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// Two characters whose difference is not a multiple of the wall's
    /// modulus direction. Signals inconsistent character data.
    #[error("pairing error: {0}")]
    Pairing(String),

    #[error("validation error: {0}")]
    Validation(String),

    #[error("incompatible filtrations on cone {cone}: no adapted decomposition exists")]
    Incompatible { cone: String },

    #[error(
        "AMBIGUOUS_PAIRING on wall {wall}: characters {characters} share a residue class; \
         supply the bundle as filtrations to resolve the splitting"
    )]
    AmbiguousPairing { wall: String, characters: String },

    #[error("inconsistent character data on wall {wall}: {detail}")]
    InconsistentData { wall: String, detail: String },

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("hypotheses not satisfied for {}", .0.theorem)]
    Hypothesis(Box<HypothesisReport>),

    #[error("internal consistency error: {0}")]
    Internal(String),
}
