use thiserror::Error;

use crate::witness::WitnessAudit;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("tail certificate cannot reach tolerance {tol:e}")]
    UnreachableTolerance { tol: f64 },

    #[error("certified norm needs {needed} coordinates but the budget is {budget}")]
    IndexBudgetExceeded { needed: u64, budget: u64 },

    #[error("space tag mismatch: {0}")]
    TagMismatch(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("operator/vector kind mismatch: {0}")]
    KindMismatch(String),

    #[error("empty operator word: every exponent is zero")]
    EmptyWord,

    #[error("not power-bounded: {0}")]
    NotPowerBounded(String),

    #[error("peripheral spectrum is not contained in {{1}}: {0}")]
    PeripheralSpectrum(String),

    #[error("not a contraction: norm {norm} exceeds 1 + {tol:e}")]
    NotContraction { norm: f64, tol: f64 },

    #[error("decomposition failed: residual {residual:e} above tolerance {tol:e}")]
    DecompositionFailure { residual: f64, tol: f64 },

    #[error("projection identities hold only to {defect:e}, above tolerance {tol:e}")]
    ProjectionDefect { defect: f64, tol: f64 },

    #[error("unsupported symbol: {0}")]
    UnsupportedSymbol(String),

    #[error(
        "selection exhausted the horizon after {} of {requested} ladder vectors",
        .partial.ladder.len()
    )]
    HorizonExhausted {
        requested: usize,
        partial: Box<WitnessAudit>,
    },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("generators do not commute: defect {defect:e} above tolerance {tol:e}")]
    NonCommuting { defect: f64, tol: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
