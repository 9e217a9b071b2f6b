use thiserror::Error;

use crate::rational::Rat;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("negative cycle: Kleene star diverges")]
    NegativeCycle,
    #[error("digraph has no cycle")]
    Acyclic,
    #[error("level A = {a} exceeds B = {b}")]
    LevelTooHigh { a: Rat, b: Rat },
    #[error("wrap-around re-derivation of row 1 disagrees at m = {m}: {expected} vs {got}")]
    InconsistentFixedPoint { m: usize, expected: Rat, got: Rat },
    #[error("no repetition within {0} steps")]
    NotFound(u64),
    #[error("state cannot be scaled to integer exponents")]
    NonIntegerState,
    #[error("sign cancellation in coefficient of x^{i} y^{j}")]
    CancellationDetected { i: u32, j: u32 },
    #[error("support is degenerate (all lifted points collinear)")]
    DegenerateSupport,
    #[error("special point {0} is not on the curve")]
    PointNotOnCurve(String),
    #[error("points lie in different components")]
    DisconnectedPoints,
    #[error("period matrix is singular")]
    SingularPeriodMatrix,
    #[error("A equals B; a prefactor k1 > k2 is required to lift the state")]
    AequalsB,
    #[error("power iteration did not converge in {0} iterations")]
    NonConvergence(usize),
    #[error("matrix is not positive")]
    NonPositiveMatrix,
    #[error("non-positive sample at eps = {0}")]
    NonPositiveSample(f64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("cannot read {0}")]
    Io(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invariant violation at line {line}: {msg}")]
    InvariantViolation { line: usize, msg: String },
}

impl Error {
    /// Stable machine-readable code used by the CLI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::SizeMismatch(..) => "E_SIZE_MISMATCH",
            Error::NegativeCycle => "E_NEGATIVE_CYCLE",
            Error::Acyclic => "E_ACYCLIC",
            Error::LevelTooHigh { .. } => "E_LEVEL_TOO_HIGH",
            Error::InconsistentFixedPoint { .. } => "E_INCONSISTENT_FIXED_POINT",
            Error::NotFound(_) => "E_NOT_FOUND",
            Error::NonIntegerState => "E_NON_INTEGER_STATE",
            Error::CancellationDetected { .. } => "E_CANCELLATION",
            Error::DegenerateSupport => "E_DEGENERATE_SUPPORT",
            Error::PointNotOnCurve(_) => "E_POINT_NOT_ON_CURVE",
            Error::DisconnectedPoints => "E_DISCONNECTED",
            Error::SingularPeriodMatrix => "E_SINGULAR_PERIOD_MATRIX",
            Error::AequalsB => "E_A_EQUALS_B",
            Error::NonConvergence(_) => "E_NON_CONVERGENCE",
            Error::NonPositiveMatrix => "E_NON_POSITIVE_MATRIX",
            Error::NonPositiveSample(_) => "E_NON_POSITIVE_SAMPLE",
            Error::InvalidArgument(_) => "E_INVALID_ARGUMENT",
            Error::Io(_) => "E_IO",
            Error::Parse { .. } => "E_PARSE",
            Error::InvariantViolation { .. } => "E_INVARIANT_VIOLATION",
        }
    }
}
