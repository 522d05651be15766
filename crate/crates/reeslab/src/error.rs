use thiserror::Error;

/// Errors shared across the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("exponent vectors have different lengths")]
    LengthMismatch,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("module is zero")]
    ZeroModule,
    #[error("module has rank zero")]
    NoRank,
    #[error("no valid saturating element found")]
    SaturationFailure,
    #[error("quotient is not torsion-free (seed {seed})")]
    NotTorsionFree { seed: u64 },
    #[error("rank too small for the requested construction")]
    RankTooSmall,
    #[error("no reduction found with r <= {r_max}")]
    NotAReduction { r_max: u32 },
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("input error: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
