use thiserror::Error;

/// Errors surfaced by field construction, sieving, and evaluation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("d = {0} is not squarefree")]
    NotSquarefree(i64),
    #[error("d = {0} is not allowed (need a squarefree integer other than 0 and 1)")]
    DisallowedValue(i64),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial is reducible: {0}")]
    Reducible(String),
    #[error("irreducibility could not be decided by the rational-root and mod-p tests")]
    UndecidedIrreducibility,
    #[error("degree must be at least 2 for a monogenic presentation")]
    DegreeTooSmall,
    #[error("prime {0} divides the index [O_K : Z[theta]]; splitting unresolvable at this prime")]
    IndexDivisor(u64),
    #[error("coefficient overflow beyond 128-bit accumulation")]
    Overflow,
    #[error("x = {x} out of range for table bound {bound}")]
    OutOfRange { x: u64, bound: u64 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("evaluation point too close to the pole at s = 1")]
    PoleAt1,
    #[error("s or 1 - s too close to a pole of the completed zeta function")]
    PoleProximity,
    #[error("|zeta_K(2s)| smaller than 10x its own error estimate; ratio unreliable")]
    DivisionNearZero,
    #[error("coefficient table too small: need X >= {required}, have {have}")]
    TableTooSmall { required: u64, have: u64 },
    #[error("not enough usable samples for an exponent fit (need >= 8)")]
    InsufficientData,
    #[error("estimated inversion tail {estimate:e} exceeds the requested tolerance {tolerance:e}")]
    TailTooLarge { estimate: f64, tolerance: f64 },
    #[error("bad field spec {0:?} (expected \"rat\", \"quad:d\", or \"poly:c_n,...,c_0\")")]
    BadFieldSpec(String),
    #[error("cache error: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
