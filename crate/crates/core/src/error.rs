use thiserror::Error;

/// Broad category of a failure, used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed input that never reached the mathematics.
    Input,
    /// A mathematical precondition does not hold.
    Precondition,
    /// The enumeration budget is too small for the request.
    Budget,
    /// An internal cross-check failed.
    Invariant,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("rank deficiency: {0}")]
    RankDeficiency(String),
    #[error("instance too large: {0}")]
    SizeLimit(String),
    #[error("infeasible selection: {0}")]
    Infeasible(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid parameters: {0}")]
    Parameter(String),
    #[error("Lazard correspondence unavailable: p = {p} must exceed the nilpotency class {class}")]
    Lazard { p: u64, class: usize },
    #[error("enumeration budget exceeded: {required} points required, budget is {budget}")]
    Budget { required: u128, budget: u128 },
    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    Jacobi(usize, usize, usize),
    #[error("algebra is not nilpotent: {0}")]
    NotNilpotent(String),
    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),
    #[error("threshold not met: {0}")]
    Threshold(String),
    #[error("prime {p} is ramified (divides the discriminant {disc}); use factor_degrees instead")]
    Ramified { p: u64, disc: String },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invariant violation: {0}")]
    Invariant(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse(_) => ErrorKind::Input,
            Error::Budget { .. } | Error::SizeLimit(_) => ErrorKind::Budget,
            Error::Invariant(_) => ErrorKind::Invariant,
            _ => ErrorKind::Precondition,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
