use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not defined for zero input")]
    ZeroInput(&'static str),

    #[error("factorization incomplete: cofactor {cofactor} exceeds trial-division bound {bound}")]
    FactorizationIncomplete { cofactor: String, bound: u64 },

    #[error("quadratic field mismatch: sqrt({left}) vs sqrt({right})")]
    ContextMismatch { left: String, right: String },

    #[error("{0} requires a nonzero discriminant p^2 - 4q")]
    DegenerateDiscriminant(&'static str),

    #[error("expected a rational value from {0}, found an irrational one")]
    Irrational(&'static str),

    #[error("polynomial division is not exact")]
    InexactDivision,

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("no sign makes the factorization exact at n = {0}")]
    NoValidSign(usize),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("cannot parse {input:?} as an exact rational: {reason}")]
    Parse { input: String, reason: String },
}
