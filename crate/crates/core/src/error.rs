use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("{r} and {s} are not coprime")]
    NotCoprime { r: i64, s: i64 },

    #[error("matrix is singular")]
    Singular,

    #[error("chi_2 is undefined for {0} (needs a = 0 or a = 1 mod 4)")]
    Chi2Undefined(i64),

    #[error("{0} is not prime")]
    NotPrime(i64),

    #[error("not positive definite: ({a}, {b}, {c})")]
    NotPositiveDefinite { a: i64, b: i64, c: i64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed local symbol: {0}")]
    MalformedSymbol(String),

    #[error("malformed finite quadratic form: {0}")]
    MalformedForm(String),

    #[error("brute-force guard exceeded: group of order {required} > limit {limit}")]
    GuardExceeded { required: u64, limit: u64 },

    #[error("point is within tolerance of an elliptic point of SL2(Z)")]
    EllipticPoint,

    #[error("fundamental-domain reduction did not converge")]
    NoConvergence,

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
