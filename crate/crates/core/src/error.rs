use thiserror::Error;

/// Every failure the library reports. Variants map one-to-one onto the
/// documented error names of each operation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("division by zero")]
    DivisionByZero,
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds 2^61-1")]
    ModulusTooLarge(u64),
    #[error("subspaces live in different ambient spaces or fields")]
    MixedAmbient,
    #[error("subspace is contained in the projection center")]
    CenterContainsX,
    #[error("projection center must be nonempty")]
    EmptyCenter,
    #[error("subspace does not live in the projection target P^{expected}")]
    AmbientMismatch { expected: usize },
    #[error("expected a subspace of dimension {expected}, got {actual}")]
    WrongDimension { expected: isize, actual: isize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("{what}: {count} objects exceed the budget of {budget}")]
    BudgetExceeded {
        what: &'static str,
        count: u128,
        budget: u128,
    },
    #[error("exhaustive search needs a prime field")]
    RationalFieldUnsupported,
    #[error("randomized tuple test needs d-1 <= n-k+1 (d={d}, n={n}, k={k})")]
    ValidityRegimeViolated { d: usize, n: usize, k: usize },
    #[error("could not extend the witness span to an (n-k)-plane avoiding plane {0}")]
    ExtensionFailed(usize),
    #[error("configuration is not in special position")]
    NotSpInput,
    #[error("d = {d} exceeds the set-partition guard of {max}")]
    BellBudgetExceeded { d: usize, max: usize },
    #[error("report does not belong to this configuration: {0}")]
    MismatchedReport(String),
    #[error("lines span a space of dimension {0} > 3")]
    SpanTooBig(isize),
    #[error("not enough F_q-rational points: {0}")]
    InsufficientPoints(String),
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
