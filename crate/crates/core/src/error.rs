use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus must have {expected} coefficients, got {got}")]
    ModulusLength { expected: usize, got: usize },
    #[error("modulus coefficient {0} is out of range for the prime field")]
    ModulusCoefficient(u64),
    #[error("modulus is not monic")]
    NotMonic,
    #[error("modulus is reducible over F_{0}")]
    Reducible(u64),
    #[error("no built-in modulus for GF({p}^{m}); pass one explicitly")]
    NoDefaultModulus { p: u64, m: u32 },
    #[error("field order {0} is too large")]
    FieldTooLarge(u128),
    #[error("element {value} is out of range for GF({q})")]
    ElementOutOfRange { value: u64, q: u64 },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("matrix rows have different lengths")]
    RaggedMatrix,
    #[error("matrix has rank {rank}, expected {k}")]
    RankDeficient { rank: usize, k: usize },
    #[error("invalid matrix shape {k}x{n}: {reason}")]
    BadShape {
        k: usize,
        n: usize,
        reason: &'static str,
    },
    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("leading {0} columns are dependent and column permutation is not allowed")]
    DependentLeadingColumns(usize),
    #[error("code length {n} exceeds the enumeration cap {cap}")]
    EnumerationCap { n: usize, cap: usize },
    #[error("{count} minimal recovery sets exceed the cap {cap}")]
    TooManyMinimalSets { count: usize, cap: usize },
    #[error("inconsistent beta values: {0}")]
    InconsistentBeta(String),
    #[error("inconsistent xi table: {0}")]
    InconsistentXi(String),
    #[error("invalid alpha profile: {0}")]
    InvalidProfile(String),
    #[error("family precondition violated: {0}")]
    FamilyPrecondition(String),
    #[error("no recovery after {0} draws")]
    MaxDrawsExceeded(u64),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
