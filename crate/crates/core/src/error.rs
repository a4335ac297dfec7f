use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse classification used for CLI exit codes and FFI status codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed or out-of-domain input.
    Input,
    /// The input is well formed but violates a hypothesis of the formula being evaluated.
    Hypothesis,
    /// An internal invariant failed.
    Internal,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Input => 2,
            ErrorKind::Hypothesis => 3,
            ErrorKind::Internal => 4,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ErrorKind::Input => "input",
            ErrorKind::Hypothesis => "hypothesis",
            ErrorKind::Internal => "internal",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("valuation of zero")]
    ValuationOfZero,
    #[error("{0} is not an odd prime")]
    NotOddPrime(i128),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("factorization of zero")]
    FactorizeZero,
    #[error("quartic symbol undefined: ({a}/{p}) is not 1 or {p} is not 1 mod 4")]
    QuarticUndefined { a: i64, p: u64 },
    #[error("{0} is not congruent to 1 mod 8")]
    NotOneModEight(i64),
    #[error("{0} is not squarefree")]
    NotSquarefree(i64),
    #[error("radicand must be nonzero")]
    ZeroRadicand,
    #[error("level {0} is too large")]
    LevelTooLarge(u32),
    #[error("the field is real; an imaginary field is required")]
    RealField,
    #[error("the field is imaginary; a real field is required")]
    ImaginaryField,
    #[error("the field does not contain sqrt(2)")]
    MissingSqrtTwo,
    #[error("{p} divides the modulus {m}; ramified primes are outside the Frobenius count")]
    RamifiedModulus { p: u64, m: u64 },
    #[error("generator {g} is not a unit modulo {m}")]
    NotAUnit { g: u64, m: u64 },
    #[error("index {index} out of range 1..={r}")]
    IndexOutOfRange { index: usize, r: usize },
    #[error("radicands {0:?} are multiplicatively dependent")]
    DependentRadicands(Vec<i64>),
    #[error("presentation is not admissible: no odd prime divides the last radicand without dividing d or an earlier radicand")]
    Inadmissible,
    #[error("inconsistent inputs: formula evaluated to {value} ({detail})")]
    NegativeLambda { value: i64, detail: String },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("invalid discriminant {0}")]
    InvalidDiscriminant(i64),
    #[error("arithmetic overflow")]
    Overflow,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("internal invariant failed: {0}")]
    Internal(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Inadmissible
            | Error::NegativeLambda { .. }
            | Error::Hypothesis(_)
            | Error::RealField
            | Error::ImaginaryField
            | Error::MissingSqrtTwo
            | Error::RamifiedModulus { .. }
            | Error::QuarticUndefined { .. } => ErrorKind::Hypothesis,
            Error::Internal(_) | Error::Overflow => ErrorKind::Internal,
            _ => ErrorKind::Input,
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.kind().exit_code()
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
