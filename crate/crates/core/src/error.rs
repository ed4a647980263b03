use thiserror::Error;

/// Coarse classification used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Bad parameters or API misuse.
    Usage,
    /// Mathematically undefined operation (inverse of zero, a2 = 0, ...).
    Domain,
    /// An enumeration would exceed the configured ceiling.
    Resource,
    /// Input data failed a structural consistency check.
    Integrity,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("p must be an odd prime (got {0})")]
    NotOddPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field size {p}^{m} exceeds the enumeration ceiling {ceiling}")]
    FieldTooLarge { p: u32, m: u32, ceiling: u64 },
    #[error("modulus {0:?} is not irreducible")]
    Reducible(Vec<u32>),
    #[error("modulus has length {got}, expected {expected}")]
    ModulusLength { expected: usize, got: usize },
    #[error("value {value} is not a residue modulo {p}")]
    NotAResidue { value: u64, p: u32 },
    #[error("operands belong to different fields")]
    ContextMismatch,
    #[error("zero has no multiplicative inverse")]
    InverseOfZero,
    #[error("{0} must be nonzero")]
    ZeroArgument(&'static str),
    #[error("defining set is empty")]
    EmptyDefiningSet,
    #[error("defining set is not closed under GF(p)* scaling")]
    NotScalingClosed,
    #[error("{what}: {count} exceeds the enumeration ceiling {ceiling}")]
    CeilingExceeded {
        what: &'static str,
        count: u128,
        ceiling: u64,
    },
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error("degenerate secret coordinate: column h_0 of the dual generator is zero")]
    DegenerateSecret,
    #[error("dual code is trivial (k = n)")]
    TrivialDual,
    #[error("participant index {index} out of range 1..={max}")]
    ParticipantOutOfRange { index: usize, max: usize },
    #[error("share vector does not extend to a codeword of the dual code")]
    InconsistentShares,
    #[error("planar function {family} is not admissible here: {reason}")]
    Inadmissible { family: String, reason: String },
    #[error("invalid argument: {0}")]
    Invalid(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::FieldTooLarge { .. } | Error::CeilingExceeded { .. } => ErrorKind::Resource,
            Error::InverseOfZero | Error::ZeroArgument(_) => ErrorKind::Domain,
            Error::NotScalingClosed | Error::InconsistentShares => ErrorKind::Integrity,
            _ => ErrorKind::Usage,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
