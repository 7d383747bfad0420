use thiserror::Error;

/// Errors produced across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported group descriptor `{0}`")]
    UnsupportedGroup(String),
    #[error("group order {order} exceeds the configured maximum {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("group of order {0} is too large for exhaustive automorphism enumeration")]
    EnumerationTooLarge(usize),
    #[error("cannot parse element `{token}` of {group}")]
    BadElement { token: String, group: String },
    #[error("malformed automorphism spec: {0}")]
    BadAutomorphismSpec(String),
    #[error("generator images do not extend to a homomorphism")]
    NotHomomorphism,
    #[error("generator images extend to a homomorphism that is not bijective")]
    NotBijective,
    #[error("{0} is not a unit modulo the group order")]
    NotAUnit(u64),
    #[error("operation requires a cyclic group, got {0}")]
    NotCyclic(String),
    #[error("objects belong to different groups ({0} vs {1})")]
    GroupMismatch(String, String),
    #[error("sequence is not an arrangement of all {expected} elements: {reason}")]
    NotAnArrangement { expected: usize, reason: String },
    #[error("a tuple family needs at least one member")]
    EmptyFamily,
    #[error("arrangement is not a terrace (inversion must be an automorphism and the first line balanced)")]
    NotATerrace,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{rho} is not a primitive root modulo {p}")]
    NotPrimitiveRoot { p: u64, rho: u64 },
    #[error("invalid construction parameter: {0}")]
    InvalidParameter(String),
    #[error("construction integrity check failed: {0}")]
    ConstructionIntegrity(String),
    #[error("design is malformed: {0}")]
    MalformedDesign(String),
    #[error("design is not uniform: {0}")]
    NonUniform(String),
    #[error("cannot stack designs: {0}")]
    StackMismatch(String),
    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
