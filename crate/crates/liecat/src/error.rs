use std::fmt;

/// Errors shared across the library. Every fallible operation names its
/// failure mode here; nothing is ever silently truncated or rounded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Inversion of zero, or division by a zero scalar.
    DivisionByZero,
    /// Operands live in different base fields (different `d`, or a rational
    /// mixed into a quadratic extension it was not lifted into).
    FieldMismatch,
    /// A nonzero scalar was required (scalar/diagonal map entries, grading
    /// rescale parameter).
    ZeroScale,
    /// A bracket or substitution would produce terms beyond the table's
    /// degree capacity.
    DegreeOverflow { needed: usize, cap: usize },
    /// Two polynomials or maps belong to incompatible basis tables.
    ContextMismatch,
    /// Basis generation would exceed the configured table size bound.
    CapacityExceeded { words: usize, bound: usize },
    /// A matrix-side operation was applied to a non-linear endomorphism.
    NotLinear,
    /// An invertible matrix was required.
    Singular,
    /// A semimorphism without a usable inverse.
    NotInvertible,
    /// Malformed family or triangular specification.
    BadSpec(String),
    /// Tuple/point arity does not match the object rank.
    ShapeMismatch { expected: usize, got: usize },
    /// Parse failure, with a character offset into the input.
    Syntax { pos: usize, msg: String },
    UnknownGenerator(String),
    UnknownSuite(String),
    ConfigInvalid(String),
    /// Invariant breakage inside the library itself; never expected.
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::FieldMismatch => write!(f, "operands belong to different fields"),
            Error::ZeroScale => write!(f, "scalar must be nonzero"),
            Error::DegreeOverflow { needed, cap } => {
                write!(f, "degree overflow: needed {needed}, capacity {cap}")
            }
            Error::ContextMismatch => write!(f, "operands belong to different basis tables"),
            Error::CapacityExceeded { words, bound } => {
                write!(f, "basis table would hold {words} words, bound is {bound}")
            }
            Error::NotLinear => write!(f, "endomorphism is not linear"),
            Error::Singular => write!(f, "matrix is singular"),
            Error::NotInvertible => write!(f, "semimorphism is not invertible"),
            Error::BadSpec(msg) => write!(f, "bad specification: {msg}"),
            Error::ShapeMismatch { expected, got } => {
                write!(f, "shape mismatch: expected {expected} components, got {got}")
            }
            Error::Syntax { pos, msg } => write!(f, "syntax error at position {pos}: {msg}"),
            Error::UnknownGenerator(name) => write!(f, "unknown generator `{name}`"),
            Error::UnknownSuite(name) => write!(f, "unknown suite `{name}`"),
            Error::ConfigInvalid(msg) => write!(f, "invalid configuration: {msg}"),
            Error::Internal(msg) => write!(f, "internal invariant violated: {msg}"),
        }
    }
}

impl std::error::Error for Error {}
