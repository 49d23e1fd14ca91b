use alloc::string::String;
use core::fmt;

/// Every failure the engine can report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Malformed diagram or generator text, with a byte offset.
    Syntax { pos: usize, msg: String },
    /// A vertex with too few children, a module vertex without thin subtrees,
    /// or a central vertex with the wrong number of thick children.
    Arity(String),
    /// An edge key that does not name an internal edge of the diagram.
    UnknownEdge,
    /// Leaf index outside `1..=n`.
    IndexOutOfRange { index: usize, len: usize },
    /// Operation needs a binary diagram.
    NotBinary,
    /// Operation needs an inner diagram.
    NotInner,
    /// Two diagrams from different shape classes were compared.
    ShapeMismatch,
    /// Inner diagrams cannot be grafted anywhere.
    InnerGraft,
    /// Permutation length does not match the number of leaves.
    SizeMismatch { expected: usize, got: usize },
    /// Integer coefficient left the 64-bit range.
    Overflow,
    /// Diagram too large for the fixed-width edge keys.
    TooManyLeaves(usize),
    /// A structure map needed for evaluation is absent.
    MissingMap(String),
    /// Degrees of a structure map or fixture do not line up.
    Degree(String),
    /// A precondition of an operation does not hold.
    Precondition(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Syntax { pos, msg } => write!(f, "syntax error at byte {pos}: {msg}"),
            Error::Arity(m) => write!(f, "arity violation: {m}"),
            Error::UnknownEdge => write!(f, "unknown edge key"),
            Error::IndexOutOfRange { index, len } => {
                write!(f, "index {index} out of range 1..={len}")
            }
            Error::NotBinary => write!(f, "diagram is not binary"),
            Error::NotInner => write!(f, "diagram is not an inner diagram"),
            Error::ShapeMismatch => write!(f, "diagrams belong to different shape classes"),
            Error::InnerGraft => write!(f, "inner diagrams cannot be grafted"),
            Error::SizeMismatch { expected, got } => {
                write!(f, "permutation of size {got}, expected {expected}")
            }
            Error::Overflow => write!(f, "coefficient overflow"),
            Error::TooManyLeaves(n) => write!(f, "{n} leaves exceed the supported maximum of 32"),
            Error::MissingMap(m) => write!(f, "missing structure map {m}"),
            Error::Degree(m) => write!(f, "degree inconsistency: {m}"),
            Error::Precondition(m) => write!(f, "precondition violated: {m}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
