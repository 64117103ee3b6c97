use alloc::string::String;
use core::fmt;

/// Errors reported by parsing, validation and the morphing algorithms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed balanced-parenthesis tree string.
    Parse { pos: usize, msg: &'static str },
    /// An input drawing or tree violates a documented precondition.
    Precondition(String),
    /// A node has more than two children where a binary tree is required.
    NotBinary { node: usize },
    /// Orientation pair is not one of the four adjacent pairs.
    NonAdjacent,
    /// Keyframes or drawings refer to different trees or sizes.
    Mismatch(String),
    /// A construction step failed its own certification.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse { pos, msg } => write!(f, "parse error at position {pos}: {msg}"),
            Error::Precondition(m) => write!(f, "precondition violated: {m}"),
            Error::NotBinary { node } => write!(f, "node {node} has more than two children"),
            Error::NonAdjacent => write!(f, "orientations are not adjacent"),
            Error::Mismatch(m) => write!(f, "mismatch: {m}"),
            Error::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}
