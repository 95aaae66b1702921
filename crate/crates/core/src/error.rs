use thiserror::Error;

/// Errors raised by the algorithms in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid permutation pair: {0}")]
    InvalidPermutation(String),
    #[error("permutation pair {0} is not admissible")]
    NotAdmissible(String),
    #[error("invalid length datum: {0}")]
    InvalidLengths(String),
    #[error("point {0} is a singularity")]
    SingularPoint(String),
    #[error("connection found: beta={beta}, alpha={alpha}, depth {depth}")]
    ConnectionFound {
        beta: String,
        alpha: String,
        depth: usize,
    },
    #[error("Rauzy induction stopped at step {step}: rightmost singularities coincide")]
    ConnectionStop { step: usize },
    #[error("suspension datum is not in the cone of the permutation pair")]
    NotSuspension,
    #[error("degenerate datum: {0}")]
    Degenerate(String),
    #[error("norm bound exceeded: N(path) = {norm} >= {bound}")]
    NormExceeded { norm: String, bound: String },
    #[error("path is not positive")]
    NotPositive,
    #[error("path is not closed")]
    NotClosed,
    #[error("path is not composable at arrow {0}")]
    NotComposable(usize),
    #[error("insufficient window: {0}")]
    InsufficientWindow(String),
    #[error("precision exhausted after {digits} digits")]
    PrecisionExhausted { digits: usize },
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("origami is not connected")]
    NotConnected,
    #[error("invalid origami: {0}")]
    InvalidOrigami(String),
    #[error("no path in the even graph between the requested vertices")]
    NotConnectedInEvenGraph,
    #[error("I/O error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
