use thiserror::Error;

/// Every failure the library can report.
///
/// Variants fall into three families, see [`ErrorClass`]: malformed input,
/// well-formed requests that have no answer, and internal invariant breaches
/// that indicate a bug upstream of the failing step.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("I/O error: {0}")]
    Io(String),
    #[error("disconnected graph")]
    Disconnected,
    #[error("|S| < 2 (got {0})")]
    SteinerTooSmall(usize),
    #[error("vertex id {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex {0} is not a Steiner vertex")]
    NotSteiner(usize),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid cut: {0}")]
    InvalidCut(String),
    #[error("terminal sets are empty or overlap")]
    OverlappingTerminals,
    #[error("not a balanced analogue: {0}")]
    NotBalanced(String),
    #[error("terminal placement violated: {0}")]
    TerminalPlacement(String),
    #[error("strip vertex {0} is a terminal")]
    IsTerminal(usize),
    #[error("steiner set too large for enumeration: |S|={size} exceeds bound {bound}")]
    SteinerTooLarge { size: usize, bound: usize },
    #[error("instance too large for the oracle: n={n} exceeds bound {bound}")]
    InstanceTooLarge { n: usize, bound: usize },
    #[error("no consistent cycle: {0}")]
    NoConsistentCycle(String),
    #[error("not separated: {0} and {1} map to the same skeleton node")]
    NotSeparated(usize, usize),
    #[error("not coherent: {0}")]
    NotCoherent(String),
    #[error("no such cycle: {0}")]
    NoSuchCycle(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invariant breach: {0}")]
    InvariantBreach(String),
}

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Unreadable or malformed input.
    Input,
    /// A well-formed request without an answer, e.g. querying two Steiner
    /// vertices that no valid cut separates.
    Domain,
    /// An internal consistency check failed.
    Invariant,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            Parse { .. } | Io(_) | Disconnected | SteinerTooSmall(_) | VertexOutOfRange { .. } => ErrorClass::Input,
            InvariantBreach(_) | NoConsistentCycle(_) => ErrorClass::Invariant,
            _ => ErrorClass::Domain,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn breach<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvariantBreach(msg.into()))
}
