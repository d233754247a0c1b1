use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right} qubits")]
    DimensionMismatch { left: usize, right: usize },

    #[error("axis {axis} out of range for a {dim}-dimensional lattice")]
    AxisOutOfRange { axis: usize, dim: usize },

    #[error("region belongs to a different lattice than the operator or code")]
    LatticeMismatch,

    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("generator {index} ({text}) spans a hypercube of side {extent}, larger than the declared r={declared}")]
    Locality { index: usize, text: String, extent: usize, declared: usize },

    #[error("stabilizer generators {first} and {second} anticommute")]
    AnticommutingStabilizers { first: usize, second: usize },

    #[error("generator {0} is the identity")]
    IdentityGenerator(usize),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("code has no logical qubits")]
    NoLogicals,

    #[error("capacity exceeded: {what} needs {needed}, limit is {limit}; {hint}")]
    Capacity { what: String, needed: String, limit: String, hint: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal invariant broken: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn capacity(
        what: impl Into<String>,
        needed: impl ToString,
        limit: impl ToString,
        hint: impl Into<String>,
    ) -> Self {
        Error::Capacity { what: what.into(), needed: needed.to_string(), limit: limit.to_string(), hint: hint.into() }
    }
}
