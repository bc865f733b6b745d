use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("basis index {index} out of range for dimension {dim}")]
    BadIndex { index: usize, dim: usize },

    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    JacobiViolation(usize, usize, usize),

    #[error("algebra is not nilpotent: lower central series stabilizes at dimension {stable_dim}")]
    NotNilpotent { stable_dim: usize },

    #[error("subspace is not an ideal: [e_{basis}, v_{vector}] leaves it")]
    NotAnIdeal { basis: usize, vector: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: bracket [{i}, {j}] given twice")]
    DuplicateBracket { line: usize, i: usize, j: usize },

    #[error("unknown catalog name `{0}`")]
    UnknownName(String),

    #[error("`{name}` expects {expected} parameter(s), got {found}")]
    BadArity {
        name: String,
        expected: usize,
        found: usize,
    },

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("nilpotency class {class} is too high for this construction (at most 2 supported)")]
    ClassTooHigh { class: usize },

    #[error("induced action of basis element {0} does not preserve the relation space")]
    ActionNotWellDefined(usize),

    #[error("audit failure: {0}")]
    AuditFailure(String),

    #[error("not a generalized Heisenberg algebra of rank 2 (rank {0:?})")]
    NotRank2(Option<usize>),
}

impl Error {
    /// True for errors that describe a mathematically valid input lying outside
    /// the supported domain (as opposed to malformed input).
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::NotNilpotent { .. } | Error::ClassTooHigh { .. } | Error::NotRank2(_)
        )
    }
}
