use thiserror::Error;

/// Errors shared by all modules.
///
/// Infeasibility of an optimization problem is reported through solver
/// outcomes where the operation can meaningfully return one (see
/// [`crate::exact::Outcome`]); operations whose contract has no partial
/// answer use [`Error::Infeasible`] instead.
#[derive(Debug, Error)]
pub enum Error {
    /// Input violated a structural precondition (bad vertex id, zero-length
    /// edge, duplicate edge, non-uniform lengths where uniform is required,
    /// and similar).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The operation requires a connected graph.
    #[error("graph is not connected")]
    Disconnected,

    /// The operation requires a tree.
    #[error("graph is not a tree")]
    NotATree,

    /// The requested problem has no feasible solution for this input.
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// An exhaustive solver refused an input beyond its size guard.
    /// Pass explicit [`crate::exact::OracleLimits`] (the CLI honours
    /// `PPCP_GUARD_OVERRIDE=1`) to run anyway.
    #[error("refusing {what} with {actual} > guard limit {limit}; override the size guard to force it")]
    GuardExceeded {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    /// A parse error in one of the instance formats, with 1-based position.
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    /// The tiny-graph embedder exhausted its search space or budget.
    #[error("no grid embedding found: {0}")]
    EmbeddingNotFound(String),

    /// An internal invariant failed; indicates a bug, not bad input.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn infeasible(msg: impl Into<String>) -> Self {
        Error::Infeasible(msg.into())
    }
}
