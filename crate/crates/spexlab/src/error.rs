use thiserror::Error;

/// Crate-wide error type. Every fallible operation returns one of these;
/// variants are shared across modules so callers can match on the failure
/// class rather than its origin.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A parameter is outside the documented domain of the operation.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The input is too large for the operation's hard cap.
    #[error("capacity exceeded: {0}")]
    CapacityExceeded(String),

    /// The byte stream is not valid graph6.
    #[error("malformed graph6 at byte {byte}: {reason}")]
    MalformedGraph6 { byte: usize, reason: String },

    /// Power iteration hit the iteration cap before meeting the residual
    /// tolerance.
    #[error(
        "eigensolver did not converge after {iterations} iterations (residual {residual:.3e})"
    )]
    ConvergenceFailure { residual: f64, iterations: usize },

    /// A vector argument does not match the graph order.
    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A vector argument is identically zero where a nonzero vector is required.
    #[error("zero vector where a nonzero vector is required")]
    ZeroVector,

    /// Two graphs that must have equal order do not.
    #[error("order mismatch: {0} vs {1} vertices")]
    OrderMismatch(usize, usize),

    /// A probability vector is not one: negative entries or wrong sum.
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    /// An operation that needs connected input received a disconnected graph.
    #[error("disconnected input: {0}")]
    DisconnectedInput(String),

    /// A factor query with an empty degree interval.
    #[error("invalid factor query: upper bound {b} below lower bound {a}")]
    InvalidQuery { a: usize, b: usize },

    /// A backtracking search exhausted its node-expansion budget; the answer
    /// is unknown, not negative.
    #[error("search budget exhausted after {0} node expansions")]
    BudgetExhausted(u64),

    /// The partition parameter of the Q-chain is outside (0, 1/7).
    #[error("invalid epsilon {0}: must lie strictly between 0 and 1/7")]
    InvalidEpsilon(f64),

    /// An internal cross-check failed. Always a bug, never bad input.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
