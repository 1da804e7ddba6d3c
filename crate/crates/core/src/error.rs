use thiserror::Error;

/// Best bounds known when the exact search ran out of budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialBound {
    pub lower: usize,
    pub upper: usize,
    /// Smallest resolving set found before the budget ran out.
    pub best_witness: Vec<usize>,
    pub nodes: u64,
}

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or out-of-range caller input.
    #[error("input error: {0}")]
    Input(String),

    /// Input is well-formed but outside the operation's domain (e.g. a
    /// disconnected graph where distances are required).
    #[error("domain error: {0}")]
    Domain(String),

    /// A configured cap (enumeration size, order limit) would be exceeded.
    #[error("resource error: {0}")]
    Resource(String),

    /// The exact solver hit its node budget before proving optimality.
    #[error("budget exhausted after {} nodes: dimension in [{}, {}]", .0.nodes, .0.lower, .0.upper)]
    BudgetExhausted(PartialBound),

    /// A construction that is guaranteed to exist could not be produced.
    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
