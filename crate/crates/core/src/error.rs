use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("exponent {0} exceeds the maximum 2^31-1")]
    ExponentTooLarge(u64),

    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),

    #[error("J is not contained in I")]
    NotContained,

    #[error("I equals J, the factor is zero")]
    EqualIdeals,

    #[error("variable index {index} out of range for {nvars} variables")]
    VariableIndex { index: usize, nvars: usize },

    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("no gap after position {j} in type {powers:?}")]
    NoGap { j: usize, powers: Vec<u32> },

    #[error("box volume {volume} exceeds the cap {cap}")]
    BoxTooLarge { volume: u128, cap: u128 },

    #[error("search budget of {budget} nodes exhausted at d = {d}")]
    NodeBudget { budget: u64, d: usize },

    #[error("deadline reached after {elapsed_ms} ms")]
    Timeout { elapsed_ms: u128 },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invariance violated: {0}")]
    Violation(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Box cap, node budget and deadline errors: the input is fine, the
    /// computation was too large.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::BoxTooLarge { .. } | Error::NodeBudget { .. } | Error::Timeout { .. }
        )
    }
}
