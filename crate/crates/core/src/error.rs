use alloc::string::String;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("elements belong to different groups")]
    MixedGroups,
    #[error("element is not a member of {0}")]
    NotMember(String),
    #[error("singular curve: 4a^3 + 27b^2 = 0")]
    SingularCurve,
    #[error("operation needs a nonempty set")]
    EmptySet,
    #[error("division by zero")]
    DivisionByZero,
    #[error("factorization budget exceeded while factoring {0}")]
    FactorizationBudgetExceeded(String),
    #[error("enumeration budget exceeded: {needed} tuples needed, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("polynomial is constant")]
    ConstantPolynomial,
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid correspondence: {0}")]
    InvalidCorrespondence(String),
    #[error("fiber over {0} is not finite")]
    InfiniteFiber(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
