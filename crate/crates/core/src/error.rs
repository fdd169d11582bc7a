use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QhError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(u32, u32),
    #[error("{0} does not divide {1}")]
    NotDivisible(u64, u64),
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("element is not invertible")]
    NotInvertible,
    #[error("coalgebra is not coassociative")]
    NotCoassociative,
    #[error("span not closed under {what} (witness {witness:?})")]
    NotClosed { what: String, witness: Vec<usize> },
    #[error("map is not bijective")]
    NotBijective,
    #[error("twist does not satisfy the counit condition")]
    CounitConditionFailed,
    #[error("root of unity is not primitive: {0}")]
    NotPrimitive(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("grouplike order mismatch: {0}")]
    OrderMismatch(String),
    #[error("g^n is not inner by the given element")]
    PowerNotInner,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("coboundary solver failed: {0}")]
    SolverFailed(String),
    #[error("pair is not in E: {0}")]
    NotInE(String),
    #[error("no suitable prime found for level {0}")]
    NoSuitablePrime(u32),
    #[error("bad case: {0}")]
    BadCase(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("too large: {0}")]
    TooLarge(String),
}

impl QhError {
    pub fn code(&self) -> &'static str {
        match self {
            QhError::DivisionByZero => "DIVISION_BY_ZERO",
            QhError::LevelMismatch(..) => "LEVEL_MISMATCH",
            QhError::NotDivisible(..) => "NOT_DIVISIBLE",
            QhError::ArityMismatch(..) => "ARITY_MISMATCH",
            QhError::DimensionMismatch(_) => "DIMENSION_MISMATCH",
            QhError::NotInvertible => "NOT_INVERTIBLE",
            QhError::NotCoassociative => "NOT_COASSOCIATIVE",
            QhError::NotClosed { .. } => "NOT_CLOSED",
            QhError::NotBijective => "NOT_BIJECTIVE",
            QhError::CounitConditionFailed => "COUNIT_CONDITION_FAILED",
            QhError::NotPrimitive(_) => "NOT_PRIMITIVE",
            QhError::BadParameter(_) => "BAD_PARAMETER",
            QhError::NotACocycle => "NOT_A_COCYCLE",
            QhError::OrderMismatch(_) => "ORDER_MISMATCH",
            QhError::PowerNotInner => "POWER_NOT_INNER",
            QhError::PreconditionFailed(_) => "PRECONDITION_FAILED",
            QhError::SolverFailed(_) => "SOLVER_FAILED",
            QhError::NotInE(_) => "NOT_IN_E",
            QhError::NoSuitablePrime(_) => "NO_SUITABLE_PRIME",
            QhError::BadCase(_) => "BAD_CASE",
            QhError::Parse(_) => "PARSE_ERROR",
            QhError::TooLarge(_) => "TOO_LARGE",
        }
    }
}

pub type Result<T> = std::result::Result<T, QhError>;
