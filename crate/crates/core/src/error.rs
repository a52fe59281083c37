use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("variable x{index} out of range 1..={nvars}")]
    VariableOutOfRange { index: usize, nvars: usize },

    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,

    #[error("operation undefined on a constant polynomial")]
    ConstantPolynomial,

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("need at least {needed} variables, got {got}")]
    TooFewVariables { needed: usize, got: usize },

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("polynomial is not squarefree")]
    NotSquarefree,

    #[error("polynomial is reducible over Q; factor it first")]
    ReducibleOverQ,

    #[error("degenerate slice: linear forms are dependent")]
    DegenerateSlice,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("search exhausted at bound {bound}")]
    SearchExhausted { bound: u64 },

    #[error("rejection budget exhausted after {attempts} attempts")]
    BudgetExhausted { attempts: u64 },

    #[error("not enough data: {0}")]
    InsufficientData(String),
}

pub type Result<T> = std::result::Result<T, Error>;
