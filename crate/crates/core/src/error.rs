use thiserror::Error;

use crate::word::Symbol;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("symbol {symbol} is outside the alphabet 1..={alphabet_size}")]
    InvalidSymbol {
        symbol: Symbol,
        alphabet_size: usize,
    },

    #[error("unknown subsystem index {0}")]
    UnknownSubsystem(usize),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("word of length {len} exceeds the query length bound {bound}")]
    WordTooLong { len: usize, bound: usize },

    #[error("enumeration of {required} words exceeds the budget of {budget}")]
    EnumerationBudget { required: u64, budget: u64 },

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("linear solve failed: {0}")]
    Solver(String),

    #[error("observation table: {0}")]
    Table(String),

    #[error("learner exceeded {0} iterations without converging")]
    IterationLimit(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}
