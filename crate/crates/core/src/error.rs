use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("pattern `{0}` is not linear")]
    NonLinearPattern(String),
    #[error("term `{0}` is not closed")]
    NotClosed(String),
    #[error("flow sides have different variables: `{lhs}` <- `{rhs}`")]
    FlowVariables { lhs: String, rhs: String },
    #[error("invalid permutation {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("permutation of arity {arity} does not fit in {limit} pointers")]
    PermutationTooLarge { arity: usize, limit: usize },
    #[error("expected {expected} position terms, got {found}")]
    PositionCount { expected: usize, found: usize },
    #[error("position term `{0}` is repeated")]
    DuplicatePosition(String),
    #[error("letter `{0}` is not in the alphabet")]
    LetterOutsideAlphabet(String),
    #[error("`{0}` is reserved and cannot be used here")]
    ReservedName(String),
    #[error("flow `{0}` is not of observation shape")]
    NotObservationShape(String),
    #[error("coefficient {coefficient} on `{flow}` is not 1; observations must be concrete")]
    NotConcrete { flow: String, coefficient: String },
    #[error("observation is not isometric")]
    NotIsometric,
    #[error("term `{term}` reached from basis node {from} lies outside the computation space")]
    OutOfBasis { from: usize, term: String },
    #[error("coefficient {0} is not a positive integer")]
    NegativeWeight(String),
    #[error("term `{0}` is not a configuration term")]
    NotConfiguration(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("machine needs at least one pointer")]
    NoPointers,
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }
}
