use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("X-index {index} out of range (nx = {nx})")]
    XIndex { index: usize, nx: usize },
    #[error("Y-index {index} out of range (ny = {ny})")]
    YIndex { index: usize, ny: usize },
    #[error("edge ({i}, {j}) has zero multiplicity")]
    ZeroMultiplicity { i: usize, j: usize },
    #[error("both parts must be nonempty (nx = {nx}, ny = {ny})")]
    EmptySide { nx: usize, ny: usize },
    #[error("graph too large: {0}")]
    TooLarge(String),
    #[error("malformed graph input: {0}")]
    Parse(String),
    #[error("matrix is not square ({rows} rows, {cols} columns)")]
    NonSquare { rows: usize, cols: usize },
    #[error("({i}, {j}) is not an edge")]
    NotAnEdge { i: usize, j: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid parameters: {0}")]
    Parameter(String),
    #[error("enumeration budget exceeded: about {estimate} candidates, budget {budget}")]
    Budget { estimate: u128, budget: u128 },
    #[error("not applicable: {0}")]
    Inapplicable(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub(crate) fn param_err(msg: impl Into<String>) -> Error {
    Error::Parameter(msg.into())
}

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
