use thiserror::Error;

/// Errors raised by constructors and checked operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("size cap exceeded: {what} = {got}, cap is {cap}")]
    CapExceeded { what: &'static str, got: usize, cap: usize },
    #[error("invalid matroid: {0}")]
    InvalidMatroid(String),
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("not a building set: {0}")]
    InvalidBuildingSet(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("order construction failed: {0}")]
    Order(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
