use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("variable {0} is fermionic; integration is only defined for bosonic variables")]
    FermionicIntegration(String),
    #[error("degree cap required for an infinite-dimensional slice of {0}")]
    CapRequired(String),
    #[error("element is not in the algebra: {0}")]
    NotInAlgebra(String),
    #[error("label outside the theorem's domain: {0}")]
    Domain(String),
    #[error("series did not terminate within {bound} iterations")]
    SeriesDiverged { bound: usize },
    #[error("filtration check failed: {0}")]
    Filtration(String),
    #[error("slice has {size} cells, above the limit of {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
