use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty array")]
    EmptyArray,
    #[error("array must start at 0")]
    NotNormalized,
    #[error("positions must be strictly increasing (found {prev} before {next})")]
    NotStrictlyIncreasing { prev: i64, next: i64 },
    #[error("negative sensor position {0}")]
    NegativePosition(i64),
    #[error("sensor position {0} exceeds 2^31")]
    PositionOutOfRange(i64),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("reference aperture {reference} is smaller than the array aperture {aperture}")]
    ReferenceApertureTooSmall { reference: i64, aperture: i64 },
    #[error("search space too large: {n} sensors exceeds the limit of {limit}")]
    SearchSpaceTooLarge { n: usize, limit: usize },
    #[error("no feasible point: {0}")]
    Infeasible(String),
    #[error("invalid experiment config: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
