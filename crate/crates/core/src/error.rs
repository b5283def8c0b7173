use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("cannot parse {0:?} as an exact rational")]
    Parse(String),

    #[error("interpolation needs at least one sample")]
    NoSamples,

    #[error("duplicate interpolation node {0}")]
    DuplicateNode(String),

    #[error("invalid particle configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid Young diagram: {0}")]
    InvalidPartition(String),

    #[error("spectral parameters z_{0} and z_{1} coincide")]
    CoincidentSpectral(usize, usize),

    #[error("{what} = {value} is outside [{min}, {max}]")]
    OutOfRange { what: &'static str, value: usize, min: usize, max: usize },

    #[error("matrix is not square ({rows} rows, row {row} has {cols} entries)")]
    NonSquare { rows: usize, row: usize, cols: usize },

    #[error("{0} is not a permutation")]
    InvalidPermutation(String),

    #[error("size guard: {0}")]
    SizeGuard(String),

    #[error("invalid input: {0}")]
    Input(String),
}

impl Error {
    pub fn is_size_guard(&self) -> bool {
        matches!(self, Error::SizeGuard(_))
    }
}
