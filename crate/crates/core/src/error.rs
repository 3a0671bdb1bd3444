use thiserror::Error;

pub type Result<T> = std::result::Result<T, HdcError>;

#[derive(Debug, Error)]
pub enum HdcError {
    #[error("invalid dimension {0}: vectors need at least 2 components")]
    InvalidDimension(usize),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("non-finite value at index {0}")]
    NonFinite(usize),

    #[error("non-finite coordinate ({x}, {y})")]
    NonFiniteCoordinate { x: f64, y: f64 },

    #[error("power {exponent} is undefined: Fourier coefficient {bin} is zero")]
    SingularSpectrum { exponent: f64, bin: usize },

    #[error("fractional power {exponent} requires a unitary vector, but Fourier coefficient {bin} has magnitude {magnitude}")]
    NotUnitary { exponent: f64, bin: usize, magnitude: f64 },

    #[error("axes are not valid: {0}")]
    InvalidAxes(String),

    #[error("class id {class_id} out of range for a vocabulary of {vocabulary} labels")]
    ClassOutOfRange { class_id: usize, vocabulary: usize },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("partitions are only enumerated for 1 <= n <= 64, got {0}")]
    PartitionOutOfRange(usize),

    #[error("n = {n} has {count} partitions, above the full-enumeration limit (n <= {limit}); pass --max-partitions to sample a subset")]
    PartitionCapExceeded { n: usize, count: usize, limit: usize },

    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("malformed vector encoding: {0}")]
    Malformed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
