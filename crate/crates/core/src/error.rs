use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("mismatched algebras: F_{{{0},{1}}} vs F_{{{2},{3}}}")]
    Mismatch(usize, usize, usize, usize),

    #[error("word uses generator x{index} but only {available} arguments were given")]
    GeneratorOutOfRange { index: usize, available: usize },

    #[error("relation is not homogeneous of top degree {step}: {detail}")]
    NotTopDegree { step: usize, detail: String },

    #[error("{0} is not coprime to {1}")]
    NotCoprime(i64, usize),

    #[error("shape {0} occurs without multiplicity; no twisted submodule exists")]
    NoMultiplicity(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("precision exhausted: distance 10^{log10_distance:.1} is within the guard band of {digits}-digit arithmetic")]
    PrecisionExhausted { log10_distance: f64, digits: u32 },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("value does not fit: {0}")]
    Overflow(String),
}

impl Error {
    /// True for errors caused by malformed or out-of-range input rather than
    /// by the mathematics.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::InvalidParameter(_) | Error::Parse(_))
    }
}
