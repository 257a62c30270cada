use thiserror::Error;

/// Errors raised by the library. Variants carry a one-line reason suitable for
/// machine parsing by the CLI.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("not invertible: {0} mod {1}")]
    NotInvertible(i64, u64),
    #[error("not coprime: ({0}, {1})")]
    NotCoprime(i64, i64),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("not unimodular: {0}")]
    NotUnimodular(String),
    #[error("unsupported direction ({0}, {1})")]
    UnsupportedDirection(i64, i64),
    #[error("exterior point")]
    ExteriorPoint,
    #[error("irrational direction")]
    IrrationalDirection,
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
    #[error("empty intersection")]
    EmptyIntersection,
    #[error("inconsistent frame: {0}")]
    InconsistentFrame(String),
    #[error("constraint violated: {0}")]
    ConstraintViolated(String),
    #[error("tree too shallow: requested t = {requested:e} below threshold {threshold:e}")]
    TreeTooShallow { requested: f64, threshold: f64 },
    #[error("oracle failure in chart {chart}: {reason}")]
    Oracle { chart: usize, reason: String },
    #[error("pole of prefactor; use residue operations")]
    Pole,
    #[error("outside Mellin convergence; use identity route")]
    MellinDivergent,
    #[error("asymptotic regime not reached: {0}")]
    RegimeNotReached(String),
    #[error("non-A_n corner at vertex {0}")]
    NonAnCorner(usize),
    #[error("slope range not covered: {0}")]
    SlopeRange(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid domain spec: {0}")]
    InvalidSpec(String),
}

impl Error {
    /// True for failures caused by the numerical regime rather than bad input.
    pub fn is_numerical_regime(&self) -> bool {
        matches!(
            self,
            Error::RegimeNotReached(_) | Error::TreeTooShallow { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
