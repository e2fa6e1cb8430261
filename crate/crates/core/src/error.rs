use thiserror::Error;

/// Everything that can go wrong while building maps, integrating, or
/// running a verification scenario.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("g' nearly vanishes on the sampling grid (min |g'| = {min_abs:e} <= {floor:e})")]
    DegenerateDerivative { min_abs: f64, floor: f64 },

    #[error("requested truncation degree {requested} exceeds the cap {cap}")]
    TruncationOverflow { requested: usize, cap: usize },

    #[error("quadrature did not converge: estimated error {est_error:e} > tolerance {abs_tol:e} after {nodes} nodes")]
    NoConvergence {
        est_error: f64,
        abs_tol: f64,
        nodes: usize,
    },

    #[error("integral means decrease in r: M({r_prev}) = {prev} > M({r_next}) = {next}")]
    MonotonicityViolation {
        r_prev: f64,
        prev: f64,
        r_next: f64,
        next: f64,
    },

    #[error("real part is not positive (min u = {min_u:e})")]
    NonpositiveRealPart { min_u: f64 },

    #[error("|f| = {modulus:e} is below the floor {floor:e}")]
    VanishingModulus { modulus: f64, floor: f64 },

    #[error("point is too close to the boundary for the Poisson kernel (1 - |x| = {gap:e})")]
    KernelBlowup { gap: f64 },

    #[error("corpus is empty")]
    EmptyCorpus,

    #[error("argument outside the domain: {0}")]
    DomainError(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("configuration error: {0}")]
    ConfigError(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
