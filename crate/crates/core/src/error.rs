use thiserror::Error;

/// Coarse classification used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed or degenerate input.
    Input,
    /// Well-formed input that does not satisfy a result's hypotheses.
    Hypothesis,
    /// The numerical machinery failed to reach its residual target.
    Numerical,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("at least one root other than the distinguished root is required")]
    NoOtherRoots,
    #[error("multiplicities must be positive")]
    ZeroMultiplicity,
    #[error("non-finite value in input: {0}")]
    NonFinite(String),
    #[error("roots {first} and {second} are too close (distance {distance:e})")]
    RootsTooClose {
        first: String,
        second: String,
        distance: f64,
    },
    #[error("{which} lies outside the closed unit disk (modulus {modulus})")]
    OutsideUnitDisk { which: String, modulus: f64 },
    #[error("degree too large: {degree} exceeds cap {cap}")]
    DegreeTooLarge { degree: u64, cap: u64 },
    #[error("the zero polynomial is not allowed")]
    ZeroPolynomial,
    #[error("constant has no derivative of interest")]
    ConstantPolynomial,
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("hypotheses not met: {0}")]
    HypothesisNotMet(String),
    #[error("outside the certified range: a = {a} exceeds a0 = {a0}")]
    OutsideRange { a: f64, a0: f64 },
    #[error("n0 not located up to n = {n_max}: {diagnostic}")]
    ThresholdNotLocated { n_max: u32, diagnostic: String },
    #[error("root solver did not converge after {iterations} iterations (max residual {max_residual:e})")]
    NonConvergence { iterations: usize, max_residual: f64 },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::NoOtherRoots
            | Error::ZeroMultiplicity
            | Error::NonFinite(_)
            | Error::RootsTooClose { .. }
            | Error::OutsideUnitDisk { .. }
            | Error::DegreeTooLarge { .. }
            | Error::ZeroPolynomial
            | Error::ConstantPolynomial
            | Error::Degenerate(_)
            | Error::InvalidParameters(_) => ErrorKind::Input,
            Error::HypothesisNotMet(_) | Error::OutsideRange { .. } | Error::ThresholdNotLocated { .. } => {
                ErrorKind::Hypothesis
            }
            Error::NonConvergence { .. } => ErrorKind::Numerical,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
