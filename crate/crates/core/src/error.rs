use alloc::string::String;

/// Failure modes shared by every numerical routine in the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("gamma function has a pole at {0}")]
    GammaPole(f64),
    #[error("gamma function overflows at {0}")]
    GammaOverflow(f64),
    #[error("series did not converge within {terms} terms")]
    SeriesNonConvergence { terms: usize },
    #[error("order {0} lies within 1e-6 of an integer")]
    NearIntegerOrder(f64),
    #[error("lower parameter {0} is a non-positive integer")]
    ParameterPole(f64),
    #[error("argument outside the asymptotic regime: {0}")]
    Regime(&'static str),
    #[error("index {index} outside {lo}..={hi}")]
    Index { index: i64, lo: i64, hi: i64 },
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("eigenvalue iteration stalled at index {index}")]
    EigenNonConvergence { index: usize },
    #[error("matrix is singular to working precision")]
    Singular,
    #[error("input vector {0} has zero norm")]
    ZeroVector(usize),
    #[error("single-well gap {gap:.3e} is below ten times the band width {band_width:.3e}")]
    SingleWellGap { gap: f64, band_width: f64 },
    #[error("projected couplings are inconsistent across sites (relative spread {0:.3e})")]
    InconsistentProjection(f64),
    #[error("optimizer did not converge")]
    OptimizerNonConvergence,
    #[error("too close to an exceptional point (|Δ| = {0:.3e})")]
    NearExceptionalPoint(f64),
    #[error("no root merge found between ratios {lo} and {hi}")]
    NoMergeFound { lo: f64, hi: f64 },
    #[error("located merge is not a double root (gap {gap:.3e})")]
    NotDoubleRoot { gap: f64 },
    #[error("Jordan chains for eigenvalue {re}{im:+}i span {found} of {expected} dimensions")]
    JordanChain { re: f64, im: f64, found: usize, expected: usize },
    #[error("integration step underflow at t = {0}")]
    StepUnderflow(f64),
    #[error("fit window is not a power law (local slopes vary by {0:.1}%)")]
    PowerLawWindow(f64),
    #[error("non-finite value encountered: {0}")]
    NonFinite(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
