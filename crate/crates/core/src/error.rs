use alloc::boxed::Box;
use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid sample: {0}")]
    InvalidSample(String),

    #[error("cumulative hazard is infinite at x = {x} (empirical CDF equals 1)")]
    DomainError { x: f64 },

    #[error("degenerate region: upper endpoint {hi} is not above 0")]
    DegenerateRegion { hi: f64 },

    #[error("invalid region: {0}")]
    InvalidRegion(String),

    #[error("region interval [{lo}, {hi}] reaches the largest observation {max}")]
    RegionOutsideSupport { lo: f64, hi: f64, max: f64 },

    #[error("hazard evaluator returned a non-finite value at x = {x}")]
    NonFiniteEvaluation { x: f64 },

    #[error("smoothed survival function underflows at x = {x} (1 - F = {survival:e})")]
    SurvivalUnderflow { x: f64, survival: f64 },

    #[error("sample has zero variance")]
    ZeroVariance,

    #[error("no bandwidth in [{h_start}, {h_max}] gives positive curvature on the region")]
    LadderExhausted { h_start: f64, h_max: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid model parameters: {0}")]
    InvalidModel(String),

    #[error("quadrature did not reach tolerance on [{lo}, {hi}]")]
    QuadratureFailure { lo: f64, hi: f64 },

    #[error("perturbed CDF decreases near x = {x}")]
    NonMonotoneCdf { x: f64 },

    #[error("sample of size {n} is too small (need at least {min})")]
    SampleTooSmall { n: usize, min: usize },

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn at_stage(self, stage: &'static str) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }

    /// Strips any stage wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            e => e,
        }
    }

    /// True for failures of the numerical machinery, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self.root(),
            Error::SurvivalUnderflow { .. }
                | Error::LadderExhausted { .. }
                | Error::QuadratureFailure { .. }
                | Error::NonFiniteEvaluation { .. }
        )
    }
}
