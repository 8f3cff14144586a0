use thiserror::Error;

/// Every failure the library reports.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum GtgsError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("argument on branch cut: {0}")]
    BranchCut(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("no convergence: {0}")]
    NonConvergence(String),
    #[error("quadrature failure: {0}")]
    QuadratureFailure(String),
    #[error("divergent moment: {0}")]
    DivergentMoment(String),
    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),
    #[error("incompatible parameters: {0}")]
    IncompatibleParams(String),
    #[error("not equivalent: {0}")]
    NotEquivalent(String),
    #[error("tabulation failure: {0}")]
    TabulationFailure(String),
    #[error("grid too narrow: {0}")]
    GridTooNarrow(String),
}

impl GtgsError {
    /// True for errors caused by bad input rather than numerical trouble.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            GtgsError::InvalidParams(_)
                | GtgsError::Domain(_)
                | GtgsError::IncompatibleParams(_)
                | GtgsError::UnsupportedRegime(_)
                | GtgsError::BranchCut(_)
                | GtgsError::Pole(_)
                | GtgsError::NotEquivalent(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, GtgsError>;
