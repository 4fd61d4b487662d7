use crate::algebra::Kind;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QuadError {
    #[error("kind mismatch: {left} and {right}")]
    KindMismatch { left: Kind, right: Kind },

    #[error("components must be finite")]
    NonFinite,

    #[error("singular value on nodal set(s): {}", nodal_sets.join(", "))]
    Singular { nodal_sets: Vec<String> },

    #[error("outside the validity domain: {0}")]
    Domain(String),

    #[error("degenerate series: {0}")]
    DegenerateSeries(String),

    #[error("integrand is singular at loop sample {index}")]
    SingularOnPath { index: usize },

    #[error("point lies on the loop boundary")]
    OnBoundary,

    #[error("root finder did not converge for component {component}")]
    NoConvergence { component: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl QuadError {
    /// Short stable identifier, used in machine-readable error output.
    pub fn code(&self) -> &'static str {
        match self {
            QuadError::KindMismatch { .. } => "kind_mismatch",
            QuadError::NonFinite => "non_finite",
            QuadError::Singular { .. } => "singular_value",
            QuadError::Domain(_) => "domain_error",
            QuadError::DegenerateSeries(_) => "degenerate_series",
            QuadError::SingularOnPath { .. } => "singular_on_path",
            QuadError::OnBoundary => "on_boundary",
            QuadError::NoConvergence { .. } => "no_convergence",
            QuadError::InvalidInput(_) => "invalid_input",
        }
    }

    /// True for errors caused by the mathematical domain rather than malformed input.
    pub fn is_domain(&self) -> bool {
        !matches!(
            self,
            QuadError::KindMismatch { .. } | QuadError::NonFinite | QuadError::InvalidInput(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, QuadError>;
