//! Crate-wide error type and exit-code mapping.

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("function value is not finite at t = {t:e}")]
    Evaluation { t: f64 },

    #[error("quadrature did not converge (residual estimate {residual:e})")]
    Accuracy { residual: f64 },

    #[error("derivative order n = {n} is unsupported (1 ..= 4)")]
    UnsupportedOrder { n: u32 },

    #[error("transform diverges: Re(s) = {re_s} is not above the abscissa {abscissa}")]
    Divergence { re_s: f64, abscissa: f64 },

    #[error("boundary limit did not converge: {0}")]
    BoundaryTerm(String),

    #[error("frequency expression does not match any pair-table family")]
    NoMatch,

    #[error("near-coincident poles (gap {gap:e}); merge them into a higher multiplicity or perturb the coefficients")]
    IllConditionedPoles { gap: f64 },

    #[error("pole set is not conjugate-symmetric: {0}")]
    InconsistentPoles(String),

    #[error("contour parameters inadequate: imaginary diagnostic {imag:e} exceeds {limit:e}; increase omega_max or move c")]
    ContourParameter { imag: f64, limit: f64 },

    #[error(
        "series exhausted before reaching the tail tolerance; last term magnitude {last_term:e}"
    )]
    SeriesTruncation { last_term: f64 },

    #[error(
        "stability bound violated at step {step}: coefficient {coefficient:e} exceeds {bound}"
    )]
    Stability {
        step: usize,
        coefficient: f64,
        bound: f64,
    },

    #[error("theorem inapplicable: {0}")]
    TheoremInapplicable(String),

    #[error("routes disagree: {lhs:e} vs {rhs:e} (tolerance {tol:e} relative)")]
    RouteDisagreement { lhs: f64, rhs: f64, tol: f64 },

    #[error(transparent)]
    Parse(#[from] crate::expr::ParseError),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code contract: 2 parse, 3 domain/precondition,
    /// 4 accuracy/convergence. Verification failures (exit 5) are
    /// handled by the CLI, not by an error variant.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 2,
            Error::Domain(_)
            | Error::UnsupportedOrder { .. }
            | Error::TheoremInapplicable(_)
            | Error::NoMatch => 3,
            Error::Evaluation { .. }
            | Error::Accuracy { .. }
            | Error::Divergence { .. }
            | Error::BoundaryTerm(_)
            | Error::IllConditionedPoles { .. }
            | Error::InconsistentPoles(_)
            | Error::ContourParameter { .. }
            | Error::SeriesTruncation { .. }
            | Error::Stability { .. }
            | Error::RouteDisagreement { .. } => 4,
            Error::Io(_) => 1,
        }
    }
}
