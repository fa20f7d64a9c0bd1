use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter lies outside its domain (negative mean, efficiency above one, ...).
    #[error("invalid {name}: {value} ({reason})")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// A series hit its term cap before the tail bound dropped below tolerance.
    #[error("series did not converge after {terms} terms (tail bound {tail_bound:e} > tolerance {tol:e})")]
    SeriesNonConvergence {
        terms: usize,
        tail_bound: f64,
        tol: f64,
    },

    #[error("quadrature subdivision limit reached: estimate {estimate}, error estimate {error_estimate:e}")]
    QuadratureNonConvergence {
        estimate: f64,
        error_estimate: f64,
    },

    #[error("root not bracketed: f({lo}) = {f_lo}, f({hi}) = {f_hi}")]
    NotBracketed { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("degenerate input: {0}")]
    Degenerate(&'static str),

    /// Something that the model guarantees cannot happen did happen.
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    /// True for failures of a numerical method, as opposed to bad input.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::SeriesNonConvergence { .. }
                | Error::QuadratureNonConvergence { .. }
                | Error::NotBracketed { .. }
                | Error::Internal(_)
        )
    }
}
