use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// The duality map r = ρ^(2/(β+2)) has no meaning at β = -2.
    #[error("singular duality exponent: beta = -2")]
    SingularExponent,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid radial state: {0}")]
    InvalidState(String),

    #[error("quadrature did not reach tolerance {tol:.1e} (error estimate {err:.1e} after {segments} segments)")]
    QuadratureNonConvergence { tol: f64, err: f64, segments: usize },

    #[error("solver window too small: {0}")]
    WindowTooSmall(String),

    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),

    #[error("insufficient points: need at least {needed}, got {got}")]
    InsufficientPoints { needed: usize, got: usize },

    #[error("eigensolver failed to converge: {0}")]
    Convergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
