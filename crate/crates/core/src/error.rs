//! Error type shared by the estimation pipeline.

use alloc::vec::Vec;

/// Everything that can go wrong while simulating or estimating.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Parameter vector lies outside the model's domain box.
    #[error("parameter coordinate {index} = {value} outside [{lower}, {upper}]")]
    Domain {
        index: usize,
        value: f64,
        lower: f64,
        upper: f64,
    },
    /// Scale coefficient too close to zero for a stable division.
    #[error("scale coefficient {value:e} at x = {x} below threshold")]
    SingularScale { x: f64, value: f64 },
    /// Lévy moment requested outside the closed-form set.
    #[error("no closed form for Lévy moment of order {0}")]
    UnsupportedMoment(u32),
    /// Lévy density evaluated at the origin.
    #[error("Lévy density diverges at z = 0")]
    Origin,
    /// Simulated state left the finite range.
    #[error("state became non-finite at fine step {step}")]
    NonFiniteState { step: usize },
    /// Every solver start failed its first line search.
    #[error("no start made progress; best |G| = {best_objective:e}")]
    NoProgress {
        best_theta: Vec<f64>,
        best_objective: f64,
    },
    /// Matrix dimensions do not line up.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    /// Gamma matrix too ill-conditioned to invert.
    #[error("gamma matrix condition number {cond:e} exceeds {limit:e}")]
    SingularGamma { cond: f64, limit: f64 },
    /// Covariance matrix has a non-positive spectrum.
    #[error("matrix not positive definite: min eigenvalue {min_eigenvalue:e}")]
    NotPositiveDefinite { min_eigenvalue: f64 },
    /// Delta-method Jacobian not invertible at the fitted point.
    #[error("delta-method jacobian is singular")]
    SingularJacobian,
}

/// Shorthand used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
