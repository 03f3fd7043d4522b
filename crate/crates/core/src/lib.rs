//! Simulation and two-step estimation for ergodic jump-Lévy-driven SDEs
//! observed at high frequency.
//!
//! The model is `dX_t = a(X_t, α) dt + c(X_{t-}, γ) dJ_t` with a centered,
//! unit-variance pure-jump driver `J`. Estimation proceeds in two steps:
//!
//! 1. [`gqmle`] fits `(α, γ)` by Gaussian quasi-maximum likelihood, zeroing a
//!    pair of estimating functions with an analytic Jacobian.
//! 2. [`residual`] standardizes the one-step increments into Euler residuals
//!    and fits Lévy-measure functionals `∫ φ(z) ν₀(dz)` by moment averaging,
//!    with the plug-in bias matrix of the stochastic expansion.
//!
//! [`avar`] assembles the joint asymptotic covariance, studentized statistics
//! and Wald confidence intervals; [`simulate`] generates synthetic paths by
//! fine-grid Euler stepping; [`levy`] holds the driver samplers and the
//! closed-form / quadrature facts used as cross-checks.
//!
//! The crate is `no_std` (with `alloc`); all operations are pure functions
//! over immutable inputs and safe to share across threads.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod avar;
pub mod error;
pub mod gqmle;
mod kahan;
pub mod levy;
pub mod models;
mod quad;
pub mod residual;
pub mod simulate;
pub mod special;

pub use avar::{GammaHat, JointFit, SigmaHat};
pub use error::Error;
pub use gqmle::{EstimatingFunctionValue, FitOptions, GqmleFit};
pub use levy::LevyDriver;
pub use models::{CoefficientModel, ParamDomain};
pub use residual::{MomentFunction, ResidualSet};
pub use simulate::{ObservationSeries, SimulationPlan};
