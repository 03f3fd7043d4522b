//! Jump Lévy drivers: exact-law increment samplers plus the closed-form and
//! quadrature facts used to cross-check them.
//!
//! Both drivers are centered with unit variance per time unit, so an
//! increment over span `t` has mean 0 and variance `t`.

use num_traits::Float;
use rand::Rng;
use rand_distr::{Distribution, Poisson, StandardNormal};

use crate::error::{Error, Result};
use crate::quad::adaptive_simpson;
use crate::special::bessel_k1;

/// Specification of the driving pure-jump Lévy process.
///
/// The driver carries no sampler state; callers own their generator and pass
/// it to [`LevyDriver::sample_increment`], so clones can run on independently
/// seeded streams without shared mutation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LevyDriver {
    /// Normal inverse Gaussian process with `L(J_t) = NIG(δ, 0, δt, 0)`.
    Nig { delta: f64 },
    /// Compound Poisson process with rate `λ` and centered normal jumps of
    /// variance `1/λ`, so `Var J_1 = 1`.
    CompoundPoissonNormal { rate: f64 },
}

impl LevyDriver {
    pub fn nig(delta: f64) -> Self {
        assert!(delta > 0.0, "NIG tail parameter must be positive");
        LevyDriver::Nig { delta }
    }

    pub fn cpn(rate: f64) -> Self {
        assert!(rate > 0.0, "compound Poisson rate must be positive");
        LevyDriver::CompoundPoissonNormal { rate }
    }

    /// Draws one exact-law increment of the driver over `span`.
    ///
    /// The NIG increment is generated by inverse-Gaussian subordination:
    /// `W ~ IG(mean = span, shape = (δ·span)²)`, then `√W · N(0,1)`.
    pub fn sample_increment<R: Rng + ?Sized>(&self, span: f64, rng: &mut R) -> f64 {
        debug_assert!(span > 0.0);
        match *self {
            LevyDriver::Nig { delta } => {
                let shape = (delta * span) * (delta * span);
                let w = sample_inverse_gaussian(span, shape, rng);
                let z: f64 = StandardNormal.sample(rng);
                w.sqrt() * z
            }
            LevyDriver::CompoundPoissonNormal { rate } => {
                let jumps: f64 = Poisson::new(rate * span)
                    .expect("positive rate and span")
                    .sample(rng);
                let sd = (1.0 / rate).sqrt();
                let mut sum = 0.0;
                for _ in 0..jumps as u64 {
                    let z: f64 = StandardNormal.sample(rng);
                    sum += sd * z;
                }
                sum
            }
        }
    }

    /// `∫ (cos(uz) − 1) ν₀(dz)`, the log characteristic function of `J_1`.
    pub fn cos_cumulant(&self, u: f64) -> f64 {
        match *self {
            LevyDriver::Nig { delta } => nig_cumulant(delta, u),
            LevyDriver::CompoundPoissonNormal { rate } => {
                rate * ((-u * u / (2.0 * rate)).exp() - 1.0)
            }
        }
    }

    /// `∫ z^q ν₀(dz)` for `q ∈ {2, 3, 4}`.
    pub fn levy_moment(&self, q: u32) -> Result<f64> {
        match *self {
            LevyDriver::Nig { delta } => nig_levy_moment(delta, q),
            LevyDriver::CompoundPoissonNormal { rate } => match q {
                2 => Ok(1.0),
                3 => Ok(0.0),
                4 => Ok(3.0 / rate),
                other => Err(Error::UnsupportedMoment(other)),
            },
        }
    }
}

/// Inverse Gaussian variate with the given mean and shape.
///
/// Transformation-with-rejection method (Michael, Schucany and Haas). The
/// smaller root is evaluated in the subtraction-free form
/// `x = μ / (1 + z/2 + √(z + z²/4))` with `z = μy/λ`, algebraically equal to
/// the textbook `μ + μ²y/(2λ) − (μ/2λ)√(4μλy + μ²y²)` but immune to
/// cancellation for large `y`.
pub fn sample_inverse_gaussian<R: Rng + ?Sized>(mean: f64, shape: f64, rng: &mut R) -> f64 {
    debug_assert!(mean > 0.0 && shape > 0.0);
    let v: f64 = StandardNormal.sample(rng);
    let y = v * v;
    let z = mean * y / shape;
    let x = mean / (1.0 + 0.5 * z + (z + 0.25 * z * z).sqrt());
    let u: f64 = rng.random();
    if u <= mean / (mean + x) {
        x
    } else {
        mean * mean / x
    }
}

/// NIG cumulant `κ(u) = δ(δ − √(δ² + u²))`.
///
/// Evaluated as `−δu²/(δ + √(δ² + u²))` so small `u` keep full relative
/// accuracy and `κ(0) = 0` exactly.
pub fn nig_cumulant(delta: f64, u: f64) -> f64 {
    debug_assert!(delta > 0.0);
    -delta * u * u / (delta + (delta * delta + u * u).sqrt())
}

/// `∫ z^q ν₀(dz)` of the normalized NIG driver: 1, 0 and `3/δ²` for
/// `q = 2, 3, 4`.
pub fn nig_levy_moment(delta: f64, q: u32) -> Result<f64> {
    debug_assert!(delta > 0.0);
    match q {
        2 => Ok(1.0),
        3 => Ok(0.0),
        4 => Ok(3.0 / (delta * delta)),
        other => Err(Error::UnsupportedMoment(other)),
    }
}

/// `f(δ, u) = ∫ (cos(ux) − 1)² ν₀(dx)`, the asymptotic variance of the
/// cosine moment estimator: `−(3/2)δ² + δ(2√(δ²+u²) − (1/2)√(δ²+4u²))`.
pub fn nig_phi_variance(delta: f64, u: f64) -> f64 {
    debug_assert!(delta > 0.0);
    -1.5 * delta * delta
        + delta
            * (2.0 * (delta * delta + u * u).sqrt() - 0.5 * (delta * delta + 4.0 * u * u).sqrt())
}

/// Lévy density of the normalized NIG driver, `(δ²/π) K₁(δ|z|) / |z|`.
pub fn nig_levy_density(delta: f64, z: f64) -> Result<f64> {
    debug_assert!(delta > 0.0);
    if z == 0.0 {
        return Err(Error::Origin);
    }
    let az = z.abs();
    Ok(delta * delta / core::f64::consts::PI * bessel_k1(delta * az) / az)
}

/// Quadrature oracle `∫ f(z) ν₀(dz)` over the NIG Lévy measure.
///
/// Integrates `(f(z) + f(−z))·density(z)` adaptively over `z ∈ (1e−8, 60)`;
/// `K₁` decays like `e^{−δ|z|}` and admissible integrands vanish to second
/// order at the origin, so both cutoffs are negligible at the advertised
/// ~1e−6 accuracy.
pub fn nig_nu_integral<F: Fn(f64) -> f64>(delta: f64, integrand: F) -> f64 {
    debug_assert!(delta > 0.0);
    let g = |z: f64| {
        let dens = delta * delta / core::f64::consts::PI * bessel_k1(delta * z) / z;
        (integrand(z) + integrand(-z)) * dens
    };
    // Panels matched to the density's scale change near the origin.
    const KNOTS: [f64; 8] = [1e-8, 1e-4, 1e-2, 0.1, 1.0, 5.0, 20.0, 60.0];
    let mut total = 0.0;
    for w in KNOTS.windows(2) {
        total += adaptive_simpson(&g, w[0], w[1], 2e-9);
    }
    total
}
