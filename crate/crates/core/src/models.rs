//! Parametric drift/scale coefficient pairs with the derivatives the
//! estimators need.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Scale magnitudes below this are treated as singular.
pub const SCALE_EPS: f64 = 1e-12;

type Scalar = Box<dyn Fn(f64, &[f64]) -> f64 + Send + Sync>;
/// Writes the parameter gradient (or row-major Hessian) into `out`.
type Gradient = Box<dyn Fn(f64, &[f64], &mut [f64]) + Send + Sync>;

/// Bounded convex box for one parameter block.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamDomain {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl ParamDomain {
    /// Requires `lower[i] < upper[i]` in every coordinate.
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::Dimension {
                expected: lower.len(),
                got: upper.len(),
            });
        }
        for (i, (&lo, &hi)) in lower.iter().zip(&upper).enumerate() {
            if !(lo < hi) {
                return Err(Error::Domain {
                    index: i,
                    value: lo,
                    lower: lo,
                    upper: hi,
                });
            }
        }
        Ok(Self { lower, upper })
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    /// Containment in the closed box.
    pub fn contains(&self, theta: &[f64]) -> bool {
        theta.len() == self.dim()
            && theta
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(&v, (&lo, &hi))| v >= lo && v <= hi)
    }

    /// Strict interior test.
    pub fn is_interior(&self, theta: &[f64]) -> bool {
        theta.len() == self.dim()
            && theta
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(&v, (&lo, &hi))| v > lo && v < hi)
    }

    /// Project onto the closed box, coordinate-wise.
    pub fn clamp(&self, theta: &mut [f64]) {
        for (v, (&lo, &hi)) in theta.iter_mut().zip(self.lower.iter().zip(&self.upper)) {
            *v = v.max(lo).min(hi);
        }
    }

    pub fn midpoint(&self) -> Vec<f64> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(&lo, &hi)| 0.5 * (lo + hi))
            .collect()
    }
}

/// Drift `a(x, α)`, scale `c(x, γ)` and their parameter derivatives up to
/// second order, plus the domain boxes.
///
/// Instances are immutable after construction and safe to share across
/// threads. The scale is assumed nonvanishing over the domain wherever an
/// estimator divides by it; the division sites enforce [`SCALE_EPS`] and fail
/// with [`Error::SingularScale`].
pub struct CoefficientModel {
    p_alpha: usize,
    p_gamma: usize,
    domain_alpha: ParamDomain,
    domain_gamma: ParamDomain,
    drift: Scalar,
    scale: Scalar,
    drift_dalpha: Gradient,
    drift_d2alpha: Gradient,
    scale_dgamma: Gradient,
    scale_d2gamma: Gradient,
}

impl core::fmt::Debug for CoefficientModel {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("CoefficientModel")
            .field("p_alpha", &self.p_alpha)
            .field("p_gamma", &self.p_gamma)
            .field("domain_alpha", &self.domain_alpha)
            .field("domain_gamma", &self.domain_gamma)
            .finish_non_exhaustive()
    }
}

impl CoefficientModel {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        domain_alpha: ParamDomain,
        domain_gamma: ParamDomain,
        drift: Scalar,
        scale: Scalar,
        drift_dalpha: Gradient,
        drift_d2alpha: Gradient,
        scale_dgamma: Gradient,
        scale_d2gamma: Gradient,
    ) -> Self {
        Self {
            p_alpha: domain_alpha.dim(),
            p_gamma: domain_gamma.dim(),
            domain_alpha,
            domain_gamma,
            drift,
            scale,
            drift_dalpha,
            drift_d2alpha,
            scale_dgamma,
            scale_d2gamma,
        }
    }

    pub fn p_alpha(&self) -> usize {
        self.p_alpha
    }

    pub fn p_gamma(&self) -> usize {
        self.p_gamma
    }

    /// Total parameter dimension `p_α + p_γ`.
    pub fn p(&self) -> usize {
        self.p_alpha + self.p_gamma
    }

    pub fn domain_alpha(&self) -> &ParamDomain {
        &self.domain_alpha
    }

    pub fn domain_gamma(&self) -> &ParamDomain {
        &self.domain_gamma
    }

    /// Splits a stacked `θ = (α, γ)` into its blocks.
    pub fn split_theta<'a>(&self, theta: &'a [f64]) -> (&'a [f64], &'a [f64]) {
        theta.split_at(self.p_alpha)
    }

    /// Errors unless `θ` lies in the closed box `Θ̄`.
    pub fn check_domain(&self, theta: &[f64]) -> Result<()> {
        if theta.len() != self.p() {
            return Err(Error::Dimension {
                expected: self.p(),
                got: theta.len(),
            });
        }
        let (alpha, gamma) = self.split_theta(theta);
        for (block, domain, offset) in [
            (alpha, &self.domain_alpha, 0),
            (gamma, &self.domain_gamma, self.p_alpha),
        ] {
            for (i, &v) in block.iter().enumerate() {
                let (lo, hi) = (domain.lower[i], domain.upper[i]);
                if !(v >= lo && v <= hi) {
                    return Err(Error::Domain {
                        index: offset + i,
                        value: v,
                        lower: lo,
                        upper: hi,
                    });
                }
            }
        }
        Ok(())
    }

    /// Interior of `Θ`, used to flag boundary fits.
    pub fn is_interior(&self, theta: &[f64]) -> bool {
        let (alpha, gamma) = self.split_theta(theta);
        self.domain_alpha.is_interior(alpha) && self.domain_gamma.is_interior(gamma)
    }

    /// Midpoint of the full box, the default optimizer start.
    pub fn midpoint(&self) -> Vec<f64> {
        let mut m = self.domain_alpha.midpoint();
        m.extend(self.domain_gamma.midpoint());
        m
    }

    #[inline]
    pub fn drift(&self, x: f64, alpha: &[f64]) -> f64 {
        (self.drift)(x, alpha)
    }

    #[inline]
    pub fn scale(&self, x: f64, gamma: &[f64]) -> f64 {
        (self.scale)(x, gamma)
    }

    #[inline]
    pub fn drift_dalpha_into(&self, x: f64, alpha: &[f64], out: &mut [f64]) {
        (self.drift_dalpha)(x, alpha, out);
    }

    #[inline]
    pub fn drift_d2alpha_into(&self, x: f64, alpha: &[f64], out: &mut [f64]) {
        (self.drift_d2alpha)(x, alpha, out);
    }

    #[inline]
    pub fn scale_dgamma_into(&self, x: f64, gamma: &[f64], out: &mut [f64]) {
        (self.scale_dgamma)(x, gamma, out);
    }

    #[inline]
    pub fn scale_d2gamma_into(&self, x: f64, gamma: &[f64], out: &mut [f64]) {
        (self.scale_d2gamma)(x, gamma, out);
    }

    pub fn drift_dalpha(&self, x: f64, alpha: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.p_alpha];
        self.drift_dalpha_into(x, alpha, &mut out);
        out
    }

    pub fn scale_dgamma(&self, x: f64, gamma: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.p_gamma];
        self.scale_dgamma_into(x, gamma, &mut out);
        out
    }

    pub fn drift_d2alpha(&self, x: f64, alpha: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.p_alpha * self.p_alpha];
        self.drift_d2alpha_into(x, alpha, &mut out);
        out
    }

    pub fn scale_d2gamma(&self, x: f64, gamma: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.p_gamma * self.p_gamma];
        self.scale_d2gamma_into(x, gamma, &mut out);
        out
    }

    /// Scale with the singularity guard applied.
    #[inline]
    pub(crate) fn checked_scale(&self, x: f64, gamma: &[f64]) -> Result<f64> {
        let c = self.scale(x, gamma);
        if num_traits::Float::abs(c) < SCALE_EPS {
            Err(Error::SingularScale { x, value: c })
        } else {
            Ok(c)
        }
    }

    /// `η(x, θ) = a(x, α) / c(x, γ)`.
    pub fn eta(&self, x: f64, theta: &[f64]) -> Result<f64> {
        self.check_domain(theta)?;
        let (alpha, gamma) = self.split_theta(theta);
        let c = self.checked_scale(x, gamma)?;
        Ok(self.drift(x, alpha) / c)
    }

    /// `M(x, θ) = ∂_α a(x, α) · c(x, γ)⁻²`.
    pub fn big_m(&self, x: f64, theta: &[f64]) -> Result<Vec<f64>> {
        self.check_domain(theta)?;
        let (alpha, gamma) = self.split_theta(theta);
        let c = self.checked_scale(x, gamma)?;
        let inv_c2 = 1.0 / (c * c);
        let mut out = self.drift_dalpha(x, alpha);
        for v in &mut out {
            *v *= inv_c2;
        }
        Ok(out)
    }
}

/// Mean-reverting drift with state-damped scale:
/// `a(x, α) = -αx`, `c(x, γ) = -γ / (1 + x²)`, scalar α and γ on [0.01, 5].
pub fn builtin_cmodel() -> CoefficientModel {
    let domain = || ParamDomain::new(vec![0.01], vec![5.0]).expect("static bounds");
    CoefficientModel::new(
        domain(),
        domain(),
        Box::new(|x, alpha| -alpha[0] * x),
        Box::new(|x, gamma| -gamma[0] / (1.0 + x * x)),
        Box::new(|x, _, out| out[0] = -x),
        Box::new(|_, _, out| out[0] = 0.0),
        Box::new(|x, _, out| out[0] = -1.0 / (1.0 + x * x)),
        Box::new(|_, _, out| out[0] = 0.0),
    )
}

/// Ornstein-Uhlenbeck drift with constant scale:
/// `a(x, α) = -αx`, `c(x, γ) = γ`. The GQMLE has closed-form roots here,
/// which the tests use as an independent oracle.
pub fn builtin_ou_const_scale() -> CoefficientModel {
    let domain = || ParamDomain::new(vec![0.01], vec![5.0]).expect("static bounds");
    CoefficientModel::new(
        domain(),
        domain(),
        Box::new(|x, alpha| -alpha[0] * x),
        Box::new(|_, gamma| gamma[0]),
        Box::new(|x, _, out| out[0] = -x),
        Box::new(|_, _, out| out[0] = 0.0),
        Box::new(|_, _, out| out[0] = 1.0),
        Box::new(|_, _, out| out[0] = 0.0),
    )
}

/// CLI-facing model registry.
pub fn model_by_name(name: &str) -> Option<CoefficientModel> {
    match name {
        "cmodel" => Some(builtin_cmodel()),
        "ou-const-scale" => Some(builtin_ou_const_scale()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn central_diff(f: impl Fn(f64) -> f64, x: f64, step: f64) -> f64 {
        (f(x + step) - f(x - step)) / (2.0 * step)
    }

    #[test]
    fn eta_examples() {
        let m = builtin_cmodel();
        assert_eq!(m.eta(0.0, &[0.5, 0.2]).unwrap(), 0.0);
        assert!((m.eta(1.0, &[0.5, 0.2]).unwrap() - 5.0).abs() < 1e-12);

        let constant = CoefficientModel::new(
            ParamDomain::new(vec![0.0], vec![1.0]).unwrap(),
            ParamDomain::new(vec![0.0], vec![1.0]).unwrap(),
            Box::new(|_, _| 1.0),
            Box::new(|_, _| 2.0),
            Box::new(|_, _, out| out[0] = 0.0),
            Box::new(|_, _, out| out[0] = 0.0),
            Box::new(|_, _, out| out[0] = 0.0),
            Box::new(|_, _, out| out[0] = 0.0),
        );
        assert_eq!(constant.eta(3.7, &[0.5, 0.5]).unwrap(), 0.5);
    }

    #[test]
    fn eta_rejects_out_of_domain_and_singular_scale() {
        let m = builtin_cmodel();
        assert!(matches!(
            m.eta(1.0, &[7.0, 0.2]),
            Err(Error::Domain { index: 0, .. })
        ));

        let degenerate = CoefficientModel::new(
            ParamDomain::new(vec![0.0], vec![1.0]).unwrap(),
            ParamDomain::new(vec![0.0], vec![1.0]).unwrap(),
            Box::new(|_, _| 1.0),
            Box::new(|_, _| 0.0),
            Box::new(|_, _, out| out[0] = 0.0),
            Box::new(|_, _, out| out[0] = 0.0),
            Box::new(|_, _, out| out[0] = 0.0),
            Box::new(|_, _, out| out[0] = 0.0),
        );
        assert!(matches!(
            degenerate.eta(0.0, &[0.5, 0.5]),
            Err(Error::SingularScale { .. })
        ));
    }

    #[test]
    fn big_m_examples() {
        let m = builtin_cmodel();
        let v = m.big_m(2.0, &[0.5, 0.2]).unwrap();
        assert!((v[0] - (-1250.0)).abs() < 1e-9, "got {}", v[0]);

        // ∂_α a ≡ 0 gives the zero vector.
        let flat = CoefficientModel::new(
            ParamDomain::new(vec![0.0], vec![1.0]).unwrap(),
            ParamDomain::new(vec![0.0], vec![1.0]).unwrap(),
            Box::new(|_, _| 1.0),
            Box::new(|_, _| 1.0),
            Box::new(|_, _, out| out[0] = 0.0),
            Box::new(|_, _, out| out[0] = 0.0),
            Box::new(|_, _, out| out[0] = 0.0),
            Box::new(|_, _, out| out[0] = 0.0),
        );
        assert_eq!(flat.big_m(9.0, &[0.5, 0.5]).unwrap(), vec![0.0]);

        // a = αx, c ≡ 1 at x = 3.
        let linear = CoefficientModel::new(
            ParamDomain::new(vec![0.0], vec![1.0]).unwrap(),
            ParamDomain::new(vec![0.5], vec![2.0]).unwrap(),
            Box::new(|x, alpha| alpha[0] * x),
            Box::new(|_, _| 1.0),
            Box::new(|x, _, out| out[0] = x),
            Box::new(|_, _, out| out[0] = 0.0),
            Box::new(|_, _, out| out[0] = 0.0),
            Box::new(|_, _, out| out[0] = 0.0),
        );
        assert_eq!(linear.big_m(3.0, &[0.5, 1.0]).unwrap(), vec![3.0]);
    }

    #[test]
    fn builtin_cmodel_values() {
        let m = builtin_cmodel();
        assert_eq!(m.drift(2.0, &[0.5]), -1.0);
        assert_eq!(m.scale(0.0, &[0.2]), -0.2);
        assert_eq!(m.scale_dgamma(1.0, &[0.2]), vec![-0.5]);
        assert_eq!(m.drift_d2alpha(1.0, &[0.5]), vec![0.0]);
    }

    #[test]
    fn analytic_derivatives_match_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for model in [builtin_cmodel(), builtin_ou_const_scale()] {
            for _ in 0..100 {
                let x: f64 = rng.random_range(-3.0..3.0);
                let alpha = [rng.random_range(0.05..4.5)];
                let gamma = [rng.random_range(0.05..4.5)];
                let step = 1e-5;

                let da = model.drift_dalpha(x, &alpha)[0];
                let fd = central_diff(|a| model.drift(x, &[a]), alpha[0], step);
                assert!((da - fd).abs() <= 1e-6 * (1.0 + fd.abs()), "drift dα at x={x}");

                let dc = model.scale_dgamma(x, &gamma)[0];
                let fd = central_diff(|g| model.scale(x, &[g]), gamma[0], step);
                assert!((dc - fd).abs() <= 1e-6 * (1.0 + fd.abs()), "scale dγ at x={x}");

                let d2a = model.drift_d2alpha(x, &alpha)[0];
                let fd = central_diff(|a| model.drift_dalpha(x, &[a])[0], alpha[0], step);
                assert!((d2a - fd).abs() <= 1e-6 * (1.0 + fd.abs()), "drift d²α at x={x}");

                let d2c = model.scale_d2gamma(x, &gamma)[0];
                let fd = central_diff(|g| model.scale_dgamma(x, &[g])[0], gamma[0], step);
                assert!((d2c - fd).abs() <= 1e-6 * (1.0 + fd.abs()), "scale d²γ at x={x}");
            }
        }
    }

    #[test]
    fn cmodel_polynomial_growth_bounds() {
        let m = builtin_cmodel();
        let gamma_min = m.domain_gamma().lower()[0];
        let mut x = -25.0;
        while x <= 25.0 {
            for g in [gamma_min, 0.2, 5.0] {
                assert!(m.scale_dgamma(x, &[g])[0].abs() <= 1.0);
                let inv_c = 1.0 / m.scale(x, &[g]);
                assert!(inv_c.abs() <= (1.0 + x * x) / gamma_min + 1e-9);
            }
            x += 0.37;
        }
    }

    #[test]
    fn domain_validation() {
        assert!(ParamDomain::new(vec![1.0], vec![1.0]).is_err());
        assert!(ParamDomain::new(vec![0.0, 1.0], vec![1.0]).is_err());
        let d = ParamDomain::new(vec![0.0, -1.0], vec![1.0, 1.0]).unwrap();
        assert!(d.contains(&[0.0, 1.0]));
        assert!(!d.is_interior(&[0.0, 0.5]));
        assert_eq!(d.midpoint(), vec![0.5, 0.0]);
        let mut v = [2.0, -3.0];
        d.clamp(&mut v);
        assert_eq!(v, [1.0, -1.0]);
    }
}
