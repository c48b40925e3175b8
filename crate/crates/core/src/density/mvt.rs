use crate::error::{Error, Result};
use crate::linalg::Cholesky;
use crate::scalar::{dot, Real};

use super::TargetDensity;

/// Multivariate t with `nu` degrees of freedom, location `mu` and scale
/// matrix `sigma`, including its normalizing constant.
#[derive(Debug, Clone, PartialEq)]
pub struct MultivariateT<T> {
    nu: T,
    mu: Vec<T>,
    chol: Cholesky<T>,
    log_norm: T,
}

impl<T: Real> MultivariateT<T> {
    pub fn new(nu: T, mu: Vec<T>, sigma: &[Vec<T>]) -> Result<Self> {
        if !(nu.is_finite() && nu > T::zero()) {
            return Err(Error::InvalidParameter(format!("degrees of freedom must be > 0, got {nu}")));
        }
        if sigma.len() != mu.len() {
            return Err(Error::Dimension { expected: mu.len(), got: sigma.len() });
        }
        let chol = Cholesky::new(sigma)?;
        let k = mu.len() as f64;
        let v = nu.as_f64();
        let log_norm = libm::lgamma((v + k) / 2.0)
            - libm::lgamma(v / 2.0)
            - k / 2.0 * (v * std::f64::consts::PI).ln()
            - chol.log_det().as_f64() / 2.0;
        Ok(Self { nu, mu, chol, log_norm: T::lit(log_norm) })
    }

    /// Identity scale matrix.
    pub fn spherical(nu: T, mu: Vec<T>) -> Result<Self> {
        let k = mu.len();
        let sigma: Vec<Vec<T>> =
            (0..k).map(|i| (0..k).map(|j| if i == j { T::one() } else { T::zero() }).collect()).collect();
        Self::new(nu, mu, &sigma)
    }

    pub fn nu(&self) -> T {
        self.nu
    }

    pub fn mu(&self) -> &[T] {
        &self.mu
    }

    pub fn log_normalizer(&self) -> T {
        self.log_norm
    }

    /// Whitened offset `z = L⁻¹(t - μ)` split as `scale * unit` so that the
    /// quadratic form `|z|²` never overflows.
    fn whiten(&self, t: &[T]) -> (T, Vec<T>) {
        let diff: Vec<T> = t.iter().zip(&self.mu).map(|(&a, &b)| a - b).collect();
        let z = self.chol.solve_lower(&diff);
        let scale = z.iter().fold(T::zero(), |m, &x| m.max(x.abs()));
        if scale == T::zero() {
            return (scale, z);
        }
        (scale, z.iter().map(|&x| x / scale).collect())
    }
}

impl<T: Real> TargetDensity<T> for MultivariateT<T> {
    fn dim(&self) -> usize {
        self.mu.len()
    }

    fn log_density(&self, t: &[T]) -> T {
        let k = T::from_usize_lossy(self.mu.len());
        let (s, u) = self.whiten(t);
        let w = dot(&u, &u);
        // ln(1 + s² w / ν)
        let log_bracket = if s <= T::one() {
            (s * s * w / self.nu).ln_1p()
        } else {
            T::lit(2.0) * s.ln() + ((s * s).recip() + w / self.nu).ln()
        };
        self.log_norm - (self.nu + k) / T::lit(2.0) * log_bracket
    }

    /// `-(ν + k) Σ⁻¹(t - μ) / (ν + (t - μ)ᵀ Σ⁻¹ (t - μ))`.
    fn grad_log_density(&self, t: &[T]) -> Option<Vec<T>> {
        let k = T::from_usize_lossy(self.mu.len());
        let (s, u) = self.whiten(t);
        if s == T::zero() {
            return Some(vec![T::zero(); self.mu.len()]);
        }
        let w = dot(&u, &u);
        let y = self.chol.solve_upper(&u);
        let denom = self.nu / s + s * w;
        Some(y.iter().map(|&yi| -(self.nu + k) * yi / denom).collect())
    }
}
