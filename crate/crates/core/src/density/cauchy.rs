use crate::error::{Error, Result};
use crate::scalar::Real;

use super::{ln_one_plus_square, TargetDensity};

/// Posterior of a Cauchy location `μ` under a flat prior:
/// `log π(μ) = -Σ log(1 + (x_i - μ)²)`, unnormalized.
#[derive(Debug, Clone, PartialEq)]
pub struct CauchyLocationPosterior<T> {
    data: Vec<T>,
}

impl<T: Real> CauchyLocationPosterior<T> {
    pub fn new(data: Vec<T>) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::InvalidParameter("cauchy location data must be non-empty".into()));
        }
        if data.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter("cauchy location data must be finite".into()));
        }
        Ok(Self { data })
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn log_density_at(&self, mu: T) -> T {
        -self.data.iter().fold(T::zero(), |acc, &x| acc + ln_one_plus_square(x - mu))
    }

    /// `Σ 2(x_i - μ) / (1 + (x_i - μ)²)`.
    pub fn derivative_at(&self, mu: T) -> T {
        let two = T::lit(2.0);
        self.data.iter().fold(T::zero(), |acc, &x| {
            let d = x - mu;
            let term = if d.abs() <= T::one() { two * d / (T::one() + d * d) } else { two / (d + d.recip()) };
            acc + term
        })
    }
}

impl<T: Real> TargetDensity<T> for CauchyLocationPosterior<T> {
    fn dim(&self) -> usize {
        1
    }

    fn log_density(&self, x: &[T]) -> T {
        self.log_density_at(x[0])
    }

    fn grad_log_density(&self, x: &[T]) -> Option<Vec<T>> {
        Some(vec![self.derivative_at(x[0])])
    }
}
