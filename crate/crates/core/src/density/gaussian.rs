use crate::error::{Error, Result};
use crate::scalar::Real;

use super::TargetDensity;

/// Isotropic normal density `N(mean, sd² I)`, normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct Gaussian<T> {
    mean: Vec<T>,
    sd: T,
    log_norm: T,
}

impl<T: Real> Gaussian<T> {
    pub fn new(mean: Vec<T>, sd: T) -> Result<Self> {
        if mean.is_empty() {
            return Err(Error::InvalidParameter("gaussian mean must be non-empty".into()));
        }
        if !(sd.is_finite() && sd > T::zero()) {
            return Err(Error::InvalidParameter(format!("gaussian sd must be > 0, got {sd}")));
        }
        let k = T::from_usize_lossy(mean.len());
        let log_norm = -k * (sd.ln() + (T::TAU()).ln() / T::lit(2.0));
        Ok(Self { mean, sd, log_norm })
    }

    pub fn standard(k: usize) -> Result<Self> {
        Self::new(vec![T::zero(); k], T::one())
    }

    pub fn mean(&self) -> &[T] {
        &self.mean
    }

    pub fn sd(&self) -> T {
        self.sd
    }
}

impl<T: Real> TargetDensity<T> for Gaussian<T> {
    fn dim(&self) -> usize {
        self.mean.len()
    }

    fn log_density(&self, x: &[T]) -> T {
        let q = x.iter().zip(&self.mean).fold(T::zero(), |acc, (&xi, &m)| {
            let z = (xi - m) / self.sd;
            acc + z * z
        });
        self.log_norm - q / T::lit(2.0)
    }

    fn grad_log_density(&self, x: &[T]) -> Option<Vec<T>> {
        let var = self.sd * self.sd;
        Some(x.iter().zip(&self.mean).map(|(&xi, &m)| -(xi - m) / var).collect())
    }
}
