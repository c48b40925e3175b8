//! Dense Cholesky factorization and triangular solves for small matrices.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Lower-triangular `L` with `L Lᵀ = A`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Cholesky<T> {
    n: usize,
    lower: Vec<T>,
}

impl<T: Real> Cholesky<T> {
    pub(crate) fn new(a: &[Vec<T>]) -> Result<Self> {
        let n = a.len();
        if n == 0 || a.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidParameter("scale matrix must be square and non-empty".into()));
        }
        let sym_tol = T::lit(1e-10);
        for i in 0..n {
            for j in 0..i {
                let scale = a[i][j].abs().max(a[j][i].abs()).max(T::one());
                if (a[i][j] - a[j][i]).abs() > sym_tol * scale {
                    return Err(Error::InvalidParameter("scale matrix must be symmetric".into()));
                }
            }
        }
        let mut lower = vec![T::zero(); n * n];
        for i in 0..n {
            for j in 0..=i {
                let mut sum = a[i][j];
                for p in 0..j {
                    sum -= lower[i * n + p] * lower[j * n + p];
                }
                if i == j {
                    if !(sum > T::zero()) {
                        return Err(Error::InvalidParameter("scale matrix must be positive definite".into()));
                    }
                    lower[i * n + i] = sum.sqrt();
                } else {
                    lower[i * n + j] = sum / lower[j * n + j];
                }
            }
        }
        Ok(Self { n, lower })
    }

    pub(crate) fn log_det(&self) -> T {
        (0..self.n).fold(T::zero(), |acc, i| acc + self.lower[i * self.n + i].ln()) * T::lit(2.0)
    }

    /// Solves `L z = b`.
    pub(crate) fn solve_lower(&self, b: &[T]) -> Vec<T> {
        let n = self.n;
        let mut z = vec![T::zero(); n];
        for i in 0..n {
            let mut sum = b[i];
            for p in 0..i {
                sum -= self.lower[i * n + p] * z[p];
            }
            z[i] = sum / self.lower[i * n + i];
        }
        z
    }

    /// Solves `Lᵀ x = z`.
    pub(crate) fn solve_upper(&self, z: &[T]) -> Vec<T> {
        let n = self.n;
        let mut x = vec![T::zero(); n];
        for i in (0..n).rev() {
            let mut sum = z[i];
            for p in i + 1..n {
                sum -= self.lower[p * n + i] * x[p];
            }
            x[i] = sum / self.lower[i * n + i];
        }
        x
    }
}
