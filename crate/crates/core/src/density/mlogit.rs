use crate::error::{Error, Result};
use crate::scalar::Real;

use super::TargetDensity;

/// One observation of a multinomial logit model with conjugate prior counts.
#[derive(Debug, Clone, PartialEq)]
pub struct LogitObservation<T> {
    /// Response counts per category.
    pub counts: Vec<T>,
    /// Prior probability of each category (a point on the simplex).
    pub prior_prob: Vec<T>,
    /// Prior sample size.
    pub prior_size: T,
    /// Model matrix, one row per category, one column per coefficient.
    pub model_matrix: Vec<Vec<T>>,
}

#[derive(Debug, Clone, PartialEq)]
struct Prepared<T> {
    /// `y + ξν`.
    cell_mass: Vec<T>,
    /// `n + ν`.
    total: T,
    rows: Vec<Vec<T>>,
}

/// Unnormalized conjugate posterior of multinomial logit regression:
/// `Σ_l (y + ξν)·Mβ - (n + ν) log Σ_j exp(M_j β)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultinomialLogitPosterior<T> {
    dim: usize,
    observations: Vec<LogitObservation<T>>,
    prepared: Vec<Prepared<T>>,
}

impl<T: Real> MultinomialLogitPosterior<T> {
    pub fn new(observations: Vec<LogitObservation<T>>) -> Result<Self> {
        let first = observations
            .first()
            .ok_or_else(|| Error::InvalidParameter("at least one observation is required".into()))?;
        let dim = first.model_matrix.first().map_or(0, Vec::len);
        if dim == 0 {
            return Err(Error::InvalidParameter("model matrix must have at least one column".into()));
        }
        let mut prepared = Vec::with_capacity(observations.len());
        for (l, obs) in observations.iter().enumerate() {
            let cats = obs.counts.len();
            if cats < 2 {
                return Err(Error::InvalidParameter(format!("observation {l}: need at least two categories")));
            }
            if obs.prior_prob.len() != cats || obs.model_matrix.len() != cats {
                return Err(Error::InvalidParameter(format!(
                    "observation {l}: counts, prior probabilities and model-matrix rows must agree in length"
                )));
            }
            if obs.model_matrix.iter().any(|row| row.len() != dim) {
                return Err(Error::Dimension {
                    expected: dim,
                    got: obs.model_matrix.iter().map(Vec::len).find(|&n| n != dim).unwrap_or(dim),
                });
            }
            if obs.model_matrix.iter().flatten().any(|v| !v.is_finite()) {
                return Err(Error::InvalidParameter(format!("observation {l}: model matrix must be finite")));
            }
            if !(obs.prior_size.is_finite() && obs.prior_size >= T::zero()) {
                return Err(Error::InvalidParameter(format!("observation {l}: prior size must be >= 0")));
            }
            if obs.counts.iter().any(|&y| !(y.is_finite() && y >= T::zero())) {
                return Err(Error::InvalidParameter(format!("observation {l}: counts must be >= 0")));
            }
            if obs.prior_prob.iter().any(|&p| !(p >= T::zero())) {
                return Err(Error::InvalidParameter(format!("observation {l}: prior probabilities must be >= 0")));
            }
            let mass: T = obs.prior_prob.iter().fold(T::zero(), |a, &p| a + p);
            if (mass - T::one()).abs() > T::lit(1e-8) {
                return Err(Error::InvalidParameter(format!(
                    "observation {l}: prior probabilities must sum to 1, got {mass}"
                )));
            }
            let cell_mass: Vec<T> =
                obs.counts.iter().zip(&obs.prior_prob).map(|(&y, &p)| y + p * obs.prior_size).collect();
            if let Some(i) = cell_mass.iter().position(|&c| !(c > T::zero())) {
                return Err(Error::InvalidParameter(format!(
                    "observation {l}, category {i}: every cell needs positive data plus prior count"
                )));
            }
            let n = obs.counts.iter().fold(T::zero(), |a, &y| a + y);
            prepared.push(Prepared { cell_mass, total: n + obs.prior_size, rows: obs.model_matrix.clone() });
        }
        Ok(Self { dim, observations, prepared })
    }

    pub fn observations(&self) -> &[LogitObservation<T>] {
        &self.observations
    }
}

fn linear_predictor<T: Real>(rows: &[Vec<T>], beta: &[T]) -> Vec<T> {
    rows.iter().map(|row| row.iter().zip(beta).fold(T::zero(), |a, (&m, &b)| a + m * b)).collect()
}

/// `log Σ exp(η_j)` with the max shifted out.
pub(crate) fn log_sum_exp<T: Real>(eta: &[T]) -> T {
    let max = eta.iter().fold(T::neg_infinity(), |m, &x| m.max(x));
    if !max.is_finite() {
        return max;
    }
    max + eta.iter().fold(T::zero(), |a, &x| a + (x - max).exp()).ln()
}

fn softmax<T: Real>(eta: &[T]) -> Vec<T> {
    let max = eta.iter().fold(T::neg_infinity(), |m, &x| m.max(x));
    let w: Vec<T> = eta.iter().map(|&x| (x - max).exp()).collect();
    let total = w.iter().fold(T::zero(), |a, &x| a + x);
    w.into_iter().map(|x| x / total).collect()
}

impl<T: Real> TargetDensity<T> for MultinomialLogitPosterior<T> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn log_density(&self, beta: &[T]) -> T {
        self.prepared.iter().fold(T::zero(), |acc, obs| {
            let eta = linear_predictor(&obs.rows, beta);
            let fit = obs.cell_mass.iter().zip(&eta).fold(T::zero(), |a, (&c, &e)| a + c * e);
            acc + fit - obs.total * log_sum_exp(&eta)
        })
    }

    /// `Σ_l Mᵀ[(y + ξν) - (n + ν) softmax(Mβ)]`.
    fn grad_log_density(&self, beta: &[T]) -> Option<Vec<T>> {
        let mut grad = vec![T::zero(); self.dim];
        for obs in &self.prepared {
            let probs = softmax(&linear_predictor(&obs.rows, beta));
            for ((row, &c), &p) in obs.rows.iter().zip(&obs.cell_mass).zip(&probs) {
                let resid = c - obs.total * p;
                for (g, &m) in grad.iter_mut().zip(row) {
                    *g += m * resid;
                }
            }
        }
        Some(grad)
    }
}
