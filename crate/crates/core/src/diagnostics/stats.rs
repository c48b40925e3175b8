//! Summary statistics for chain output.

use crate::error::{Error, Result};
use crate::sampler::ChainOutput;
use crate::scalar::Real;

/// Fraction of proposals accepted; zero when nothing was proposed.
pub fn acceptance_rate<T: Real>(output: &ChainOutput<T>) -> f64 {
    if output.n_proposed == 0 {
        return 0.0;
    }
    output.accept_count as f64 / output.n_proposed as f64
}

fn mean<T: Real>(xs: &[T]) -> T {
    xs.iter().fold(T::zero(), |a, &x| a + x) / T::from_usize_lossy(xs.len())
}

/// Batch-means Monte Carlo standard error.
///
/// The series is cut into `n_batches` contiguous batches of equal length
/// (the remainder at the end is dropped). Returns the mean of the retained
/// values and `sd(batch means) / sqrt(n_batches)`.
pub fn batch_means_mcse<T: Real>(series: &[T], n_batches: usize) -> Result<(T, T)> {
    if n_batches < 2 {
        return Err(Error::InvalidParameter("need at least two batches".into()));
    }
    if series.len() < 2 * n_batches {
        return Err(Error::TooShort { needed: 2 * n_batches, got: series.len() });
    }
    let len = series.len() / n_batches;
    let batch_means: Vec<T> = series[..len * n_batches].chunks_exact(len).map(mean).collect();
    let grand = mean(&batch_means);
    let ss = batch_means.iter().fold(T::zero(), |a, &m| a + (m - grand) * (m - grand));
    let b = T::from_usize_lossy(n_batches);
    let sd = (ss / (b - T::one())).sqrt();
    Ok((grand, sd / b.sqrt()))
}

/// Biased sample autocorrelations at lags `1..=max_lag`.
///
/// A series with zero variance has all autocorrelations reported as zero.
pub fn autocorrelation<T: Real>(series: &[T], max_lag: usize) -> Result<Vec<T>> {
    if max_lag == 0 {
        return Err(Error::InvalidParameter("max_lag must be positive".into()));
    }
    if 2 * max_lag >= series.len() {
        return Err(Error::TooShort { needed: 2 * max_lag + 1, got: series.len() });
    }
    let m = mean(series);
    let centered: Vec<T> = series.iter().map(|&x| x - m).collect();
    let c0 = centered.iter().fold(T::zero(), |a, &x| a + x * x);
    if c0 == T::zero() {
        return Ok(vec![T::zero(); max_lag]);
    }
    Ok((1..=max_lag)
        .map(|lag| {
            let c = centered.iter().zip(&centered[lag..]).fold(T::zero(), |a, (&x, &y)| a + x * y);
            c / c0
        })
        .collect())
}

/// Sample quantile with linear interpolation between order statistics
/// (the "type 7" rule).
pub fn quantile<T: Real>(series: &[T], q: f64) -> Result<T> {
    if series.is_empty() {
        return Err(Error::TooShort { needed: 1, got: 0 });
    }
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::InvalidParameter(format!("quantile level must lie in [0, 1], got {q}")));
    }
    let mut sorted = series.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    let h = q * (sorted.len() - 1) as f64;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    let w = T::lit(h - lo as f64);
    Ok(sorted[lo] + w * (sorted[hi] - sorted[lo]))
}

/// Kolmogorov–Smirnov distance between the empirical distribution of
/// `sample` and a continuous CDF.
pub fn ks_statistic<T: Real, F: Fn(T) -> T>(sample: &[T], cdf: F) -> T {
    let mut sorted = sample.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    let n = T::from_usize_lossy(sorted.len());
    sorted.iter().enumerate().fold(T::zero(), |d, (i, &x)| {
        let f = cdf(x);
        let above = T::from_usize_lossy(i + 1) / n - f;
        let below = f - T::from_usize_lossy(i) / n;
        d.max(above).max(below)
    })
}

/// Critical value of the one-sample KS statistic at level `alpha`, using
/// the asymptotic Kolmogorov quantile with Stephens' finite-sample scaling.
pub fn ks_critical_value(n: usize, alpha: f64) -> f64 {
    let c = (-(alpha / 2.0).ln() / 2.0).sqrt();
    let rn = (n as f64).sqrt();
    c / (rn + 0.12 + 0.11 / rn)
}
