//! The run report, written as TOML.

use isomorph::diagnostics::{acceptance_rate, autocorrelation, batch_means_mcse, quantile};
use isomorph::Output;
use serde::{Deserialize, Serialize};

use crate::config::{RunConfig, FORMAT_VERSION};

pub const MAX_LAG: usize = 50;
pub const MAX_BATCHES: usize = 100;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunReport {
    pub format_version: u32,
    pub seed: u64,
    pub stream: u64,
    pub n_iterations: usize,
    pub burn_in: usize,
    pub thin: usize,
    pub n_kept: usize,
    pub n_proposed: usize,
    pub accept_count: usize,
    pub acceptance_rate: f64,
    /// Number of batches behind each `mcse`; zero when too few draws.
    pub n_batches: usize,
    pub coordinate: Vec<CoordinateSummary>,
    pub config: RunConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoordinateSummary {
    pub name: String,
    pub mean: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mcse: Option<f64>,
    pub median: f64,
    pub q25: f64,
    pub q75: f64,
    /// Lags `1..=50`, fewer for short chains.
    pub autocorrelation: Vec<f64>,
}

/// `clamp(n / 20, 2, 100)` batches, or none below four draws.
pub fn batch_count(n: usize) -> usize {
    if n < 4 {
        0
    } else {
        (n / 20).clamp(2, MAX_BATCHES)
    }
}

pub fn summarize(name: String, series: &[f64], n_batches: usize) -> CoordinateSummary {
    let mean = series.iter().sum::<f64>() / series.len() as f64;
    let mcse = (n_batches > 0).then(|| batch_means_mcse(series, n_batches).ok().map(|(_, se)| se)).flatten();
    let q = |p| quantile(series, p).unwrap_or(f64::NAN);
    let max_lag = MAX_LAG.min(series.len().saturating_sub(1) / 2);
    let acf = if max_lag == 0 { Vec::new() } else { autocorrelation(series, max_lag).unwrap_or_default() };
    CoordinateSummary { name, mean, mcse, median: q(0.5), q25: q(0.25), q75: q(0.75), autocorrelation: acf }
}

impl RunReport {
    pub fn new(config: &RunConfig, out: &Output) -> Self {
        let sampler = config.sampler.as_ref();
        let n_kept = out.iterations.len();
        let n_batches = batch_count(n_kept);
        let coordinate =
            (0..out.dim()).map(|j| summarize(format!("beta_{}", j + 1), &out.beta_column(j), n_batches)).collect();
        RunReport {
            format_version: FORMAT_VERSION,
            seed: out.seed,
            stream: out.stream,
            n_iterations: out.n_proposed,
            burn_in: sampler.map_or(0, |s| s.burn_in),
            thin: sampler.map_or(1, |s| s.thin),
            n_kept,
            n_proposed: out.n_proposed,
            accept_count: out.accept_count,
            acceptance_rate: acceptance_rate(out),
            n_batches,
            coordinate,
            config: config.clone(),
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("report is always representable")
    }

    pub fn parse(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }
}
