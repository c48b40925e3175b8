//! The run configuration file.

use std::path::{Path, PathBuf};

use isomorph::density::LogitObservation;
use isomorph::morph::{MorphSpec, RadialFamily};
use isomorph::sampler::ProposalSpec;
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::target::AnyTarget;

pub const FORMAT_VERSION: u32 = 1;

fn format_version() -> u32 {
    FORMAT_VERSION
}

fn default_p() -> f64 {
    3.0
}

fn default_b() -> f64 {
    0.1
}

fn default_thin() -> usize {
    1
}

fn default_sd() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "format_version")]
    pub format_version: u32,
    pub target: TargetConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub morph: Option<MorphConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sampler: Option<SamplerConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probe: Option<ProbeConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum TargetConfig {
    Gaussian {
        mean: Vec<f64>,
        #[serde(default = "default_sd")]
        sd: f64,
    },
    Mvt {
        nu: f64,
        mu: Vec<f64>,
        /// Scale matrix; the identity when omitted.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        sigma: Option<Vec<Vec<f64>>>,
    },
    CauchyLocation {
        data: Vec<f64>,
    },
    Mlogit {
        observations: Vec<ObservationConfig>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObservationConfig {
    pub counts: Vec<f64>,
    pub prior_prob: Vec<f64>,
    pub prior_size: f64,
    pub model_matrix: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphConfig {
    /// Center; the origin when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<PolynomialConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponential: Option<ExponentialConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialConfig {
    #[serde(rename = "R", alias = "r")]
    pub r: f64,
    #[serde(default = "default_p")]
    pub p: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExponentialConfig {
    #[serde(default = "default_b")]
    pub b: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplerConfig {
    pub sigma: f64,
    pub n_iterations: usize,
    #[serde(default)]
    pub burn_in: usize,
    #[serde(default = "default_thin")]
    pub thin: usize,
    pub seed: u64,
    /// Starting point in β-space; the morph center when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_beta: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleFormat {
    #[default]
    Csv,
    Jsonl,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub samples_path: PathBuf,
    pub report_path: PathBuf,
    #[serde(default)]
    pub format: SampleFormat,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeConfig {
    /// Seed for the random probe directions.
    #[serde(default)]
    pub seed: u64,
    /// Replaces the default radius ladder.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radii: Option<Vec<f64>>,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let config: RunConfig = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        if config.format_version != FORMAT_VERSION {
            return Err(CliError::Config(format!(
                "format_version: unsupported version {} (expected {FORMAT_VERSION})",
                config.format_version
            )));
        }
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("configuration is always representable")
    }

    pub fn build_target(&self) -> Result<AnyTarget, CliError> {
        let invalid = |key: &str, e: isomorph::Error| CliError::Config(format!("target.{key}: {e}"));
        Ok(match &self.target {
            TargetConfig::Gaussian { mean, sd } => {
                AnyTarget::Gaussian(isomorph::Gaussian::new(mean.clone(), *sd).map_err(|e| invalid("mean", e))?)
            }
            TargetConfig::Mvt { nu, mu, sigma } => {
                let k = mu.len();
                let t = match sigma {
                    Some(s) => isomorph::MultivariateT::new(*nu, mu.clone(), s),
                    None if k > 0 => isomorph::MultivariateT::spherical(*nu, mu.clone()),
                    None => Err(isomorph::Error::InvalidParameter("mu must be non-empty".into())),
                };
                AnyTarget::Mvt(t.map_err(|e| invalid("mu", e))?)
            }
            TargetConfig::CauchyLocation { data } => {
                AnyTarget::CauchyLocation(isomorph::CauchyLocation::new(data.clone()).map_err(|e| invalid("data", e))?)
            }
            TargetConfig::Mlogit { observations } => {
                let obs = observations
                    .iter()
                    .map(|o| LogitObservation {
                        counts: o.counts.clone(),
                        prior_prob: o.prior_prob.clone(),
                        prior_size: o.prior_size,
                        model_matrix: o.model_matrix.clone(),
                    })
                    .collect();
                AnyTarget::Mlogit(isomorph::MultinomialLogit::new(obs).map_err(|e| invalid("observations", e))?)
            }
        })
    }

    /// The morph for a `k`-dimensional target; the identity when no
    /// `[morph]` table is given.
    pub fn build_morph(&self, k: usize) -> Result<MorphSpec<f64>, CliError> {
        let Some(m) = &self.morph else {
            return MorphSpec::identity(k).map_err(|e| CliError::Config(format!("morph: {e}")));
        };
        let center = m.lambda.clone().unwrap_or_else(|| vec![0.0; k]);
        if center.len() != k {
            return Err(CliError::Config(format!(
                "morph.lambda: expected {k} coordinates to match the target, got {}",
                center.len()
            )));
        }
        let outer = match &m.polynomial {
            Some(p) => {
                RadialFamily::polynomial(p.r, p.p).map_err(|e| CliError::Config(format!("morph.polynomial: {e}")))?
            }
            None => RadialFamily::identity(),
        };
        let inner = m
            .exponential
            .as_ref()
            .map(|e| RadialFamily::exponential_sub(e.b))
            .transpose()
            .map_err(|e| CliError::Config(format!("morph.exponential: {e}")))?;
        MorphSpec::new(center, outer, inner).map_err(|e| CliError::Config(format!("morph: {e}")))
    }

    pub fn sampler(&self) -> Result<&SamplerConfig, CliError> {
        self.sampler.as_ref().ok_or_else(|| CliError::Config("missing [sampler] table".into()))
    }

    pub fn output(&self) -> Result<&OutputConfig, CliError> {
        self.output.as_ref().ok_or_else(|| CliError::Config("missing [output] table".into()))
    }
}

impl SamplerConfig {
    pub fn proposal(&self) -> Result<ProposalSpec<f64>, CliError> {
        ProposalSpec::new(self.sigma).map_err(|e| CliError::Config(format!("sampler.sigma: {e}")))
    }
}
