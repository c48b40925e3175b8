//! The `sample` and `probe` commands.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use isomorph::density::{TargetDensity, Transformed};
use isomorph::diagnostics::{acceptance_rate, ray_tail_probe, ProbeSettings};
use isomorph::sampler::{run_chain, run_chains, ChainConfig};
use isomorph::Output;

use crate::config::{RunConfig, FORMAT_VERSION};
use crate::error::CliError;
use crate::output::{create, write_samples};
use crate::report::RunReport;
use crate::target::AnyTarget;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleOptions {
    pub chains: usize,
    pub emit_gamma: bool,
}

impl Default for SampleOptions {
    fn default() -> Self {
        Self { chains: 1, emit_gamma: false }
    }
}

/// Files written for one chain.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainFiles {
    pub stream: u64,
    pub samples: PathBuf,
    pub report: PathBuf,
    pub n_kept: usize,
    pub acceptance_rate: f64,
}

/// Relative paths in a config file are taken relative to that file.
fn resolve(base: &Path, path: &Path) -> PathBuf {
    if path.is_absolute() {
        path.to_path_buf()
    } else {
        base.join(path)
    }
}

/// `dir/name.ext` becomes `dir/name_chain{i}.ext`.
pub fn chain_path(path: &Path, chain: usize) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}_chain{chain}.{}", ext.to_string_lossy()),
        None => format!("{stem}_chain{chain}"),
    };
    path.with_file_name(name)
}

pub fn chain_config(config: &RunConfig) -> Result<ChainConfig<f64, AnyTarget>, CliError> {
    let target = config.build_target()?;
    let k = target.dim();
    let morph = config.build_morph(k)?;
    let s = config.sampler()?;
    let initial = s.initial_beta.clone().unwrap_or_else(|| morph.center().to_vec());
    let chain = ChainConfig::new(target, morph, s.proposal()?, initial, s.n_iterations)
        .burn_in(s.burn_in)
        .thin(s.thin)
        .seed(s.seed);
    chain.validate().map_err(|e| CliError::Config(format!("sampler: {e}")))?;
    Ok(chain)
}

fn runtime(stream: u64, seed: u64, e: isomorph::Error) -> CliError {
    CliError::Runtime(format!("chain {stream} (seed {seed}, stream {stream}) failed: {e}"))
}

/// Runs the configured chains and writes samples and reports.
pub fn sample(config_path: &Path, options: SampleOptions) -> Result<Vec<ChainFiles>, CliError> {
    let config = RunConfig::load(config_path)?;
    sample_config(&config, config_path.parent().unwrap_or(Path::new(".")), options)
}

pub fn sample_config(config: &RunConfig, base: &Path, options: SampleOptions) -> Result<Vec<ChainFiles>, CliError> {
    if options.chains == 0 {
        return Err(CliError::Config("--chains must be at least 1".into()));
    }
    let output = config.output()?.clone();
    let chain = chain_config(config)?;
    let k = chain.target.dim();
    let outputs: Vec<Result<Output, isomorph::Error>> =
        if options.chains == 1 { vec![run_chain(&chain)] } else { run_chains(&chain, options.chains) };

    let samples_base = resolve(base, &output.samples_path);
    let report_base = resolve(base, &output.report_path);
    let mut files = Vec::with_capacity(outputs.len());
    for (i, result) in outputs.into_iter().enumerate() {
        let out = result.map_err(|e| runtime(i as u64, chain.seed, e))?;
        let (samples, report) = if options.chains == 1 {
            (samples_base.clone(), report_base.clone())
        } else {
            (chain_path(&samples_base, i), chain_path(&report_base, i))
        };
        let io = |p: &Path, e: std::io::Error| CliError::Runtime(format!("{}: {e}", p.display()));
        write_samples(&samples, output.format, &out, k, options.emit_gamma).map_err(|e| io(&samples, e))?;
        let text = RunReport::new(config, &out).to_toml();
        std::io::Write::write_all(&mut create(&report).map_err(|e| io(&report, e))?, text.as_bytes())
            .map_err(|e| io(&report, e))?;
        files.push(ChainFiles {
            stream: out.stream,
            samples,
            report,
            n_kept: out.iterations.len(),
            acceptance_rate: acceptance_rate(&out),
        });
    }
    Ok(files)
}

fn settings(config: &RunConfig, k: usize, guard: f64) -> ProbeSettings<f64> {
    let probe = config.probe.clone().unwrap_or_default();
    let mut s = ProbeSettings::default_for(k, guard, probe.seed);
    if let Some(radii) = probe.radii {
        let inside: Vec<f64> = radii.into_iter().filter(|&r| r < guard).collect();
        if inside.len() >= 3 {
            s.radii = inside;
        }
    }
    s
}

/// Tail and curvature probes of the target and, when a morph is
/// configured, of the transformed density. Returns TOML text.
pub fn probe(config_path: &Path) -> Result<String, CliError> {
    probe_config(&RunConfig::load(config_path)?)
}

pub fn probe_config(config: &RunConfig) -> Result<String, CliError> {
    let target = config.build_target()?;
    let k = target.dim();
    let morph = config.build_morph(k)?;
    let mut text = format!("format_version = {FORMAT_VERSION}\n");

    let s = settings(config, k, f64::INFINITY);
    let beta = ray_tail_probe(&target, &s.directions, &s.radii)
        .map_err(|e| CliError::Runtime(format!("probe of beta density: {e}")))?;
    text.push_str(&beta.to_kv_block("beta"));

    if config.morph.is_some() {
        let guard = morph.guard_radius();
        let s = settings(config, k, guard);
        let transformed = Transformed::new(&target, morph).map_err(|e| CliError::Config(format!("morph: {e}")))?;
        let gamma = ray_tail_probe(&transformed, &s.directions, &s.radii)
            .map_err(|e| CliError::Runtime(format!("probe of gamma density: {e}")))?;
        let _ = writeln!(text, "gamma.guard_radius = {}", isomorph::diagnostics::format_number(guard));
        text.push_str(&gamma.to_kv_block("gamma"));
    }
    Ok(text)
}
