//! Random-walk Metropolis in γ-space with back-transformation of the draws.
//!
//! Generator contract: each chain owns a [`ChainRng`] (ChaCha8) seeded from a
//! `u64` seed and a stream number. Every iteration draws, in this order, `k`
//! standard normals for the proposal increment and then one uniform on
//! `[0, 1)` for the acceptance decision, whether or not the candidate is
//! accepted. Chain `i` of a multi-chain run uses stream `i`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::density::{transformed_log_density, TargetDensity};
use crate::error::{Error, Result};
use crate::morph::MorphSpec;
use crate::scalar::Real;

pub type ChainRng = ChaCha8Rng;

/// Generator for stream `stream` of `seed`.
pub fn chain_rng(seed: u64, stream: u64) -> ChainRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Spherical Gaussian increments with standard deviation `scale`, optionally
/// multiplied per coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct ProposalSpec<T> {
    scale: T,
    per_coordinate: Option<Vec<T>>,
}

impl<T: Real> ProposalSpec<T> {
    pub fn new(scale: T) -> Result<Self> {
        if !(scale.is_finite() && scale > T::zero()) {
            return Err(Error::InvalidParameter(format!("proposal scale must be > 0, got {scale}")));
        }
        Ok(Self { scale, per_coordinate: None })
    }

    pub fn with_per_coordinate(mut self, weights: Vec<T>) -> Result<Self> {
        if weights.iter().any(|w| !(w.is_finite() && *w > T::zero())) {
            return Err(Error::InvalidParameter("per-coordinate proposal scales must be > 0".into()));
        }
        self.per_coordinate = Some(weights);
        Ok(self)
    }

    pub fn scale(&self) -> T {
        self.scale
    }

    pub fn per_coordinate(&self) -> Option<&[T]> {
        self.per_coordinate.as_deref()
    }

    fn step_sd(&self, i: usize) -> T {
        self.per_coordinate.as_ref().map_or(self.scale, |w| self.scale * w[i])
    }
}

/// `current + z` with `z_i ~ N(0, sd_i²)`.
pub fn propose<T: Real>(rng: &mut ChainRng, proposal: &ProposalSpec<T>, current: &[T]) -> Vec<T> {
    current.iter().enumerate().map(|(i, &x)| x + proposal.step_sd(i) * T::standard_normal(rng)).collect()
}

/// `min(1, exp(candidate - current))`, formed in log space.
pub fn accept_probability<T: Real>(log_current: T, log_candidate: T) -> Result<T> {
    if log_current == T::neg_infinity() || log_current.is_nan() {
        return Err(Error::ChainInvariant);
    }
    if log_candidate >= log_current {
        return Ok(T::one());
    }
    Ok((log_candidate - log_current).exp())
}

/// A point in γ-space together with its cached log density.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainState<T> {
    pub gamma: Vec<T>,
    pub log_density: T,
}

/// Target, morph and proposal shared by every step of a chain.
#[derive(Debug, Clone)]
pub struct Kernel<'a, T, D: ?Sized> {
    pub target: &'a D,
    pub morph: &'a MorphSpec<T>,
    pub proposal: &'a ProposalSpec<T>,
}

impl<T: Real, D: TargetDensity<T> + ?Sized> Kernel<'_, T, D> {
    /// `log π_γ`, with candidates beyond the morph guard given density zero.
    pub fn log_density(&self, gamma: &[T]) -> Result<T> {
        let value = match transformed_log_density(self.target, self.morph, gamma) {
            Err(Error::Range { .. }) => T::neg_infinity(),
            other => other?,
        };
        if value.is_nan() {
            return Err(Error::InvalidParameter("target log density returned NaN".into()));
        }
        Ok(value)
    }
}

/// One Metropolis iteration. A rejected step returns the state unchanged,
/// including its cached log density; the target is evaluated once per call.
pub fn metropolis_step<T, D>(
    rng: &mut ChainRng,
    state: ChainState<T>,
    kernel: &Kernel<'_, T, D>,
) -> Result<(ChainState<T>, bool)>
where
    T: Real,
    D: TargetDensity<T> + ?Sized,
{
    let candidate = propose(rng, kernel.proposal, &state.gamma);
    let u = T::unit_uniform(rng);
    let log_candidate = kernel.log_density(&candidate)?;
    let a = accept_probability(state.log_density, log_candidate)?;
    if u < a {
        Ok((ChainState { gamma: candidate, log_density: log_candidate }, true))
    } else {
        Ok((state, false))
    }
}

/// Everything needed to run one chain.
#[derive(Debug, Clone)]
pub struct ChainConfig<T, D> {
    pub target: D,
    pub morph: MorphSpec<T>,
    pub proposal: ProposalSpec<T>,
    pub initial_beta: Vec<T>,
    pub n_iterations: usize,
    pub burn_in: usize,
    pub thin: usize,
    pub seed: u64,
}

impl<T: Real, D: TargetDensity<T>> ChainConfig<T, D> {
    /// Defaults: no burn-in, no thinning, seed 0.
    pub fn new(
        target: D,
        morph: MorphSpec<T>,
        proposal: ProposalSpec<T>,
        initial_beta: Vec<T>,
        n_iterations: usize,
    ) -> Self {
        Self { target, morph, proposal, initial_beta, n_iterations, burn_in: 0, thin: 1, seed: 0 }
    }

    pub fn burn_in(mut self, burn_in: usize) -> Self {
        self.burn_in = burn_in;
        self
    }

    pub fn thin(mut self, thin: usize) -> Self {
        self.thin = thin;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.target.dim();
        if self.morph.dim() != k {
            return Err(Error::Dimension { expected: k, got: self.morph.dim() });
        }
        if self.initial_beta.len() != k {
            return Err(Error::Dimension { expected: k, got: self.initial_beta.len() });
        }
        if let Some(w) = self.proposal.per_coordinate() {
            if w.len() != k {
                return Err(Error::Dimension { expected: k, got: w.len() });
            }
        }
        if self.n_iterations == 0 {
            return Err(Error::InvalidParameter("n_iterations must be positive".into()));
        }
        if self.burn_in >= self.n_iterations {
            return Err(Error::InvalidParameter(format!(
                "burn_in ({}) must be smaller than n_iterations ({})",
                self.burn_in, self.n_iterations
            )));
        }
        if self.thin == 0 {
            return Err(Error::InvalidParameter("thin must be positive".into()));
        }
        Ok(())
    }
}

/// Kept draws in both spaces plus acceptance bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainOutput<T> {
    /// Rows are kept iterations, `beta_draws[i] = h(gamma_draws[i])`.
    pub beta_draws: Vec<Vec<T>>,
    pub gamma_draws: Vec<Vec<T>>,
    /// 1-based iteration number of each kept row.
    pub iterations: Vec<usize>,
    /// `log π_γ` of each kept row.
    pub log_density_trace: Vec<T>,
    pub accept_count: usize,
    pub n_proposed: usize,
    pub seed: u64,
    pub stream: u64,
}

impl<T: Real> ChainOutput<T> {
    pub fn dim(&self) -> usize {
        self.beta_draws.first().map_or(0, Vec::len)
    }

    /// Column `j` of the β draws.
    pub fn beta_column(&self, j: usize) -> Vec<T> {
        self.beta_draws.iter().map(|row| row[j]).collect()
    }

    pub fn gamma_column(&self, j: usize) -> Vec<T> {
        self.gamma_draws.iter().map(|row| row[j]).collect()
    }
}

/// Runs one chain on stream 0 of the configured seed.
pub fn run_chain<T, D>(config: &ChainConfig<T, D>) -> Result<ChainOutput<T>>
where
    T: Real,
    D: TargetDensity<T>,
{
    run_chain_on_stream(config, 0)
}

/// Runs one chain on the given generator stream.
pub fn run_chain_on_stream<T, D>(config: &ChainConfig<T, D>, stream: u64) -> Result<ChainOutput<T>>
where
    T: Real,
    D: TargetDensity<T>,
{
    config.validate()?;
    let kernel = Kernel { target: &config.target, morph: &config.morph, proposal: &config.proposal };
    let gamma = config.morph.inverse(&config.initial_beta)?;
    let log_density = kernel.log_density(&gamma)?;
    if log_density == T::neg_infinity() {
        return Err(Error::ZeroDensityStart);
    }
    let mut state = ChainState { gamma, log_density };
    let mut rng = chain_rng(config.seed, stream);

    let kept = (config.n_iterations - config.burn_in) / config.thin;
    let mut out = ChainOutput {
        beta_draws: Vec::with_capacity(kept),
        gamma_draws: Vec::with_capacity(kept),
        iterations: Vec::with_capacity(kept),
        log_density_trace: Vec::with_capacity(kept),
        accept_count: 0,
        n_proposed: 0,
        seed: config.seed,
        stream,
    };
    for iteration in 1..=config.n_iterations {
        let (next, accepted) = metropolis_step(&mut rng, state, &kernel)
            .map_err(|e| Error::AtIteration { iteration, source: Box::new(e) })?;
        state = next;
        out.n_proposed += 1;
        out.accept_count += usize::from(accepted);
        if iteration > config.burn_in && (iteration - config.burn_in).is_multiple_of(config.thin) {
            let beta =
                config.morph.apply(&state.gamma).map_err(|e| Error::AtIteration { iteration, source: Box::new(e) })?;
            out.beta_draws.push(beta);
            out.gamma_draws.push(state.gamma.clone());
            out.iterations.push(iteration);
            out.log_density_trace.push(state.log_density);
        }
    }
    Ok(out)
}

/// Runs `n_chains` chains concurrently; chain `i` uses stream `i`.
pub fn run_chains<T, D>(config: &ChainConfig<T, D>, n_chains: usize) -> Vec<Result<ChainOutput<T>>>
where
    T: Real,
    D: TargetDensity<T> + Sync,
{
    std::thread::scope(|scope| {
        let handles: Vec<_> =
            (0..n_chains).map(|i| scope.spawn(move || run_chain_on_stream(config, i as u64))).collect();
        handles.into_iter().map(|h| h.join().expect("chain thread panicked")).collect()
    })
}
