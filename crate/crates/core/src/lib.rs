//! Random-walk Metropolis on isotropically transformed targets.
//!
//! Heavy- or exponentially-tailed targets on `R^k` are sampled through a
//! change of variable `β = h(γ)`, where `h` is a translation composed with
//! radial maps that leave directions unchanged. The induced density of `γ`
//! has lighter tails, the sampler runs in γ-space, and every kept draw is
//! mapped back through `h`.
//!
//! The numerical core is generic over [`Real`] (`f32` or `f64`); the aliases
//! at the crate root fix the scalar to `f64`.

// `!(x > 0)` is used deliberately so NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod density;
pub mod diagnostics;
pub mod error;
mod linalg;
pub mod morph;
mod root;
pub mod sampler;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Morph = morph::MorphSpec<f64>;
pub type Family = morph::RadialFamily<f64>;
pub type Proposal = sampler::ProposalSpec<f64>;
pub type Output = sampler::ChainOutput<f64>;
pub type Report = diagnostics::TailReport<f64>;
pub type MultivariateT = density::MultivariateT<f64>;
pub type MultinomialLogit = density::MultinomialLogitPosterior<f64>;
pub type LogitObservation = density::LogitObservation<f64>;
pub type CauchyLocation = density::CauchyLocationPosterior<f64>;
pub type Gaussian = density::Gaussian<f64>;
