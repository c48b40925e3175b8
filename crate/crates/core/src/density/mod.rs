//! Target densities and the density induced on γ-space by a [`MorphSpec`].

mod cauchy;
mod gaussian;
mod mlogit;
mod mvt;

pub use cauchy::CauchyLocationPosterior;
pub use gaussian::Gaussian;
pub use mlogit::{LogitObservation, MultinomialLogitPosterior};
pub use mvt::MultivariateT;

use crate::error::{Error, Result};
use crate::morph::MorphSpec;
use crate::scalar::Real;

/// An unnormalized log density on `R^k`, optionally with its gradient.
///
/// `log_density` may return `-inf` for points of zero density. The sampler
/// never calls the gradient; diagnostics fall back to finite differences
/// when it is absent. Implementations are called from several threads only
/// when they are `Sync`.
pub trait TargetDensity<T: Real> {
    fn dim(&self) -> usize;

    fn log_density(&self, x: &[T]) -> T;

    fn grad_log_density(&self, _x: &[T]) -> Option<Vec<T>> {
        None
    }
}

impl<T: Real, D: TargetDensity<T> + ?Sized> TargetDensity<T> for &D {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn log_density(&self, x: &[T]) -> T {
        (**self).log_density(x)
    }
    fn grad_log_density(&self, x: &[T]) -> Option<Vec<T>> {
        (**self).grad_log_density(x)
    }
}

impl<T: Real, D: TargetDensity<T> + ?Sized> TargetDensity<T> for Box<D> {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn log_density(&self, x: &[T]) -> T {
        (**self).log_density(x)
    }
    fn grad_log_density(&self, x: &[T]) -> Option<Vec<T>> {
        (**self).grad_log_density(x)
    }
}

/// A target built from closures.
pub struct FnTarget<F, G = fn(&[f64]) -> Vec<f64>> {
    dim: usize,
    log_density: F,
    gradient: Option<G>,
}

impl<F> FnTarget<F> {
    pub fn new(dim: usize, log_density: F) -> Self {
        Self { dim, log_density, gradient: None }
    }
}

impl<F, G> FnTarget<F, G> {
    pub fn with_gradient<H>(self, gradient: H) -> FnTarget<F, H> {
        FnTarget { dim: self.dim, log_density: self.log_density, gradient: Some(gradient) }
    }
}

impl<T, F, G> TargetDensity<T> for FnTarget<F, G>
where
    T: Real,
    F: Fn(&[T]) -> T,
    G: Fn(&[T]) -> Vec<T>,
{
    fn dim(&self) -> usize {
        self.dim
    }
    fn log_density(&self, x: &[T]) -> T {
        (self.log_density)(x)
    }
    fn grad_log_density(&self, x: &[T]) -> Option<Vec<T>> {
        self.gradient.as_ref().map(|g| g(x))
    }
}

/// `log π_γ(γ) = log π_β(h(γ)) + log det ∇h(γ)`.
pub fn transformed_log_density<T, D>(target: &D, morph: &MorphSpec<T>, gamma: &[T]) -> Result<T>
where
    T: Real,
    D: TargetDensity<T> + ?Sized,
{
    check_dims(target, morph)?;
    let beta = morph.apply(gamma)?;
    let base = target.log_density(&beta);
    if base == T::neg_infinity() {
        return Ok(base);
    }
    Ok(base + morph.log_det_jacobian(gamma)?)
}

/// `∇ log π_γ(γ) = ∇h(γ)ᵀ ∇log π_β(h(γ)) + ∇ log det ∇h(γ)`.
pub fn transformed_grad_log_density<T, D>(target: &D, morph: &MorphSpec<T>, gamma: &[T]) -> Result<Vec<T>>
where
    T: Real,
    D: TargetDensity<T> + ?Sized,
{
    check_dims(target, morph)?;
    let beta = morph.apply(gamma)?;
    let grad_beta = target.grad_log_density(&beta).ok_or(Error::MissingGradient)?;
    let mut out = morph.pullback(gamma, &grad_beta)?;
    for (o, g) in out.iter_mut().zip(morph.grad_log_det_jacobian(gamma)?) {
        *o += g;
    }
    Ok(out)
}

fn check_dims<T: Real, D: TargetDensity<T> + ?Sized>(target: &D, morph: &MorphSpec<T>) -> Result<()> {
    if target.dim() != morph.dim() {
        return Err(Error::Dimension { expected: target.dim(), got: morph.dim() });
    }
    Ok(())
}

/// The induced density on γ-space as a target in its own right.
///
/// Points beyond the morph's guard radius have density zero.
#[derive(Debug, Clone)]
pub struct Transformed<D, T> {
    target: D,
    morph: MorphSpec<T>,
}

impl<T: Real, D: TargetDensity<T>> Transformed<D, T> {
    pub fn new(target: D, morph: MorphSpec<T>) -> Result<Self> {
        check_dims(&target, &morph)?;
        Ok(Self { target, morph })
    }

    pub fn morph(&self) -> &MorphSpec<T> {
        &self.morph
    }

    pub fn target(&self) -> &D {
        &self.target
    }
}

impl<T: Real, D: TargetDensity<T>> TargetDensity<T> for Transformed<D, T> {
    fn dim(&self) -> usize {
        self.morph.dim()
    }

    fn log_density(&self, gamma: &[T]) -> T {
        match transformed_log_density(&self.target, &self.morph, gamma) {
            Ok(v) => v,
            Err(Error::Range { .. }) => T::neg_infinity(),
            Err(_) => T::nan(),
        }
    }

    fn grad_log_density(&self, gamma: &[T]) -> Option<Vec<T>> {
        transformed_grad_log_density(&self.target, &self.morph, gamma).ok()
    }
}

/// `ln(1 + x²)` without overflow for large `|x|`.
pub(crate) fn ln_one_plus_square<T: Real>(x: T) -> T {
    let a = x.abs();
    if a <= T::one() {
        (a * a).ln_1p()
    } else {
        T::lit(2.0) * a.ln() + (a * a).recip().ln_1p()
    }
}
