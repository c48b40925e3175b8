//! Isotropic transformations `h(γ) = λ + F(|γ|) γ/|γ|` and their Jacobians.
//!
//! A [`MorphSpec`] stores up to two radial stages explicitly: an outer
//! polynomial-type stage applied first and an optional exponential-type stage
//! applied to its output, followed by translation by `λ`. Values and
//! derivatives are composed stage by stage with the chain rule; log
//! determinants are summed per stage.

mod family;

pub use family::{RadialDerivs, RadialFamily, Shape};

use crate::error::{Error, Result};
use crate::scalar::{dot, norm, Real};

/// Radii below this use the limit formulas at the origin.
pub const NEAR_ZERO: f64 = 1e-8;

/// Translation plus up to two isotropic radial stages.
#[derive(Debug, Clone, PartialEq)]
pub struct MorphSpec<T> {
    center: Vec<T>,
    outer: RadialFamily<T>,
    inner: Option<RadialFamily<T>>,
    guard: T,
}

impl<T: Real> MorphSpec<T> {
    /// `h = t_λ ∘ h_inner ∘ h_outer`, or `t_λ ∘ h_outer` without an inner stage.
    pub fn new(center: Vec<T>, outer: RadialFamily<T>, inner: Option<RadialFamily<T>>) -> Result<Self> {
        if center.is_empty() {
            return Err(Error::InvalidParameter("dimension must be positive".into()));
        }
        if center.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidParameter("center must be finite".into()));
        }
        let guard = composed_guard(&outer, inner.as_ref());
        Ok(Self { center, outer, inner, guard })
    }

    /// The identity map on `R^k`.
    pub fn identity(k: usize) -> Result<Self> {
        Self::new(vec![T::zero(); k], RadialFamily::identity(), None)
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    pub fn center(&self) -> &[T] {
        &self.center
    }

    pub fn outer(&self) -> &RadialFamily<T> {
        &self.outer
    }

    pub fn inner(&self) -> Option<&RadialFamily<T>> {
        self.inner.as_ref()
    }

    pub fn is_identity(&self) -> bool {
        self.outer.is_identity()
            && self.inner.as_ref().is_none_or(|f| f.is_identity())
            && self.center.iter().all(|c| *c == T::zero())
    }

    /// Largest `|γ|` at which the composed radial map and its first two
    /// derivatives are finite.
    pub fn guard_radius(&self) -> T {
        self.guard
    }

    /// Branch radii of the composed radial map, in γ-space.
    pub fn branch_radii(&self) -> Vec<T> {
        let mut out = Vec::new();
        if let Some(r) = self.outer.branch_point() {
            out.push(r);
        }
        if let Some(x) = self.inner.as_ref().and_then(|f| f.branch_point()) {
            if let Ok(s) = self.outer.inverse(x) {
                out.push(s);
            }
        }
        out
    }

    fn check_dim(&self, v: &[T]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::Dimension { expected: self.dim(), got: v.len() });
        }
        Ok(())
    }

    fn check_radius(&self, r: T) -> Result<()> {
        if !(r <= self.guard) {
            return Err(Error::Range { radius: r.as_f64(), guard: self.guard.as_f64() });
        }
        Ok(())
    }

    /// Composed radial map `F = f_inner ∘ f_outer` with its derivatives.
    pub fn radial(&self, s: T) -> Result<RadialDerivs<T>> {
        self.check_radius(s)?;
        let a = self.outer.derivs(s)?;
        match &self.inner {
            None => Ok(a),
            Some(inner) => {
                let g = inner.derivs(a.value)?;
                Ok(RadialDerivs {
                    value: g.value,
                    first: g.first * a.first,
                    second: g.second * a.first * a.first + g.first * a.second,
                })
            }
        }
    }

    /// `F^{-1}`, inner stage inverted first.
    pub fn radial_inverse(&self, t: T) -> Result<T> {
        let x = match &self.inner {
            Some(inner) => inner.inverse(t)?,
            None => t,
        };
        self.outer.inverse(x)
    }

    /// `β = h(γ)`.
    pub fn apply(&self, gamma: &[T]) -> Result<Vec<T>> {
        self.check_dim(gamma)?;
        let r = norm(gamma);
        self.check_radius(r)?;
        if r == T::zero() {
            return Ok(self.center.clone());
        }
        let f = self.radial(r)?.value;
        Ok(gamma.iter().zip(&self.center).map(|(&g, &c)| c + (g / r) * f).collect())
    }

    /// `γ = h^{-1}(β)`.
    pub fn inverse(&self, beta: &[T]) -> Result<Vec<T>> {
        self.check_dim(beta)?;
        let shifted: Vec<T> = beta.iter().zip(&self.center).map(|(&b, &c)| b - c).collect();
        let rho = norm(&shifted);
        if rho == T::zero() {
            return Ok(vec![T::zero(); self.dim()]);
        }
        let s = self.radial_inverse(rho)?;
        Ok(shifted.iter().map(|&d| (d / rho) * s).collect())
    }

    /// `∇h(γ)` as a dense symmetric matrix (row-major rows).
    pub fn jacobian(&self, gamma: &[T]) -> Result<Vec<Vec<T>>> {
        self.check_dim(gamma)?;
        let k = self.dim();
        let r = norm(gamma);
        self.check_radius(r)?;
        let mut out = vec![vec![T::zero(); k]; k];
        if r < T::lit(NEAR_ZERO) {
            let slope = self.derivative_at_zero();
            for (i, row) in out.iter_mut().enumerate() {
                row[i] = slope;
            }
            return Ok(out);
        }
        let d = self.radial(r)?;
        let ratio = d.value / r;
        let radial = d.first - ratio;
        let u: Vec<T> = gamma.iter().map(|&g| g / r).collect();
        for i in 0..k {
            for j in i..k {
                let mut v = radial * u[i] * u[j];
                if i == j {
                    v += ratio;
                }
                out[i][j] = v;
                out[j][i] = v;
            }
        }
        Ok(out)
    }

    /// `F'(0)`.
    pub fn derivative_at_zero(&self) -> T {
        self.outer.derivative_at_zero() * self.inner.as_ref().map_or(T::one(), |f| f.derivative_at_zero())
    }

    /// `log det ∇h(γ)`.
    pub fn log_det_jacobian(&self, gamma: &[T]) -> Result<T> {
        self.check_dim(gamma)?;
        let r = norm(gamma);
        self.check_radius(r)?;
        let k = self.dim();
        let mut total = stage_log_det(&self.outer, r, k)?;
        if let Some(inner) = &self.inner {
            let x = self.outer.eval(r)?;
            total += stage_log_det(inner, x, k)?;
        }
        Ok(total)
    }

    /// `∇ log det ∇h(γ)`; radial, and zero at the origin.
    pub fn grad_log_det_jacobian(&self, gamma: &[T]) -> Result<Vec<T>> {
        self.check_dim(gamma)?;
        let r = norm(gamma);
        self.check_radius(r)?;
        if r < T::lit(NEAR_ZERO) {
            return Ok(vec![T::zero(); self.dim()]);
        }
        let slope = self.radial_log_det_slope(r)?;
        Ok(gamma.iter().map(|&g| (g / r) * slope).collect())
    }

    /// `d/dr log det ∇h` along a ray at radius `r > 0`:
    /// `F''/F' + (k-1)(F'/F - 1/r)`, summed over stages.
    pub fn radial_log_det_slope(&self, r: T) -> Result<T> {
        self.check_radius(r)?;
        let k = self.dim();
        let a = self.outer.derivs(r)?;
        let mut slope = stage_slope(&self.outer, &a, r, k)?;
        if let Some(inner) = &self.inner {
            let x = a.value;
            let g = inner.derivs(x)?;
            slope += a.first * stage_slope(inner, &g, x, k)?;
        }
        Ok(slope)
    }

    /// Pulls a β-space gradient back to γ-space: `∇h(γ)ᵀ g` (∇h is symmetric).
    pub fn pullback(&self, gamma: &[T], grad_beta: &[T]) -> Result<Vec<T>> {
        self.check_dim(gamma)?;
        self.check_dim(grad_beta)?;
        let r = norm(gamma);
        self.check_radius(r)?;
        if r < T::lit(NEAR_ZERO) {
            let slope = self.derivative_at_zero();
            return Ok(grad_beta.iter().map(|&g| slope * g).collect());
        }
        let d = self.radial(r)?;
        let ratio = d.value / r;
        let u: Vec<T> = gamma.iter().map(|&g| g / r).collect();
        let along = (d.first - ratio) * dot(&u, grad_beta);
        Ok(grad_beta.iter().zip(&u).map(|(&g, &ui)| ratio * g + along * ui).collect())
    }
}

fn stage_log_det<T: Real>(f: &RadialFamily<T>, s: T, k: usize) -> Result<T> {
    let km1 = T::from_usize_lossy(k - 1);
    if s < T::lit(NEAR_ZERO) {
        return Ok(T::from_usize_lossy(k) * f.derivative_at_zero().ln());
    }
    let d = f.derivs(s)?;
    Ok(d.first.ln() + km1 * (d.value / s).ln())
}

fn stage_slope<T: Real>(f: &RadialFamily<T>, d: &RadialDerivs<T>, s: T, k: usize) -> Result<T> {
    if s < T::lit(NEAR_ZERO) {
        return Ok(T::zero());
    }
    let km1 = T::from_usize_lossy(k - 1);
    let mut slope = d.second / d.first;
    if k > 1 {
        slope += km1 * (f.excess(s)? / s / d.value);
    }
    Ok(slope)
}

fn composed_guard<T: Real>(outer: &RadialFamily<T>, inner: Option<&RadialFamily<T>>) -> T {
    let Some(inner) = inner else {
        return outer.guard();
    };
    let mut hi = match outer.inverse(inner.guard()) {
        Ok(s) => s.min(outer.guard()),
        Err(_) => outer.guard(),
    };
    let finite = |s: T| -> bool {
        let Ok(a) = outer.derivs(s) else { return false };
        let Ok(g) = inner.derivs(a.value) else { return false };
        let first = g.first * a.first;
        let second = g.second * a.first * a.first + g.first * a.second;
        g.value.is_finite() && first.is_finite() && second.is_finite()
    };
    if finite(hi) {
        return hi;
    }
    // The chain-rule products can overflow before the inner stage does.
    let mut lo = T::zero();
    for _ in 0..200 {
        let mid = (lo + hi) / T::lit(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        if finite(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}
