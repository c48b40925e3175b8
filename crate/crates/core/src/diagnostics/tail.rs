//! Finite-radius probes of tail lightness and of the curvature condition.
//!
//! Both probes evaluate `∇log π` along rays `x = r u` and look at
//!
//! * the radial slope `u · ∇log π(r u)`, which tends to `-inf`, a negative
//!   constant or zero for super-exponentially, exponentially and
//!   sub-exponentially light tails;
//! * the cosine `u · ∇log π / |∇log π|`, which must stay below a negative
//!   constant for the curvature condition.
//!
//! These are limits at infinity, so any finite probe can be fooled (for
//! example by `e^{-|x|}(1 + cos x)`). Reports carry [`CAVEAT`] for that reason.

use std::fmt::Write as _;

use crate::density::TargetDensity;
use crate::error::{Error, Result};
use crate::sampler::chain_rng;
use crate::scalar::{norm, Real};

/// A radial slope at or below `-T_SUPER` at the largest radius counts as
/// super-exponential.
pub const T_SUPER: f64 = 10.0;
/// Slopes in `[-C_EXP, -EPS_EXP]` count as exponential.
pub const EPS_EXP: f64 = 0.05;
pub const C_EXP: f64 = 100.0;
/// Cosines at or below `-EPS_CURV` satisfy the curvature condition.
pub const EPS_CURV: f64 = 0.05;
/// Relative spread allowed across the last three radii for a quantity to
/// count as stabilized.
pub const STABLE_REL: f64 = 0.1;
/// Default radius ladder.
pub const DEFAULT_RADII: [f64; 5] = [10.0, 30.0, 100.0, 300.0, 1000.0];
/// Random directions added to the `2k` axis directions.
pub const DEFAULT_RANDOM_DIRECTIONS: usize = 20;
/// Relative finite-difference step when no analytic gradient exists.
pub const FD_STEP: f64 = 1e-4;

pub const CAVEAT: &str = "tail and curvature conditions are limits at infinity; \
finite-radius probes can be fooled by oscillating or late-onset tails";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailClass {
    SuperExponential,
    Exponential,
    SubExponential,
    Inconclusive,
}

impl TailClass {
    pub fn as_str(self) -> &'static str {
        match self {
            TailClass::SuperExponential => "SuperExponential",
            TailClass::Exponential => "Exponential",
            TailClass::SubExponential => "SubExponential",
            TailClass::Inconclusive => "Inconclusive",
        }
    }
}

impl std::fmt::Display for TailClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Where to probe.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeSettings<T> {
    pub radii: Vec<T>,
    pub directions: Vec<Vec<T>>,
}

impl<T: Real> ProbeSettings<T> {
    /// The default ladder intersected with `guard`, the `2k` signed axes, and
    /// [`DEFAULT_RANDOM_DIRECTIONS`] seeded random directions.
    ///
    /// When fewer than three ladder radii fit under the guard, five
    /// geometrically spaced radii between `0.5 guard` and `0.9 guard` are used.
    pub fn default_for(k: usize, guard: T, seed: u64) -> Self {
        let mut radii: Vec<T> = DEFAULT_RADII.iter().map(|&r| T::lit(r)).filter(|&r| r < guard).collect();
        if radii.len() < 3 {
            let lo = guard * T::lit(0.5);
            let ratio = T::lit(0.9 / 0.5).powf(T::lit(0.25));
            radii = (0..5).map(|i| lo * ratio.powi(i)).collect();
        }
        let mut directions = Vec::with_capacity(2 * k + DEFAULT_RANDOM_DIRECTIONS);
        for i in 0..k {
            for sign in [T::one(), -T::one()] {
                let mut u = vec![T::zero(); k];
                u[i] = sign;
                directions.push(u);
            }
        }
        let mut rng = chain_rng(seed, 0);
        for _ in 0..DEFAULT_RANDOM_DIRECTIONS {
            let v: Vec<T> = (0..k).map(|_| T::standard_normal(&mut rng)).collect();
            let n = norm(&v);
            directions.push(v.into_iter().map(|x| x / n).collect());
        }
        Self { radii, directions }
    }
}

/// Outcome of [`ray_tail_probe`].
#[derive(Debug, Clone, PartialEq)]
pub struct TailReport<T> {
    pub radii: Vec<T>,
    pub directions: Vec<Vec<T>>,
    /// `inner_products[i][j]` is the radial slope at `radii[i] * directions[j]`.
    pub inner_products: Vec<Vec<T>>,
    pub classification: TailClass,
    /// `min_j -r u_j · ∇log π(r u_j)` at the largest radius, for
    /// sub-exponential tails.
    pub alpha_estimate: Option<T>,
    /// Cosines between each ray and the gradient; `None` where the gradient
    /// vanished.
    pub curvature_values: Vec<Vec<Option<T>>>,
    /// `None` when every probe at the two largest radii was skipped.
    pub curvature_satisfied: Option<bool>,
}

/// Outcome of [`curvature_probe`].
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureProbe<T> {
    pub values: Vec<Vec<Option<T>>>,
    pub satisfied: Option<bool>,
    /// `(radius index, direction index)` of probes with zero gradient.
    pub skipped: Vec<(usize, usize)>,
}

/// Central-difference gradient with step `FD_STEP * max(1, |x|)`.
pub fn finite_difference_gradient<T, D>(target: &D, x: &[T]) -> Vec<T>
where
    T: Real,
    D: TargetDensity<T> + ?Sized,
{
    let h = T::lit(FD_STEP) * norm(x).max(T::one());
    let mut work = x.to_vec();
    (0..x.len())
        .map(|i| {
            let xi = work[i];
            work[i] = xi + h;
            let up = target.log_density(&work);
            work[i] = xi - h;
            let down = target.log_density(&work);
            work[i] = xi;
            (up - down) / (h + h)
        })
        .collect()
}

fn validate<T: Real>(directions: &[Vec<T>], radii: &[T], k: usize) -> Result<()> {
    if radii.is_empty() || directions.is_empty() {
        return Err(Error::InvalidParameter("need at least one radius and one direction".into()));
    }
    if radii.windows(2).any(|w| !(w[0] < w[1])) || !(radii[0] > T::zero()) {
        return Err(Error::InvalidParameter("radii must be positive and strictly increasing".into()));
    }
    for d in directions {
        if d.len() != k {
            return Err(Error::Dimension { expected: k, got: d.len() });
        }
        if (norm(d) - T::one()).abs() > T::lit(1e-6) {
            return Err(Error::InvalidParameter("directions must be unit vectors".into()));
        }
    }
    Ok(())
}

/// Gradients at every probe point, `[radius][direction]`.
fn probe_gradients<T, D>(target: &D, directions: &[Vec<T>], radii: &[T]) -> Result<Vec<Vec<Vec<T>>>>
where
    T: Real,
    D: TargetDensity<T> + ?Sized,
{
    validate(directions, radii, target.dim())?;
    radii
        .iter()
        .map(|&r| {
            directions
                .iter()
                .enumerate()
                .map(|(j, u)| {
                    let x: Vec<T> = u.iter().map(|&ui| r * ui).collect();
                    let grad = match target.grad_log_density(&x) {
                        Some(g) => g,
                        None => {
                            if !target.log_density(&x).is_finite() {
                                return Err(Error::Probe {
                                    direction: j,
                                    reason: format!("log density not finite at radius {r}"),
                                });
                            }
                            finite_difference_gradient(target, &x)
                        }
                    };
                    if grad.iter().any(|g| !g.is_finite()) {
                        return Err(Error::Probe {
                            direction: j,
                            reason: format!("gradient not finite at radius {r}"),
                        });
                    }
                    Ok(grad)
                })
                .collect()
        })
        .collect()
}

fn cosines<T: Real>(grads: &[Vec<Vec<T>>], directions: &[Vec<T>]) -> CurvatureProbe<T> {
    let mut skipped = Vec::new();
    let values: Vec<Vec<Option<T>>> = grads
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .zip(directions)
                .enumerate()
                .map(|(j, (g, u))| {
                    let n = norm(g);
                    if n == T::zero() {
                        skipped.push((i, j));
                        return None;
                    }
                    Some(u.iter().zip(g).fold(T::zero(), |a, (&ui, &gi)| a + ui * (gi / n)))
                })
                .collect()
        })
        .collect();
    let tail_start = values.len().saturating_sub(2);
    let tail: Vec<T> = values[tail_start..].iter().flatten().flatten().copied().collect();
    let satisfied = if tail.is_empty() { None } else { Some(tail.iter().all(|&c| c <= -T::lit(EPS_CURV))) };
    CurvatureProbe { values, satisfied, skipped }
}

/// Curvature condition probe: cosines between rays and gradients.
pub fn curvature_probe<T, D>(target: &D, directions: &[Vec<T>], radii: &[T]) -> Result<CurvatureProbe<T>>
where
    T: Real,
    D: TargetDensity<T> + ?Sized,
{
    let grads = probe_gradients(target, directions, radii)?;
    Ok(cosines(&grads, directions))
}

/// Tail-lightness probe along rays, with curvature values filled in.
///
/// With `V_i` the largest radial slope over directions at radius `i`, the
/// last three radii decide:
///
/// * super-exponential when `V` is strictly decreasing and ends at or below
///   `-T_SUPER`;
/// * exponential when all three lie in `[-C_EXP, -EPS_EXP]` and agree within
///   `STABLE_REL`;
/// * sub-exponential when all three are negative, the last is above
///   `-EPS_EXP`, and `min_j -r · slope` agrees within `STABLE_REL`; that
///   minimum at the largest radius is the alpha estimate;
/// * inconclusive otherwise, or with fewer than three radii.
pub fn ray_tail_probe<T, D>(target: &D, directions: &[Vec<T>], radii: &[T]) -> Result<TailReport<T>>
where
    T: Real,
    D: TargetDensity<T> + ?Sized,
{
    let grads = probe_gradients(target, directions, radii)?;
    let inner_products: Vec<Vec<T>> = grads
        .iter()
        .map(|row| {
            row.iter()
                .zip(directions)
                .map(|(g, u)| u.iter().zip(g).fold(T::zero(), |a, (&ui, &gi)| a + ui * gi))
                .collect()
        })
        .collect();
    let (classification, alpha_estimate) = classify(radii, &inner_products);
    let curvature = cosines(&grads, directions);
    Ok(TailReport {
        radii: radii.to_vec(),
        directions: directions.to_vec(),
        inner_products,
        classification,
        alpha_estimate,
        curvature_values: curvature.values,
        curvature_satisfied: curvature.satisfied,
    })
}

fn stable<T: Real>(xs: &[T]) -> bool {
    let lo = xs.iter().fold(T::infinity(), |m, &x| m.min(x));
    let hi = xs.iter().fold(T::neg_infinity(), |m, &x| m.max(x));
    let last = xs[xs.len() - 1].abs();
    hi - lo <= T::lit(STABLE_REL) * last
}

fn classify<T: Real>(radii: &[T], inner: &[Vec<T>]) -> (TailClass, Option<T>) {
    let n = radii.len();
    if n < 3 {
        return (TailClass::Inconclusive, None);
    }
    let worst: Vec<T> = inner.iter().map(|row| row.iter().fold(T::neg_infinity(), |m, &v| m.max(v))).collect();
    let last3 = &worst[n - 3..];
    let t_super = T::lit(T_SUPER);
    let eps = T::lit(EPS_EXP);
    let cap = T::lit(C_EXP);

    if last3[0] > last3[1] && last3[1] > last3[2] && last3[2] <= -t_super {
        return (TailClass::SuperExponential, None);
    }
    if last3.iter().all(|&v| v >= -cap && v <= -eps) && stable(last3) {
        return (TailClass::Exponential, None);
    }
    if last3.iter().all(|&v| v < T::zero()) && last3[2] > -eps {
        let scaled: Vec<T> =
            (n - 3..n).map(|i| inner[i].iter().fold(T::infinity(), |m, &v| m.min(-v * radii[i]))).collect();
        if stable(&scaled) {
            return (TailClass::SubExponential, Some(scaled[2]));
        }
    }
    (TailClass::Inconclusive, None)
}

fn fmt_list<T: Real>(xs: impl IntoIterator<Item = T>) -> String {
    let items: Vec<String> = xs.into_iter().map(|x| format_number(x.as_f64())).collect();
    format!("[{}]", items.join(", "))
}

/// Round-trippable decimal rendering that is also valid TOML.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{x:.16e}")
    }
}

impl<T: Real> TailReport<T> {
    /// Largest radial slope over directions at each radius.
    pub fn max_inner_products(&self) -> Vec<T> {
        self.inner_products.iter().map(|row| row.iter().fold(T::neg_infinity(), |m, &v| m.max(v))).collect()
    }

    /// Flat `key = value` block; every key is prefixed with `prefix.`.
    /// The output is valid TOML.
    pub fn to_kv_block(&self, prefix: &str) -> String {
        let mut out = String::new();
        let p = prefix;
        let _ = writeln!(out, "{p}.classification = \"{}\"", self.classification);
        if let Some(a) = self.alpha_estimate {
            let _ = writeln!(out, "{p}.alpha_estimate = {}", format_number(a.as_f64()));
        }
        let curv = match self.curvature_satisfied {
            Some(true) => "satisfied",
            Some(false) => "violated",
            None => "undetermined",
        };
        let _ = writeln!(out, "{p}.curvature = \"{curv}\"");
        let _ = writeln!(out, "{p}.radii = {}", fmt_list(self.radii.iter().copied()));
        let _ = writeln!(out, "{p}.n_directions = {}", self.directions.len());
        let _ = writeln!(out, "{p}.max_inner_product = {}", fmt_list(self.max_inner_products()));
        let min_ip: Vec<T> =
            self.inner_products.iter().map(|row| row.iter().fold(T::infinity(), |m, &v| m.min(v))).collect();
        let _ = writeln!(out, "{p}.min_inner_product = {}", fmt_list(min_ip));
        let max_cos: Vec<T> = self
            .curvature_values
            .iter()
            .map(|row| row.iter().flatten().fold(T::neg_infinity(), |m, &v| m.max(v)))
            .collect();
        let _ = writeln!(out, "{p}.max_curvature_cosine = {}", fmt_list(max_cos));
        let rows: Vec<String> = self.inner_products.iter().map(|row| fmt_list(row.iter().copied())).collect();
        let _ = writeln!(out, "{p}.inner_products = [{}]", rows.join(", "));
        let _ = writeln!(out, "{p}.caveat = \"{CAVEAT}\"");
        out
    }
}
