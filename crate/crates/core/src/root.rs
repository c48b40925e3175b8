//! Safeguarded Newton iteration for strictly increasing scalar functions.

use crate::error::{Error, Result};
use crate::scalar::Real;

pub(crate) const MAX_ITERATIONS: usize = 200;

/// Relative tolerance on the residual: 1e-12 for `f64`, a few ulps for `f32`.
pub(crate) fn tolerance<T: Real>() -> T {
    T::lit(1e-12).max(T::epsilon() * T::lit(4.0))
}

/// Solves `eval(s).0 == target` for `s` in `[lo, hi]`.
///
/// `eval` returns the function value and its derivative. The function must be
/// strictly increasing on the bracket with `eval(lo).0 <= target <=
/// eval(hi).0`. Newton steps are taken from `guess` and replaced by bisection
/// whenever they leave the current bracket, so the iteration always terminates.
pub(crate) fn solve_increasing<T, F>(mut lo: T, mut hi: T, guess: T, target: T, eval: F) -> Result<T>
where
    T: Real,
    F: Fn(T) -> (T, T),
{
    let tol = tolerance::<T>();
    let two = T::lit(2.0);
    let mut x = guess.max(lo).min(hi);
    for _ in 0..MAX_ITERATIONS {
        let (fx, dfx) = eval(x);
        let resid = fx - target;
        if !resid.is_finite() {
            break;
        }
        if resid == T::zero() || resid.abs() <= tol * target.abs() {
            return Ok(x);
        }
        if resid < T::zero() {
            lo = x;
        } else {
            hi = x;
        }
        if hi - lo <= two * T::epsilon() * hi.abs().max(T::min_positive_value()) {
            return Ok(x);
        }
        let step = x - resid / dfx;
        x = if step.is_finite() && step > lo && step < hi { step } else { (lo + hi) / two };
    }
    Err(Error::NoConvergence { iterations: MAX_ITERATIONS, lo: lo.as_f64(), hi: hi.as_f64() })
}
