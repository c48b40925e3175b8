//! Scalar radial maps `f: [0, inf) -> [0, inf)` that generate isotropic
//! transformations.

use crate::error::{Error, Result};
use crate::root::solve_increasing;
use crate::scalar::Real;

/// The piecewise shape of a radial map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shape<T> {
    /// `f(s) = s`.
    Identity,
    /// `f(s) = s` below `r`, `s + (s - r)^p` above. Pulls exponentially light
    /// tails in to super-exponential ones.
    Polynomial { r: T, p: T },
    /// Cubic `s^3 b^3 e / 6 + s b e / 2` up to `1/b`, then `exp(b s) - e/3`.
    /// Pulls polynomially decaying tails in to exponential ones.
    ExponentialSub { b: T },
}

/// A validated radial map together with its first two derivatives.
///
/// Every family satisfies `f(0) = 0`, `f' > 0` on `[0, inf)` and `f''(0) = 0`,
/// which is what makes the induced isotropic map a diffeomorphism with a
/// continuously differentiable Jacobian determinant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialFamily<T> {
    shape: Shape<T>,
}

/// Value, first and second derivative of a radial map at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialDerivs<T> {
    pub value: T,
    pub first: T,
    pub second: T,
}

impl<T: Real> RadialFamily<T> {
    pub fn identity() -> Self {
        Self { shape: Shape::Identity }
    }

    /// Requires `r >= 0` and `p > 2`.
    pub fn polynomial(r: T, p: T) -> Result<Self> {
        if !(r.is_finite() && r >= T::zero()) {
            return Err(Error::InvalidParameter(format!("polynomial radius R must be >= 0, got {r}")));
        }
        if !(p.is_finite() && p > T::lit(2.0)) {
            return Err(Error::InvalidParameter(format!("polynomial exponent p must be > 2, got {p}")));
        }
        Ok(Self { shape: Shape::Polynomial { r, p } })
    }

    /// Requires `b > 0`.
    pub fn exponential_sub(b: T) -> Result<Self> {
        if !(b.is_finite() && b > T::zero()) {
            return Err(Error::InvalidParameter(format!("exponential rate b must be > 0, got {b}")));
        }
        Ok(Self { shape: Shape::ExponentialSub { b } })
    }

    pub fn shape(&self) -> Shape<T> {
        self.shape
    }

    pub fn is_identity(&self) -> bool {
        matches!(self.shape, Shape::Identity)
    }

    /// Largest argument for which `f`, `f'` and `f''` are all finite.
    ///
    /// For the exponential family this is `ln(T::MAX)/b - 1`.
    pub fn guard(&self) -> T {
        match self.shape {
            Shape::Identity => T::max_value(),
            Shape::Polynomial { r, p } => {
                let half_max = T::max_value() / T::lit(2.0);
                r + half_max.powf(p.recip()) / T::lit(2.0)
            }
            Shape::ExponentialSub { b } => T::max_value().ln() / b - T::one(),
        }
    }

    /// Branch point where the piecewise definition switches, if any.
    pub fn branch_point(&self) -> Option<T> {
        match self.shape {
            Shape::Identity => None,
            Shape::Polynomial { r, .. } => Some(r),
            Shape::ExponentialSub { b } => Some(b.recip()),
        }
    }

    pub fn derivative_at_zero(&self) -> T {
        match self.shape {
            Shape::Identity | Shape::Polynomial { .. } => T::one(),
            Shape::ExponentialSub { b } => b * T::E() / T::lit(2.0),
        }
    }

    fn check_arg(&self, s: T) -> Result<()> {
        if !(s >= T::zero()) {
            return Err(Error::InvalidParameter(format!("radial argument must be >= 0, got {s}")));
        }
        let guard = self.guard();
        if s > guard {
            return Err(Error::Range { radius: s.as_f64(), guard: guard.as_f64() });
        }
        Ok(())
    }

    /// `f(s)`.
    pub fn eval(&self, s: T) -> Result<T> {
        self.derivs(s).map(|d| d.value)
    }

    /// `(f(s), f'(s), f''(s))`.
    pub fn derivs(&self, s: T) -> Result<RadialDerivs<T>> {
        self.check_arg(s)?;
        Ok(match self.shape {
            Shape::Identity => RadialDerivs { value: s, first: T::one(), second: T::zero() },
            Shape::Polynomial { r, p } => {
                if s < r {
                    RadialDerivs { value: s, first: T::one(), second: T::zero() }
                } else {
                    polynomial_upper(r, p, s)
                }
            }
            Shape::ExponentialSub { b } => {
                if s > b.recip() {
                    exponential_upper(b, s)
                } else {
                    exponential_cubic(b, s)
                }
            }
        })
    }

    /// Both pieces of the definition evaluated exactly at the branch point,
    /// lower piece first. The two agree when the family is `C²`.
    pub fn branch_limits(&self) -> Option<(RadialDerivs<T>, RadialDerivs<T>)> {
        match self.shape {
            Shape::Identity => None,
            Shape::Polynomial { r, p } => {
                Some((RadialDerivs { value: r, first: T::one(), second: T::zero() }, polynomial_upper(r, p, r)))
            }
            Shape::ExponentialSub { b } => {
                let s = b.recip();
                Some((exponential_cubic(b, s), exponential_upper(b, s)))
            }
        }
    }

    /// `s f'(s) - f(s)`, evaluated without cancellation.
    ///
    /// Divided by `s f(s)` this is the `f'/f - 1/s` term of the radial
    /// derivative of the log Jacobian determinant.
    pub fn excess(&self, s: T) -> Result<T> {
        self.check_arg(s)?;
        Ok(match self.shape {
            Shape::Identity => T::zero(),
            Shape::Polynomial { r, p } => {
                if s < r {
                    T::zero()
                } else {
                    let d = s - r;
                    d.powf(p - T::one()) * (p * s - d)
                }
            }
            Shape::ExponentialSub { b } => {
                if s > b.recip() {
                    (b * s).exp() * (b * s - T::one()) + T::E() / T::lit(3.0)
                } else {
                    let b3 = b * b * b;
                    s * s * s * b3 * T::E() / T::lit(3.0)
                }
            }
        })
    }

    /// `f^{-1}(t)`.
    ///
    /// Closed forms for `p = 3` (depressed cubic) and the exponential upper
    /// branch; safeguarded Newton on the bracket elsewhere.
    pub fn inverse(&self, t: T) -> Result<T> {
        if !(t >= T::zero()) {
            return Err(Error::InvalidParameter(format!("radial value must be >= 0, got {t}")));
        }
        if t == T::zero() {
            return Ok(T::zero());
        }
        match self.shape {
            Shape::Identity => Ok(t),
            Shape::Polynomial { r, p } => {
                if t < r {
                    return Ok(t);
                }
                let q = t - r;
                // d + d^p = q with d = s - r, so d <= min(q, q^(1/p)).
                let hi = q.min(q.powf(p.recip()));
                let guess = if p == T::lit(3.0) { depressed_cubic_root(q) } else { hi };
                let d = solve_increasing(T::zero(), hi, guess, q, |d| {
                    (d + d.powf(p), T::one() + p * d.powf(p - T::one()))
                })?;
                Ok(r + d)
            }
            Shape::ExponentialSub { b } => {
                let knot = T::lit(2.0) * T::E() / T::lit(3.0);
                if t > knot {
                    Ok((t + T::E() / T::lit(3.0)).ln() / b)
                } else {
                    let hi = b.recip();
                    let slope0 = b * T::E() / T::lit(2.0);
                    solve_increasing(T::zero(), hi, t / slope0, t, |s| {
                        let d = exponential_cubic(b, s);
                        (d.value, d.first)
                    })
                }
            }
        }
    }
}

pub(crate) fn polynomial_upper<T: Real>(r: T, p: T, s: T) -> RadialDerivs<T> {
    let d = s - r;
    RadialDerivs {
        value: s + d.powf(p),
        first: T::one() + p * d.powf(p - T::one()),
        second: p * (p - T::one()) * d.powf(p - T::lit(2.0)),
    }
}

pub(crate) fn exponential_cubic<T: Real>(b: T, s: T) -> RadialDerivs<T> {
    let e = T::E();
    let b3e = b * b * b * e;
    RadialDerivs {
        value: s * s * s * b3e / T::lit(6.0) + s * b * e / T::lit(2.0),
        first: s * s * b3e / T::lit(2.0) + b * e / T::lit(2.0),
        second: s * b3e,
    }
}

pub(crate) fn exponential_upper<T: Real>(b: T, s: T) -> RadialDerivs<T> {
    let g = (b * s).exp();
    RadialDerivs { value: g - T::E() / T::lit(3.0), first: b * g, second: b * b * g }
}

/// Real root of `d^3 + d = q` for `q >= 0`, via Cardano in the form
/// `A - 1/(3A)`; the caller polishes it with Newton.
fn depressed_cubic_root<T: Real>(q: T) -> T {
    let half = q / T::lit(2.0);
    let a = (half + half.hypot(T::lit(27.0).sqrt().recip())).cbrt();
    a - (T::lit(3.0) * a).recip()
}
