//! Five-point central differences.

/// Step used by the helpers below: `h_rel * max(1, |x|)`.
pub fn step(x: f64, h_rel: f64) -> f64 {
    h_rel * x.abs().max(1.0)
}

/// Derivative of a scalar function, fourth-order accurate.
pub fn derivative<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (8.0 * (f(x + h) - f(x - h)) - (f(x + 2.0 * h) - f(x - 2.0 * h))) / (12.0 * h)
}

/// Gradient of `f: R^k -> R` at `x`.
pub fn gradient<F: Fn(&[f64]) -> f64>(f: F, x: &[f64], h: f64) -> Vec<f64> {
    (0..x.len())
        .map(|i| {
            derivative(
                |t| {
                    let mut y = x.to_vec();
                    y[i] = t;
                    f(&y)
                },
                x[i],
                h,
            )
        })
        .collect()
}

/// Jacobian `J[i][j] = ∂f_i/∂x_j` of `f: R^k -> R^m`.
pub fn jacobian<F: Fn(&[f64]) -> Vec<f64>>(f: F, x: &[f64], h: f64) -> Vec<Vec<f64>> {
    let k = x.len();
    let cols: Vec<Vec<f64>> = (0..k)
        .map(|j| {
            let at = |t: f64| {
                let mut y = x.to_vec();
                y[j] = t;
                f(&y)
            };
            let (p1, m1, p2, m2) = (at(x[j] + h), at(x[j] - h), at(x[j] + 2.0 * h), at(x[j] - 2.0 * h));
            (0..p1.len()).map(|i| (8.0 * (p1[i] - m1[i]) - (p2[i] - m2[i])) / (12.0 * h)).collect()
        })
        .collect();
    let m = cols.first().map_or(0, Vec::len);
    (0..m).map(|i| (0..k).map(|j| cols[j][i]).collect()).collect()
}
