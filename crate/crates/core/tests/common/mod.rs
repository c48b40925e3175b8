#![allow(dead_code)]

use isomorph::morph::{MorphSpec, RadialFamily};
use proptest::prelude::*;

pub fn norm(v: &[f64]) -> f64 {
    let top = v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    if top == 0.0 || !top.is_finite() {
        return top;
    }
    top * v.iter().map(|x| (x / top) * (x / top)).sum::<f64>().sqrt()
}

pub fn frobenius_rel(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    let top = a.iter().flatten().fold(0.0_f64, |m, x| m.max(x.abs()));
    let mut diff = 0.0;
    let mut base = 0.0;
    for (ra, rb) in a.iter().zip(b) {
        for (x, y) in ra.iter().zip(rb) {
            let (x, y) = (x / top, y / top);
            diff += (x - y) * (x - y);
            base += x * x;
        }
    }
    (diff / base).sqrt()
}

/// `ln det m` for a matrix with positive determinant, scaled so huge
/// entries do not overflow.
pub fn log_determinant(m: &[Vec<f64>]) -> f64 {
    let k = m.len();
    let top = m.iter().flatten().fold(0.0_f64, |a, x| a.max(x.abs()));
    let d = nalgebra::DMatrix::from_fn(k, k, |i, j| m[i][j] / top).determinant();
    d.ln() + k as f64 * top.ln()
}

/// Outer stage: identity or polynomial; inner stage: none or exponential.
pub fn morph_strategy(max_k: usize) -> impl Strategy<Value = MorphSpec<f64>> {
    let outer = prop_oneof![
        1 => Just(RadialFamily::identity()),
        3 => (0.0..3.0_f64, 2.1..4.0_f64).prop_map(|(r, p)| RadialFamily::polynomial(r, p).unwrap()),
        2 => (0.0..3.0_f64).prop_map(|r| RadialFamily::polynomial(r, 3.0).unwrap()),
    ];
    let inner = prop_oneof![
        1 => Just(None),
        2 => (0.05..2.0_f64).prop_map(|b| Some(RadialFamily::exponential_sub(b).unwrap())),
    ];
    (1..=max_k)
        .prop_flat_map(move |k| (prop::collection::vec(-5.0..5.0_f64, k), outer.clone(), inner.clone()))
        .prop_map(|(center, outer, inner)| MorphSpec::new(center, outer, inner).unwrap())
}

/// A unit direction of dimension `k` from raw normal-ish coordinates.
pub fn unit(raw: &[f64]) -> Vec<f64> {
    let n = norm(raw);
    if n < 1e-6 {
        let mut e = vec![0.0; raw.len()];
        e[0] = 1.0;
        return e;
    }
    raw.iter().map(|x| x / n).collect()
}

/// `(morph, gamma)` with `|gamma|` in `(0, min(frac * guard, cap)]`.
pub fn morph_and_point(max_k: usize, frac: f64, cap: f64) -> impl Strategy<Value = (MorphSpec<f64>, Vec<f64>)> {
    morph_strategy(max_k).prop_flat_map(move |m| {
        let k = m.dim();
        let top = (frac * m.guard_radius()).min(cap);
        (Just(m), prop::collection::vec(-1.0..1.0_f64, k), 0.0..1.0_f64).prop_map(move |(m, raw, t)| {
            // Log-uniform radius between 1e-3 and top.
            let r = (1e-3_f64.ln() + t * (top.ln() - 1e-3_f64.ln())).exp();
            let u = unit(&raw);
            let g: Vec<f64> = u.iter().map(|x| x * r).collect();
            (m, g)
        })
    })
}

/// Distance from `r` to the nearest branch radius of the morph.
pub fn branch_distance(m: &MorphSpec<f64>, r: f64) -> f64 {
    m.branch_radii().iter().map(|b| (r - b).abs()).fold(f64::INFINITY, f64::min)
}
