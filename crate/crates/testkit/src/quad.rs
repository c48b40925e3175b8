//! Adaptive Gauss–Kronrod (7, 15) quadrature, on intervals and on the whole
//! real line via `x = tan θ`.

use std::f64::consts::FRAC_PI_2;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// One Kronrod panel: (15-point estimate, |K15 - G7|).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XGK[i];
        let s = f(c - dx) + f(c + dx);
        kronrod += WGK[i] * s;
        if i % 2 == 1 {
            gauss += WG[i / 2] * s;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

fn adapt<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, whole: (f64, f64), tol: f64, depth: usize) -> f64 {
    let (value, err) = whole;
    if err <= tol || depth == 0 {
        return value;
    }
    let m = 0.5 * (a + b);
    let left = gk15(f, a, m);
    let right = gk15(f, m, b);
    adapt(f, a, m, left, 0.5 * tol, depth - 1) + adapt(f, m, b, right, 0.5 * tol, depth - 1)
}

/// `∫_a^b f` to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    let first = gk15(&f, a, b);
    adapt(&f, a, b, first, tol, 40)
}

/// `∫_R f` to relative tolerance `rel_tol`, via `x = tan θ` on `(-π/2, π/2)`.
///
/// The interval is pre-split into 16 panels so narrow peaks are not missed;
/// the absolute tolerance is `rel_tol` times a first-pass estimate.
pub fn integrate_real_line<F: Fn(f64) -> f64>(f: F, rel_tol: f64) -> f64 {
    let g = |theta: f64| {
        let x = theta.tan();
        let c = theta.cos();
        let v = f(x);
        if v == 0.0 {
            0.0
        } else {
            v / (c * c)
        }
    };
    let panels = 16;
    let width = 2.0 * FRAC_PI_2 / panels as f64;
    let edges: Vec<f64> = (0..=panels).map(|i| -FRAC_PI_2 + width * i as f64).collect();
    let rough: f64 = edges.windows(2).map(|w| gk15(&g, w[0], w[1]).0).sum();
    let tol = rel_tol * rough.abs().max(f64::MIN_POSITIVE) / panels as f64;
    edges.windows(2).map(|w| integrate(g, w[0], w[1], tol)).sum()
}

/// `∫_{R²} f(x, y)` by nested one-dimensional quadrature.
pub fn integrate_plane<F: Fn(f64, f64) -> f64>(f: F, rel_tol: f64) -> f64 {
    integrate_real_line(|x| integrate_real_line(|y| f(x, y), rel_tol * 0.1), rel_tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let v = integrate(|x| x * x * x - 2.0 * x, 0.0, 2.0, 1e-14);
        assert!((v - 0.0).abs() < 1e-13);
    }

    #[test]
    fn gaussian_mass() {
        let v = integrate_real_line(|x| (-0.5 * x * x).exp(), 1e-10);
        assert!((v / (2.0 * std::f64::consts::PI).sqrt() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn cauchy_mass() {
        let v = integrate_real_line(|x| 1.0 / (1.0 + x * x), 1e-10);
        assert!((v / std::f64::consts::PI - 1.0).abs() < 1e-9);
    }

    #[test]
    fn bivariate_cauchy_mass() {
        // (1 + x² + y²)^{-3/2} integrates to 2π.
        let v = integrate_plane(|x, y| (1.0 + x * x + y * y).powf(-1.5), 1e-8);
        assert!((v / (2.0 * std::f64::consts::PI) - 1.0).abs() < 1e-6, "{v}");
    }
}
