//! Tail and curvature probes, and quality measures for chain output.

mod stats;
mod tail;

pub use stats::{acceptance_rate, autocorrelation, batch_means_mcse, ks_critical_value, ks_statistic, quantile};
pub use tail::format_number;
pub use tail::{
    curvature_probe, finite_difference_gradient, ray_tail_probe, CurvatureProbe, ProbeSettings, TailClass, TailReport,
    CAVEAT, C_EXP, DEFAULT_RADII, DEFAULT_RANDOM_DIRECTIONS, EPS_CURV, EPS_EXP, FD_STEP, STABLE_REL, T_SUPER,
};
