use isomorph::density::TargetDensity;
use isomorph::{CauchyLocation, Gaussian, MultinomialLogit, MultivariateT};

/// One of the named target families.
#[derive(Debug, Clone)]
pub enum AnyTarget {
    Gaussian(Gaussian),
    Mvt(MultivariateT),
    CauchyLocation(CauchyLocation),
    Mlogit(MultinomialLogit),
}

impl AnyTarget {
    fn inner(&self) -> &dyn TargetDensity<f64> {
        match self {
            AnyTarget::Gaussian(t) => t,
            AnyTarget::Mvt(t) => t,
            AnyTarget::CauchyLocation(t) => t,
            AnyTarget::Mlogit(t) => t,
        }
    }
}

impl TargetDensity<f64> for AnyTarget {
    fn dim(&self) -> usize {
        self.inner().dim()
    }

    fn log_density(&self, x: &[f64]) -> f64 {
        self.inner().log_density(x)
    }

    fn grad_log_density(&self, x: &[f64]) -> Option<Vec<f64>> {
        self.inner().grad_log_density(x)
    }
}
