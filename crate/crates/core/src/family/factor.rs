//! One-dimensional marginal factors of product densities.

use statrs::function::erf;

use super::sgn;

/// A normalized 1D marginal with the evaluators needed for separable
/// quadrature and inverse-transform sampling.
pub trait MarginalFactor: Send + Sync {
    /// Location parameter θ^a of this axis.
    fn location(&self) -> f64;

    /// ln p(t).
    fn log_density(&self, t: f64) -> f64;

    fn density(&self, t: f64) -> f64 {
        self.log_density(t).exp()
    }

    /// ∂/∂θ ln p(t;θ) at this factor's location.
    fn score(&self, t: f64) -> f64;

    fn cdf(&self, t: f64) -> f64;

    /// Quantile; callers guarantee u ∈ (0,1).
    fn inverse_cdf(&self, u: f64) -> f64;

    /// Points where the density is not smooth (quadrature split points).
    fn kinks(&self) -> Vec<f64>;

    /// The same factor moved to a new location.
    fn relocated(&self, location: f64) -> Box<dyn MarginalFactor>;
}

/// Laplace factor p(t) = (rate/2)·exp(−rate·|t−θ|).
#[derive(Debug, Clone, Copy)]
pub struct LaplaceFactor {
    location: f64,
    rate: f64,
}

impl LaplaceFactor {
    pub fn new(location: f64, rate: f64) -> Self {
        debug_assert!(rate > 0.0);
        LaplaceFactor { location, rate }
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }
}

impl MarginalFactor for LaplaceFactor {
    fn location(&self) -> f64 {
        self.location
    }

    fn log_density(&self, t: f64) -> f64 {
        (0.5 * self.rate).ln() - self.rate * (t - self.location).abs()
    }

    fn score(&self, t: f64) -> f64 {
        self.rate * sgn(t - self.location)
    }

    fn cdf(&self, t: f64) -> f64 {
        let z = t - self.location;
        if z < 0.0 {
            0.5 * (self.rate * z).exp()
        } else {
            1.0 - 0.5 * (-self.rate * z).exp()
        }
    }

    fn inverse_cdf(&self, u: f64) -> f64 {
        // x = θ − b·sgn(u−½)·ln(1−2|u−½|), b = 1/rate
        let v = u - 0.5;
        self.location - sgn(v) * (1.0 - 2.0 * v.abs()).ln() / self.rate
    }

    fn kinks(&self) -> Vec<f64> {
        vec![self.location]
    }

    fn relocated(&self, location: f64) -> Box<dyn MarginalFactor> {
        Box::new(LaplaceFactor::new(location, self.rate))
    }
}

/// Gaussian factor p(t) = π^{−1/2}·exp(−(t−θ)²), i.e. variance 1/2.
#[derive(Debug, Clone, Copy)]
pub struct GaussianFactor {
    location: f64,
}

impl GaussianFactor {
    pub fn new(location: f64) -> Self {
        GaussianFactor { location }
    }
}

impl MarginalFactor for GaussianFactor {
    fn location(&self) -> f64 {
        self.location
    }

    fn log_density(&self, t: f64) -> f64 {
        let z = t - self.location;
        -0.5 * std::f64::consts::PI.ln() - z * z
    }

    fn score(&self, t: f64) -> f64 {
        2.0 * (t - self.location)
    }

    fn cdf(&self, t: f64) -> f64 {
        0.5 * (1.0 + erf::erf(t - self.location))
    }

    fn inverse_cdf(&self, u: f64) -> f64 {
        // Rational-approximation start, then Newton steps on the exact CDF
        // to push the quantile to full double precision.
        let mut z = erf::erf_inv(2.0 * u - 1.0);
        for _ in 0..2 {
            let pdf = (-z * z).exp() / std::f64::consts::PI.sqrt();
            if pdf == 0.0 {
                break;
            }
            let resid = 0.5 * (1.0 + erf::erf(z)) - u;
            z -= resid / pdf;
        }
        self.location + z
    }

    fn kinks(&self) -> Vec<f64> {
        Vec::new()
    }

    fn relocated(&self, location: f64) -> Box<dyn MarginalFactor> {
        Box::new(GaussianFactor::new(location))
    }
}
