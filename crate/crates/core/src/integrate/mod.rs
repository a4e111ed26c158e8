//! Deterministic and stochastic integration over ℝ^D.
//!
//! Four routes are provided:
//!
//! * [`integrate_1d`] — adaptive Gauss-Kronrod quadrature on a possibly
//!   infinite interval, with the interval pre-split at user-declared kink
//!   locations so every panel sees a smooth integrand.
//! * [`integrate_rd_separable`] — product of 1D integrals for integrands
//!   that factorize over axes.
//! * [`integrate_rd_tensor`] — tensor-product quadrature for general
//!   integrands in low dimension (D ≤ 5).
//! * [`mc_expectation`] — seeded Monte Carlo expectation under a product
//!   family, bit-reproducible for any degree of parallelism.

mod adaptive;
mod gauss_kronrod;
mod map;
mod montecarlo;
mod separable;
mod tensor;

pub use adaptive::integrate_1d;
pub use montecarlo::{mc_expectation, mc_expectation_vec, McVecEstimate};
pub use separable::integrate_rd_separable;
pub use tensor::integrate_rd_tensor;

/// Smooth bijection from a bounded interval onto ℝ, used to integrate over
/// infinite domains with finite quadrature nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Compactification {
    /// t = u/(1-u²) with Jacobian (1+u²)/(1-u²)². Algebraic growth handles
    /// exponential tails without overflow.
    #[default]
    RationalMap,
    /// t = atanh(u) with Jacobian 1/(1-u²). Kept for diagnostics.
    TanhMap,
}

/// Configuration for the deterministic quadrature routes.
#[derive(Debug, Clone)]
pub struct QuadratureSpec {
    /// Relative tolerance on the integral value.
    pub rel_tol: f64,
    /// Absolute tolerance floor.
    pub abs_tol: f64,
    /// Subdivision budget for the adaptive driver.
    pub max_subdivisions: usize,
    /// Map used for infinite endpoints.
    pub compactification: Compactification,
    /// Per-axis kink locations of the integrand (e.g. the location
    /// parameters of a Laplace-type density). Axis 0 is used by the 1D
    /// route; missing axes are treated as smooth.
    pub split_points: Vec<Vec<f64>>,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-8,
            abs_tol: 1e-12,
            max_subdivisions: 2000,
            compactification: Compactification::default(),
            split_points: Vec::new(),
        }
    }
}

impl QuadratureSpec {
    pub fn with_tols(mut self, rel_tol: f64, abs_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self.abs_tol = abs_tol;
        self
    }

    pub fn with_max_subdivisions(mut self, max_subdivisions: usize) -> Self {
        self.max_subdivisions = max_subdivisions;
        self
    }

    /// Kink locations for a 1D integrand.
    pub fn with_splits_1d(mut self, splits: Vec<f64>) -> Self {
        self.split_points = vec![splits];
        self
    }

    /// Kink locations per axis.
    pub fn with_splits(mut self, splits: Vec<Vec<f64>>) -> Self {
        self.split_points = splits;
        self
    }

    pub fn with_compactification(mut self, map: Compactification) -> Self {
        self.compactification = map;
        self
    }

    pub(crate) fn splits_for_axis(&self, axis: usize) -> &[f64] {
        self.split_points
            .get(axis)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub(crate) fn validate(&self) -> crate::error::Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(crate::error::Error::argument(
                "quadrature tolerances must be positive",
            ));
        }
        if self.max_subdivisions < 1 {
            return Err(crate::error::Error::argument(
                "max_subdivisions must be at least 1",
            ));
        }
        Ok(())
    }

    pub(crate) fn tolerance_for(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// Configuration for the Monte Carlo expectation estimator.
///
/// Estimates are a pure function of `(n_samples, seed)`: each sample draws
/// from its own counter-derived RNG stream and the reduction runs over
/// fixed-size microbatches, so neither `chunk_size` nor the worker count can
/// change the result.
#[derive(Debug, Clone, Copy)]
pub struct MonteCarloSpec {
    pub n_samples: u64,
    pub seed: u64,
    /// Scheduling granularity (samples per parallel work unit). Affects
    /// speed only, never the result.
    pub chunk_size: u64,
}

impl Default for MonteCarloSpec {
    fn default() -> Self {
        MonteCarloSpec {
            n_samples: 100_000,
            seed: 0,
            chunk_size: 65_536,
        }
    }
}

impl MonteCarloSpec {
    pub fn new(n_samples: u64, seed: u64) -> Self {
        MonteCarloSpec {
            n_samples,
            seed,
            ..Default::default()
        }
    }
}

/// Which route produced an [`IntegralEstimate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegrationMethod {
    Adaptive1d,
    Separable,
    Tensor,
    MonteCarlo,
}

/// An integral value together with an error estimate.
///
/// The error estimate is an upper-bound heuristic (Gauss-Kronrod embedded
/// difference, refinement difference, or Monte Carlo standard error); it is
/// reported, never asserted exact.
#[derive(Debug, Clone, Copy)]
pub struct IntegralEstimate {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: u64,
    pub method: IntegrationMethod,
}
