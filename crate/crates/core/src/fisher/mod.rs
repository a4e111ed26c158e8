//! Fisher-Rao metrics of parametric families, by four interchangeable
//! routes, plus statistical moments and the metric post-processing steps
//! (translation-invariance check, Rao distance, coordinate rescaling, Wick
//! rotation).
//!
//! Each route implements [`MetricEstimator`] and is registered by name in
//! [`MethodRegistry`], mirroring the family registry: callers pick
//! `analytic`, `quadrature`, `montecarlo`, or `fdscore` at runtime.

mod analytic;
mod fd_score;
mod invariance;
mod moments;
mod montecarlo;
mod quadrature;
mod registry;
mod transform;

pub use analytic::AnalyticMetric;
pub use fd_score::FdScoreMetric;
pub use invariance::{translation_invariance_check, InvarianceReport};
pub use moments::{
    alt_variance_closed_form, coordinate_mean, coordinate_variance, coordinate_variance_report,
    expectation, normalization_integral, score_mean, variance, MomentRoute, VarianceReport,
};
pub use montecarlo::MonteCarloMetric;
pub use quadrature::QuadratureMetric;
pub use registry::{EstimatorOptions, MethodRegistry};
pub use transform::{normalize_coordinates, rao_distance, wick_rotate, WickRotated};

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::family::{Family, FamilyMeta};

/// Which route produced a [`MetricResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricMethod {
    Analytic,
    Quadrature,
    MonteCarlo,
    FdScore,
}

impl std::fmt::Display for MetricMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            MetricMethod::Analytic => "analytic",
            MetricMethod::Quadrature => "quadrature",
            MetricMethod::MonteCarlo => "montecarlo",
            MetricMethod::FdScore => "fdscore",
        })
    }
}

impl std::str::FromStr for MetricMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "analytic" => Ok(MetricMethod::Analytic),
            "quadrature" => Ok(MetricMethod::Quadrature),
            "montecarlo" => Ok(MetricMethod::MonteCarlo),
            "fdscore" => Ok(MetricMethod::FdScore),
            other => Err(Error::argument(format!(
                "unknown metric method '{other}' (available: analytic, quadrature, montecarlo, fdscore)"
            ))),
        }
    }
}

/// A computed Fisher-Rao metric: symmetric N×N matrix, per-entry error
/// estimates (standard errors for Monte Carlo, propagated quadrature
/// estimates otherwise, zeros for analytic), and provenance metadata.
#[derive(Debug, Clone)]
pub struct MetricResult {
    pub g: DMatrix<f64>,
    pub method: MetricMethod,
    pub error: DMatrix<f64>,
    pub meta: FamilyMeta,
    /// True when some entry exhausted its integration budget; the matrix
    /// then holds best estimates.
    pub unconverged: bool,
    pub evaluations: u64,
}

impl MetricResult {
    pub fn dim(&self) -> usize {
        self.g.nrows()
    }

    /// Largest |g_ab| over a ≠ b.
    pub fn max_abs_offdiag(&self) -> f64 {
        let n = self.dim();
        let mut m: f64 = 0.0;
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    m = m.max(self.g[(a, b)].abs());
                }
            }
        }
        m
    }

    /// Largest |g_ab − other.g_ab|.
    pub fn max_abs_deviation(&self, other: &MetricResult) -> f64 {
        (&self.g - &other.g).abs().max()
    }
}

/// A strategy for estimating the Fisher metric of a family.
pub trait MetricEstimator: Send + Sync {
    fn method(&self) -> MetricMethod;
    fn estimate(&self, family: &dyn Family) -> Result<MetricResult>;
}

/// Estimate the Fisher metric of `family` by the chosen method with the
/// given options.
pub fn fisher_metric(
    family: &dyn Family,
    method: MetricMethod,
    opts: &EstimatorOptions,
) -> Result<MetricResult> {
    let estimator: Box<dyn MetricEstimator> = match method {
        MetricMethod::Analytic => Box::new(AnalyticMetric),
        MetricMethod::Quadrature => Box::new(QuadratureMetric::new(opts.quad.clone())),
        MetricMethod::MonteCarlo => Box::new(MonteCarloMetric::new(opts.mc)),
        MetricMethod::FdScore => Box::new(FdScoreMetric::new(opts.fd_step, opts.quad.clone())?),
    };
    estimator.estimate(family)
}

/// The finite-difference-score route at an explicit step size.
pub fn fisher_metric_fd_score(
    family: &dyn Family,
    fd_step: f64,
    quad: &crate::integrate::QuadratureSpec,
) -> Result<MetricResult> {
    FdScoreMetric::new(fd_step, quad.clone())?.estimate(family)
}

pub(crate) fn symmetric_from_upper<F>(n: usize, mut f: F) -> DMatrix<f64>
where
    F: FnMut(usize, usize) -> f64,
{
    let mut m = DMatrix::zeros(n, n);
    for a in 0..n {
        for b in a..n {
            let v = f(a, b);
            m[(a, b)] = v;
            m[(b, a)] = v;
        }
    }
    m
}
