//! Numerical check that the metric of a shift family does not depend on θ.
//!
//! The default quadrature estimator integrates at θ = 0 and relies on the
//! shift identity; this check recomputes the metric at each supplied θ with
//! the integrals actually centered there, so the identity is validated
//! rather than assumed.

use crate::error::{Error, Result};
use crate::family::Family;
use crate::integrate::QuadratureSpec;

use super::{MetricEstimator, MetricResult, QuadratureMetric};

#[derive(Debug, Clone)]
pub struct InvarianceReport {
    /// Largest |g(θ_i)_ab − g(θ_j)_ab| over parameter pairs and entries.
    pub max_deviation: f64,
    /// Combined error bound at the worst entry.
    pub max_combined_error: f64,
    /// True when every entry deviation stays below the combined quadrature
    /// error estimates (plus a rounding floor).
    pub passed: bool,
    pub metrics: Vec<MetricResult>,
}

pub fn translation_invariance_check(
    family: &dyn Family,
    thetas: &[Vec<f64>],
    spec: &QuadratureSpec,
) -> Result<InvarianceReport> {
    if thetas.len() < 2 {
        return Err(Error::argument(
            "translation invariance needs at least two parameter points",
        ));
    }
    let estimator = QuadratureMetric::new(spec.clone()).at_theta(true);
    let mut metrics = Vec::with_capacity(thetas.len());
    for theta in thetas {
        let relocated = family.with_theta(theta)?;
        metrics.push(estimator.estimate(relocated.as_ref())?);
    }

    let n = metrics[0].dim();
    let mut max_deviation: f64 = 0.0;
    let mut max_combined_error: f64 = 0.0;
    let mut passed = true;
    for i in 0..metrics.len() {
        for j in (i + 1)..metrics.len() {
            for a in 0..n {
                for b in 0..n {
                    let dev = (metrics[i].g[(a, b)] - metrics[j].g[(a, b)]).abs();
                    let bound = metrics[i].error[(a, b)]
                        + metrics[j].error[(a, b)]
                        + 5e-11 * (1.0 + metrics[i].g[(a, b)].abs());
                    if dev > max_deviation {
                        max_deviation = dev;
                        max_combined_error = bound;
                    }
                    passed &= dev <= bound;
                }
            }
        }
    }

    Ok(InvarianceReport {
        max_deviation,
        max_combined_error,
        passed,
        metrics,
    })
}
