//! Product quadrature for integrands that factorize over axes.

use crate::error::Result;

use super::adaptive::integrate_1d;
use super::{IntegralEstimate, IntegrationMethod, QuadratureSpec};

/// Integrate Π_a factor_a(x^a) over ℝ^D as a product of 1D integrals.
///
/// The caller asserts that the D-dimensional integrand is exactly the
/// product of the per-axis factors. Per-axis kink locations come from
/// `spec.split_points`. The error estimate uses first-order propagation:
/// err = Σ_a err_a · Π_{b≠a} |val_b| (the absolute form of Σ err_a/val_a,
/// well defined when a factor integrates to zero) — a heuristic, like all
/// quadrature error estimates here.
pub fn integrate_rd_separable(
    factors: &[&(dyn Fn(f64) -> f64 + Sync)],
    spec: &QuadratureSpec,
) -> Result<IntegralEstimate> {
    spec.validate()?;
    if factors.is_empty() {
        return Err(crate::error::Error::argument(
            "separable integration needs at least one factor",
        ));
    }

    let inf = f64::INFINITY;
    let mut values = Vec::with_capacity(factors.len());
    let mut errors = Vec::with_capacity(factors.len());
    let mut evaluations = 0u64;

    for (axis, factor) in factors.iter().enumerate() {
        let axis_spec = QuadratureSpec {
            split_points: vec![spec.splits_for_axis(axis).to_vec()],
            ..spec.clone()
        };
        let est = integrate_1d(factor, (-inf, inf), &axis_spec)?;
        values.push(est.value);
        errors.push(est.error_estimate);
        evaluations += est.evaluations;
    }

    let value: f64 = values.iter().product();
    let mut error_estimate = 0.0;
    for (a, err) in errors.iter().enumerate() {
        let others: f64 = values
            .iter()
            .enumerate()
            .filter(|&(b, _)| b != a)
            .map(|(_, v)| v.abs())
            .product();
        error_estimate += err * others;
    }

    Ok(IntegralEstimate {
        value,
        error_estimate,
        evaluations,
        method: IntegrationMethod::Separable,
    })
}
