//! Post-processing of constant metrics: Rao distance, coordinate
//! rescaling, Wick rotation.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::field_theory;
use crate::geometry::{definiteness, Signature};

use super::MetricResult;

/// Rao distance |g_ab Δθ^a Δθ^b|^{1/2} for a displacement under a constant
/// metric. The absolute value admits pseudo-Euclidean metrics, where null
/// displacements come out at distance zero.
pub fn rao_distance(metric: &MetricResult, dtheta: &[f64]) -> Result<f64> {
    let n = metric.dim();
    if dtheta.len() != n {
        return Err(Error::argument(format!(
            "displacement has length {}, metric dimension is {n}",
            dtheta.len()
        )));
    }
    let mut quad = 0.0;
    for a in 0..n {
        for b in 0..n {
            quad += metric.g[(a, b)] * dtheta[a] * dtheta[b];
        }
    }
    Ok(quad.abs().sqrt())
}

/// Rescale parameters θ̄^a = (2m/√(D−2))·θ^a, under which the scalar-field
/// metric (4m²/(D−2))δ_ab becomes δ_ab. Returns the scale factor and the
/// rescaled metric g/scale².
pub fn normalize_coordinates(
    metric: &MetricResult,
    dim: usize,
    mass: f64,
) -> Result<(f64, MetricResult)> {
    field_theory::validate_model(dim, mass)?;
    if metric.dim() != dim {
        return Err(Error::argument(format!(
            "metric dimension {} does not match dim {dim}",
            metric.dim()
        )));
    }
    let scale = 2.0 * field_theory::decay_rate(dim, mass);
    let scale_sq = scale * scale;
    let mut normalized = metric.clone();
    normalized.g /= scale_sq;
    normalized.error /= scale_sq;
    Ok((scale, normalized))
}

/// A Wick-rotated metric with its signature.
#[derive(Debug, Clone)]
pub struct WickRotated {
    pub metric: MetricResult,
    pub signature: Signature,
}

/// Rotate θ^a → iθ^a in the chosen components at the metric level: entries
/// with both indices rotated flip sign (i² = −1); entries with neither
/// index rotated are untouched. Entries with exactly one rotated index
/// would pick up a factor i, so they must already vanish within `tol`.
pub fn wick_rotate(metric: &MetricResult, rotate: &[usize], tol: f64) -> Result<WickRotated> {
    let n = metric.dim();
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::argument("tolerance must be nonnegative"));
    }
    let set: BTreeSet<usize> = rotate.iter().copied().collect();
    if let Some(&bad) = set.iter().find(|&&a| a >= n) {
        return Err(Error::argument(format!(
            "rotation index {bad} out of range for dimension {n}"
        )));
    }

    for a in 0..n {
        for b in (a + 1)..n {
            if set.contains(&a) != set.contains(&b) && metric.g[(a, b)].abs() > tol {
                return Err(Error::RotationInconsistency(format!(
                    "entry ({a},{b}) = {} couples a rotated and an unrotated index; \
                     the rotated line element would acquire imaginary cross terms",
                    metric.g[(a, b)]
                )));
            }
        }
    }

    let mut rotated = metric.clone();
    for a in 0..n {
        for b in 0..n {
            if set.contains(&a) && set.contains(&b) {
                rotated.g[(a, b)] = -rotated.g[(a, b)];
            }
        }
    }
    let signature = definiteness(&rotated.g)?;
    Ok(WickRotated {
        metric: rotated,
        signature,
    })
}
