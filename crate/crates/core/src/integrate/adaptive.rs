//! Adaptive 1D quadrature over finite, semi-infinite, and infinite intervals.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

use super::gauss_kronrod::{g7k15, PANEL_EVALS};
use super::{IntegralEstimate, IntegrationMethod, QuadratureSpec};

struct Segment {
    a: f64,
    b: f64,
    integral: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .partial_cmp(&other.error)
            .unwrap_or(Ordering::Equal)
    }
}

/// Integrate `f` over `interval`, endpoints may be ±∞.
///
/// Infinite endpoints are handled by the compactification map from
/// [`QuadratureSpec`]; the interval is pre-split at `split_points` (axis 0)
/// so each quadrature panel sees a smooth integrand, then panels are
/// subdivided adaptively until the embedded error estimate satisfies
/// `max(abs_tol, rel_tol · |value|)`.
pub fn integrate_1d<F>(
    f: F,
    interval: (f64, f64),
    spec: &QuadratureSpec,
) -> Result<IntegralEstimate>
where
    F: Fn(f64) -> f64,
{
    spec.validate()?;
    let (lo, hi) = interval;
    if lo.is_nan() || hi.is_nan() {
        return Err(Error::argument("integration endpoints must not be NaN"));
    }
    if lo > hi {
        return Err(Error::argument("integration interval is reversed"));
    }
    if lo == hi {
        return Ok(IntegralEstimate {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
            method: IntegrationMethod::Adaptive1d,
        });
    }

    let map = spec.compactification;
    let splits = spec.splits_for_axis(0);

    // Reduce everything to a finite working interval [wa, wb] and an
    // integrand g on it.
    let (wa, wb, offset): (f64, f64, f64) = match (lo.is_infinite(), hi.is_infinite()) {
        (false, false) => (lo, hi, 0.0),
        (true, true) => (-1.0, 1.0, 0.0),
        (false, true) => (0.0, 1.0, lo),
        (true, false) => (-1.0, 0.0, hi),
    };
    let compactified = lo.is_infinite() || hi.is_infinite();

    let g = |u: f64| -> f64 {
        if compactified {
            f(offset + map.forward(u)) * map.jacobian(u)
        } else {
            f(u)
        }
    };

    // Panel boundaries: endpoints plus interior split images, sorted.
    let mut boundaries = vec![wa, wb];
    for &s in splits {
        let w = if compactified {
            map.inverse(s - offset)
        } else {
            s
        };
        if w > wa && w < wb {
            boundaries.push(w);
        }
    }
    boundaries.sort_by(|x, y| x.partial_cmp(y).unwrap());
    boundaries.dedup();

    let mut heap = BinaryHeap::new();
    let mut evaluations = 0u64;
    for pair in boundaries.windows(2) {
        let est = g7k15(&g, pair[0], pair[1]);
        evaluations += PANEL_EVALS;
        heap.push(Segment {
            a: pair[0],
            b: pair[1],
            integral: est.integral,
            error: est.error,
        });
    }

    let mut total_value: f64 = heap.iter().map(|s| s.integral).sum();
    let mut total_error: f64 = heap.iter().map(|s| s.error).sum();
    let mut subdivisions = 0usize;

    while total_error > spec.tolerance_for(total_value) && subdivisions < spec.max_subdivisions {
        let worst = match heap.pop() {
            Some(s) => s,
            None => break,
        };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Panel no longer bisectable in f64; put it back and stop.
            heap.push(worst);
            break;
        }
        let left = g7k15(&g, worst.a, mid);
        let right = g7k15(&g, mid, worst.b);
        evaluations += 2 * PANEL_EVALS;
        total_value += left.integral + right.integral - worst.integral;
        total_error += left.error + right.error - worst.error;
        heap.push(Segment {
            a: worst.a,
            b: mid,
            integral: left.integral,
            error: left.error,
        });
        heap.push(Segment {
            a: mid,
            b: worst.b,
            integral: right.integral,
            error: right.error,
        });
        subdivisions += 1;
    }

    // Re-sum from the segments to shed accumulated update rounding.
    let value: f64 = heap.iter().map(|s| s.integral).sum();
    let error_estimate: f64 = heap.iter().map(|s| s.error).sum();

    if !value.is_finite() {
        return Err(Error::Convergence {
            best: value,
            error_estimate,
            detail: "integrand produced non-finite values".into(),
        });
    }
    if error_estimate > spec.tolerance_for(value) {
        return Err(Error::Convergence {
            best: value,
            error_estimate,
            detail: format!("subdivision budget {} exhausted", spec.max_subdivisions),
        });
    }

    Ok(IntegralEstimate {
        value,
        error_estimate,
        evaluations,
        method: IntegrationMethod::Adaptive1d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrate::Compactification;

    const INF: f64 = f64::INFINITY;

    #[test]
    fn two_sided_exponential_normalizes() {
        // 2 ∫_0^∞ e^{-2t} dt = 1, kink at 0 declared
        let spec = QuadratureSpec::default().with_splits_1d(vec![0.0]);
        let est = integrate_1d(|t| (-2.0 * t.abs()).exp(), (-INF, INF), &spec).unwrap();
        assert!((est.value - 1.0).abs() < 1e-10, "value {}", est.value);
    }

    #[test]
    fn second_moment_of_two_sided_exponential() {
        // oracle: 2 ∫_0^∞ t² e^{-2t} dt = 2 · Γ(3)/2³ = 0.5
        let spec = QuadratureSpec::default().with_splits_1d(vec![0.0]);
        let est = integrate_1d(|t| t * t * (-2.0 * t.abs()).exp(), (-INF, INF), &spec).unwrap();
        assert!((est.value - 0.5).abs() < 1e-9, "value {}", est.value);
    }

    #[test]
    fn constant_on_unit_interval() {
        let est = integrate_1d(|_| 1.0, (0.0, 1.0), &QuadratureSpec::default()).unwrap();
        assert_eq!(est.value, 1.0);
    }

    #[test]
    fn gaussian_under_both_maps() {
        for map in [Compactification::RationalMap, Compactification::TanhMap] {
            let spec = QuadratureSpec::default().with_compactification(map);
            let est = integrate_1d(|t| (-t * t).exp(), (-INF, INF), &spec).unwrap();
            let sqrt_pi = std::f64::consts::PI.sqrt();
            assert!(
                (est.value - sqrt_pi).abs() < 1e-9,
                "{map:?}: value {} vs {}",
                est.value,
                sqrt_pi
            );
        }
    }

    #[test]
    fn semi_infinite_exponential() {
        let est = integrate_1d(|t| (-t).exp(), (0.0, INF), &QuadratureSpec::default()).unwrap();
        assert!((est.value - 1.0).abs() < 1e-10);
        let est = integrate_1d(|t| t.exp(), (-INF, 1.0), &QuadratureSpec::default()).unwrap();
        assert!((est.value - 1.0f64.exp()).abs() < 1e-9);
    }

    #[test]
    fn shifted_kink_with_split_declared() {
        // ∫ c e^{-2c|t-s|} dt = 1 for any shift s
        for &s in &[-3.25, 0.0, 1.7, 4.0] {
            let spec = QuadratureSpec::default().with_splits_1d(vec![s]);
            let est =
                integrate_1d(|t| 0.7 * (-1.4 * (t - s).abs()).exp(), (-INF, INF), &spec).unwrap();
            assert!((est.value - 1.0).abs() < 1e-9, "shift {s}: {}", est.value);
        }
    }

    #[test]
    fn budget_exhaustion_reports_best_estimate() {
        let spec = QuadratureSpec {
            rel_tol: 1e-15,
            abs_tol: 1e-18,
            max_subdivisions: 1,
            ..Default::default()
        };
        let err = integrate_1d(|t| (-t * t).exp(), (-INF, INF), &spec).unwrap_err();
        match err {
            Error::Convergence { best, .. } => {
                assert!((best - std::f64::consts::PI.sqrt()).abs() < 1e-2);
            }
            other => panic!("expected convergence error, got {other:?}"),
        }
    }

    #[test]
    fn reversed_interval_rejected() {
        assert!(matches!(
            integrate_1d(|_| 1.0, (1.0, 0.0), &QuadratureSpec::default()),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn empty_interval_is_zero() {
        let est = integrate_1d(|_| 5.0, (2.0, 2.0), &QuadratureSpec::default()).unwrap();
        assert_eq!(est.value, 0.0);
    }
}
