//! Curvature diagnostics applied to actual Fisher metric fields: the
//! emergent metric must be flat whether sampled analytically or computed
//! by quadrature at every lattice point.

use infogeo_core::family::{Family, KleinGordonFamily};
use infogeo_core::fisher::{AnalyticMetric, MetricEstimator, QuadratureMetric};
use infogeo_core::geometry::{flatness_report, GridAxis, MetricField, Verdict};
use infogeo_core::integrate::QuadratureSpec;

#[test]
fn analytic_metric_field_is_flat_to_rounding() {
    let fam = KleinGordonFamily::new(3, 1.0, &[0.0; 3]).unwrap();
    let axes = vec![GridAxis::new(-1.0, 1.0, 7).unwrap(); 3];
    let field = MetricField::from_fn(axes, |theta| {
        AnalyticMetric.estimate(fam.with_theta(theta)?.as_ref())
    })
    .unwrap();
    let report = flatness_report(&field, 1e-9).unwrap();
    assert_eq!(report.verdict, Verdict::FlatWithinTol);
    assert!(report.max_abs_christoffel <= 1e-9);
    assert!(report.max_abs_riemann <= 1e-9);
}

#[test]
fn quadrature_metric_field_is_flat_within_noise() {
    let fam = KleinGordonFamily::new(3, 1.0, &[0.0; 3]).unwrap();
    let estimator = QuadratureMetric::new(QuadratureSpec::default()).at_theta(true);
    let axes = vec![GridAxis::new(-1.0, 1.0, 5).unwrap(); 3];
    let field = MetricField::from_fn(axes, |theta| {
        estimator.estimate(fam.with_theta(theta)?.as_ref())
    })
    .unwrap();
    // second differencing divides quadrature noise by spacing², hence the
    // looser tolerance for numerically sourced fields
    let report = flatness_report(&field, 1e-3).unwrap();
    assert_eq!(report.verdict, Verdict::FlatWithinTol);
    assert!(
        report.max_abs_riemann < 1e-3,
        "max |R| = {}",
        report.max_abs_riemann
    );
}
