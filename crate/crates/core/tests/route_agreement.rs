//! Separable vs tensor quadrature on the same integrands (normalization,
//! first moments, metric entries), within combined error estimates.

use infogeo_core::family::{Family, KleinGordonFamily};
use infogeo_core::fisher::{MetricEstimator, QuadratureMetric};
use infogeo_core::integrate::{integrate_rd_separable, integrate_rd_tensor, QuadratureSpec};

/// The tensor route's embedded Gauss/Kronrod estimate is conservative; at
/// D = 4 it can exhaust the refinement budget while the value itself is
/// well converged. Agreement is judged by the carried error bars either
/// way, so accept the best estimate.
fn tensor_or_best(
    f: &(dyn Fn(&[f64]) -> f64 + Sync),
    dim: usize,
    spec: &QuadratureSpec,
) -> (f64, f64) {
    match integrate_rd_tensor(f, dim, spec) {
        Ok(est) => (est.value, est.error_estimate),
        Err(infogeo_core::Error::Convergence {
            best,
            error_estimate,
            ..
        }) => (best, error_estimate),
        Err(other) => panic!("unexpected error: {other}"),
    }
}

#[test]
fn normalization_and_moment_agree_up_to_dim_4() {
    for dim in [3usize, 4] {
        let fam = KleinGordonFamily::new(dim, 1.0, &vec![0.0; dim]).unwrap();
        let c = fam.decay_rate();
        let splits = vec![vec![0.0]; dim];

        let sep_spec = QuadratureSpec::default().with_splits(splits.clone());
        let tensor_spec = QuadratureSpec::default()
            .with_tols(1e-6, 1e-8)
            .with_splits(splits);

        // normalization: Π c·e^{−2c|t|}
        let factor = move |t: f64| c * (-2.0 * c * t.abs()).exp();
        let factors: Vec<&(dyn Fn(f64) -> f64 + Sync)> = (0..dim)
            .map(|_| &factor as &(dyn Fn(f64) -> f64 + Sync))
            .collect();
        let sep = integrate_rd_separable(&factors, &sep_spec).unwrap();
        let density = |x: &[f64]| fam.density(x).unwrap();
        let (ten_value, ten_error) = tensor_or_best(&density, dim, &tensor_spec);
        assert!(
            (sep.value - ten_value).abs() <= sep.error_estimate + ten_error,
            "dim {dim} normalization: sep {} ten {ten_value} errs {} {ten_error}",
            sep.value,
            sep.error_estimate,
        );
        assert!(
            (ten_value - 1.0).abs() < 1e-5,
            "dim {dim}: tensor normalization {ten_value}"
        );

        // first moment of axis 0 (zero by symmetry)
        let moment_factors: Vec<Box<dyn Fn(f64) -> f64 + Sync>> = (0..dim)
            .map(|axis| {
                let lead = axis == 0;
                Box::new(move |t: f64| {
                    let base = c * (-2.0 * c * t.abs()).exp();
                    if lead {
                        t * base
                    } else {
                        base
                    }
                }) as Box<dyn Fn(f64) -> f64 + Sync>
            })
            .collect();
        let refs: Vec<&(dyn Fn(f64) -> f64 + Sync)> =
            moment_factors.iter().map(|f| f.as_ref()).collect();
        let sep_m = integrate_rd_separable(&refs, &sep_spec).unwrap();
        let moment = |x: &[f64]| x[0] * fam.density(x).unwrap();
        let (ten_m_value, ten_m_error) = tensor_or_best(&moment, dim, &tensor_spec);
        assert!(
            (sep_m.value - ten_m_value).abs() <= sep_m.error_estimate + ten_m_error,
            "dim {dim} moment: sep {} ten {ten_m_value}",
            sep_m.value,
        );
    }
}

#[test]
fn metric_entries_agree_up_to_dim_4() {
    for dim in [3usize, 4] {
        let fam = KleinGordonFamily::new(dim, 1.0, &vec![0.0; dim]).unwrap();
        let sep = QuadratureMetric::new(QuadratureSpec::default())
            .estimate(&fam)
            .unwrap();
        let ten = QuadratureMetric::new(QuadratureSpec::default().with_tols(1e-6, 1e-8))
            .force_tensor(true)
            .estimate(&fam)
            .unwrap();
        for a in 0..dim {
            for b in 0..dim {
                let bound = sep.error[(a, b)] + ten.error[(a, b)];
                assert!(
                    (sep.g[(a, b)] - ten.g[(a, b)]).abs() <= bound,
                    "dim {dim} entry ({a},{b}): sep {} ten {} bound {bound}",
                    sep.g[(a, b)],
                    ten.g[(a, b)]
                );
            }
        }
    }
}
