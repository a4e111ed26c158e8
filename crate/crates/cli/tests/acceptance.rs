//! Acceptance suite: one test per criterion, each printing a pass line
//! (run with `cargo test -p infogeo-cli --test acceptance -- --nocapture`
//! to see the measured values).

use std::process::{Command, Output};
use std::time::Instant;

use infogeo_core::family::{Family, GaussianFamily, KleinGordonFamily};
use infogeo_core::field_theory::KleinGordonSolution;
use infogeo_core::fisher::{
    coordinate_mean, coordinate_variance_report, fisher_metric, normalization_integral,
    normalize_coordinates, translation_invariance_check, wick_rotate, EstimatorOptions,
    MetricEstimator, MetricMethod, MomentRoute, QuadratureMetric,
};
use infogeo_core::geometry::{
    definiteness, fixtures, flatness_report, riemann, GridAxis, MetricField, Verdict,
};
use infogeo_core::integrate::{integrate_1d, MonteCarloSpec, QuadratureSpec};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn infogeo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_infogeo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn closed_form_metric(dim: usize, mass: f64) -> f64 {
    4.0 * mass * mass / (dim as f64 - 2.0)
}

#[test]
fn criterion_01_flat_metric_value() {
    let start = Instant::now();
    let opts = EstimatorOptions::default();
    let mut worst_diag = 0.0f64;
    let mut worst_offdiag = 0.0f64;
    for dim in [3usize, 4, 5] {
        for mass in [0.5, 1.0, 2.0] {
            let family = KleinGordonFamily::new(dim, mass, &vec![0.0; dim]).unwrap();
            let res = fisher_metric(&family, MetricMethod::Quadrature, &opts).unwrap();
            assert!(!res.unconverged);
            let want = closed_form_metric(dim, mass);
            for a in 0..dim {
                for b in 0..dim {
                    if a == b {
                        let dev = (res.g[(a, a)] - want).abs();
                        worst_diag = worst_diag.max(dev);
                        assert!(dev <= 1e-5, "dim {dim} mass {mass} diag dev {dev}");
                    } else {
                        let dev = res.g[(a, b)].abs();
                        worst_offdiag = worst_offdiag.max(dev);
                        assert!(dev <= 1e-6, "dim {dim} mass {mass} offdiag {dev}");
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}");
    println!(
        "criterion 01 PASS: flat metric value; worst diag dev {worst_diag:.3e}, worst offdiag {worst_offdiag:.3e}, {elapsed:?}"
    );
}

#[test]
fn criterion_02_normalization_constant() {
    let spec = QuadratureSpec::default();
    let mut worst = 0.0f64;
    for dim in [3usize, 4, 5] {
        for mass in [0.5, 1.0, 2.0] {
            let family = KleinGordonFamily::new(dim, mass, &vec![0.0; dim]).unwrap();
            let est = normalization_integral(&family, &spec).unwrap();
            let dev = (est.value - 1.0).abs();
            worst = worst.max(dev);
            assert!(dev <= 1e-6, "dim {dim} mass {mass}: ∫P = {}", est.value);
        }
    }
    println!(
        "criterion 02 PASS: normalization with closed-form amplitude; worst |∫P − 1| = {worst:.3e}"
    );
}

#[test]
fn criterion_03_gaussian_baseline() {
    let opts = EstimatorOptions::default();
    let mut worst = 0.0f64;
    for dim in [2usize, 3] {
        let family = GaussianFamily::new(dim, &vec![0.0; dim]).unwrap();
        let res = fisher_metric(&family, MetricMethod::Quadrature, &opts).unwrap();
        for a in 0..dim {
            for b in 0..dim {
                let want = if a == b { 2.0 } else { 0.0 };
                let dev = (res.g[(a, b)] - want).abs();
                worst = worst.max(dev);
                assert!(dev <= 1e-7, "dim {dim} entry ({a},{b}) dev {dev}");
            }
        }
    }
    println!("criterion 03 PASS: gaussian baseline metric 2δ; worst dev {worst:.3e}");
}

#[test]
fn criterion_04_moments_with_discrepancy_flag() {
    let opts = EstimatorOptions::default();

    // E[x^μ] = θ^μ at the stated θ
    let theta = [0.3, -1.2, 0.0];
    let family = KleinGordonFamily::new(3, 1.0, &theta).unwrap();
    for (axis, want) in theta.iter().enumerate() {
        let mean = coordinate_mean(&family, axis, MomentRoute::Quadrature, &opts).unwrap();
        assert!(
            (mean.value - want).abs() <= 1e-6,
            "axis {axis}: mean {}",
            mean.value
        );
    }

    // V[x^μ] against an independent 1D quadrature oracle for the marginal
    // c·e^{−2c|t|}, plus the documented alternative-formula behavior
    for dim in [3usize, 4, 5] {
        let mass = 1.0;
        let c = mass / ((dim - 2) as f64).sqrt();
        let oracle_spec = QuadratureSpec::default().with_splits_1d(vec![0.0]);
        let oracle = integrate_1d(
            |t| t * t * c * (-2.0 * c * t.abs()).exp(),
            (f64::NEG_INFINITY, f64::INFINITY),
            &oracle_spec,
        )
        .unwrap();
        assert!(
            (oracle.value - (dim as f64 - 2.0) / (2.0 * mass * mass)).abs() <= 1e-9,
            "oracle disagrees with its closed form"
        );

        let family = KleinGordonFamily::new(dim, mass, &vec![0.0; dim]).unwrap();
        let report =
            coordinate_variance_report(&family, 0, MomentRoute::Quadrature, &opts).unwrap();
        assert!(
            (report.variance.value - oracle.value).abs() <= 1e-6,
            "dim {dim}: V = {} vs oracle {}",
            report.variance.value,
            oracle.value
        );
        match dim {
            3 | 4 => assert!(!report.discrepancy, "dim {dim} flagged unexpectedly"),
            5 => {
                assert!(report.discrepancy, "dim 5 must flag the discrepancy");
                let alt = report.alt_closed_form.unwrap();
                assert!((report.variance.value - 1.5).abs() <= 1e-6);
                assert!((alt - 0.8660254037844386).abs() <= 1e-12);
            }
            _ => unreachable!(),
        }
    }
    println!("criterion 04 PASS: moments match θ and the 1D oracle; dim-5 discrepancy flagged (1.5 vs 0.866)");
}

#[test]
fn criterion_05_translation_invariance() {
    let family = KleinGordonFamily::new(3, 1.0, &[0.0; 3]).unwrap();
    let thetas = vec![
        vec![0.0, 0.0, 0.0],
        vec![0.3, -1.2, 0.0],
        vec![2.0, 2.0, 2.0],
    ];
    let report =
        translation_invariance_check(&family, &thetas, &QuadratureSpec::default()).unwrap();
    assert!(
        report.max_deviation <= 2e-6,
        "max deviation {}",
        report.max_deviation
    );
    println!(
        "criterion 05 PASS: translation invariance; max |g(θ) − g(0)| = {:.3e}",
        report.max_deviation
    );
}

#[test]
fn criterion_06_eom_residual() {
    let sol = KleinGordonSolution::normalized(3, 1.0, &[0.0; 3]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(611);
    let h = 1e-3;
    let mut worst_rel = 0.0f64;
    let mut ratio_checks = 0;
    let mut checked = 0;
    while checked < 100 {
        let x: Vec<f64> = (0..3).map(|_| rng.random_range(-3.0..3.0)).collect();
        if x.iter().any(|&xi| xi.abs() <= 2.0 * 2.0 * h) {
            continue;
        }
        let phi = sol.field_value(&x).unwrap();
        let r1 = sol.eom_residual(&x, h).unwrap();
        assert!(r1.abs() <= 1e-5 * phi, "residual {r1} vs φ {phi} at {x:?}");
        worst_rel = worst_rel.max(r1.abs() / phi);
        if checked < 10 {
            let r2 = sol.eom_residual(&x, 2.0 * h).unwrap();
            let ratio = (r2 / r1).abs();
            assert!(
                (ratio - 4.0).abs() <= 0.4,
                "h-doubling ratio {ratio} at {x:?}"
            );
            ratio_checks += 1;
        }
        checked += 1;
    }
    println!(
        "criterion 06 PASS: EOM residual ≤ 1e-5·φ at 100 points (worst {worst_rel:.3e}); h² convergence at {ratio_checks} points"
    );
}

#[test]
fn criterion_07_method_cross_validation() {
    let opts = EstimatorOptions {
        mc: MonteCarloSpec::new(1_000_000, 20_240_402),
        ..Default::default()
    };
    for dim in [3usize, 5] {
        let family = KleinGordonFamily::new(dim, 1.0, &vec![0.0; dim]).unwrap();
        let analytic = fisher_metric(&family, MetricMethod::Analytic, &opts).unwrap();
        let montecarlo = fisher_metric(&family, MetricMethod::MonteCarlo, &opts).unwrap();
        for a in 0..dim {
            // zero-variance estimator: bit-for-bit the closed form
            assert_eq!(
                montecarlo.g[(a, a)],
                analytic.g[(a, a)],
                "dim {dim} diagonal {a} not exact"
            );
            assert_eq!(montecarlo.error[(a, a)], 0.0);
            for b in 0..dim {
                if a != b {
                    assert!(
                        montecarlo.g[(a, b)].abs() <= 4.0 * montecarlo.error[(a, b)],
                        "dim {dim} offdiag ({a},{b}): {} stderr {}",
                        montecarlo.g[(a, b)],
                        montecarlo.error[(a, b)]
                    );
                }
            }
        }

        let fdscore = fisher_metric(&family, MetricMethod::FdScore, &opts).unwrap();
        for a in 0..dim {
            for b in 0..dim {
                assert!(
                    (fdscore.g[(a, b)] - analytic.g[(a, b)]).abs() <= 1e-4,
                    "dim {dim} fdscore ({a},{b}): {} vs {}",
                    fdscore.g[(a, b)],
                    analytic.g[(a, b)]
                );
            }
        }
    }
    println!("criterion 07 PASS: Monte Carlo diag exact / offdiag within 4σ; FD-score within 1e-4");
}

#[test]
fn criterion_08_curvature_flatness() {
    // analytic field on a 7³ grid
    let family = KleinGordonFamily::new(3, 1.0, &[0.0; 3]).unwrap();
    let opts = EstimatorOptions::default();
    let axes = vec![GridAxis::new(-1.0, 1.0, 7).unwrap(); 3];
    let field = MetricField::from_fn(axes, |theta| {
        fisher_metric(
            family.with_theta(theta)?.as_ref(),
            MetricMethod::Analytic,
            &opts,
        )
    })
    .unwrap();
    let analytic_report = flatness_report(&field, 1e-9).unwrap();
    assert_eq!(analytic_report.verdict, Verdict::FlatWithinTol);

    // quadrature-sourced field on a 5³ grid
    let estimator = QuadratureMetric::new(QuadratureSpec::default()).at_theta(true);
    let axes = vec![GridAxis::new(-1.0, 1.0, 5).unwrap(); 3];
    let field = MetricField::from_fn(axes, |theta| {
        estimator.estimate(family.with_theta(theta)?.as_ref())
    })
    .unwrap();
    let quad_report = flatness_report(&field, 1e-3).unwrap();
    assert_eq!(quad_report.verdict, Verdict::FlatWithinTol);

    // 2-sphere pipeline oracle: R⁰_101 = sin²θ⁰ within 2%
    let sphere = fixtures::sphere_field(
        GridAxis::new(0.6, 1.4, 17).unwrap(),
        GridAxis::new(0.0, 0.8, 17).unwrap(),
    )
    .unwrap();
    let r = riemann(&sphere, &[8, 8]).unwrap();
    let want = 1.0f64.sin().powi(2);
    let got = r.get(0, 1, 0, 1);
    assert!(
        (got - want).abs() <= 0.02 * want,
        "sphere R⁰_101 = {got}, want {want}"
    );
    println!(
        "criterion 08 PASS: flatness analytic (max {:.2e}) and quadrature (max {:.2e}); sphere R⁰_101 = {got:.6} vs {want:.6}",
        analytic_report.max_abs_riemann.max(analytic_report.max_abs_christoffel),
        quad_report.max_abs_riemann.max(quad_report.max_abs_christoffel),
    );
}

#[test]
fn criterion_09_rescale_then_wick() {
    let opts = EstimatorOptions::default();
    for (dim, mass) in [(3usize, 1.0), (4, 2.0), (6, 0.5)] {
        let family = KleinGordonFamily::new(dim, mass, &vec![0.0; dim]).unwrap();
        let metric = fisher_metric(&family, MetricMethod::Analytic, &opts).unwrap();
        let (_scale, normalized) = normalize_coordinates(&metric, dim, mass).unwrap();
        let rotate: Vec<usize> = (1..dim).collect();
        let rotated = wick_rotate(&normalized, &rotate, 1e-9).unwrap();
        for a in 0..dim {
            for b in 0..dim {
                let want = if a != b {
                    0.0
                } else if a == 0 {
                    1.0
                } else {
                    -1.0
                };
                assert_eq!(
                    rotated.metric.g[(a, b)],
                    want,
                    "dim {dim} mass {mass} entry ({a},{b})"
                );
            }
        }
        let sig = definiteness(&rotated.metric.g).unwrap();
        assert_eq!((sig.n_plus, sig.n_minus, sig.n_zero), (1, dim - 1, 0));
    }
    println!(
        "criterion 09 PASS: rescale + Wick yields exactly diag(1, −1, …); signature (1, D−1, 0)"
    );
}

#[test]
fn criterion_10_dim_2_rejection() {
    match KleinGordonFamily::new(2, 1.0, &[0.0; 2]) {
        Err(infogeo_core::Error::Domain(_)) => {}
        Err(other) => panic!("expected a domain error, got {other}"),
        Ok(_) => panic!("dim-2 family must not construct"),
    }

    let out = infogeo(&["metric", "--family", "kg", "--dim", "2", "--mass", "1"]);
    assert_eq!(out.status.code(), Some(2));
    println!("criterion 10 PASS: dim-2 construction is a domain error; CLI exits 2");
}

#[test]
fn criterion_11_figure_grid() {
    let out = infogeo(&[
        "grid",
        "--family",
        "kg",
        "--dim",
        "3",
        "--mass",
        "1",
        "--theta",
        "0,1,0",
        "--half-width",
        "2",
        "--points",
        "41",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    let mut rows: Vec<(f64, f64, f64)> = Vec::new();
    for line in text.lines().skip(1) {
        let f: Vec<f64> = line.split(',').map(|t| t.parse().unwrap()).collect();
        rows.push((f[0], f[1], f[2]));
    }
    assert_eq!(rows.len(), 41 * 41);

    // peak sits at (θ⁰, θ¹) = (0, 1) with value A²m² = 1
    let peak = rows
        .iter()
        .cloned()
        .max_by(|a, b| a.2.partial_cmp(&b.2).unwrap())
        .unwrap();
    assert_eq!((peak.0, peak.1), (0.0, 1.0), "peak at {peak:?}");
    assert!((peak.2 - 1.0).abs() < 1e-12, "peak value {}", peak.2);

    // half-width at 1/e along each axis is 0.5 ± one grid cell (0.1)
    let inv_e = (-1.0f64).exp();
    for (dist_of, label) in [
        (
            rows.iter()
                .filter(|r| r.1 == 1.0 && r.0 > 0.0 && r.2 <= inv_e * 1.0000001)
                .map(|r| r.0)
                .fold(f64::INFINITY, f64::min),
            "x0",
        ),
        (
            rows.iter()
                .filter(|r| r.0 == 0.0 && r.1 > 1.0 && r.2 <= inv_e * 1.0000001)
                .map(|r| r.1 - 1.0)
                .fold(f64::INFINITY, f64::min),
            "x1",
        ),
    ] {
        assert!(
            (dist_of - 0.5).abs() <= 0.1 + 1e-12,
            "{label} half-width {dist_of}"
        );
    }
    println!(
        "criterion 11 PASS: grid peak 1.0 at (0,1); 1/e half-width 0.5 ± one cell on both axes"
    );
}

#[test]
fn criterion_12_determinism_across_workers() {
    fn args_for(workers: &str) -> [&str; 13] {
        [
            "metric",
            "--family",
            "kg",
            "--dim",
            "3",
            "--method",
            "montecarlo",
            "--samples",
            "100000",
            "--seed",
            "42",
            "--workers",
            workers,
        ]
    }
    let one = infogeo(&args_for("1"));
    let two = infogeo(&args_for("2"));
    let eight = infogeo(&args_for("8"));
    assert!(one.status.success());
    assert_eq!(one.stdout, two.stdout, "1 vs 2 workers differ");
    assert_eq!(one.stdout, eight.stdout, "1 vs 8 workers differ");

    // repeated runs are bit-identical too
    let again = infogeo(&args_for("8"));
    assert_eq!(one.stdout, again.stdout);
    println!("criterion 12 PASS: seeded Monte Carlo byte-identical across 1, 2, 8 workers");
}
