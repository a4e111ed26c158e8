//! The Monte Carlo reproducibility contract: estimates are a pure function
//! of (n_samples, seed) — independent of worker count and chunking — and
//! consistent with quadrature.

use infogeo_core::family::KleinGordonFamily;
use infogeo_core::fisher::{coordinate_mean, EstimatorOptions, MomentRoute};
use infogeo_core::integrate::{mc_expectation, MonteCarloSpec, QuadratureSpec};

fn sample_mean(fam: &KleinGordonFamily, spec: &MonteCarloSpec) -> (u64, u64) {
    let f = |x: &[f64]| x[0] + 0.25 * x[1] * x[2];
    let est = mc_expectation(fam, &f, spec).unwrap();
    (est.value.to_bits(), est.error_estimate.to_bits())
}

#[test]
fn bit_identical_across_worker_counts() {
    let fam = KleinGordonFamily::new(3, 1.0, &[0.3, -1.2, 0.0]).unwrap();
    let spec = MonteCarloSpec::new(100_000, 42);
    let mut results = Vec::new();
    for workers in [1usize, 2, 8] {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .unwrap();
        results.push(pool.install(|| sample_mean(&fam, &spec)));
    }
    assert_eq!(results[0], results[1], "1 vs 2 workers");
    assert_eq!(results[0], results[2], "1 vs 8 workers");
}

#[test]
fn bit_identical_across_chunk_sizes() {
    let fam = KleinGordonFamily::new(3, 1.0, &[0.3, -1.2, 0.0]).unwrap();
    // 99_001 samples: not a multiple of any chunking below
    let base = MonteCarloSpec {
        n_samples: 99_001,
        seed: 7,
        chunk_size: 65_536,
    };
    let reference = sample_mean(&fam, &base);
    for chunk_size in [1, 1024, 4096, 10_000, 1_000_000] {
        let spec = MonteCarloSpec { chunk_size, ..base };
        assert_eq!(
            sample_mean(&fam, &spec),
            reference,
            "chunk_size {chunk_size}"
        );
    }
}

#[test]
fn constant_integrand_is_exact() {
    let fam = KleinGordonFamily::new(3, 1.0, &[0.0; 3]).unwrap();
    let est = mc_expectation(&fam, &|_x| 1.0, &MonteCarloSpec::new(10_000, 0)).unwrap();
    assert_eq!(est.value, 1.0);
    assert_eq!(est.error_estimate, 0.0);
}

#[test]
fn matches_quadrature_within_four_stderr_over_twenty_seeds() {
    let fam = KleinGordonFamily::new(3, 1.0, &[0.3, -1.2, 0.0]).unwrap();
    let opts = EstimatorOptions::default();
    let mean_q = coordinate_mean(&fam, 0, MomentRoute::Quadrature, &opts).unwrap();
    // E[(x⁰)²] by 1D quadrature on the marginal (rate 2c = 2 here)
    let quad_spec = QuadratureSpec::default().with_splits_1d(vec![0.3]);
    let second_q = {
        use infogeo_core::family::{LaplaceFactor, MarginalFactor};
        let factor = LaplaceFactor::new(0.3, 2.0);
        infogeo_core::integrate::integrate_1d(
            |t| t * t * factor.density(t),
            (f64::NEG_INFINITY, f64::INFINITY),
            &quad_spec,
        )
        .unwrap()
    };

    for seed in 0..20u64 {
        let spec = MonteCarloSpec::new(50_000, seed);
        let m = mc_expectation(&fam, &|x| x[0], &spec).unwrap();
        assert!(
            (m.value - mean_q.value).abs() <= 4.0 * m.error_estimate,
            "seed {seed}: E[x⁰] = {} vs {} ± {}",
            m.value,
            mean_q.value,
            m.error_estimate
        );
        let m2 = mc_expectation(&fam, &|x| x[0] * x[0], &spec).unwrap();
        assert!(
            (m2.value - second_q.value).abs() <= 4.0 * m2.error_estimate,
            "seed {seed}: E[(x⁰)²] = {} vs {} ± {}",
            m2.value,
            second_q.value,
            m2.error_estimate
        );
    }
}
