//! Monte Carlo route: g_ab = E[s_a s_b] over samples drawn from the family.

use crate::error::Result;
use crate::family::Family;
use crate::integrate::{mc_expectation_vec, MonteCarloSpec};

use super::{symmetric_from_upper, MetricEstimator, MetricMethod, MetricResult};

/// Seeded Monte Carlo metric estimator. All N(N+1)/2 entries accumulate
/// over one shared sample stream; the per-entry error is the standard
/// error of the mean.
pub struct MonteCarloMetric {
    pub spec: MonteCarloSpec,
}

impl MonteCarloMetric {
    pub fn new(spec: MonteCarloSpec) -> Self {
        MonteCarloMetric { spec }
    }
}

impl MetricEstimator for MonteCarloMetric {
    fn method(&self) -> MetricMethod {
        MetricMethod::MonteCarlo
    }

    fn estimate(&self, family: &dyn Family) -> Result<MetricResult> {
        let n = family.param_dim();
        let n_outputs = n * (n + 1) / 2;
        let est = mc_expectation_vec(
            family,
            n_outputs,
            &|x, out| {
                let s = family.score(x).expect("sample dimension matches family");
                let mut idx = 0;
                for a in 0..n {
                    for b in a..n {
                        out[idx] = s[a] * s[b];
                        idx += 1;
                    }
                }
            },
            &self.spec,
        )?;

        let flat_index = |a: usize, b: usize| {
            // upper-triangle row-major offset of (a, b) with a <= b
            a * n - a * (a + 1) / 2 + b
        };
        let g = symmetric_from_upper(n, |a, b| est.values[flat_index(a, b)]);
        let error = symmetric_from_upper(n, |a, b| est.stderrs[flat_index(a, b)]);

        Ok(MetricResult {
            g,
            error,
            method: MetricMethod::MonteCarlo,
            meta: family.meta(),
            unconverged: false,
            evaluations: est.n_samples,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::KleinGordonFamily;

    #[test]
    fn kg_diagonal_is_exact_with_zero_stderr() {
        // the diagonal integrand s_a² equals 4c² almost surely, so the
        // estimator has zero variance and recovers the value exactly
        let fam = KleinGordonFamily::new(5, 1.0, &[0.0; 5]).unwrap();
        let res = MonteCarloMetric::new(MonteCarloSpec::new(10_000, 7))
            .estimate(&fam)
            .unwrap();
        // every sampled score component is ±2c, so each diagonal sample is
        // the same float (2c)² and the mean recovers it bit-exactly
        let c = 1.0 / 3.0f64.sqrt();
        let want = (2.0 * c) * (2.0 * c);
        assert!((want - 4.0 / 3.0).abs() < 1e-15);
        for a in 0..5 {
            assert_eq!(res.g[(a, a)], want, "diagonal entry {a}");
            assert_eq!(res.error[(a, a)], 0.0);
        }
    }

    #[test]
    fn kg_offdiagonal_within_four_stderr() {
        let fam = KleinGordonFamily::new(3, 1.0, &[0.0; 3]).unwrap();
        let res = MonteCarloMetric::new(MonteCarloSpec::new(100_000, 11))
            .estimate(&fam)
            .unwrap();
        for a in 0..3 {
            for b in 0..3 {
                if a != b {
                    assert!(
                        res.g[(a, b)].abs() <= 4.0 * res.error[(a, b)],
                        "entry ({a},{b}) = {} stderr {}",
                        res.g[(a, b)],
                        res.error[(a, b)]
                    );
                }
            }
        }
    }
}
