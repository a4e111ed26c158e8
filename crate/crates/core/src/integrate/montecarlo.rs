//! Seeded, reproducible Monte Carlo expectation under a product family.
//!
//! Reproducibility contract: the estimate is a pure function of
//! `(n_samples, seed)`. Three choices enforce this:
//!
//! * every sample draws from its own ChaCha8 stream, selected by the sample
//!   index, so no sample's randomness depends on scheduling;
//! * statistics accumulate per fixed-size microbatch (1024 samples) with
//!   Welford updates;
//! * microbatch accumulators merge sequentially in index order after the
//!   parallel phase.
//!
//! `chunk_size` and the rayon worker count therefore affect speed only.

use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::family::Family;

use super::{IntegralEstimate, IntegrationMethod, MonteCarloSpec};

const MICROBATCH: u64 = 1024;

/// Running mean/M2 accumulator over a fixed number of outputs.
#[derive(Clone)]
struct Accumulator {
    n: u64,
    mean: Vec<f64>,
    m2: Vec<f64>,
}

impl Accumulator {
    fn new(outputs: usize) -> Self {
        Accumulator {
            n: 0,
            mean: vec![0.0; outputs],
            m2: vec![0.0; outputs],
        }
    }

    fn update(&mut self, values: &[f64]) {
        self.n += 1;
        let inv_n = 1.0 / self.n as f64;
        for (i, &v) in values.iter().enumerate() {
            let delta = v - self.mean[i];
            self.mean[i] += delta * inv_n;
            self.m2[i] += delta * (v - self.mean[i]);
        }
    }

    /// Chan's pairwise combination. Exact for constant samples: a zero
    /// delta leaves both mean and M2 untouched.
    fn merge(&mut self, other: &Accumulator) {
        if other.n == 0 {
            return;
        }
        if self.n == 0 {
            *self = other.clone();
            return;
        }
        let n = self.n + other.n;
        let ratio = other.n as f64 / n as f64;
        for i in 0..self.mean.len() {
            let delta = other.mean[i] - self.mean[i];
            self.m2[i] += other.m2[i] + delta * delta * ratio * self.n as f64;
            self.mean[i] += delta * ratio;
        }
        self.n = n;
    }
}

/// Monte Carlo estimate of several expectations over one sample stream.
#[derive(Debug, Clone)]
pub struct McVecEstimate {
    pub values: Vec<f64>,
    /// Standard error of each mean (sample std / √n).
    pub stderrs: Vec<f64>,
    pub n_samples: u64,
}

/// Estimate `E[f_i(x)]` for `n_outputs` simultaneous outputs of `f` under
/// `x ~ family`, sampling by inverse transform on the product structure.
pub fn mc_expectation_vec(
    family: &dyn Family,
    n_outputs: usize,
    f: &(dyn Fn(&[f64], &mut [f64]) + Sync),
    spec: &MonteCarloSpec,
) -> Result<McVecEstimate> {
    if spec.n_samples < 1 {
        return Err(Error::argument("n_samples must be at least 1"));
    }
    if n_outputs == 0 {
        return Err(Error::argument("n_outputs must be at least 1"));
    }
    let structure = family.product_structure().ok_or_else(|| {
        Error::capability(format!(
            "family '{}' has no product structure to sample from",
            family.kind()
        ))
    })?;
    let dim = family.dim();
    let n = spec.n_samples;

    let base_rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n_micro = n.div_ceil(MICROBATCH);
    let micro_per_chunk = (spec.chunk_size.max(1)).div_ceil(MICROBATCH);
    let n_chunks = n_micro.div_ceil(micro_per_chunk);

    let chunk_accs: Vec<Vec<Accumulator>> = (0..n_chunks)
        .into_par_iter()
        .map(|chunk| {
            let first = chunk * micro_per_chunk;
            let last = (first + micro_per_chunk).min(n_micro);
            let mut accs = Vec::with_capacity((last - first) as usize);
            let mut x = vec![0.0f64; dim];
            let mut out = vec![0.0f64; n_outputs];
            for micro in first..last {
                let mut acc = Accumulator::new(n_outputs);
                let sample_end = ((micro + 1) * MICROBATCH).min(n);
                for sample in micro * MICROBATCH..sample_end {
                    let mut rng = base_rng.clone();
                    rng.set_stream(sample);
                    for (axis, slot) in x.iter_mut().enumerate() {
                        let u: f64 = rng.sample(Open01);
                        *slot = structure.factor(axis).inverse_cdf(u);
                    }
                    f(&x, &mut out);
                    acc.update(&out);
                }
                accs.push(acc);
            }
            accs
        })
        .collect();

    let mut total = Accumulator::new(n_outputs);
    for acc in chunk_accs.iter().flatten() {
        total.merge(acc);
    }

    let stderrs = total
        .m2
        .iter()
        .map(|&m2| {
            if total.n >= 2 {
                (m2 / (total.n - 1) as f64 / total.n as f64).sqrt()
            } else {
                0.0
            }
        })
        .collect();

    Ok(McVecEstimate {
        values: total.mean,
        stderrs,
        n_samples: total.n,
    })
}

/// Scalar convenience wrapper around [`mc_expectation_vec`].
pub fn mc_expectation(
    family: &dyn Family,
    f: &(dyn Fn(&[f64]) -> f64 + Sync),
    spec: &MonteCarloSpec,
) -> Result<IntegralEstimate> {
    let est = mc_expectation_vec(family, 1, &|x, out| out[0] = f(x), spec)?;
    Ok(IntegralEstimate {
        value: est.values[0],
        error_estimate: est.stderrs[0],
        evaluations: est.n_samples,
        method: IntegrationMethod::MonteCarlo,
    })
}
