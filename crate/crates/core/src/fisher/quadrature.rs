//! Quadrature route: g_ab = ∫ (∂_aP ∂_bP)/P d^Dx, evaluated through the
//! analytic score identity ∂_aP = P·(∂_a ln P).

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::family::Family;
use crate::integrate::{integrate_1d, integrate_rd_tensor, QuadratureSpec};

use super::{symmetric_from_upper, MetricEstimator, MetricMethod, MetricResult};

/// One 1D integral with convergence bookkeeping.
#[derive(Debug, Clone, Copy)]
pub(crate) struct AxisIntegral {
    pub value: f64,
    pub error: f64,
    pub evaluations: u64,
    pub unconverged: bool,
}

/// Run a 1D integral over ℝ, downgrading a convergence failure to its best
/// estimate plus a flag.
pub(crate) fn integrate_axis<F: Fn(f64) -> f64>(
    f: F,
    splits: &[f64],
    spec: &QuadratureSpec,
) -> Result<AxisIntegral> {
    let axis_spec = QuadratureSpec {
        split_points: vec![splits.to_vec()],
        ..spec.clone()
    };
    match integrate_1d(f, (f64::NEG_INFINITY, f64::INFINITY), &axis_spec) {
        Ok(est) => Ok(AxisIntegral {
            value: est.value,
            error: est.error_estimate,
            evaluations: est.evaluations,
            unconverged: false,
        }),
        Err(Error::Convergence {
            best,
            error_estimate,
            ..
        }) => Ok(AxisIntegral {
            value: best,
            error: error_estimate,
            evaluations: 0,
            unconverged: true,
        }),
        Err(other) => Err(other),
    }
}

/// Value and first-order error of a product of independent estimates:
/// err = Σ_μ e_μ · Π_{ν≠μ} |v_ν|.
pub(crate) fn product_with_error(parts: &[(f64, f64)]) -> (f64, f64) {
    let value: f64 = parts.iter().map(|(v, _)| v).product();
    let mut error = 0.0;
    for mu in 0..parts.len() {
        let others: f64 = parts
            .iter()
            .enumerate()
            .filter(|&(nu, _)| nu != mu)
            .map(|(_, (v, _))| v.abs())
            .product();
        error += parts[mu].1 * others;
    }
    (value, error)
}

/// Metric of a product density from per-axis moment integrals:
/// I0 = ∫p, I1 = ∫p·s, I2 = ∫p·s², then
/// g_aa = I2_a·Π_{μ≠a}I0_μ and g_ab = I1_a·I1_b·Π_{μ∉{a,b}}I0_μ.
pub(crate) fn separable_metric<'a>(
    densities: &[Box<dyn Fn(f64) -> f64 + Sync + 'a>],
    scores: &[Box<dyn Fn(f64) -> f64 + Sync + 'a>],
    splits: &[Vec<f64>],
    spec: &QuadratureSpec,
) -> Result<(DMatrix<f64>, DMatrix<f64>, u64, bool)> {
    let n = densities.len();
    let mut i0 = Vec::with_capacity(n);
    let mut i1 = Vec::with_capacity(n);
    let mut i2 = Vec::with_capacity(n);
    for axis in 0..n {
        let p = &densities[axis];
        let s = &scores[axis];
        let sp = &splits[axis];
        i0.push(integrate_axis(p.as_ref(), sp, spec)?);
        i1.push(integrate_axis(|t| p(t) * s(t), sp, spec)?);
        i2.push(integrate_axis(|t| p(t) * s(t) * s(t), sp, spec)?);
    }

    let evaluations: u64 = i0
        .iter()
        .chain(&i1)
        .chain(&i2)
        .map(|ai| ai.evaluations)
        .sum();
    let unconverged = i0.iter().chain(&i1).chain(&i2).any(|ai| ai.unconverged);

    let parts_for = |a: usize, b: usize| -> Vec<(f64, f64)> {
        (0..n)
            .map(|mu| {
                let ai = if mu == a && mu == b {
                    &i2[mu]
                } else if mu == a || mu == b {
                    &i1[mu]
                } else {
                    &i0[mu]
                };
                (ai.value, ai.error)
            })
            .collect()
    };

    let mut error = DMatrix::zeros(n, n);
    let g = symmetric_from_upper(n, |a, b| {
        let (value, err) = product_with_error(&parts_for(a, b));
        error[(a, b)] = err;
        error[(b, a)] = err;
        value
    });
    Ok((g, error, evaluations, unconverged))
}

/// Metric entries as full tensor-product integrals of P·s_a·s_b over ℝ^D.
pub(crate) fn tensor_metric(
    dim: usize,
    entry_integrand: &(dyn Fn(&[f64], usize, usize) -> f64 + Sync),
    splits: Vec<Vec<f64>>,
    spec: &QuadratureSpec,
) -> Result<(DMatrix<f64>, DMatrix<f64>, u64, bool)> {
    let spec = QuadratureSpec {
        split_points: splits,
        ..spec.clone()
    };
    let mut error = DMatrix::zeros(dim, dim);
    let mut evaluations = 0u64;
    let mut unconverged = false;
    let mut g = DMatrix::zeros(dim, dim);
    for a in 0..dim {
        for b in a..dim {
            let f = |x: &[f64]| entry_integrand(x, a, b);
            let (value, err) = match integrate_rd_tensor(&f, dim, &spec) {
                Ok(est) => {
                    evaluations += est.evaluations;
                    (est.value, est.error_estimate)
                }
                Err(Error::Convergence {
                    best,
                    error_estimate,
                    ..
                }) => {
                    unconverged = true;
                    (best, error_estimate)
                }
                Err(other) => return Err(other),
            };
            g[(a, b)] = value;
            g[(b, a)] = value;
            error[(a, b)] = err;
            error[(b, a)] = err;
        }
    }
    Ok((g, error, evaluations, unconverged))
}

/// Adaptive-quadrature metric estimator.
///
/// For product families each entry reduces to a product of 1D integrals;
/// otherwise (or when forced) entries are integrated as full D-dimensional
/// tensor products, which restricts the dimension to 5.
///
/// By default the integral is evaluated at θ = 0, relying on the shift
/// identity g(θ) = g(0) of location families; `at_theta` integrates at the
/// family's own θ instead, which is what the translation-invariance check
/// uses to validate that reliance rather than assume it.
pub struct QuadratureMetric {
    pub spec: QuadratureSpec,
    pub at_theta: bool,
    pub force_tensor: bool,
}

impl QuadratureMetric {
    pub fn new(spec: QuadratureSpec) -> Self {
        QuadratureMetric {
            spec,
            at_theta: false,
            force_tensor: false,
        }
    }

    pub fn at_theta(mut self, yes: bool) -> Self {
        self.at_theta = yes;
        self
    }

    pub fn force_tensor(mut self, yes: bool) -> Self {
        self.force_tensor = yes;
        self
    }
}

impl MetricEstimator for QuadratureMetric {
    fn method(&self) -> MetricMethod {
        MetricMethod::Quadrature
    }

    fn estimate(&self, family: &dyn Family) -> Result<MetricResult> {
        let shifted;
        let working: &dyn Family = if self.at_theta {
            family
        } else {
            shifted = family.with_theta(&vec![0.0; family.param_dim()])?;
            shifted.as_ref()
        };

        let (g, error, evaluations, unconverged) = match working.product_structure() {
            Some(structure) if !self.force_tensor => {
                let n = structure.dim();
                let densities: Vec<Box<dyn Fn(f64) -> f64 + Sync>> = (0..n)
                    .map(|a| {
                        let f = structure.factor(a);
                        Box::new(move |t: f64| f.density(t)) as Box<dyn Fn(f64) -> f64 + Sync>
                    })
                    .collect();
                let scores: Vec<Box<dyn Fn(f64) -> f64 + Sync>> = (0..n)
                    .map(|a| {
                        let f = structure.factor(a);
                        Box::new(move |t: f64| f.score(t)) as Box<dyn Fn(f64) -> f64 + Sync>
                    })
                    .collect();
                let splits: Vec<Vec<f64>> = (0..n).map(|a| structure.factor(a).kinks()).collect();
                separable_metric(&densities, &scores, &splits, &self.spec)?
            }
            _ => {
                let dim = working.dim();
                let splits: Vec<Vec<f64>> = match working.product_structure() {
                    Some(structure) => (0..dim).map(|a| structure.factor(a).kinks()).collect(),
                    None => vec![Vec::new(); dim],
                };
                let integrand = |x: &[f64], a: usize, b: usize| {
                    let p = working.density(x).expect("dimension matches");
                    let s = working.score(x).expect("dimension matches");
                    p * s[a] * s[b]
                };
                tensor_metric(dim, &integrand, splits, &self.spec)?
            }
        };

        Ok(MetricResult {
            g,
            error,
            method: MetricMethod::Quadrature,
            meta: family.meta(),
            unconverged,
            evaluations,
        })
    }
}
