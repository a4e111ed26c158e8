//! Differential-geometry diagnostics on a metric sampled over parameter
//! space: finite-difference Christoffel symbols and Riemann curvature,
//! flatness certification, and signature analysis.

mod curvature;
pub mod fixtures;
mod tensors;

pub use curvature::{christoffel, flatness_report, riemann, CurvatureReport, Verdict};
pub use tensors::{Tensor3, Tensor4};

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::fisher::MetricResult;

/// One axis of a regular lattice in parameter space.
#[derive(Debug, Clone, Copy)]
pub struct GridAxis {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl GridAxis {
    /// Central second-difference stencils need two layers of margin, so
    /// fewer than 5 points per axis leave no evaluable interior.
    pub fn new(min: f64, max: f64, count: usize) -> Result<Self> {
        if !min.is_finite() || !max.is_finite() || max <= min {
            return Err(Error::argument("grid axis needs max > min"));
        }
        if count < 5 {
            return Err(Error::argument(format!(
                "grid axis needs at least 5 points, got {count}"
            )));
        }
        Ok(GridAxis { min, max, count })
    }

    pub fn spacing(&self) -> f64 {
        (self.max - self.min) / (self.count - 1) as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        self.min + i as f64 * self.spacing()
    }
}

/// A metric matrix at every node of a regular lattice over parameter
/// space. The lattice dimension equals the matrix dimension N, so every
/// metric index direction can be differenced.
pub struct MetricField {
    axes: Vec<GridAxis>,
    values: Vec<MetricResult>,
}

impl MetricField {
    /// Build a field by evaluating `f` at every lattice point (row-major,
    /// last axis fastest).
    pub fn from_fn<F>(axes: Vec<GridAxis>, mut f: F) -> Result<Self>
    where
        F: FnMut(&[f64]) -> Result<MetricResult>,
    {
        if axes.is_empty() {
            return Err(Error::argument("metric field needs at least one axis"));
        }
        let n = axes.len();
        let total: usize = axes.iter().map(|a| a.count).product();
        let mut values = Vec::with_capacity(total);
        let mut index = vec![0usize; n];
        let mut point = vec![0.0f64; n];
        for _ in 0..total {
            for d in 0..n {
                point[d] = axes[d].point(index[d]);
            }
            let value = f(&point)?;
            if value.g.nrows() != n {
                return Err(Error::argument(format!(
                    "metric at a lattice point has dimension {}, grid has {n} axes",
                    value.g.nrows()
                )));
            }
            values.push(value);
            let mut d = n;
            while d > 0 {
                d -= 1;
                index[d] += 1;
                if index[d] < axes[d].count {
                    break;
                }
                index[d] = 0;
            }
        }
        Ok(MetricField { axes, values })
    }

    pub fn grid_dim(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[GridAxis] {
        &self.axes
    }

    pub fn value(&self, index: &[usize]) -> &MetricResult {
        &self.values[self.flat_index(index)]
    }

    pub fn point(&self, index: &[usize]) -> Vec<f64> {
        index
            .iter()
            .zip(&self.axes)
            .map(|(&i, axis)| axis.point(i))
            .collect()
    }

    fn flat_index(&self, index: &[usize]) -> usize {
        debug_assert_eq!(index.len(), self.axes.len());
        let mut flat = 0;
        for (d, &i) in index.iter().enumerate() {
            debug_assert!(i < self.axes[d].count);
            flat = flat * self.axes[d].count + i;
        }
        flat
    }

    /// Interior depth of a lattice index: how many layers separate it from
    /// the nearest boundary on any axis.
    pub(crate) fn interior_depth(&self, index: &[usize]) -> usize {
        index
            .iter()
            .zip(&self.axes)
            .map(|(&i, axis)| i.min(axis.count - 1 - i))
            .min()
            .unwrap_or(0)
    }
}

/// Eigenvalue-sign signature of a symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Signature {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
}

impl std::fmt::Display for Signature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.n_plus, self.n_minus, self.n_zero)
    }
}

/// Signature of a symmetric metric via eigenvalue signs, with eigenvalues
/// below 1e-10·max|λ| counted as zero.
pub fn definiteness(g: &DMatrix<f64>) -> Result<Signature> {
    if g.nrows() != g.ncols() {
        return Err(Error::argument("definiteness needs a square matrix"));
    }
    let asym = (g - g.transpose()).abs().max();
    if asym > 1e-12 * g.abs().max().max(1.0) {
        return Err(Error::argument("definiteness needs a symmetric matrix"));
    }
    let eigen = g.clone().symmetric_eigen();
    let max_abs = eigen
        .eigenvalues
        .iter()
        .fold(0.0f64, |m, &l| m.max(l.abs()));
    let threshold = 1e-10 * max_abs;
    let mut sig = Signature {
        n_plus: 0,
        n_minus: 0,
        n_zero: 0,
    };
    for &l in eigen.eigenvalues.iter() {
        if l.abs() <= threshold {
            sig.n_zero += 1;
        } else if l > 0.0 {
            sig.n_plus += 1;
        } else {
            sig.n_minus += 1;
        }
    }
    Ok(sig)
}
