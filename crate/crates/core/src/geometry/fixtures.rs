//! Synthetic metric fields with known geometry, used to validate the
//! differencing pipeline independently of the Fisher engine.

use nalgebra::DMatrix;

use crate::error::Result;
use crate::family::FamilyMeta;
use crate::fisher::{MetricMethod, MetricResult};

use super::{GridAxis, MetricField};

fn fixture_metric(kind: &str, g: DMatrix<f64>, point: &[f64]) -> MetricResult {
    let n = g.nrows();
    MetricResult {
        g,
        error: DMatrix::zeros(n, n),
        method: MetricMethod::Analytic,
        meta: FamilyMeta {
            kind: kind.to_string(),
            dim: n,
            mass: None,
            theta: point.to_vec(),
        },
        unconverged: false,
        evaluations: 0,
    }
}

/// The same matrix at every lattice point; zero connection and curvature.
pub fn constant_field(g: DMatrix<f64>, axes: Vec<GridAxis>) -> Result<MetricField> {
    MetricField::from_fn(axes, |point| {
        Ok(fixture_metric("fixture-constant", g.clone(), point))
    })
}

/// Round 2-sphere chart g = diag(1, sin²θ⁰): curvature R⁰_101 = sin²θ⁰.
pub fn sphere_field(polar: GridAxis, azimuth: GridAxis) -> Result<MetricField> {
    MetricField::from_fn(vec![polar, azimuth], |point| {
        let s = point[0].sin();
        let g = DMatrix::from_diagonal(&nalgebra::dvector![1.0, s * s]);
        Ok(fixture_metric("fixture-sphere", g, point))
    })
}

/// Flat plane in polar-like coordinates g = diag(1, (θ⁰)²): nonzero
/// connection, identically zero curvature.
pub fn polar_field(radial: GridAxis, angular: GridAxis) -> Result<MetricField> {
    MetricField::from_fn(vec![radial, angular], |point| {
        let r = point[0];
        let g = DMatrix::from_diagonal(&nalgebra::dvector![1.0, r * r]);
        Ok(fixture_metric("fixture-polar", g, point))
    })
}
