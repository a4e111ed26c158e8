//! Isotropic Gaussian baseline: P(x;θ) = π^{−D/2}·exp(−Σ_μ(x^μ−θ^μ)²).

use nalgebra::DMatrix;

use crate::error::{Error, Result};

use super::factor::{GaussianFactor, MarginalFactor};
use super::{check_point_dim, check_theta, Family, FamilyMeta, ProductStructure};

pub struct GaussianFamily {
    dim: usize,
    theta: Vec<f64>,
    structure: ProductStructure,
}

impl GaussianFamily {
    pub fn new(dim: usize, theta: &[f64]) -> Result<Self> {
        if dim == 0 {
            return Err(Error::argument("dimension must be at least 1"));
        }
        check_theta(dim, theta)?;
        let factors: Vec<Box<dyn MarginalFactor>> = theta
            .iter()
            .map(|&loc| Box::new(GaussianFactor::new(loc)) as Box<dyn MarginalFactor>)
            .collect();
        Ok(GaussianFamily {
            dim,
            theta: theta.to_vec(),
            structure: ProductStructure::new(factors),
        })
    }
}

impl Family for GaussianFamily {
    fn kind(&self) -> &'static str {
        "gaussian"
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn theta(&self) -> &[f64] {
        &self.theta
    }

    fn meta(&self) -> FamilyMeta {
        FamilyMeta {
            kind: self.kind().to_string(),
            dim: self.dim,
            mass: None,
            theta: self.theta.clone(),
        }
    }

    fn log_density(&self, x: &[f64]) -> Result<f64> {
        check_point_dim(self, x)?;
        let sq: f64 = x
            .iter()
            .zip(&self.theta)
            .map(|(&xi, &ti)| (xi - ti) * (xi - ti))
            .sum();
        Ok(-0.5 * self.dim as f64 * std::f64::consts::PI.ln() - sq)
    }

    fn score(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_point_dim(self, x)?;
        Ok(x.iter()
            .zip(&self.theta)
            .map(|(&xi, &ti)| 2.0 * (xi - ti))
            .collect())
    }

    fn analytic_metric(&self) -> Option<DMatrix<f64>> {
        Some(DMatrix::from_diagonal_element(self.dim, self.dim, 2.0))
    }

    fn product_structure(&self) -> Option<&ProductStructure> {
        Some(&self.structure)
    }

    fn with_theta(&self, theta: &[f64]) -> Result<Box<dyn Family>> {
        Ok(Box::new(GaussianFamily::new(self.dim, theta)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn peak_density() {
        let fam = GaussianFamily::new(2, &[0.0, 0.0]).unwrap();
        let p = fam.density(&[0.0, 0.0]).unwrap();
        assert!((p - 1.0 / std::f64::consts::PI).abs() < 1e-15, "got {p}");
    }

    #[test]
    fn score_is_twice_the_displacement() {
        let fam = GaussianFamily::new(2, &[0.0, 0.0]).unwrap();
        let s = fam.score(&[0.5, -0.5]).unwrap();
        assert_eq!(s, vec![1.0, -1.0]);
    }

    #[test]
    fn metric_is_two_delta() {
        let fam = GaussianFamily::new(3, &[0.0; 3]).unwrap();
        let g = fam.analytic_metric().unwrap();
        assert_eq!(g, DMatrix::from_diagonal_element(3, 3, 2.0));
    }
}
