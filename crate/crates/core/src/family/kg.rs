//! The probability family induced by the on-shell energy density of the
//! massive scalar-field solution: P(x;θ) = A²m²·exp(−2c·Σ_μ|x^μ−θ^μ|)
//! with decay rate c = m/√(D−2) and A fixed by normalization.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::field_theory;

use super::factor::{LaplaceFactor, MarginalFactor};
use super::{check_point_dim, check_theta, sgn, Family, FamilyMeta, ProductStructure};

pub struct KleinGordonFamily {
    dim: usize,
    mass: f64,
    theta: Vec<f64>,
    decay_rate: f64,
    /// Multiplies the amplitude A (and so the density by its square).
    /// 1.0 is the normalized model; other values deliberately break
    /// normalization for verification drills while leaving the score and
    /// the sampling marginals untouched.
    amplitude_scale: f64,
    structure: ProductStructure,
}

impl KleinGordonFamily {
    pub fn new(dim: usize, mass: f64, theta: &[f64]) -> Result<Self> {
        Self::with_amplitude_scale(dim, mass, theta, 1.0)
    }

    pub fn with_amplitude_scale(
        dim: usize,
        mass: f64,
        theta: &[f64],
        amplitude_scale: f64,
    ) -> Result<Self> {
        field_theory::validate_model(dim, mass)?;
        check_theta(dim, theta)?;
        if amplitude_scale <= 0.0 || !amplitude_scale.is_finite() {
            return Err(Error::argument(
                "amplitude scale must be positive and finite",
            ));
        }
        let decay_rate = field_theory::decay_rate(dim, mass);
        let factors: Vec<Box<dyn MarginalFactor>> = theta
            .iter()
            .map(|&loc| {
                Box::new(LaplaceFactor::new(loc, 2.0 * decay_rate)) as Box<dyn MarginalFactor>
            })
            .collect();
        Ok(KleinGordonFamily {
            dim,
            mass,
            theta: theta.to_vec(),
            decay_rate,
            amplitude_scale,
            structure: ProductStructure::new(factors),
        })
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// Per-axis decay rate c = m/√(D−2).
    pub fn decay_rate(&self) -> f64 {
        self.decay_rate
    }
}

impl Family for KleinGordonFamily {
    fn kind(&self) -> &'static str {
        "kg"
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
            mass: Some(self.mass),
            theta: self.theta.clone(),
        }
    }

    fn log_density(&self, x: &[f64]) -> Result<f64> {
        check_point_dim(self, x)?;
        let l1: f64 = x
            .iter()
            .zip(&self.theta)
            .map(|(&xi, &ti)| (xi - ti).abs())
            .sum();
        // ln(A²m²) = D·ln c, so the peak value is c^D
        Ok(
            self.dim as f64 * self.decay_rate.ln() + 2.0 * self.amplitude_scale.ln()
                - 2.0 * self.decay_rate * l1,
        )
    }

    fn score(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_point_dim(self, x)?;
        Ok(x.iter()
            .zip(&self.theta)
            .map(|(&xi, &ti)| 2.0 * self.decay_rate * sgn(xi - ti))
            .collect())
    }

    fn analytic_metric(&self) -> Option<DMatrix<f64>> {
        // g_ab = 4c² δ_ab = (4m²/(D−2)) δ_ab
        let g = 4.0 * self.decay_rate * self.decay_rate;
        Some(DMatrix::from_diagonal_element(self.dim, self.dim, g))
    }

    fn product_structure(&self) -> Option<&ProductStructure> {
        Some(&self.structure)
    }

    fn with_theta(&self, theta: &[f64]) -> Result<Box<dyn Family>> {
        Ok(Box::new(KleinGordonFamily::with_amplitude_scale(
            self.dim,
            self.mass,
            theta,
            self.amplitude_scale,
        )?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn peak_density_is_a2m2() {
        // D=3, m=1: A = 1, so the peak is A²m² = 1
        let fam = KleinGordonFamily::new(3, 1.0, &[0.0; 3]).unwrap();
        assert!((fam.density(&[0.0; 3]).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn axis_profile_is_two_sided_exponential() {
        let fam = KleinGordonFamily::new(3, 1.0, &[0.0; 3]).unwrap();
        let p = fam.density(&[0.5, 0.0, 0.0]).unwrap();
        assert!((p - (-1.0f64).exp()).abs() < 1e-15, "got {p}");
    }

    #[test]
    fn dim_2_is_rejected() {
        assert!(matches!(
            KleinGordonFamily::new(2, 1.0, &[0.0; 2]),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            KleinGordonFamily::new(1, 1.0, &[0.0]),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn score_carries_signs_and_rate() {
        // D=4, m=1: 2c = 2/√2 = √2
        let fam = KleinGordonFamily::new(4, 1.0, &[0.0; 4]).unwrap();
        let s = fam.score(&[1.0, -2.0, 3.0, -4.0]).unwrap();
        let r = 2.0f64.sqrt();
        for (got, want) in s.iter().zip([r, -r, r, -r]) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn score_vanishes_on_the_kink() {
        let fam = KleinGordonFamily::new(3, 1.0, &[0.0; 3]).unwrap();
        let s = fam.score(&[0.0, 1.0, -1.0]).unwrap();
        assert_eq!(s, vec![0.0, 2.0, -2.0]);
    }

    #[test]
    fn analytic_metric_values() {
        for (dim, mass, want) in [(3usize, 1.0, 4.0), (4, 1.0, 2.0), (6, 2.0, 4.0)] {
            let fam = KleinGordonFamily::new(dim, mass, &vec![0.0; dim]).unwrap();
            let g = fam.analytic_metric().unwrap();
            for a in 0..dim {
                for b in 0..dim {
                    let want = if a == b { want } else { 0.0 };
                    assert!(
                        (g[(a, b)] - want).abs() <= 1e-15 * want.abs().max(1.0),
                        "dim {dim} mass {mass} entry ({a},{b}) = {}",
                        g[(a, b)]
                    );
                }
            }
        }
    }

    #[test]
    fn dimension_mismatch_is_an_argument_error() {
        let fam = KleinGordonFamily::new(3, 1.0, &[0.0; 3]).unwrap();
        assert!(matches!(fam.density(&[0.0; 4]), Err(Error::Argument(_))));
        assert!(matches!(fam.score(&[0.0; 2]), Err(Error::Argument(_))));
    }
}
