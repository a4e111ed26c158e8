//! Massive scalar field on D-dimensional Minkowski space: the localized
//! solution φ = A·exp(−c·Σ_μ|x^μ−center^μ|) with c = m/√(D−2), its
//! Lagrangian density, an equation-of-motion residual check, and the
//! amplitude that normalizes −ℒ into a probability density.
//!
//! The solution is continuous but not differentiable on the union of
//! hyperplanes {x^μ = center^μ} (the kink set — the full union, not just
//! the single point where all coordinates coincide). Evaluations on the
//! kink set follow the sgn(0) = 0 convention; derivative-based checks stay
//! away from it, and the distributional part of □φ concentrated there is
//! not modeled.

use crate::error::{Error, Result};
use crate::integrate::{integrate_rd_separable, IntegralEstimate, QuadratureSpec};

/// Shared validity check: the localized solution exists only for D ≥ 3
/// with positive mass.
pub fn validate_model(dim: usize, mass: f64) -> Result<()> {
    if dim < 3 {
        return Err(Error::domain(format!(
            "no normalizable localized solution exists in dimension {dim}; need dim >= 3"
        )));
    }
    if mass <= 0.0 || !mass.is_finite() {
        return Err(Error::argument("mass must be positive and finite"));
    }
    Ok(())
}

/// Per-axis decay rate c = m/√(D−2). Satisfies c²·(D−2) = m² exactly up to
/// rounding. Callers validate (dim, mass) first.
pub fn decay_rate(dim: usize, mass: f64) -> f64 {
    mass / ((dim - 2) as f64).sqrt()
}

/// Amplitude A = m^{(D−2)/2}/(D−2)^{D/4} for which −ℒ integrates to 1.
pub fn normalization_constant(dim: usize, mass: f64) -> Result<f64> {
    validate_model(dim, mass)?;
    let d = dim as f64;
    Ok(mass.powf((d - 2.0) / 2.0) / (d - 2.0).powf(d / 4.0))
}

/// Flat metric of signature (1, D−1), components diag(+1, −1, …, −1).
/// Its inverse has the same components.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinkowskiMetric {
    dim: usize,
}

impl MinkowskiMetric {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::argument("metric dimension must be at least 1"));
        }
        Ok(MinkowskiMetric { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> Vec<f64> {
        (0..self.dim)
            .map(|i| if i == 0 { 1.0 } else { -1.0 })
            .collect()
    }

    /// η^{μν} u_μ v_ν = u⁰v⁰ − Σ_{i≥1} uⁱvⁱ.
    pub fn contract(&self, u: &[f64], v: &[f64]) -> Result<f64> {
        if u.len() != self.dim || v.len() != self.dim {
            return Err(Error::argument(
                "vector length does not match metric dimension",
            ));
        }
        let mut acc = u[0] * v[0];
        for i in 1..self.dim {
            acc -= u[i] * v[i];
        }
        Ok(acc)
    }

    /// (n_plus, n_minus).
    pub fn signature(&self) -> (usize, usize) {
        (1, self.dim - 1)
    }
}

/// A localized solution of (□ + m²)φ = 0.
#[derive(Debug, Clone)]
pub struct KleinGordonSolution {
    dim: usize,
    mass: f64,
    amplitude: f64,
    center: Vec<f64>,
    decay_rate: f64,
}

impl KleinGordonSolution {
    /// Solution with the amplitude fixed by the normalization condition.
    pub fn normalized(dim: usize, mass: f64, center: &[f64]) -> Result<Self> {
        let amplitude = normalization_constant(dim, mass)?;
        Self::with_amplitude(dim, mass, center, amplitude)
    }

    /// Solution with an arbitrary positive amplitude (the field equation is
    /// linear, so any A solves it; only the statistical reading fixes A).
    pub fn with_amplitude(dim: usize, mass: f64, center: &[f64], amplitude: f64) -> Result<Self> {
        validate_model(dim, mass)?;
        if center.len() != dim {
            return Err(Error::argument(format!(
                "center has length {}, expected {dim}",
                center.len()
            )));
        }
        if amplitude <= 0.0 || !amplitude.is_finite() {
            return Err(Error::argument("amplitude must be positive and finite"));
        }
        Ok(KleinGordonSolution {
            dim,
            mass,
            amplitude,
            center: center.to_vec(),
            decay_rate: decay_rate(dim, mass),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    pub fn decay_rate(&self) -> f64 {
        self.decay_rate
    }

    fn check_dim(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::argument(format!(
                "point has length {}, solution dimension is {}",
                x.len(),
                self.dim
            )));
        }
        Ok(())
    }

    /// φ(x) = A·exp(−c·Σ_μ|x^μ−center^μ|). Strictly positive, maximal at
    /// the center.
    pub fn field_value(&self, x: &[f64]) -> Result<f64> {
        self.check_dim(x)?;
        let l1: f64 = x
            .iter()
            .zip(&self.center)
            .map(|(&xi, &ci)| (xi - ci).abs())
            .sum();
        Ok(self.amplitude * (-self.decay_rate * l1).exp())
    }

    /// Analytic gradient ∂_μφ = −c·sgn(x^μ−center^μ)·φ, with sgn(0) = 0 on
    /// the kink set.
    pub fn field_gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        let phi = self.field_value(x)?;
        Ok(x.iter()
            .zip(&self.center)
            .map(|(&xi, &ci)| -self.decay_rate * crate::family::sgn(xi - ci) * phi)
            .collect())
    }

    /// η^{μν}∂_μφ∂_νφ from the analytic gradient. Equals −m²φ² away from
    /// the kink set.
    pub fn kinetic_term(&self, x: &[f64]) -> Result<f64> {
        let grad = self.field_gradient(x)?;
        MinkowskiMetric::new(self.dim)?.contract(&grad, &grad)
    }

    /// ℒ = ½(η^{μν}∂_μφ∂_νφ − m²φ²). On the solution this collapses to
    /// −m²φ² at every non-kink point. On the kink set the sgn(0) = 0
    /// convention yields ½·(partial kinetic) − ½m²φ², a well-defined value
    /// that differs from the two-sided limit; equality checks against the
    /// density exclude those points.
    pub fn lagrangian_density(&self, x: &[f64]) -> Result<f64> {
        let phi = self.field_value(x)?;
        let kinetic = self.kinetic_term(x)?;
        Ok(0.5 * (kinetic - self.mass * self.mass * phi * phi))
    }

    /// Central finite-difference evaluation of (□ + m²)φ at x.
    ///
    /// Requires x to keep an ℓ∞ distance greater than 2h from every kink
    /// hyperplane so the stencil never straddles the distributional part
    /// of □φ. Magnitude is O(h²·φ) for valid points.
    pub fn eom_residual(&self, x: &[f64], h: f64) -> Result<f64> {
        self.check_dim(x)?;
        if !(h > 0.0 && h <= 0.01) {
            return Err(Error::argument(format!(
                "finite-difference step must lie in (0, 0.01], got {h}"
            )));
        }
        let closest = x
            .iter()
            .zip(&self.center)
            .map(|(&xi, &ci)| (xi - ci).abs())
            .fold(f64::INFINITY, f64::min);
        if closest <= 2.0 * h {
            return Err(Error::argument(format!(
                "point is within 2h = {} of a kink hyperplane (distance {closest}); \
                 the stencil would probe the kink",
                2.0 * h
            )));
        }

        let phi = self.field_value(x)?;
        let mut point = x.to_vec();
        let mut box_phi = 0.0;
        for mu in 0..self.dim {
            let sign = if mu == 0 { 1.0 } else { -1.0 };
            point[mu] = x[mu] + h;
            let plus = self.field_value(&point)?;
            point[mu] = x[mu] - h;
            let minus = self.field_value(&point)?;
            point[mu] = x[mu];
            box_phi += sign * (plus - 2.0 * phi + minus) / (h * h);
        }
        Ok(box_phi + self.mass * self.mass * phi)
    }

    /// S\[φ\] = ∫ℒ d^Dx by separable quadrature. Equals −1 for the
    /// normalized amplitude and scales with A².
    pub fn onshell_action(&self, spec: &QuadratureSpec) -> Result<IntegralEstimate> {
        let two_c = 2.0 * self.decay_rate;
        let lead = -(self.amplitude * self.mass) * (self.amplitude * self.mass);
        let factors: Vec<Box<dyn Fn(f64) -> f64 + Sync>> = (0..self.dim)
            .map(|mu| {
                let center = self.center[mu];
                let scale = if mu == 0 { lead } else { 1.0 };
                Box::new(move |t: f64| scale * (-two_c * (t - center).abs()).exp())
                    as Box<dyn Fn(f64) -> f64 + Sync>
            })
            .collect();
        let refs: Vec<&(dyn Fn(f64) -> f64 + Sync)> = factors.iter().map(|f| f.as_ref()).collect();
        let splits: Vec<Vec<f64>> = self.center.iter().map(|&c| vec![c]).collect();
        let spec = QuadratureSpec {
            split_points: splits,
            ..spec.clone()
        };
        integrate_rd_separable(&refs, &spec)
    }
}
