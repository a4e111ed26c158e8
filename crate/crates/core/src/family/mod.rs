//! Parametric probability families on ℝ^D.
//!
//! All in-scope families are location families: P(x;θ) = P(x−θ), with one
//! parameter per coordinate (N = D). Each variant implements the [`Family`]
//! trait and is registered by name in [`FamilyRegistry`], so callers select
//! a family at runtime without knowing the concrete type.

mod factor;
mod gaussian;
mod kg;
mod laplace;
mod registry;

pub use factor::{GaussianFactor, LaplaceFactor, MarginalFactor};
pub use gaussian::GaussianFamily;
pub use kg::KleinGordonFamily;
pub use laplace::LaplaceProductFamily;
pub use registry::{FamilyConfig, FamilyRegistry};

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Sign function with the convention sgn(0) = 0.
///
/// The kink set of a Laplace-type density has measure zero; this choice
/// keeps the score an odd function and Monte Carlo estimates unbiased.
pub fn sgn(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x.signum()
    }
}

/// Identifying metadata carried into metric results.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyMeta {
    pub kind: String,
    pub dim: usize,
    pub mass: Option<f64>,
    pub theta: Vec<f64>,
}

/// Per-axis factorization of a product density.
///
/// Present exactly when the joint density factorizes over axes; each factor
/// integrates to 1 on ℝ and carries its own location parameter.
pub struct ProductStructure {
    factors: Vec<Box<dyn MarginalFactor>>,
}

impl ProductStructure {
    pub fn new(factors: Vec<Box<dyn MarginalFactor>>) -> Self {
        ProductStructure { factors }
    }

    pub fn dim(&self) -> usize {
        self.factors.len()
    }

    pub fn factor(&self, axis: usize) -> &dyn MarginalFactor {
        self.factors[axis].as_ref()
    }

    pub fn factors(&self) -> &[Box<dyn MarginalFactor>] {
        &self.factors
    }
}

/// A parametric probability family with evaluable density, log-density and
/// score. Evaluations are pure functions of `(family, x)`; descriptors are
/// immutable after construction, so concurrent use needs no synchronization.
pub trait Family: Send + Sync {
    /// Registry name of the family kind.
    fn kind(&self) -> &'static str;

    /// Number of random variables x^μ.
    fn dim(&self) -> usize;

    /// Number of statistical parameters θ^a; equal to `dim` for the
    /// location families in scope.
    fn param_dim(&self) -> usize {
        self.dim()
    }

    fn theta(&self) -> &[f64];

    fn meta(&self) -> FamilyMeta;

    /// ln P(x;θ). Densities are evaluated in log space so that far tails
    /// (|x−θ| ≫ width) underflow gracefully instead of losing the score.
    fn log_density(&self, x: &[f64]) -> Result<f64>;

    /// P(x;θ) ≥ 0.
    fn density(&self, x: &[f64]) -> Result<f64> {
        Ok(self.log_density(x)?.exp())
    }

    /// Score ∂_a ln P(x;θ) evaluated at (x, θ).
    fn score(&self, x: &[f64]) -> Result<Vec<f64>>;

    /// Closed-form Fisher metric, when one is known for the kind.
    fn analytic_metric(&self) -> Option<DMatrix<f64>>;

    /// Per-axis factorization, when the density is a product over axes.
    fn product_structure(&self) -> Option<&ProductStructure>;

    /// The same family relocated to a new parameter point.
    fn with_theta(&self, theta: &[f64]) -> Result<Box<dyn Family>>;
}

pub(crate) fn check_point_dim(family: &dyn Family, x: &[f64]) -> Result<()> {
    if x.len() != family.dim() {
        return Err(Error::argument(format!(
            "point has length {}, family dimension is {}",
            x.len(),
            family.dim()
        )));
    }
    Ok(())
}

pub(crate) fn check_theta(dim: usize, theta: &[f64]) -> Result<()> {
    if theta.len() != dim {
        return Err(Error::argument(format!(
            "theta has length {}, expected {}",
            theta.len(),
            dim
        )));
    }
    if theta.iter().any(|t| !t.is_finite()) {
        return Err(Error::argument("theta components must be finite"));
    }
    Ok(())
}

/// Quantile of the marginal distribution along `axis`: the x with marginal
/// CDF(x) = u.
pub fn marginal_inverse_cdf(family: &dyn Family, axis: usize, u: f64) -> Result<f64> {
    if axis >= family.dim() {
        return Err(Error::argument(format!(
            "axis {} out of range for dimension {}",
            axis,
            family.dim()
        )));
    }
    if !(u > 0.0 && u < 1.0) {
        return Err(Error::argument(format!(
            "quantile argument must lie strictly in (0,1), got {u}"
        )));
    }
    let structure = family.product_structure().ok_or_else(|| {
        Error::capability(format!(
            "family '{}' has no product structure; marginal quantiles unavailable",
            family.kind()
        ))
    })?;
    Ok(structure.factor(axis).inverse_cdf(u))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sgn_is_odd_and_zero_at_zero() {
        assert_eq!(sgn(0.0), 0.0);
        assert_eq!(sgn(-0.0), 0.0);
        assert_eq!(sgn(3.5), 1.0);
        assert_eq!(sgn(-1e-300), -1.0);
    }
}
