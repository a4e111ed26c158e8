//! Runtime registry mapping method names to metric estimators.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::integrate::{MonteCarloSpec, QuadratureSpec};

use super::{AnalyticMetric, FdScoreMetric, MetricEstimator, MonteCarloMetric, QuadratureMetric};

/// Knobs shared by the estimator factories (each strategy reads the fields
/// it understands).
#[derive(Debug, Clone)]
pub struct EstimatorOptions {
    pub quad: QuadratureSpec,
    pub mc: MonteCarloSpec,
    pub fd_step: f64,
}

impl Default for EstimatorOptions {
    fn default() -> Self {
        EstimatorOptions {
            quad: QuadratureSpec::default(),
            mc: MonteCarloSpec::default(),
            fd_step: 1e-6,
        }
    }
}

type EstimatorFactory =
    Box<dyn Fn(&EstimatorOptions) -> Result<Box<dyn MetricEstimator>> + Send + Sync>;

/// Name-indexed registry of metric estimation strategies.
pub struct MethodRegistry {
    factories: BTreeMap<String, EstimatorFactory>,
}

impl MethodRegistry {
    pub fn new() -> Self {
        MethodRegistry {
            factories: BTreeMap::new(),
        }
    }

    /// Registry preloaded with `analytic`, `quadrature`, `montecarlo`, and
    /// `fdscore`.
    pub fn builtin() -> Self {
        let mut reg = Self::new();
        reg.register("analytic", |_| Ok(Box::new(AnalyticMetric) as _))
            .expect("fresh registry");
        reg.register("quadrature", |opts| {
            Ok(Box::new(QuadratureMetric::new(opts.quad.clone())) as _)
        })
        .expect("fresh registry");
        reg.register("montecarlo", |opts| {
            Ok(Box::new(MonteCarloMetric::new(opts.mc)) as _)
        })
        .expect("fresh registry");
        reg.register("fdscore", |opts| {
            Ok(Box::new(FdScoreMetric::new(opts.fd_step, opts.quad.clone())?) as _)
        })
        .expect("fresh registry");
        reg
    }

    pub fn register<F>(&mut self, name: &str, factory: F) -> Result<()>
    where
        F: Fn(&EstimatorOptions) -> Result<Box<dyn MetricEstimator>> + Send + Sync + 'static,
    {
        if self.factories.contains_key(name) {
            return Err(Error::argument(format!(
                "method '{name}' already registered"
            )));
        }
        self.factories.insert(name.to_string(), Box::new(factory));
        Ok(())
    }

    pub fn create(&self, name: &str, opts: &EstimatorOptions) -> Result<Box<dyn MetricEstimator>> {
        match self.factories.get(name) {
            Some(factory) => factory(opts),
            None => Err(Error::argument(format!(
                "unknown metric method '{name}' (available: {})",
                self.names().join(", ")
            ))),
        }
    }

    pub fn contains(&self, name: &str) -> bool {
        self.factories.contains_key(name)
    }

    pub fn names(&self) -> Vec<String> {
        self.factories.keys().cloned().collect()
    }
}

impl Default for MethodRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}
