//! Closed-form metric route.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::family::Family;

use super::{MetricEstimator, MetricMethod, MetricResult};

/// Returns the family's closed-form metric, when it has one.
pub struct AnalyticMetric;

impl MetricEstimator for AnalyticMetric {
    fn method(&self) -> MetricMethod {
        MetricMethod::Analytic
    }

    fn estimate(&self, family: &dyn Family) -> Result<MetricResult> {
        let g = family.analytic_metric().ok_or_else(|| {
            Error::capability(format!(
                "family '{}' has no closed-form metric",
                family.kind()
            ))
        })?;
        let n = g.nrows();
        Ok(MetricResult {
            g,
            method: MetricMethod::Analytic,
            error: DMatrix::zeros(n, n),
            meta: family.meta(),
            unconverged: false,
            evaluations: 0,
        })
    }
}
