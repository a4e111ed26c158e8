//! `infogeo moments` — per-axis means and variances, with the alternative
//! closed-form variance surfaced for the scalar-field family.

use serde::Serialize;

use infogeo_core::fisher::{coordinate_mean, coordinate_variance_report, MomentRoute};

use crate::args::MomentsArgs;
use crate::config::{resolve, OutputFormat};
use crate::output::{emit, format_f64, join_f64, to_json_pretty, TOOL_VERSION};
use crate::CmdError;

#[derive(Serialize)]
struct AxisMoments {
    axis: usize,
    mean: f64,
    mean_error: f64,
    variance: f64,
    variance_error: f64,
    variance_alt_formula: Option<f64>,
    variance_discrepancy: bool,
}

#[derive(Serialize)]
struct MomentsOutput {
    family: String,
    dim: usize,
    mass: Option<f64>,
    theta: Vec<f64>,
    route: String,
    seed: Option<u64>,
    tool_version: String,
    moments: Vec<AxisMoments>,
}

pub fn run(args: MomentsArgs) -> Result<(), CmdError> {
    let eff = resolve(&args.family, &args.numeric, &args.output)?;
    let route: MomentRoute = eff.method.parse().map_err(|_| {
        CmdError::Usage(format!(
            "moments route must be quadrature or montecarlo, got '{}'",
            eff.method
        ))
    })?;
    let family = eff.build_family()?;
    let opts = eff.estimator_options();

    let moments = eff.with_workers(|| -> Result<Vec<AxisMoments>, infogeo_core::Error> {
        let mut rows = Vec::with_capacity(family.dim());
        for axis in 0..family.dim() {
            let mean = coordinate_mean(family.as_ref(), axis, route, &opts)?;
            let report = coordinate_variance_report(family.as_ref(), axis, route, &opts)?;
            rows.push(AxisMoments {
                axis,
                mean: mean.value,
                mean_error: mean.error_estimate,
                variance: report.variance.value,
                variance_error: report.variance.error_estimate,
                variance_alt_formula: report.alt_closed_form,
                variance_discrepancy: report.discrepancy,
            });
        }
        Ok(rows)
    })??;

    let meta = family.meta();
    let payload = MomentsOutput {
        family: meta.kind,
        dim: meta.dim,
        mass: meta.mass,
        theta: meta.theta,
        route: eff.method.clone(),
        seed: (eff.method == "montecarlo").then_some(eff.seed),
        tool_version: TOOL_VERSION.to_string(),
        moments,
    };

    let content = match eff.format {
        OutputFormat::Json => to_json_pretty(&payload),
        OutputFormat::Csv => {
            let mut text = String::from(
                "family,dim,mass,theta,route,axis,mean,mean_error,variance,variance_error,variance_alt_formula,variance_discrepancy\n",
            );
            for m in &payload.moments {
                text.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{},{},{}\n",
                    payload.family,
                    payload.dim,
                    payload.mass.map(format_f64).unwrap_or_default(),
                    join_f64(&payload.theta, ";"),
                    payload.route,
                    m.axis,
                    format_f64(m.mean),
                    format_f64(m.mean_error),
                    format_f64(m.variance),
                    format_f64(m.variance_error),
                    m.variance_alt_formula.map(format_f64).unwrap_or_default(),
                    m.variance_discrepancy,
                ));
            }
            text
        }
    };
    emit(&eff.out, &content)
}
