//! `infogeo table` — sweep (dim, mass) and tabulate the normalization
//! amplitude, the metric diagonal by closed form and by quadrature, the
//! coordinate variance with its alternative closed form, and the
//! coordinate rescaling factor.

use serde::Serialize;

use infogeo_core::family::{Family, KleinGordonFamily};
use infogeo_core::field_theory::{decay_rate, normalization_constant};
use infogeo_core::fisher::{
    alt_variance_closed_form, coordinate_variance, fisher_metric, EstimatorOptions, MetricMethod,
    MomentRoute,
};

use crate::args::TableArgs;
use crate::config::{parse_csv_usize, OutputFormat};
use crate::output::{emit, format_f64, to_json_pretty, TOOL_VERSION};
use crate::CmdError;

#[derive(Serialize)]
struct TableRow {
    dim: usize,
    mass: f64,
    amplitude: f64,
    g_diag_analytic: f64,
    g_diag_quadrature: f64,
    variance: f64,
    variance_alt_formula: f64,
    scale: f64,
}

#[derive(Serialize)]
struct TableOutput {
    tool_version: String,
    rows: Vec<TableRow>,
}

pub fn run(args: TableArgs) -> Result<(), CmdError> {
    let dims = parse_csv_usize(&args.dims, "dims")?;
    let masses: Vec<f64> = args
        .masses
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<f64>()
                .map_err(|_| CmdError::Usage(format!("bad mass '{tok}'")))
        })
        .collect::<Result<_, _>>()?;
    if let Some(&bad) = dims.iter().find(|&&d| !(3..=6).contains(&d)) {
        return Err(CmdError::Usage(format!(
            "table dims must lie in [3, 6], got {bad}"
        )));
    }
    if let Some(&bad) = masses.iter().find(|&&m| m.is_nan() || m <= 0.0) {
        return Err(CmdError::Usage(format!(
            "table masses must be positive, got {bad}"
        )));
    }

    let mut quad = EstimatorOptions::default().quad;
    if let Some(rel) = args.numeric.rel_tol {
        quad.rel_tol = rel;
    }
    let opts = EstimatorOptions {
        quad,
        ..Default::default()
    };

    let mut rows = Vec::new();
    for &dim in &dims {
        for &mass in &masses {
            let family = KleinGordonFamily::new(dim, mass, &vec![0.0; dim])
                .map_err(|e| CmdError::Usage(e.to_string()))?;
            let quadrature = fisher_metric(&family, MetricMethod::Quadrature, &opts)?;
            let variance = coordinate_variance(&family, 0, MomentRoute::Quadrature, &opts)?;
            rows.push(TableRow {
                dim,
                mass,
                amplitude: normalization_constant(dim, mass)
                    .map_err(|e| CmdError::Usage(e.to_string()))?,
                g_diag_analytic: family.analytic_metric().expect("kg has a closed form")[(0, 0)],
                g_diag_quadrature: quadrature.g[(0, 0)],
                variance: variance.value,
                variance_alt_formula: alt_variance_closed_form(dim, mass),
                scale: 2.0 * decay_rate(dim, mass),
            });
        }
    }

    let format = match args.output.format.as_deref() {
        None | Some("csv") => OutputFormat::Csv,
        Some("json") => OutputFormat::Json,
        Some(other) => {
            return Err(CmdError::Usage(format!(
                "unknown format '{other}' (available: json, csv)"
            )))
        }
    };

    let content = match format {
        OutputFormat::Json => to_json_pretty(&TableOutput {
            tool_version: TOOL_VERSION.to_string(),
            rows,
        }),
        OutputFormat::Csv => {
            let mut text = String::from(
                "dim,mass,amplitude,g_diag_analytic,g_diag_quadrature,variance,variance_alt_formula,scale\n",
            );
            for r in &rows {
                text.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    r.dim,
                    format_f64(r.mass),
                    format_f64(r.amplitude),
                    format_f64(r.g_diag_analytic),
                    format_f64(r.g_diag_quadrature),
                    format_f64(r.variance),
                    format_f64(r.variance_alt_formula),
                    format_f64(r.scale),
                ));
            }
            text
        }
    };
    emit(&args.output.out, &content)
}
