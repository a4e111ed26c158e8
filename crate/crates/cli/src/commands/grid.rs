//! `infogeo grid` — density values over a 2D slice of ℝ^D, for plotting.
//! The remaining coordinates stay fixed at θ, so the emitted peak is the
//! density maximum.

use serde::Serialize;

use crate::args::GridArgs;
use crate::config::{parse_csv_usize, resolve, OutputFormat};
use crate::output::{emit, format_f64, to_json_pretty, TOOL_VERSION};
use crate::CmdError;

#[derive(Serialize)]
struct GridOutput {
    family: String,
    dim: usize,
    mass: Option<f64>,
    theta: Vec<f64>,
    axes: Vec<usize>,
    half_width: f64,
    points: usize,
    tool_version: String,
    /// Triples (x_first, x_second, density).
    values: Vec<[f64; 3]>,
}

pub fn run(args: GridArgs) -> Result<(), CmdError> {
    let numeric = crate::args::NumericFlags {
        method: None,
        samples: None,
        seed: None,
        rel_tol: None,
        abs_tol: None,
        max_subdiv: None,
        fd_step: None,
        workers: None,
    };
    let eff = resolve(&args.family, &numeric, &args.output)?;
    let family = eff.build_family()?;

    let axes = parse_csv_usize(&args.axes, "axes")?;
    if axes.len() != 2 || axes[0] == axes[1] {
        return Err(CmdError::Usage(
            "--axes needs two distinct axis indices".into(),
        ));
    }
    if let Some(&bad) = axes.iter().find(|&&a| a >= eff.dim) {
        return Err(CmdError::Usage(format!(
            "plot axis {bad} out of range for dim {}",
            eff.dim
        )));
    }
    if args.points < 2 {
        return Err(CmdError::Usage("--points must be at least 2".into()));
    }
    if args.half_width.is_nan() || args.half_width <= 0.0 {
        return Err(CmdError::Usage("--half-width must be positive".into()));
    }

    let (a0, a1) = (axes[0], axes[1]);
    let step = 2.0 * args.half_width / (args.points - 1) as f64;
    let mut values = Vec::with_capacity(args.points * args.points);
    let mut x = eff.theta.clone();
    for i in 0..args.points {
        x[a0] = eff.theta[a0] - args.half_width + i as f64 * step;
        for j in 0..args.points {
            x[a1] = eff.theta[a1] - args.half_width + j as f64 * step;
            let density = family
                .density(&x)
                .map_err(|e| CmdError::Usage(e.to_string()))?;
            values.push([x[a0], x[a1], density]);
        }
    }

    let meta = family.meta();
    let payload = GridOutput {
        family: meta.kind,
        dim: meta.dim,
        mass: meta.mass,
        theta: meta.theta,
        axes,
        half_width: args.half_width,
        points: args.points,
        tool_version: TOOL_VERSION.to_string(),
        values,
    };

    let content = match (args.output.format.as_deref(), eff.format) {
        (None, _) | (_, OutputFormat::Csv) => {
            let mut text = format!("x{a0},x{a1},density\n");
            for v in &payload.values {
                text.push_str(&format!(
                    "{},{},{}\n",
                    format_f64(v[0]),
                    format_f64(v[1]),
                    format_f64(v[2])
                ));
            }
            text
        }
        (_, OutputFormat::Json) => to_json_pretty(&payload),
    };
    emit(&eff.out, &content)
}
