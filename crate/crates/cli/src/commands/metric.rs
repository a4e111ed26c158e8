//! `infogeo metric` — one Fisher metric, serialized.

use infogeo_core::fisher::MethodRegistry;

use crate::args::MetricArgs;
use crate::config::{resolve, OutputFormat};
use crate::output::{emit, matrix_rows, to_json_pretty, MetricOutput, TOOL_VERSION};
use crate::CmdError;

pub fn run(args: MetricArgs) -> Result<(), CmdError> {
    let eff = resolve(&args.family, &args.numeric, &args.output)?;
    let family = eff.build_family()?;
    let registry = MethodRegistry::builtin();
    let estimator = registry
        .create(&eff.method, &eff.estimator_options())
        .map_err(|e| CmdError::Usage(e.to_string()))?;

    let result = eff.with_workers(|| estimator.estimate(family.as_ref()))??;

    let payload = MetricOutput {
        family: result.meta.kind.clone(),
        dim: result.meta.dim,
        mass: result.meta.mass,
        theta: result.meta.theta.clone(),
        method: result.method.to_string(),
        g: matrix_rows(&result.g),
        g_error: matrix_rows(&result.error),
        unconverged: result.unconverged,
        seed: (eff.method == "montecarlo").then_some(eff.seed),
        tool_version: TOOL_VERSION.to_string(),
    };

    let content = match eff.format {
        OutputFormat::Json => to_json_pretty(&payload),
        OutputFormat::Csv => payload.to_csv(),
    };
    emit(&eff.out, &content)?;

    if result.unconverged {
        return Err(CmdError::Convergence(
            "metric integration exhausted its budget; best estimate written with \"unconverged\": true"
                .into(),
        ));
    }
    Ok(())
}
