//! RunConfig: the resolved settings of one invocation. Flags override the
//! optional `--config` file, which overrides built-in defaults
//! (kg, D=3, m=1, θ=0, quadrature).

use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use infogeo_core::family::{Family, FamilyConfig, FamilyRegistry};
use infogeo_core::fisher::EstimatorOptions;
use infogeo_core::integrate::{MonteCarloSpec, QuadratureSpec};

use crate::args::{FamilyFlags, NumericFlags, OutputFlags};
use crate::CmdError;

/// On-disk schema of `--config` files; every field optional and
/// unrecognized keys ignored, so a metric JSON emitted by this tool can be
/// fed back as configuration.
#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub family: Option<String>,
    pub dim: Option<usize>,
    pub mass: Option<f64>,
    pub theta: Option<Vec<f64>>,
    pub rates: Option<Vec<f64>>,
    pub amplitude_scale: Option<f64>,
    pub method: Option<String>,
    pub samples: Option<u64>,
    pub seed: Option<u64>,
    pub rel_tol: Option<f64>,
    pub abs_tol: Option<f64>,
    pub max_subdiv: Option<usize>,
    pub fd_step: Option<f64>,
    pub workers: Option<usize>,
    pub format: Option<String>,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn load(path: &PathBuf) -> Result<Self, CmdError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CmdError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CmdError::Usage(format!("bad config {}: {e}", path.display())))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(format!("unknown format '{other}' (available: json, csv)")),
        }
    }
}

/// Fully resolved settings.
pub struct Effective {
    pub family: String,
    pub dim: usize,
    pub mass: f64,
    pub theta: Vec<f64>,
    pub rates: Option<Vec<f64>>,
    pub amplitude_scale: Option<f64>,
    pub method: String,
    pub samples: u64,
    pub seed: u64,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdiv: usize,
    pub fd_step: f64,
    pub workers: Option<usize>,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

fn parse_csv_f64(text: &str, what: &str) -> Result<Vec<f64>, CmdError> {
    text.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<f64>()
                .map_err(|_| CmdError::Usage(format!("bad {what} component '{tok}'")))
        })
        .collect()
}

pub fn parse_csv_usize(text: &str, what: &str) -> Result<Vec<usize>, CmdError> {
    text.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<usize>()
                .map_err(|_| CmdError::Usage(format!("bad {what} component '{tok}'")))
        })
        .collect()
}

pub fn resolve(
    family: &FamilyFlags,
    numeric: &NumericFlags,
    output: &OutputFlags,
) -> Result<Effective, CmdError> {
    let file = match &family.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };

    let kind = family
        .family
        .clone()
        .or(file.family)
        .unwrap_or_else(|| "kg".to_string());
    let dim = family.dim.or(file.dim).unwrap_or(3);
    let mass = family.mass.or(file.mass).unwrap_or(1.0);

    let theta = match (&family.theta, file.theta) {
        (Some(text), _) => parse_csv_f64(text, "theta")?,
        (None, Some(v)) => v,
        (None, None) => vec![0.0; dim],
    };
    if theta.len() != dim {
        return Err(CmdError::Usage(format!(
            "theta has {} components, dim is {dim}",
            theta.len()
        )));
    }

    let rates = match (&family.rates, file.rates) {
        (Some(text), _) => Some(parse_csv_f64(text, "rates")?),
        (None, Some(v)) => Some(v),
        (None, None) => None,
    };
    if rates.is_some() && kind != "laplace" {
        return Err(CmdError::Usage(format!(
            "--rates applies to the laplace family, not '{kind}'"
        )));
    }
    let amplitude_scale = family.amplitude_scale.or(file.amplitude_scale);
    if amplitude_scale.is_some() && kind != "kg" {
        return Err(CmdError::Usage(format!(
            "--amplitude-scale applies to the kg family, not '{kind}'"
        )));
    }

    let format_text = output
        .format
        .clone()
        .or(file.format)
        .unwrap_or_else(|| "json".to_string());
    let format = OutputFormat::from_str(&format_text).map_err(CmdError::Usage)?;

    Ok(Effective {
        family: kind,
        dim,
        mass,
        theta,
        rates,
        amplitude_scale,
        method: numeric
            .method
            .clone()
            .or(file.method)
            .unwrap_or_else(|| "quadrature".to_string()),
        samples: numeric.samples.or(file.samples).unwrap_or(1_000_000),
        seed: numeric.seed.or(file.seed).unwrap_or(0),
        rel_tol: numeric.rel_tol.or(file.rel_tol).unwrap_or(1e-8),
        abs_tol: numeric.abs_tol.or(file.abs_tol).unwrap_or(1e-12),
        max_subdiv: numeric.max_subdiv.or(file.max_subdiv).unwrap_or(2000),
        fd_step: numeric.fd_step.or(file.fd_step).unwrap_or(1e-6),
        workers: numeric.workers.or(file.workers),
        format,
        out: output.out.clone().or(file.out),
    })
}

impl Effective {
    pub fn build_family(&self) -> Result<Box<dyn Family>, CmdError> {
        let registry = FamilyRegistry::builtin();
        let config = FamilyConfig {
            dim: self.dim,
            mass: Some(self.mass),
            theta: Some(self.theta.clone()),
            rates: self.rates.clone(),
            amplitude_scale: self.amplitude_scale,
        };
        registry
            .create(&self.family, &config)
            .map_err(|e| CmdError::Usage(e.to_string()))
    }

    pub fn quad_spec(&self) -> QuadratureSpec {
        QuadratureSpec::default()
            .with_tols(self.rel_tol, self.abs_tol)
            .with_max_subdivisions(self.max_subdiv)
    }

    pub fn estimator_options(&self) -> EstimatorOptions {
        EstimatorOptions {
            quad: self.quad_spec(),
            mc: MonteCarloSpec::new(self.samples, self.seed),
            fd_step: self.fd_step,
        }
    }

    /// Run `op` on a dedicated pool when `--workers` was given.
    pub fn with_workers<R: Send>(&self, op: impl FnOnce() -> R + Send) -> Result<R, CmdError> {
        match self.workers {
            None => Ok(op()),
            Some(workers) => {
                if workers == 0 {
                    return Err(CmdError::Usage("--workers must be at least 1".into()));
                }
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(workers)
                    .build()
                    .map_err(|e| CmdError::Usage(format!("cannot build worker pool: {e}")))?;
                Ok(pool.install(op))
            }
        }
    }
}
