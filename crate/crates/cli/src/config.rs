//! Run configuration files (TOML) and their mapping onto the solver.

use crate::error::CliError;
use mkse_core::dynamics::{Nonlinearity, SolverConfig};
use mkse_core::{Dim, Grid};
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Schema identifier embedded in every emitted report.
pub const SCHEMA_VERSION: &str = "mkse-report-v1";

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfigFile {
    pub grid: GridSection,
    pub dynamics: DynamicsSection,
    #[serde(default)]
    pub init: InitSection,
    #[serde(default)]
    pub sweep: Option<SweepSection>,
    #[serde(default)]
    pub output: OutputSection,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub d: u8,
    pub n: usize,
    pub length: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DynamicsSection {
    pub lambda: f64,
    /// Defaults to 0.005 in 1D, 0.01 in 2D.
    #[serde(default)]
    pub dt: Option<f64>,
    pub t_end: f64,
    /// Defaults to `t_end / 2`.
    #[serde(default)]
    pub transient: Option<f64>,
    #[serde(default = "default_sample_every")]
    pub sample_every: f64,
    #[serde(default = "default_nonlinearity")]
    pub nonlinearity: String,
}

fn default_sample_every() -> f64 {
    0.5
}

fn default_nonlinearity() -> String {
    "full".to_string()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitSection {
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_amplitude")]
    pub amplitude: f64,
    #[serde(default = "default_decay")]
    pub decay: f64,
}

impl Default for InitSection {
    fn default() -> Self {
        InitSection {
            seed: 0,
            amplitude: default_amplitude(),
            decay: default_decay(),
        }
    }
}

fn default_amplitude() -> f64 {
    1.0
}

fn default_decay() -> f64 {
    3.0
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    /// `"lambda"` or `"length"`.
    pub parameter: String,
    pub values: Vec<f64>,
    #[serde(default = "default_seeds")]
    pub seeds: Vec<u64>,
}

fn default_seeds() -> Vec<u64> {
    vec![0, 1, 2, 3, 4]
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default = "default_directory")]
    pub directory: String,
    #[serde(default = "default_formats")]
    pub formats: Vec<String>,
}

impl Default for OutputSection {
    fn default() -> Self {
        OutputSection {
            directory: default_directory(),
            formats: default_formats(),
        }
    }
}

fn default_directory() -> String {
    "out".to_string()
}

fn default_formats() -> Vec<String> {
    vec!["csv".to_string(), "json".to_string(), "svg".to_string()]
}

impl RunConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Config(format!("cannot read config {}: {e}", path.display()))
        })?;
        let cfg: RunConfigFile = toml::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Full semantic validation with field-level messages.
    pub fn validate(&self) -> Result<(), CliError> {
        self.grid()?;
        self.nonlinearity()?;
        for format in &self.output.formats {
            if !matches!(format.as_str(), "csv" | "json" | "svg") {
                return Err(CliError::Config(format!(
                    "output.formats: unknown format `{format}` (expected csv, json or svg)"
                )));
            }
        }
        if let Some(sweep) = &self.sweep {
            if !matches!(sweep.parameter.as_str(), "lambda" | "length") {
                return Err(CliError::Config(format!(
                    "sweep.parameter: `{}` is not sweepable (expected lambda or length)",
                    sweep.parameter
                )));
            }
            if sweep.values.len() < 3 {
                return Err(CliError::Config(format!(
                    "sweep.values: need at least 3 values, got {}",
                    sweep.values.len()
                )));
            }
            if sweep.values.iter().any(|v| !(*v > 0.0)) {
                return Err(CliError::Config(
                    "sweep.values: all values must be positive".to_string(),
                ));
            }
            if sweep.seeds.is_empty() {
                return Err(CliError::Config("sweep.seeds: must not be empty".to_string()));
            }
        }
        // The solver-level constraints, surfaced with section-qualified names.
        self.solver_config(None, None)?.validate().map_err(|e| {
            CliError::Config(match e {
                mkse_core::Error::InvalidParameter { name, reason } => {
                    format!("{}.{name}: {reason}", section_of(name))
                }
                other => other.to_string(),
            })
        })
    }

    pub fn grid(&self) -> Result<Grid, CliError> {
        let dim = match self.grid.d {
            1 => Dim::One,
            2 => Dim::Two,
            other => {
                return Err(CliError::Config(format!(
                    "grid.d: dimension must be 1 or 2, got {other}"
                )))
            }
        };
        Grid::new(dim, self.grid.n, self.grid.length).map_err(|e| match e {
            mkse_core::Error::InvalidResolution(_) => CliError::Config(format!("grid.n: {e}")),
            mkse_core::Error::InvalidLength(_) => CliError::Config(format!("grid.length: {e}")),
            other => CliError::Config(other.to_string()),
        })
    }

    pub fn nonlinearity(&self) -> Result<Nonlinearity, CliError> {
        match self.dynamics.nonlinearity.as_str() {
            "full" => Ok(Nonlinearity::Full),
            "cubic-only" => Ok(Nonlinearity::CubicOnly),
            "none" => Ok(Nonlinearity::None),
            other => Err(CliError::Config(format!(
                "dynamics.nonlinearity: `{other}` is not one of full, cubic-only, none"
            ))),
        }
    }

    /// Solver configuration, optionally overriding the swept parameter and
    /// the seed.
    pub fn solver_config(
        &self,
        override_value: Option<(&str, f64)>,
        seed: Option<u64>,
    ) -> Result<SolverConfig, CliError> {
        let mut lambda = self.dynamics.lambda;
        let mut length = self.grid.length;
        if let Some((name, value)) = override_value {
            match name {
                "lambda" => lambda = value,
                "length" => length = value,
                other => {
                    return Err(CliError::Config(format!(
                        "sweep.parameter: unknown parameter `{other}`"
                    )))
                }
            }
        }
        let base = self.grid()?;
        let grid = Grid::new(base.dim(), base.points_per_axis(), length)
            .map_err(|e| CliError::Config(format!("grid.length: {e}")))?;
        let mut cfg = SolverConfig::new(grid, lambda, self.dynamics.t_end);
        if let Some(dt) = self.dynamics.dt {
            cfg.dt = dt;
        }
        cfg.transient = self
            .dynamics
            .transient
            .unwrap_or(self.dynamics.t_end / 2.0);
        cfg.sample_every = self.dynamics.sample_every;
        cfg.seed = seed.unwrap_or(self.init.seed);
        cfg.amplitude = self.init.amplitude;
        cfg.decay = self.init.decay;
        cfg.nonlinearity = self.nonlinearity()?;
        Ok(cfg)
    }

    pub fn wants(&self, format: &str) -> bool {
        self.output.formats.iter().any(|f| f == format)
    }
}

fn section_of(field: &str) -> &'static str {
    match field {
        "seed" | "amplitude" | "decay" => "init",
        _ => "dynamics",
    }
}
