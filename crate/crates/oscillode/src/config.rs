//! Run settings: built-in defaults, then an optional flat `key = value`
//! file, then command-line flags.
//!
//! ```text
//! # oscillode.conf
//! rel_tol = 1e-10
//! abs_tol = 1e-10
//! x_max = 150
//! workers = 4
//! ```
//!
//! Recognised keys: `rel_tol`, `abs_tol`, `max_step`, `x_max`,
//! `event_refine_tol`, `width`, `workers`.

use std::path::{Path, PathBuf};

use oscillode_core::thresholds::DEFAULT_WIDTH;
use oscillode_core::SolverConfig;

use crate::error::{Error, Result};

/// Environment variable naming a config file.
pub const CONFIG_ENV: &str = "OSCILLODE_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    pub solver: SolverConfig,
    /// Bracket width for threshold searches.
    pub width: f64,
    pub workers: usize,
}

/// Partially specified settings from one source.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Overrides {
    pub rel_tol: Option<f64>,
    pub abs_tol: Option<f64>,
    pub max_step: Option<f64>,
    pub x_max: Option<f64>,
    pub event_refine_tol: Option<f64>,
    pub width: Option<f64>,
    pub workers: Option<usize>,
}

impl Overrides {
    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        let mut out = Overrides::default();
        for (i, raw) in text.lines().enumerate() {
            let err = |msg: String| Error::Config {
                path: path.to_path_buf(),
                line: i + 1,
                msg,
            };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected `key = value`, got `{line}`")))?;
            let (key, value) = (key.trim(), value.trim());
            let real = || {
                value
                    .parse::<f64>()
                    .map_err(|_| err(format!("`{value}` is not a number")))
            };
            match key {
                "rel_tol" => out.rel_tol = Some(real()?),
                "abs_tol" => out.abs_tol = Some(real()?),
                "max_step" => out.max_step = Some(real()?),
                "x_max" => out.x_max = Some(real()?),
                "event_refine_tol" => out.event_refine_tol = Some(real()?),
                "width" => out.width = Some(real()?),
                "workers" => {
                    out.workers = Some(
                        value
                            .parse()
                            .map_err(|_| err(format!("`{value}` is not a worker count")))?,
                    )
                }
                other => return Err(err(format!("unknown key `{other}`"))),
            }
        }
        Ok(out)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text, path)
    }

    /// Values set in `over` take precedence.
    pub fn then(self, over: Overrides) -> Overrides {
        Overrides {
            rel_tol: over.rel_tol.or(self.rel_tol),
            abs_tol: over.abs_tol.or(self.abs_tol),
            max_step: over.max_step.or(self.max_step),
            x_max: over.x_max.or(self.x_max),
            event_refine_tol: over.event_refine_tol.or(self.event_refine_tol),
            width: over.width.or(self.width),
            workers: over.workers.or(self.workers),
        }
    }

    /// Apply on top of the defaults and validate. An unset
    /// `event_refine_tol` follows `abs_tol` down when `abs_tol` is tighter
    /// than the default.
    pub fn resolve(self) -> Result<Settings> {
        let d = SolverConfig::default();
        let abs_tol = self.abs_tol.unwrap_or(d.abs_tol);
        let solver = SolverConfig {
            rel_tol: self.rel_tol.unwrap_or(d.rel_tol),
            abs_tol,
            max_step: self.max_step.unwrap_or(d.max_step),
            x_max: self.x_max.unwrap_or(d.x_max),
            event_refine_tol: self
                .event_refine_tol
                .unwrap_or_else(|| d.event_refine_tol.min(abs_tol)),
        };
        solver.validate()?;
        let workers = self.workers.unwrap_or_else(default_workers);
        if workers == 0 {
            return Err(Error::Invalid("workers must be at least 1".into()));
        }
        Ok(Settings {
            solver,
            width: self.width.unwrap_or(DEFAULT_WIDTH),
            workers,
        })
    }
}

pub fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Config file named by an explicit path or, failing that, by
/// `OSCILLODE_CONFIG`.
pub fn config_path(explicit: Option<PathBuf>) -> Option<PathBuf> {
    explicit.or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from))
}
