//! Experiment configuration from flags and `key = value` files.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::Args;

use topocon_core::mobility::{MotionParams, Region, WaypointParams};

use crate::error::{HarnessError, Result};

pub const DEFAULT_ALGORITHMS: [&str; 4] = ["udg", "gabriel", "mst", "lrr"];

/// A fully resolved sweep description.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub region: Region,
    pub n_start: usize,
    pub n_stop: usize,
    pub n_step: usize,
    pub rmax: Vec<f64>,
    pub trials: usize,
    /// Placement model name: `static`, `walk`, `waypoint`, `trace`, or any
    /// name registered with the harness.
    pub model: String,
    pub trace_file: Option<PathBuf>,
    pub algorithms: Vec<String>,
    pub seed: u64,
    /// Mobility time step and snapshot spacing, seconds.
    pub cadence: f64,
    /// Simulated seconds before a mobile network is measured.
    pub duration: f64,
    pub v_min: f64,
    pub v_max: f64,
    pub pause_max: f64,
    /// Fill the `wall_ms` column. Off by default since it breaks byte-identical reruns.
    pub timing: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            region: Region::default(),
            n_start: 50,
            n_stop: 1000,
            n_step: 50,
            rmax: vec![100.0, 200.0, 300.0],
            trials: 100,
            model: "static".into(),
            trace_file: None,
            algorithms: DEFAULT_ALGORITHMS.iter().map(|s| s.to_string()).collect(),
            seed: 0,
            cadence: 1.0,
            duration: 10_000.0,
            v_min: 0.2,
            v_max: 10.0,
            pause_max: 10.0,
            timing: false,
        }
    }
}

impl ExperimentConfig {
    pub fn n_values(&self) -> Vec<usize> {
        (self.n_start..=self.n_stop).step_by(self.n_step.max(1)).collect()
    }

    pub fn motion(&self) -> Result<MotionParams> {
        Ok(MotionParams::new(self.region.clone(), self.v_min, self.v_max)?)
    }

    pub fn waypoint(&self) -> Result<WaypointParams> {
        Ok(WaypointParams {
            motion: self.motion()?,
            pause_max: self.pause_max,
        })
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(HarnessError::config(msg));
        if self.n_start < 2 {
            return fail(format!("n-start must be at least 2, got {}", self.n_start));
        }
        if self.n_step == 0 {
            return fail("n-step must be positive".into());
        }
        if self.n_stop < self.n_start {
            return fail(format!("empty n range {}..{}", self.n_start, self.n_stop));
        }
        if self.trials == 0 {
            return fail("trials must be positive".into());
        }
        if self.rmax.is_empty() {
            return fail("no rmax values".into());
        }
        if let Some(r) = self.rmax.iter().find(|r| !(**r > 0.0 && r.is_finite())) {
            return fail(format!("rmax must be positive and finite, got {r}"));
        }
        if self.algorithms.is_empty() {
            return fail("no algorithms".into());
        }
        if !(self.cadence > 0.0 && self.cadence.is_finite()) {
            return fail(format!("cadence must be positive, got {}", self.cadence));
        }
        if !(self.duration >= 0.0 && self.duration.is_finite()) {
            return fail(format!("duration must be non-negative, got {}", self.duration));
        }
        if self.model == "trace" && self.trace_file.is_none() {
            return fail("model trace needs --trace-file".into());
        }
        Ok(())
    }
}

/// Every configurable setting as an optional value.
///
/// Doubles as the clap argument group and as the parse target for config
/// files, so both spell keys the same way.
#[derive(Debug, Clone, Default, PartialEq, Args)]
pub struct ConfigArgs {
    /// Config file with `key = value` lines; flags given on the command line win
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub n_start: Option<usize>,
    #[arg(long)]
    pub n_stop: Option<usize>,
    #[arg(long)]
    pub n_step: Option<usize>,
    /// Comma-separated maximum radii in metres
    #[arg(long, value_delimiter = ',')]
    pub rmax: Option<Vec<f64>>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// static, walk, waypoint or trace
    #[arg(long)]
    pub model: Option<String>,
    #[arg(long)]
    pub trace_file: Option<PathBuf>,
    /// Comma-separated algorithm names (udg, gabriel, mst, lrr)
    #[arg(long, value_delimiter = ',')]
    pub algo: Option<Vec<String>>,
    /// Region extents, e.g. 1000x1000
    #[arg(long)]
    pub region: Option<String>,
    #[arg(long)]
    pub dim: Option<usize>,
    /// Output CSV path (stdout when absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Simulated seconds before measuring a mobile network
    #[arg(long)]
    pub duration: Option<f64>,
    /// Mobility time step in seconds
    #[arg(long)]
    pub cadence: Option<f64>,
    #[arg(long)]
    pub vmin: Option<f64>,
    #[arg(long)]
    pub vmax: Option<f64>,
    #[arg(long)]
    pub pause_max: Option<f64>,
    /// Record per-trial wall time in the wall_ms column
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub timing: Option<bool>,
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    value
        .parse()
        .map_err(|e| HarnessError::config(format!("{key} = {value}: {e}")))
}

fn parse_list<T: FromStr>(key: &str, value: &str) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    value.split(',').map(|v| parse(key, v.trim())).collect()
}

/// Parses `WxH` (or more `x`-separated extents) into a region.
pub fn parse_region(text: &str) -> Result<Region> {
    let extents = parse_list::<f64>("region", &text.replace(['x', 'X'], ","))?;
    Ok(Region::new(extents)?)
}

impl ConfigArgs {
    /// Parses a config file body. Blank lines and `#` comments are skipped.
    pub fn parse_file(text: &str) -> Result<Self> {
        let mut args = ConfigArgs::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| HarnessError::config(format!("line {}: expected key = value", i + 1)))?;
            args.set(key.trim(), value.trim())?;
        }
        Ok(args)
    }

    pub fn load(path: &Path) -> Result<Self> {
        ConfigArgs::parse_file(&std::fs::read_to_string(path)?)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key_norm = key.replace('_', "-");
        match key_norm.as_str() {
            "n-start" => self.n_start = Some(parse(key, value)?),
            "n-stop" => self.n_stop = Some(parse(key, value)?),
            "n-step" => self.n_step = Some(parse(key, value)?),
            "rmax" => self.rmax = Some(parse_list(key, value)?),
            "trials" => self.trials = Some(parse(key, value)?),
            "seed" => self.seed = Some(parse(key, value)?),
            "model" => self.model = Some(value.to_string()),
            "trace-file" => self.trace_file = Some(value.into()),
            "algo" => self.algo = Some(parse_list(key, value)?),
            "region" => self.region = Some(value.to_string()),
            "dim" => self.dim = Some(parse(key, value)?),
            "out" => self.out = Some(value.into()),
            "duration" => self.duration = Some(parse(key, value)?),
            "cadence" => self.cadence = Some(parse(key, value)?),
            "vmin" => self.vmin = Some(parse(key, value)?),
            "vmax" => self.vmax = Some(parse(key, value)?),
            "pause-max" => self.pause_max = Some(parse(key, value)?),
            "timing" => self.timing = Some(parse(key, value)?),
            _ => return Err(HarnessError::config(format!("unknown key {key}"))),
        }
        Ok(())
    }

    /// Fills every unset field from `base`.
    pub fn or(self, base: ConfigArgs) -> ConfigArgs {
        ConfigArgs {
            config: self.config.or(base.config),
            n_start: self.n_start.or(base.n_start),
            n_stop: self.n_stop.or(base.n_stop),
            n_step: self.n_step.or(base.n_step),
            rmax: self.rmax.or(base.rmax),
            trials: self.trials.or(base.trials),
            seed: self.seed.or(base.seed),
            model: self.model.or(base.model),
            trace_file: self.trace_file.or(base.trace_file),
            algo: self.algo.or(base.algo),
            region: self.region.or(base.region),
            dim: self.dim.or(base.dim),
            out: self.out.or(base.out),
            duration: self.duration.or(base.duration),
            cadence: self.cadence.or(base.cadence),
            vmin: self.vmin.or(base.vmin),
            vmax: self.vmax.or(base.vmax),
            pause_max: self.pause_max.or(base.pause_max),
            timing: self.timing.or(base.timing),
        }
    }

    /// Merges in the config file named by `--config`, if any.
    pub fn with_file(self) -> Result<ConfigArgs> {
        match &self.config {
            Some(path) => {
                let file = ConfigArgs::load(path)?;
                Ok(self.or(file))
            }
            None => Ok(self),
        }
    }

    /// Applies defaults to unset fields and validates the result.
    pub fn resolve(&self) -> Result<ExperimentConfig> {
        let d = ExperimentConfig::default();
        let region = match (&self.region, self.dim) {
            (Some(text), dim) => {
                let region = parse_region(text)?;
                if dim.is_some_and(|d| d != region.dim()) {
                    return Err(HarnessError::config(format!(
                        "region {text} has dimension {}, dim says {}",
                        region.dim(),
                        dim.unwrap_or_default()
                    )));
                }
                region
            }
            (None, Some(dim)) => Region::cube(dim, 1000.0)?,
            (None, None) => d.region,
        };
        let cfg = ExperimentConfig {
            region,
            n_start: self.n_start.unwrap_or(d.n_start),
            n_stop: self.n_stop.unwrap_or(d.n_stop),
            n_step: self.n_step.unwrap_or(d.n_step),
            rmax: self.rmax.clone().unwrap_or(d.rmax),
            trials: self.trials.unwrap_or(d.trials),
            model: self.model.clone().unwrap_or(d.model),
            trace_file: self.trace_file.clone(),
            algorithms: self.algo.clone().unwrap_or(d.algorithms),
            seed: self.seed.unwrap_or(d.seed),
            cadence: self.cadence.unwrap_or(d.cadence),
            duration: self.duration.unwrap_or(d.duration),
            v_min: self.vmin.unwrap_or(d.v_min),
            v_max: self.vmax.unwrap_or(d.v_max),
            pause_max: self.pause_max.unwrap_or(d.pause_max),
            timing: self.timing.unwrap_or(d.timing),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}
