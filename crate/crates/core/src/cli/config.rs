//! Command-line flags, `key=value` config files and their merge.
//!
//! Flags win over the config file, which wins over the built-in defaults.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, ValueEnum};
use serde::Serialize;

use crate::cnot::{Compilation, GateNoise};
use crate::rates::RateParams;
use crate::scheme::{ReadoutModel, SchemeConfig};
use crate::sweep::{Spacing, TimeGrid};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    SnrSweep,
    MiSweep,
    Speedup,
    PeakSnr,
    CompilationDist,
    Validate,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::SnrSweep => "snr-sweep",
            Command::MiSweep => "mi-sweep",
            Command::Speedup => "speedup",
            Command::PeakSnr => "peak-snr",
            Command::CompilationDist => "compilation-dist",
            Command::Validate => "validate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CompilationArg {
    Flat,
    Cascade,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SpacingArg {
    Linear,
    Log,
}

/// Readout trade-off calculator. Times in ms, rates in 1/ms.
#[derive(Debug, Parser)]
#[command(name = "rt", version, about)]
pub struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Dark-state photon rate.
    #[arg(long)]
    mu0: Option<f64>,
    /// Bright-state photon rate.
    #[arg(long)]
    mu1: Option<f64>,
    /// Bright-to-dark decay rate.
    #[arg(long)]
    lambda: Option<f64>,
    /// CNOT failure probability.
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, value_enum)]
    compilation: Option<CompilationArg>,
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    t_start: Option<f64>,
    #[arg(long)]
    t_stop: Option<f64>,
    #[arg(long)]
    t_points: Option<usize>,
    #[arg(long, value_enum)]
    t_spacing: Option<SpacingArg>,
    #[arg(long)]
    target_snr: Option<f64>,
    #[arg(long)]
    shots: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// File of `key=value` lines; keys are the long flag names without dashes.
    #[arg(long)]
    config: Option<PathBuf>,
}

/// A fully resolved run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub rates: RateParams,
    pub noise: GateNoise,
    pub n_min: usize,
    pub n_max: usize,
    pub t_grid: TimeGrid,
    pub target_snr: Option<f64>,
    pub shots: Option<u64>,
    pub seed: Option<u64>,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn n_values(&self) -> Vec<usize> {
        (self.n_min..=self.n_max).collect()
    }

    /// Ideal model when there is neither gate noise nor decay.
    pub fn scheme(&self, n: usize) -> crate::Result<SchemeConfig> {
        let model = if self.noise.p() == 0.0 && self.rates.lambda() == 0.0 {
            ReadoutModel::IdealPoisson
        } else {
            ReadoutModel::NoisyDecaying(self.noise)
        };
        SchemeConfig::new(n, self.rates, model)
    }

    /// Resolved settings under their config-file keys.
    pub fn echo(&self) -> BTreeMap<&'static str, serde_json::Value> {
        use serde_json::json;
        let mut m = BTreeMap::new();
        m.insert("command", json!(self.command.name()));
        m.insert("mu0", json!(self.rates.mu0()));
        m.insert("mu1", json!(self.rates.mu1()));
        m.insert("lambda", json!(self.rates.lambda()));
        m.insert("p", json!(self.noise.p()));
        m.insert("compilation", json!(self.noise.compilation().to_string()));
        m.insert("nmin", json!(self.n_min));
        m.insert("nmax", json!(self.n_max));
        m.insert("tstart", json!(self.t_grid.start));
        m.insert("tstop", json!(self.t_grid.stop));
        m.insert("tpoints", json!(self.t_grid.points));
        m.insert("tspacing", json!(self.t_grid.spacing.to_string()));
        m.insert("targetsnr", json!(self.target_snr));
        m.insert("shots", json!(self.shots));
        m.insert("seed", json!(self.seed));
        m.insert("format", json!(self.format));
        m
    }
}

/// Values read from a config file, all optional.
#[derive(Debug, Default)]
struct FileValues {
    mu0: Option<f64>,
    mu1: Option<f64>,
    lambda: Option<f64>,
    p: Option<f64>,
    compilation: Option<Compilation>,
    n_min: Option<usize>,
    n_max: Option<usize>,
    t_start: Option<f64>,
    t_stop: Option<f64>,
    t_points: Option<usize>,
    t_spacing: Option<Spacing>,
    target_snr: Option<f64>,
    shots: Option<u64>,
    seed: Option<u64>,
    format: Option<Format>,
    out: Option<PathBuf>,
}

fn parse_value<T: FromStr>(key: &str, raw: &str, line: usize) -> Result<T, String> {
    raw.parse()
        .map_err(|_| format!("config line {line}: invalid value '{raw}' for '{key}'"))
}

fn parse_config_text(text: &str) -> Result<FileValues, String> {
    let mut v = FileValues::default();
    for (i, raw_line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {line_no}: expected key=value, got '{line}'"))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "mu0" => v.mu0 = Some(parse_value(key, value, line_no)?),
            "mu1" => v.mu1 = Some(parse_value(key, value, line_no)?),
            "lambda" => v.lambda = Some(parse_value(key, value, line_no)?),
            "p" => v.p = Some(parse_value(key, value, line_no)?),
            "compilation" => v.compilation = Some(parse_value(key, value, line_no)?),
            "nmin" => v.n_min = Some(parse_value(key, value, line_no)?),
            "nmax" => v.n_max = Some(parse_value(key, value, line_no)?),
            "tstart" => v.t_start = Some(parse_value(key, value, line_no)?),
            "tstop" => v.t_stop = Some(parse_value(key, value, line_no)?),
            "tpoints" => v.t_points = Some(parse_value(key, value, line_no)?),
            "tspacing" => v.t_spacing = Some(parse_value(key, value, line_no)?),
            "targetsnr" => v.target_snr = Some(parse_value(key, value, line_no)?),
            "shots" => v.shots = Some(parse_value(key, value, line_no)?),
            "seed" => v.seed = Some(parse_value(key, value, line_no)?),
            "format" => {
                v.format = Some(match value {
                    "csv" => Format::Csv,
                    "json" => Format::Json,
                    _ => return Err(format!("config line {line_no}: invalid value '{value}' for 'format'")),
                })
            }
            "out" => v.out = Some(PathBuf::from(value)),
            other => return Err(format!("config line {line_no}: unknown key '{other}'")),
        }
    }
    Ok(v)
}

impl Args {
    /// Merges flags, config file and defaults, and validates the result.
    pub fn resolve(self) -> Result<RunConfig, String> {
        let file = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| format!("cannot read config file {}: {e}", path.display()))?;
                parse_config_text(&text)?
            }
            None => FileValues::default(),
        };
        let defaults = RateParams::default();
        let rates = RateParams::new(
            self.mu0.or(file.mu0).unwrap_or(defaults.mu0()),
            self.mu1.or(file.mu1).unwrap_or(defaults.mu1()),
            self.lambda.or(file.lambda).unwrap_or(defaults.lambda()),
        )
        .map_err(|e| e.to_string())?;
        let compilation = self
            .compilation
            .map(|c| match c {
                CompilationArg::Flat => Compilation::Flat,
                CompilationArg::Cascade => Compilation::Cascade,
            })
            .or(file.compilation)
            .unwrap_or(Compilation::Cascade);
        let noise = GateNoise::new(self.p.or(file.p).unwrap_or(0.01), compilation).map_err(|e| e.to_string())?;
        let n_min = self.n_min.or(file.n_min).unwrap_or(1);
        let n_max = self.n_max.or(file.n_max).unwrap_or(5);
        if n_min == 0 || n_min > n_max {
            return Err(format!("qubit range needs 1 <= n-min <= n-max (got {n_min}..{n_max})"));
        }
        let spacing = self
            .t_spacing
            .map(|s| match s {
                SpacingArg::Linear => Spacing::Linear,
                SpacingArg::Log => Spacing::Log,
            })
            .or(file.t_spacing)
            .unwrap_or(Spacing::Log);
        let t_grid = TimeGrid::new(
            self.t_start.or(file.t_start).unwrap_or(0.1),
            self.t_stop.or(file.t_stop).unwrap_or(5.0),
            self.t_points.or(file.t_points).unwrap_or(50),
            spacing,
        )
        .map_err(|e| e.to_string())?;
        let target_snr = self.target_snr.or(file.target_snr);
        if let Some(s) = target_snr {
            if !(s > 0.0 && s.is_finite()) {
                return Err(format!("target-snr must be positive (got {s})"));
            }
        }
        Ok(RunConfig {
            command: self.command,
            rates,
            noise,
            n_min,
            n_max,
            t_grid,
            target_snr,
            shots: self.shots.or(file.shots),
            seed: self.seed.or(file.seed),
            format: self.format.or(file.format).unwrap_or(Format::Csv),
            out: self.out.or(file.out),
        })
    }
}
