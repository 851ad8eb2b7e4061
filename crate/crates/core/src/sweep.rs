//! Parameter sweeps over register size and duration. Rows are computed in
//! parallel and returned in `(n, t)` order.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cnot::{cascade_dist, flat_dist};
use crate::error::{domain, Result};
use crate::optimize::{lin_space, log_space};
use crate::scheme::{peak_snr, time_to_snr, MeritPoint, PeakSnr, SchemeConfig, TimeToSnr};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

impl std::str::FromStr for Spacing {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "linear" => Ok(Spacing::Linear),
            "log" => Ok(Spacing::Log),
            other => Err(format!("unknown spacing '{other}' (expected linear|log)")),
        }
    }
}

impl std::fmt::Display for Spacing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Spacing::Linear => "linear",
            Spacing::Log => "log",
        })
    }
}

/// Durations in ms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl TimeGrid {
    pub fn new(start: f64, stop: f64, points: usize, spacing: Spacing) -> Result<Self> {
        if points < 2 {
            return Err(domain(format!("time grid needs at least 2 points (got {points})")));
        }
        if !(start.is_finite() && stop.is_finite()) || start >= stop || start < 0.0 {
            return Err(domain(format!("time grid needs 0 <= start < stop (got {start}, {stop})")));
        }
        if spacing == Spacing::Log && start <= 0.0 {
            return Err(domain("log spacing needs start > 0"));
        }
        Ok(Self {
            start,
            stop,
            points,
            spacing,
        })
    }

    pub fn values(&self) -> Vec<f64> {
        match self.spacing {
            Spacing::Linear => lin_space(self.start, self.stop, self.points),
            Spacing::Log => log_space(self.start, self.stop, self.points),
        }
    }
}

fn configs(base: &SchemeConfig, ns: &[usize]) -> Result<Vec<SchemeConfig>> {
    if ns.is_empty() {
        return Err(domain("empty qubit range"));
    }
    ns.iter().map(|&n| base.with_n_qubits(n)).collect()
}

fn grid_pairs(cfgs: &[SchemeConfig], grid: &TimeGrid) -> Vec<(usize, f64)> {
    let ts = grid.values();
    (0..cfgs.len())
        .flat_map(|i| ts.iter().map(move |&t| (i, t)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SnrRow {
    pub n: usize,
    pub t_ms: f64,
    pub snr: f64,
}

/// SNR from moments at every `(n, t)`.
pub fn snr_sweep(base: &SchemeConfig, ns: &[usize], grid: &TimeGrid) -> Result<Vec<SnrRow>> {
    let cfgs = configs(base, ns)?;
    grid_pairs(&cfgs, grid)
        .par_iter()
        .map(|&(i, t)| {
            Ok(SnrRow {
                n: cfgs[i].n_qubits(),
                t_ms: t,
                snr: cfgs[i].snr_at(t)?,
            })
        })
        .collect()
}

/// SNR and optimal-threshold infidelity at every `(n, t)`.
pub fn mi_sweep(base: &SchemeConfig, ns: &[usize], grid: &TimeGrid) -> Result<Vec<MeritPoint>> {
    let cfgs = configs(base, ns)?;
    grid_pairs(&cfgs, grid)
        .par_iter()
        .map(|&(i, t)| cfgs[i].merit_at(t))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpeedupRow {
    pub n: usize,
    /// Time to reach the target with `n` qubits, if reachable.
    pub t_n_ms: Option<f64>,
    /// `t₁ / t_n`, when both are reachable.
    pub ratio: Option<f64>,
}

/// Time to reach `target` SNR for each `n`, relative to a single qubit.
pub fn speedup_table(base: &SchemeConfig, ns: &[usize], target: f64) -> Result<Vec<SpeedupRow>> {
    let cfgs = configs(base, ns)?;
    let single = base.with_n_qubits(1)?;
    let t1 = time_to_snr(&single, target)?.time();
    cfgs.par_iter()
        .map(|cfg| {
            let t_n = match time_to_snr(cfg, target)? {
                TimeToSnr::Reached(t) => Some(t),
                TimeToSnr::NotReachable { .. } => None,
            };
            Ok(SpeedupRow {
                n: cfg.n_qubits(),
                t_n_ms: t_n,
                ratio: t1.zip(t_n).map(|(a, b)| a / b),
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PeakRow {
    pub n: usize,
    pub peak: PeakSnr,
}

pub fn peak_table(base: &SchemeConfig, ns: &[usize]) -> Result<Vec<PeakRow>> {
    let cfgs = configs(base, ns)?;
    cfgs.par_iter()
        .map(|cfg| {
            Ok(PeakRow {
                n: cfg.n_qubits(),
                peak: peak_snr(cfg)?,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CompilationRow {
    pub n: usize,
    pub q: usize,
    pub flat: f64,
    pub cascade: f64,
}

/// Both compilations' outcome laws side by side, for each `n`.
pub fn compilation_table(ns: &[usize], p: f64) -> Result<Vec<CompilationRow>> {
    let mut rows = Vec::new();
    for &n in ns {
        let flat = flat_dist(n, p)?;
        let cascade = cascade_dist(n, p)?;
        rows.extend((0..=n).map(|q| CompilationRow {
            n,
            q,
            flat: flat.prob(q),
            cascade: cascade.prob(q),
        }));
    }
    Ok(rows)
}

/// Grid point with the lowest optimal-threshold infidelity.
pub fn min_mi_over_time(config: &SchemeConfig, grid: &TimeGrid) -> Result<MeritPoint> {
    let points: Vec<MeritPoint> = grid
        .values()
        .par_iter()
        .map(|&t| config.merit_at(t))
        .collect::<Result<_>>()?;
    Ok(points
        .into_iter()
        .reduce(|best, p| if p.mi < best.mi { p } else { best })
        .expect("grid has at least two points"))
}
