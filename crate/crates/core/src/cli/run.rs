//! Executes a resolved [`RunConfig`] into a table.

use std::f64::consts::PI;

use crate::decay::{decaying_poisson, DecayModelParams};
use crate::dist::{poisson_pmf, tv_distance, DiscreteDist};
use crate::mc::{sample_full_scheme, sample_gate_outcomes, sample_photon_counts, BasisState, McConfig};
use crate::sweep::{compilation_table, mi_sweep, peak_table, snr_sweep, speedup_table};
use crate::wiring::Wiring;

use super::config::{Command, RunConfig};
use super::output::{Cell, Table};

/// Why a run did not produce a clean table.
#[derive(Debug)]
pub enum RunError {
    /// Bad or missing settings.
    Usage(String),
    /// Computation failed.
    Failed(String),
}

impl From<crate::Error> for RunError {
    fn from(e: crate::Error) -> Self {
        RunError::Failed(e.to_string())
    }
}

pub struct Report {
    pub table: Table,
    /// Set when a validation check failed.
    pub any_failed: bool,
}

impl Report {
    fn ok(table: Table) -> Self {
        Self {
            table,
            any_failed: false,
        }
    }
}

pub fn execute(cfg: &RunConfig) -> Result<Report, RunError> {
    let ns = cfg.n_values();
    let base = cfg.scheme(1)?;
    match cfg.command {
        Command::SnrSweep => {
            let mut t = Table::new(vec!["n", "t_ms", "snr"]);
            for r in snr_sweep(&base, &ns, &cfg.t_grid)? {
                t.push(vec![r.n.into(), r.t_ms.into(), r.snr.into()]);
            }
            Ok(Report::ok(t))
        }
        Command::MiSweep => {
            let mut t = Table::new(vec!["n", "t_ms", "snr", "mi", "eta_opt"]);
            for r in mi_sweep(&base, &ns, &cfg.t_grid)? {
                t.push(vec![r.n.into(), r.t.into(), r.snr.into(), r.mi.into(), r.eta_opt.into()]);
            }
            Ok(Report::ok(t))
        }
        Command::Speedup => {
            let target = cfg
                .target_snr
                .ok_or_else(|| RunError::Usage("speedup needs --target-snr".into()))?;
            let mut t = Table::new(vec!["n", "t_n_ms", "ratio", "reachable"]);
            for r in speedup_table(&base, &ns, target)? {
                t.push(vec![r.n.into(), r.t_n_ms.into(), r.ratio.into(), r.t_n_ms.is_some().into()]);
            }
            Ok(Report::ok(t))
        }
        Command::PeakSnr => {
            let mut t = Table::new(vec!["n", "s_max", "t_max_ms", "bounded"]);
            for r in peak_table(&base, &ns)? {
                let (s, tm) = r.peak.value();
                t.push(vec![r.n.into(), s.into(), tm.into(), r.peak.is_bounded().into()]);
            }
            Ok(Report::ok(t))
        }
        Command::CompilationDist => {
            let mut t = Table::new(vec!["n", "q", "flat", "cascade"]);
            for r in compilation_table(&ns, cfg.noise.p())? {
                t.push(vec![r.n.into(), r.q.into(), r.flat.into(), r.cascade.into()]);
            }
            Ok(Report::ok(t))
        }
        Command::Validate => validate(cfg),
    }
}

/// Acceptable TV distance for `shots` samples of `reference`: the 10⁶-shot
/// budget of 5e-3 scaled as `shots^{-1/2}`, and never below twice the
/// expected sampling noise `½ Σ √(2p(1−p)/(π shots))`.
pub fn tv_threshold(reference: &DiscreteDist, shots: u64) -> f64 {
    let n = shots as f64;
    let scaled = 5e-3 * (1e6 / n).sqrt();
    let noise: f64 = 0.5
        * reference
            .masses()
            .iter()
            .map(|&p| (2.0 * p * (1.0 - p) / (PI * n)).sqrt())
            .sum::<f64>();
    scaled.max(2.0 * noise)
}

fn validate(cfg: &RunConfig) -> Result<Report, RunError> {
    let (shots, seed) = match (cfg.shots, cfg.seed) {
        (Some(s), Some(seed)) if s > 0 => (s, seed),
        _ => return Err(RunError::Usage("validate needs --shots (>= 1) and --seed".into())),
    };
    let n = cfg.n_max;
    let t = cfg.t_grid.stop;
    let p = cfg.noise.p();

    let mut checks: Vec<(&'static str, DiscreteDist, DiscreteDist)> = Vec::new();

    let wiring = Wiring::for_compilation(n, cfg.noise.compilation())?;
    let gates = sample_gate_outcomes(&wiring, p, shots, seed)?;
    let exact = cfg.noise.outcome_dist(n)?;
    checks.push((
        "gate_outcomes",
        DiscreteDist::from_masses(0, exact.probs().to_vec())?,
        gates.to_dist()?,
    ));

    let dark = sample_photon_counts(&cfg.rates, BasisState::Zero, t, shots, seed)?;
    checks.push(("photon_dark", poisson_pmf(cfg.rates.mu0() * t)?, dark.to_dist()?));
    let bright = sample_photon_counts(&cfg.rates, BasisState::One, t, shots, seed)?;
    let w = decaying_poisson(&DecayModelParams::new(cfg.rates, t)?)?;
    checks.push(("photon_bright", w, bright.to_dist()?));

    let scheme = cfg.scheme(n)?;
    let stats = scheme.compose(t)?;
    let (h0, h1) = sample_full_scheme(&McConfig {
        shots,
        seed,
        scheme,
        t,
    })?;
    checks.push(("scheme_dark", stats.p0, h0.to_dist()?));
    checks.push(("scheme_bright", stats.p1, h1.to_dist()?));

    let mut table = Table::new(vec!["check", "tv", "threshold", "status"]);
    let mut any_failed = false;
    for (name, reference, empirical) in checks {
        let tv = tv_distance(&reference, &empirical);
        let threshold = tv_threshold(&reference, shots);
        let status = if threshold >= 1.0 {
            "inconclusive"
        } else if tv <= threshold {
            "pass"
        } else {
            any_failed = true;
            "fail"
        };
        table.push(vec![Cell::from(name), tv.into(), threshold.into(), Cell::from(status)]);
    }
    Ok(Report { table, any_failed })
}
