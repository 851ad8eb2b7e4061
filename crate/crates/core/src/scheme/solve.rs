use serde::Serialize;

use crate::error::{domain, Result};
use crate::optimize::{bisect_crossing, golden_section_max, log_space};

use super::model::{ReadoutModel, SchemeConfig};

/// Relative time tolerance of [`time_to_snr`].
const CROSSING_REL_TOL: f64 = 1e-12;

/// Where to look for the SNR maximum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeakOptions {
    /// ms
    pub t_min: f64,
    /// ms
    pub t_max: f64,
    /// Log-spaced coarse grid size.
    pub grid_points: usize,
    /// Relative width at which golden-section refinement stops.
    pub rel_tol: f64,
}

impl Default for PeakOptions {
    fn default() -> Self {
        Self {
            t_min: 1e-3,
            t_max: 1e3,
            grid_points: 64,
            rel_tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum PeakSnr {
    /// Interior maximum.
    Peak { s_max: f64, t_max: f64 },
    /// SNR keeps growing (or saturates) over the whole search range; the
    /// values reported are at its upper edge.
    Unbounded { s_edge: f64, t_edge: f64 },
}

impl PeakSnr {
    pub fn is_bounded(&self) -> bool {
        matches!(self, PeakSnr::Peak { .. })
    }

    pub fn value(&self) -> (f64, f64) {
        match *self {
            PeakSnr::Peak { s_max, t_max } => (s_max, t_max),
            PeakSnr::Unbounded { s_edge, t_edge } => (s_edge, t_edge),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum TimeToSnr {
    /// Earliest duration (ms) at which the target is met.
    Reached(f64),
    /// The best SNR available falls short of the target.
    NotReachable { best_snr: f64 },
}

impl TimeToSnr {
    pub fn time(&self) -> Option<f64> {
        match *self {
            TimeToSnr::Reached(t) => Some(t),
            TimeToSnr::NotReachable { .. } => None,
        }
    }
}

/// True when SNR cannot fall with time: no decay, hence no peak.
fn monotone_in_time(config: &SchemeConfig) -> bool {
    match config.model() {
        ReadoutModel::IdealPoisson => true,
        ReadoutModel::NoisyDecaying(_) => config.rates().lambda() == 0.0,
        ReadoutModel::GeneralInjected(_) => false,
    }
}

pub fn peak_snr(config: &SchemeConfig) -> Result<PeakSnr> {
    peak_snr_with(config, &PeakOptions::default())
}

/// Maximum of SNR over duration: coarse log grid, then golden-section
/// search between the neighbours of the best grid point.
pub fn peak_snr_with(config: &SchemeConfig, opts: &PeakOptions) -> Result<PeakSnr> {
    if !(opts.t_min > 0.0 && opts.t_min < opts.t_max && opts.t_max.is_finite()) || opts.grid_points < 3 {
        return Err(domain("peak search needs 0 < t_min < t_max and at least 3 grid points"));
    }
    if monotone_in_time(config) {
        return Ok(PeakSnr::Unbounded {
            s_edge: config.snr_at(opts.t_max)?,
            t_edge: opts.t_max,
        });
    }
    let grid = log_space(opts.t_min, opts.t_max, opts.grid_points);
    let values = grid.iter().map(|&t| config.snr_at(t)).collect::<Result<Vec<f64>>>()?;
    let best = values
        .iter()
        .enumerate()
        .fold(0, |b, (i, v)| if *v > values[b] { i } else { b });
    if best + 1 == grid.len() {
        return Ok(PeakSnr::Unbounded {
            s_edge: values[best],
            t_edge: grid[best],
        });
    }
    let lo = grid[best.saturating_sub(1)];
    let hi = grid[best + 1];
    // Errors inside the search are reported as -inf and lose every comparison.
    let f = |t: f64| config.snr_at(t).unwrap_or(f64::NEG_INFINITY);
    let (t, s) = golden_section_max(f, lo, hi, opts.rel_tol);
    if s >= values[best] {
        Ok(PeakSnr::Peak { s_max: s, t_max: t })
    } else {
        Ok(PeakSnr::Peak {
            s_max: values[best],
            t_max: grid[best],
        })
    }
}

/// Earliest duration with `SNR(t) ≥ target`, searched on the rising branch.
pub fn time_to_snr(config: &SchemeConfig, target: f64) -> Result<TimeToSnr> {
    if !(target > 0.0 && target.is_finite()) {
        return Err(domain(format!("target SNR must be positive (got {target})")));
    }
    let f = |t: f64| config.snr_at(t).unwrap_or(f64::NEG_INFINITY);
    let hi = if monotone_in_time(config) {
        let mut hi = 1.0;
        loop {
            let s = config.snr_at(hi)?;
            if s >= target {
                break hi;
            }
            if hi > 1e300 {
                return Ok(TimeToSnr::NotReachable { best_snr: s });
            }
            hi *= 2.0;
        }
    } else {
        match peak_snr(config)? {
            PeakSnr::Peak { s_max, t_max } => {
                if s_max < target {
                    return Ok(TimeToSnr::NotReachable { best_snr: s_max });
                }
                t_max
            }
            PeakSnr::Unbounded { s_edge, t_edge } => {
                if s_edge < target {
                    return Ok(TimeToSnr::NotReachable { best_snr: s_edge });
                }
                t_edge
            }
        }
    };
    Ok(TimeToSnr::Reached(bisect_crossing(f, 0.0, hi, target, CROSSING_REL_TOL)))
}

/// Slope of `ln S` against `ln t` by least squares over `points` log-spaced
/// durations in `[t_lo, t_hi]`.
pub fn estimate_time_exponent(config: &SchemeConfig, t_lo: f64, t_hi: f64, points: usize) -> Result<f64> {
    if !(t_lo > 0.0 && t_lo < t_hi) || points < 2 {
        return Err(domain("exponent fit needs 0 < t_lo < t_hi and at least 2 points"));
    }
    let mut xs = Vec::with_capacity(points);
    let mut ys = Vec::with_capacity(points);
    for t in log_space(t_lo, t_hi, points) {
        let s = config.snr_at(t)?;
        if s > 0.0 && s.is_finite() {
            xs.push(t.ln());
            ys.push(s.ln());
        }
    }
    if xs.len() < 2 {
        return Err(domain("SNR is not positive on the fit window"));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    Ok(sxy / sxx)
}
