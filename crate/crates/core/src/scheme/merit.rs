use serde::Serialize;

use crate::cnot::OutcomeDist;
use crate::dist::{poisson_pmf, Moments};
use crate::error::{domain, Result};
use crate::rates::RateParams;

use super::model::CompositeStats;

/// Two infidelities closer than this count as a tie.
const MI_TIE: f64 = 4.0 * f64::EPSILON;

/// One evaluated `(N, t)` point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeritPoint {
    pub n: usize,
    /// ms
    pub t: f64,
    pub snr: f64,
    pub mi: f64,
    /// Counts at or above this are assigned to `|1⟩`.
    pub eta_opt: f64,
}

/// `S = 2|m₀ − m₁| / (σ₀ + σ₁)`.
///
/// Returns `0` for equal means and `+∞` when both variances vanish but the
/// means differ.
pub fn snr_direct(stats: &CompositeStats) -> f64 {
    snr_from_moments(
        Moments::new(stats.mean0, stats.var0),
        Moments::new(stats.mean1, stats.var1),
    )
}

fn snr_from_moments(a: Moments, b: Moments) -> f64 {
    let diff = (a.mean - b.mean).abs();
    if diff == 0.0 {
        return 0.0;
    }
    let spread = a.std_dev() + b.std_dev();
    if spread == 0.0 {
        return f64::INFINITY;
    }
    2.0 * diff / spread
}

/// SNR of the `n`-qubit scheme from the outcome pair and the single-qubit
/// moments alone.
///
/// For input `|j⟩` with `Q_j` qubits left in `|j⟩`, the total count has mean
/// `E[Q_j] m_j + (N − E[Q_j]) m_j̄` and variance
/// `E[Q_j] v_j + (N − E[Q_j]) v_j̄ + (m_j − m_j̄)² Var[Q_j]`.
pub fn snr_general(t_pair: (&OutcomeDist, &OutcomeDist), single0: Moments, single1: Moments, n: usize) -> Result<f64> {
    let (t0, t1) = t_pair;
    if t0.n_qubits() != n || t1.n_qubits() != n {
        return Err(domain(format!(
            "outcome laws cover {} and {} qubits, expected {n}",
            t0.n_qubits(),
            t1.n_qubits()
        )));
    }
    let nf = n as f64;
    let composite = |t: &OutcomeDist, same: Moments, other: Moments| {
        let eq = t.mean();
        let mean = eq * same.mean + (nf - eq) * other.mean;
        let var = eq * same.variance + (nf - eq) * other.variance + (same.mean - other.mean).powi(2) * t.variance();
        Moments::new(mean, var)
    };
    Ok(snr_from_moments(
        composite(t0, single0, single1),
        composite(t1, single1, single0),
    ))
}

/// `½(P₀(k ≥ η) + P₁(k < η))` for every integer `η` from the lowest stored
/// count to one past the highest.
fn mi_profile(stats: &CompositeStats) -> (usize, Vec<f64>) {
    let lo = stats.p0.offset().min(stats.p1.offset());
    let hi = stats.p0.end().max(stats.p1.end());
    let total0 = stats.p0.stored_mass();
    let mut below0 = 0.0;
    let mut below1 = 0.0;
    let mut profile = Vec::with_capacity(hi - lo + 1);
    for k in lo..=hi {
        profile.push(0.5 * ((total0 - below0).max(0.0) + below1));
        below0 += stats.p0.pmf(k);
        below1 += stats.p1.pmf(k);
    }
    (lo, profile)
}

/// Smallest infidelity over integer thresholds, with the threshold that
/// attains it. Ties go to the smallest threshold.
pub fn mi_optimal(stats: &CompositeStats) -> (f64, f64) {
    let (lo, profile) = mi_profile(stats);
    let mut best = (profile[0], lo);
    for (i, &mi) in profile.iter().enumerate().skip(1) {
        if mi < best.0 - MI_TIE {
            best = (mi, lo + i);
        }
    }
    (best.0.min(0.5), best.1 as f64)
}

/// Infidelity at threshold `eta` (rounded up to an integer count).
pub fn mi_at(stats: &CompositeStats, eta: f64) -> f64 {
    let (lo, profile) = mi_profile(stats);
    let cut = eta.ceil();
    if cut <= lo as f64 {
        profile[0]
    } else if cut >= (lo + profile.len() - 1) as f64 {
        profile[profile.len() - 1]
    } else {
        profile[cut as usize - lo]
    }
}

/// Equal-likelihood threshold of the ideal Poisson scheme and the decay
/// constants of its two error probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdAnalysis {
    /// `μ₀ / μ₁`
    pub alpha: f64,
    /// `(1/α − 1) / ln(1/α)`
    pub beta: f64,
    pub gamma0: f64,
    pub gamma1: f64,
    /// `μ₀ N t β`, in counts.
    pub eta_analytic: f64,
}

/// Solves `L_{μ₁Nt}(η) = L_{μ₀Nt}(η)` for `η`.
pub fn threshold_analytic(rates: &RateParams, n: usize, t: f64) -> Result<ThresholdAnalysis> {
    let (mu0, mu1) = (rates.mu0(), rates.mu1());
    if mu0 <= 0.0 || mu0 >= mu1 {
        return Err(domain(format!("threshold needs 0 < mu0 < mu1 (got {mu0}, {mu1})")));
    }
    if n == 0 || !t.is_finite() || t < 0.0 {
        return Err(domain(format!("threshold needs N >= 1 and t >= 0 (got N={n}, t={t})")));
    }
    let alpha = mu0 / mu1;
    let inv = 1.0 / alpha;
    let beta = (inv - 1.0) / inv.ln();
    let ab = alpha * beta;
    Ok(ThresholdAnalysis {
        alpha,
        beta,
        gamma0: beta * beta.ln() + 1.0 - beta,
        gamma1: ab * ab.ln() + 1.0 - ab,
        eta_analytic: mu0 * n as f64 * t * beta,
    })
}

/// Leading-term and geometric-series brackets on the two error probabilities
/// of the ideal scheme at threshold `k_η = ⌈η⌉`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorBounds {
    pub k_eta: usize,
    pub eps0_lower: f64,
    /// `+∞` when `k_η ≤ μ₀Nt` and the series bound does not apply.
    pub eps0_upper: f64,
    pub eps1_lower: f64,
    /// `+∞` when `k_η − 1 ≥ μ₁Nt` and the series bound does not apply.
    pub eps1_upper: f64,
}

pub fn poisson_error_bounds(rates: &RateParams, n: usize, t: f64, eta: f64) -> Result<ErrorBounds> {
    if !eta.is_finite() || eta <= 0.0 {
        return Err(domain(format!("threshold must be positive (got {eta})")));
    }
    let nt = n as f64 * t;
    let (w0, w1) = (rates.mu0() * nt, rates.mu1() * nt);
    let k = eta.ceil() as usize;
    let l0 = poisson_pmf(w0)?;
    let l1 = poisson_pmf(w1)?;
    let kf = k as f64;
    let eps0_lower = l0.pmf(k);
    let eps0_upper = if kf > w0 { eps0_lower * kf / (kf - w0) } else { f64::INFINITY };
    let eps1_lower = l1.pmf(k - 1);
    let eps1_upper = if kf - 1.0 < w1 {
        eps1_lower * w1 / (w1 - (kf - 1.0))
    } else {
        f64::INFINITY
    };
    Ok(ErrorBounds {
        k_eta: k,
        eps0_lower,
        eps0_upper,
        eps1_lower,
        eps1_upper,
    })
}

/// SNR of `N` qubits whose signals are Gaussian with mean `±z` and variance
/// `|z|`, `z = drift_rate · t`: `2√(N z)`.
pub fn gaussian_scheme_snr(drift_rate: f64, n: usize, t: f64) -> Result<f64> {
    if !(drift_rate > 0.0 && drift_rate.is_finite()) || n == 0 || !(t > 0.0 && t.is_finite()) {
        return Err(domain(format!(
            "gaussian SNR needs positive drift, N and t (got {drift_rate}, {n}, {t})"
        )));
    }
    Ok(2.0 * (n as f64 * drift_rate * t).sqrt())
}
