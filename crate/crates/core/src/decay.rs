//! Photon-count law of a bright qubit that may decay once to the dark state
//! during readout.
//!
//! With no decay the count is Poisson with mean `μ₁t`. A decay at time `t'`
//! switches the emission rate to `μ₀`, so the count is Poisson with mean
//! `μ₁t' + μ₀(t − t')`. Averaging over the exponential decay time gives
//!
//! ```text
//! W(k) = e^{-λt} L_{μ₁t}(k) + ∫₀ᵗ λ e^{-λt'} L_{μ₁t' + μ₀(t−t')}(k) dt'
//! ```
//!
//! The integral is evaluated per `k` with adaptive Gauss–Legendre panels
//! shared across the whole support.

use statrs::function::gamma::ln_gamma;

use crate::dist::{poisson_pmf, DiscreteDist, Moments};
use crate::error::{domain, Result};
use crate::quadrature::{integrate, integrate_family, QuadratureOptions};
use crate::rates::RateParams;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayModelParams {
    pub rates: RateParams,
    /// Readout duration in ms.
    pub t: f64,
}

impl DecayModelParams {
    pub fn new(rates: RateParams, t: f64) -> Result<Self> {
        if !t.is_finite() || t < 0.0 {
            return Err(domain(format!("duration must be finite and >= 0 (got {t})")));
        }
        Ok(Self { rates, t })
    }
}

pub fn decaying_poisson(params: &DecayModelParams) -> Result<DiscreteDist> {
    decaying_poisson_with(params, &QuadratureOptions::default())
}

pub fn decaying_poisson_with(params: &DecayModelParams, opts: &QuadratureOptions) -> Result<DiscreteDist> {
    let DecayModelParams { rates, t } = *params;
    let (mu0, mu1, lambda) = (rates.mu0(), rates.mu1(), rates.lambda());
    if t == 0.0 {
        return Ok(DiscreteDist::point_mass(0));
    }
    let bright = poisson_pmf(mu1 * t)?;
    if lambda == 0.0 {
        return Ok(bright);
    }
    let dark = poisson_pmf(mu0 * t)?;
    let lo = dark.offset().min(bright.offset());
    let hi = dark.end().max(bright.end());
    let ln_fact: Vec<f64> = (lo..hi).map(|k| ln_gamma(k as f64 + 1.0)).collect();

    // Substituting u = 1 − e^{-λt'} absorbs the exponential weight, so a
    // fast decay does not hide a spike near t' = 0 from the quadrature.
    let u_max = -(-lambda * t).exp_m1();
    let integrals = integrate_family(
        |u, out| {
            let tp = (-(-u).ln_1p() / lambda).min(t);
            let omega = mu1 * tp + mu0 * (t - tp);
            let ln_omega = omega.ln();
            for (i, o) in out.iter_mut().enumerate() {
                let k = lo + i;
                *o = if k == 0 {
                    (-omega).exp()
                } else {
                    (k as f64 * ln_omega - omega - ln_fact[i]).exp()
                };
            }
        },
        hi - lo,
        0.0,
        u_max,
        opts,
    );

    let survive = (-lambda * t).exp();
    let masses = integrals
        .iter()
        .enumerate()
        .map(|(i, integral)| survive * bright.pmf(lo + i) + integral)
        .collect();
    DiscreteDist::from_masses(lo, masses)
}

/// Mean and variance of the decaying-Poisson law from its mixing variable.
///
/// The count is Poisson given the random mean Λ, so
/// `mean = E[Λ]` and `variance = E[Λ] + Var[Λ]`.
pub fn decaying_poisson_moments(params: &DecayModelParams) -> Result<Moments> {
    decaying_poisson_moments_with(params, &QuadratureOptions::default())
}

pub fn decaying_poisson_moments_with(params: &DecayModelParams, opts: &QuadratureOptions) -> Result<Moments> {
    let DecayModelParams { rates, t } = *params;
    let (mu0, mu1, lambda) = (rates.mu0(), rates.mu1(), rates.lambda());
    let survive = (-lambda * t).exp();
    let bright_mean = mu1 * t;
    if lambda == 0.0 || t == 0.0 {
        return Ok(Moments::new(bright_mean, bright_mean));
    }
    let opts = QuadratureOptions {
        rel_tol: opts.rel_tol.min(1e-12),
        ..opts.clone()
    };
    let u_max = -(-lambda * t).exp_m1();
    let omega = |u: f64| {
        let tp = (-(-u).ln_1p() / lambda).min(t);
        mu1 * tp + mu0 * (t - tp)
    };
    let e1 = survive * bright_mean + integrate(omega, 0.0, u_max, &opts);
    // Centered second pass keeps Var[Λ] free of cancellation.
    let var_mix = survive * (bright_mean - e1).powi(2)
        + integrate(|u| (omega(u) - e1).powi(2), 0.0, u_max, &opts);
    Ok(Moments::new(e1, e1 + var_mix))
}
