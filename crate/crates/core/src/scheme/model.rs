use std::fmt;
use std::sync::Arc;

use crate::cnot::{general_t_pair, GateNoise, OutcomeDist};
use crate::decay::{decaying_poisson, decaying_poisson_moments, DecayModelParams};
use crate::dist::{poisson_pmf, DiscreteDist, Moments};
use crate::error::{domain, validation, Result};
use crate::rates::RateParams;

use super::merit::{mi_optimal, snr_direct, snr_general, MeritPoint};

/// Largest register size accepted by [`SchemeConfig`].
pub const MAX_QUBITS: usize = 64;

/// Outcome weights `T(q)` below this are left out of the mixture.
pub const MIXTURE_CUTOFF: f64 = 1e-15;

/// Single-qubit count laws `(P_|0⟩,t, P_|1⟩,t)` supplied by the caller.
pub trait SingleQubitLaws: Send + Sync {
    fn laws(&self, t: f64) -> Result<(DiscreteDist, DiscreteDist)>;
}

impl<F> SingleQubitLaws for F
where
    F: Fn(f64) -> Result<(DiscreteDist, DiscreteDist)> + Send + Sync,
{
    fn laws(&self, t: f64) -> Result<(DiscreteDist, DiscreteDist)> {
        self(t)
    }
}

/// Laws measured at a fixed set of durations. Lookups must hit one of them;
/// nothing is interpolated.
#[derive(Debug, Clone, Default)]
pub struct TabulatedLaws {
    entries: Vec<(f64, DiscreteDist, DiscreteDist)>,
}

impl TabulatedLaws {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, t: f64, p0: DiscreteDist, p1: DiscreteDist) -> Result<()> {
        if !t.is_finite() || t < 0.0 {
            return Err(domain(format!("duration must be finite and >= 0 (got {t})")));
        }
        self.entries.retain(|(s, _, _)| !same_time(*s, t));
        self.entries.push((t, p0, p1));
        Ok(())
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.entries.iter().map(|(t, _, _)| *t)
    }
}

fn same_time(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs())
}

impl SingleQubitLaws for TabulatedLaws {
    fn laws(&self, t: f64) -> Result<(DiscreteDist, DiscreteDist)> {
        self.entries
            .iter()
            .find(|(s, _, _)| same_time(*s, t))
            .map(|(_, p0, p1)| (p0.clone(), p1.clone()))
            .ok_or_else(|| domain(format!("no single-qubit laws tabulated at t = {t} ms")))
    }
}

/// Two-sided gate noise `(T_|0⟩, T_|1⟩)` with caller-supplied single-qubit laws.
/// For input `|j⟩`, `q` counts the qubits that end in `|j⟩`.
#[derive(Clone)]
pub struct InjectedModel {
    t0: OutcomeDist,
    t1: OutcomeDist,
    laws: Arc<dyn SingleQubitLaws>,
}

impl InjectedModel {
    pub fn new(t0: OutcomeDist, t1: OutcomeDist, laws: Arc<dyn SingleQubitLaws>) -> Result<Self> {
        let n = t0.n_qubits();
        let (t0, t1) = general_t_pair(n, t0, t1)?;
        Ok(Self { t0, t1, laws })
    }

    pub fn t0(&self) -> &OutcomeDist {
        &self.t0
    }

    pub fn t1(&self) -> &OutcomeDist {
        &self.t1
    }

    pub fn laws(&self, t: f64) -> Result<(DiscreteDist, DiscreteDist)> {
        self.laws.laws(t)
    }
}

impl fmt::Debug for InjectedModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("InjectedModel")
            .field("t0", &self.t0)
            .field("t1", &self.t1)
            .finish_non_exhaustive()
    }
}

#[derive(Debug, Clone)]
pub enum ReadoutModel {
    /// Perfect gates and no decay: each qubit emits Poisson counts.
    IdealPoisson,
    /// Gate failures on the bright branch and decay of bright qubits.
    NoisyDecaying(GateNoise),
    /// Arbitrary outcome pair and single-qubit laws.
    GeneralInjected(InjectedModel),
}

impl ReadoutModel {
    pub fn name(&self) -> &'static str {
        match self {
            ReadoutModel::IdealPoisson => "ideal-poisson",
            ReadoutModel::NoisyDecaying(_) => "noisy-decaying",
            ReadoutModel::GeneralInjected(_) => "general-injected",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SchemeConfig {
    n_qubits: usize,
    rates: RateParams,
    model: ReadoutModel,
}

impl SchemeConfig {
    pub fn new(n_qubits: usize, rates: RateParams, model: ReadoutModel) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(domain(format!("qubit count must lie in 1..={MAX_QUBITS} (got {n_qubits})")));
        }
        if let ReadoutModel::GeneralInjected(m) = &model {
            if m.t0.n_qubits() != n_qubits {
                return Err(validation(format!(
                    "injected outcome laws cover {} qubits, config has {n_qubits}",
                    m.t0.n_qubits()
                )));
            }
        }
        Ok(Self { n_qubits, rates, model })
    }

    pub fn ideal(n_qubits: usize, rates: RateParams) -> Result<Self> {
        Self::new(n_qubits, rates, ReadoutModel::IdealPoisson)
    }

    pub fn noisy(n_qubits: usize, rates: RateParams, noise: GateNoise) -> Result<Self> {
        Self::new(n_qubits, rates, ReadoutModel::NoisyDecaying(noise))
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn rates(&self) -> &RateParams {
        &self.rates
    }

    pub fn model(&self) -> &ReadoutModel {
        &self.model
    }

    /// Same model on a different register size. Injected models are tied to
    /// their own `N` and cannot be resized.
    pub fn with_n_qubits(&self, n_qubits: usize) -> Result<Self> {
        Self::new(n_qubits, self.rates, self.model.clone())
    }

    /// `(T_|0⟩, T_|1⟩)` for this configuration.
    pub fn outcome_pair(&self) -> Result<(OutcomeDist, OutcomeDist)> {
        let n = self.n_qubits;
        match &self.model {
            ReadoutModel::IdealPoisson => Ok((OutcomeDist::point(n, n)?, OutcomeDist::point(n, n)?)),
            ReadoutModel::NoisyDecaying(noise) => Ok((OutcomeDist::point(n, n)?, noise.outcome_dist(n)?)),
            ReadoutModel::GeneralInjected(m) => Ok((m.t0.clone(), m.t1.clone())),
        }
    }

    /// Mean and variance of one qubit's count in `|0⟩` and in `|1⟩`.
    pub fn single_moments(&self, t: f64) -> Result<(Moments, Moments)> {
        check_t(t)?;
        let (mu0, mu1) = (self.rates.mu0(), self.rates.mu1());
        match &self.model {
            ReadoutModel::IdealPoisson => Ok((Moments::new(mu0 * t, mu0 * t), Moments::new(mu1 * t, mu1 * t))),
            ReadoutModel::NoisyDecaying(_) => {
                let bright = decaying_poisson_moments(&DecayModelParams::new(self.rates, t)?)?;
                Ok((Moments::new(mu0 * t, mu0 * t), bright))
            }
            ReadoutModel::GeneralInjected(m) => {
                let (p0, p1) = m.laws(t)?;
                Ok((p0.moments(), p1.moments()))
            }
        }
    }

    /// SNR from moments alone; no composite distribution is built.
    pub fn snr_at(&self, t: f64) -> Result<f64> {
        let (s0, s1) = self.single_moments(t)?;
        let (t0, t1) = self.outcome_pair()?;
        snr_general((&t0, &t1), s0, s1, self.n_qubits)
    }

    /// Full composite count laws for both inputs.
    pub fn compose(&self, t: f64) -> Result<CompositeStats> {
        check_t(t)?;
        let n = self.n_qubits;
        let (mu0, mu1) = (self.rates.mu0(), self.rates.mu1());
        let nf = n as f64;
        let (p0, p1) = match &self.model {
            ReadoutModel::IdealPoisson => (poisson_pmf(nf * mu0 * t)?, poisson_pmf(nf * mu1 * t)?),
            ReadoutModel::NoisyDecaying(noise) => {
                let w = decaying_poisson(&DecayModelParams::new(self.rates, t)?)?;
                let t1 = noise.outcome_dist(n)?;
                let mut parts = Vec::new();
                for (q, &weight) in t1.probs().iter().enumerate() {
                    if weight < MIXTURE_CUTOFF {
                        continue;
                    }
                    let dark = poisson_pmf((n - q) as f64 * mu0 * t)?;
                    parts.push((weight, w.n_fold(q).convolve(&dark)));
                }
                let p1 = DiscreteDist::mixture(parts.iter().map(|(w, d)| (*w, d)))?;
                (poisson_pmf(nf * mu0 * t)?, p1)
            }
            ReadoutModel::GeneralInjected(m) => {
                let (l0, l1) = m.laws(t)?;
                (mix_two_sided(&m.t0, &l0, &l1)?, mix_two_sided(&m.t1, &l1, &l0)?)
            }
        };
        Ok(CompositeStats::new(p0, p1, t))
    }

    /// SNR and optimal-threshold infidelity at `t`.
    pub fn merit_at(&self, t: f64) -> Result<MeritPoint> {
        let stats = self.compose(t)?;
        let (mi, eta_opt) = mi_optimal(&stats);
        Ok(MeritPoint {
            n: self.n_qubits,
            t,
            snr: snr_direct(&stats),
            mi,
            eta_opt,
        })
    }
}

fn check_t(t: f64) -> Result<()> {
    if !t.is_finite() || t < 0.0 {
        return Err(domain(format!("duration must be finite and >= 0 (got {t})")));
    }
    Ok(())
}

/// `Σ_q T(q) (same^{*q} ∗ other^{*(N−q)})`.
fn mix_two_sided(t: &OutcomeDist, same: &DiscreteDist, other: &DiscreteDist) -> Result<DiscreteDist> {
    let n = t.n_qubits();
    let mut parts = Vec::new();
    for (q, &weight) in t.probs().iter().enumerate() {
        if weight < MIXTURE_CUTOFF {
            continue;
        }
        parts.push((weight, same.n_fold(q).convolve(&other.n_fold(n - q))));
    }
    DiscreteDist::mixture(parts.iter().map(|(w, d)| (*w, d)))
}

/// Composite count laws for inputs `|0⟩` and `|1⟩` at one duration.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeStats {
    pub p0: DiscreteDist,
    pub p1: DiscreteDist,
    pub mean0: f64,
    pub var0: f64,
    pub mean1: f64,
    pub var1: f64,
    /// Duration in ms.
    pub t: f64,
}

impl CompositeStats {
    pub fn new(p0: DiscreteDist, p1: DiscreteDist, t: f64) -> Self {
        let m0 = p0.moments();
        let m1 = p1.moments();
        Self {
            p0,
            p1,
            mean0: m0.mean,
            var0: m0.variance,
            mean1: m1.mean,
            var1: m1.variance,
            t,
        }
    }
}
