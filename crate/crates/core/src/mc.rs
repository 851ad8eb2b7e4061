//! Shot-by-shot sampler used as an independent check on the analytic laws.
//!
//! Every shot draws from its own ChaCha8 stream, selected by
//! `(tag << 56) | shot` under the user seed, so results do not depend on how
//! shots are spread over threads. Histograms are merged by integer addition.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use statrs::function::gamma::ln_gamma;

use crate::cnot::{Compilation, OutcomeDist};
use crate::dist::DiscreteDist;
use crate::error::{domain, Error, Result};
use crate::rates::RateParams;
use crate::scheme::{ReadoutModel, SchemeConfig};
use crate::wiring::Wiring;

const TAG_GATES: u64 = 1;
const TAG_PHOTONS: u64 = 2;
const TAG_SCHEME_DARK: u64 = 3;
const TAG_SCHEME_BRIGHT: u64 = 4;

/// Below this mean Poisson variates are drawn by inversion.
const INVERSION_LIMIT: f64 = 30.0;

/// Shot counts indexed by outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    counts: Vec<u64>,
    shots: u64,
}

impl Histogram {
    fn empty() -> Self {
        Self {
            counts: Vec::new(),
            shots: 0,
        }
    }

    fn record(&mut self, k: usize) {
        if k >= self.counts.len() {
            self.counts.resize(k + 1, 0);
        }
        self.counts[k] += 1;
        self.shots += 1;
    }

    fn merge(mut self, other: Self) -> Self {
        if other.counts.len() > self.counts.len() {
            self.counts.resize(other.counts.len(), 0);
        }
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.shots += other.shots;
        self
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    pub fn to_dist(&self) -> Result<DiscreteDist> {
        DiscreteDist::from_counts(&self.counts)
    }

    /// Empirical law over `q = 0..=n`.
    pub fn to_outcome_dist(&self, n: usize) -> Result<OutcomeDist> {
        if self.counts.len() > n + 1 {
            return Err(domain(format!("histogram has outcomes above {n}")));
        }
        let mut probs = vec![0.0; n + 1];
        for (q, c) in self.counts.iter().enumerate() {
            probs[q] = *c as f64 / self.shots as f64;
        }
        OutcomeDist::new(probs)
    }

    pub fn mean(&self) -> f64 {
        let sum: f64 = self.counts.iter().enumerate().map(|(k, c)| k as f64 * *c as f64).sum();
        sum / self.shots as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisState {
    Zero,
    One,
}

#[derive(Debug, Clone)]
pub struct McConfig {
    pub shots: u64,
    pub seed: u64,
    pub scheme: SchemeConfig,
    /// ms
    pub t: f64,
}

fn shot_rng(seed: u64, tag: u64, shot: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((tag << 56) | shot);
    rng
}

fn run_shots(shots: u64, seed: u64, tag: u64, shot: impl Fn(&mut ChaCha8Rng) -> usize + Sync) -> Result<Histogram> {
    if shots == 0 {
        return Err(domain("need at least one shot"));
    }
    if shots >= 1 << 56 {
        return Err(domain("too many shots for the stream layout"));
    }
    Ok((0..shots)
        .into_par_iter()
        .fold(Histogram::empty, |mut h, i| {
            let mut rng = shot_rng(seed, tag, i);
            h.record(shot(&mut rng));
            h
        })
        .reduce(Histogram::empty, Histogram::merge))
}

/// Poisson variate: inversion for small means, Hörmann's PTRS otherwise.
pub fn sample_poisson<R: Rng + ?Sized>(rng: &mut R, mean: f64) -> usize {
    if mean <= 0.0 {
        return 0;
    }
    if mean < INVERSION_LIMIT {
        let u: f64 = rng.random();
        let mut k = 0usize;
        let mut p = (-mean).exp();
        let mut cdf = p;
        while u > cdf {
            k += 1;
            p *= mean / k as f64;
            let next = cdf + p;
            if next == cdf {
                break;
            }
            cdf = next;
        }
        return k;
    }
    let slam = mean.sqrt();
    let loglam = mean.ln();
    let b = 0.931 + 2.53 * slam;
    let a = -0.059 + 0.02483 * b;
    let inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    let vr = 0.9277 - 3.6224 / (b - 2.0);
    loop {
        let u: f64 = rng.random::<f64>() - 0.5;
        let v: f64 = rng.random();
        let us = 0.5 - u.abs();
        let k = ((2.0 * a / us + b) * u + mean + 0.43).floor();
        if us >= 0.07 && v <= vr {
            return k as usize;
        }
        if k < 0.0 || (us < 0.013 && v > us) {
            continue;
        }
        if v.ln() + inv_alpha.ln() - (a / (us * us) + b).ln() <= -mean + k * loglam - ln_gamma(k + 1.0) {
            return k as usize;
        }
    }
}

/// Count of one qubit over `t`. A bright qubit decays at most once.
fn sample_qubit<R: Rng + ?Sized>(rng: &mut R, rates: &RateParams, bright: bool, t: f64) -> usize {
    let omega = if bright {
        let lambda = rates.lambda();
        let tau = if lambda > 0.0 {
            -(-rng.random::<f64>()).ln_1p() / lambda
        } else {
            f64::INFINITY
        };
        rates.mu1() * tau.min(t) + rates.mu0() * (t - tau).max(0.0)
    } else {
        rates.mu0() * t
    };
    sample_poisson(rng, omega)
}

/// Histogram of bright-qubit counts after running `wiring` on a bright input.
pub fn sample_gate_outcomes(wiring: &Wiring, p: f64, shots: u64, seed: u64) -> Result<Histogram> {
    if !(0.0..=1.0).contains(&p) {
        return Err(domain(format!("failure probability must lie in [0, 1] (got {p})")));
    }
    run_shots(shots, seed, TAG_GATES, |rng| {
        let mut state = Vec::with_capacity(wiring.n_qubits());
        wiring.run(|_| rng.random::<f64>() < p, &mut state)
    })
}

/// Photon-count histogram of one qubit prepared in `state`.
pub fn sample_photon_counts(rates: &RateParams, state: BasisState, t: f64, shots: u64, seed: u64) -> Result<Histogram> {
    if !t.is_finite() || t < 0.0 {
        return Err(domain(format!("duration must be finite and >= 0 (got {t})")));
    }
    let bright = state == BasisState::One;
    run_shots(shots, seed, TAG_PHOTONS, |rng| sample_qubit(rng, rates, bright, t))
}

/// Total-count histograms of the whole scheme for inputs `|0⟩` and `|1⟩`.
pub fn sample_full_scheme(config: &McConfig) -> Result<(Histogram, Histogram)> {
    let t = config.t;
    if !t.is_finite() || t < 0.0 {
        return Err(domain(format!("duration must be finite and >= 0 (got {t})")));
    }
    let n = config.scheme.n_qubits();
    let (rates, p, compilation) = match config.scheme.model() {
        ReadoutModel::IdealPoisson => (config.scheme.rates().without_decay(), 0.0, Compilation::Flat),
        ReadoutModel::NoisyDecaying(noise) => (*config.scheme.rates(), noise.p(), noise.compilation()),
        ReadoutModel::GeneralInjected(_) => {
            return Err(Error::Unsupported(
                "injected models carry no sampling recipe".into(),
            ))
        }
    };
    let wiring = Wiring::for_compilation(n, compilation)?;
    let dark = run_shots(config.shots, config.seed, TAG_SCHEME_DARK, |rng| {
        (0..n).map(|_| sample_qubit(rng, &rates, false, t)).sum()
    })?;
    let bright = run_shots(config.shots, config.seed, TAG_SCHEME_BRIGHT, |rng| {
        let mut state = Vec::with_capacity(n);
        wiring.run(|_| rng.random::<f64>() < p, &mut state);
        state.iter().map(|&b| sample_qubit(rng, &rates, b, t)).sum()
    })?;
    Ok((dark, bright))
}
