//! Distributions of how many qubits end up bright after noisy CNOT fan-out.
//!
//! A noisy CNOT sends a bright control to the dark state with probability
//! `p` immediately before acting, after which it cannot flip its target.
//! Starting from one bright input and `N − 1` dark ancillas, the number `q`
//! of bright qubits afterwards depends only on `p` and the compilation.

use serde::{Deserialize, Serialize};

use crate::error::{domain, validation, Result};

const SUM_TOL: f64 = 1e-12;

/// How the fan-out CNOTs are arranged on a nearest-neighbour line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Compilation {
    /// One chain: each qubit controls its successor.
    Flat,
    /// The first gate splits the register into two independent flat chains.
    Cascade,
}

impl std::fmt::Display for Compilation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Compilation::Flat => "flat",
            Compilation::Cascade => "cascade",
        })
    }
}

impl std::str::FromStr for Compilation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "flat" => Ok(Compilation::Flat),
            "cascade" => Ok(Compilation::Cascade),
            other => Err(format!("unknown compilation '{other}' (expected flat|cascade)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GateNoise {
    p: f64,
    compilation: Compilation,
}

impl GateNoise {
    pub fn new(p: f64, compilation: Compilation) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(domain(format!("failure probability must lie in [0, 1] (got {p})")));
        }
        Ok(Self { p, compilation })
    }

    pub fn noiseless(compilation: Compilation) -> Self {
        Self { p: 0.0, compilation }
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn compilation(&self) -> Compilation {
        self.compilation
    }

    /// Outcome distribution for an `n`-qubit register under this noise.
    pub fn outcome_dist(&self, n: usize) -> Result<OutcomeDist> {
        match self.compilation {
            Compilation::Flat => flat_dist(n, self.p),
            Compilation::Cascade => cascade_dist(n, self.p),
        }
    }
}

/// Probabilities of `q = 0..=N` qubits ending in the nominal state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutcomeDist {
    probs: Vec<f64>,
}

impl OutcomeDist {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.len() < 2 {
            return Err(validation("outcome distribution needs N >= 1 (at least two entries)"));
        }
        if let Some(bad) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(validation(format!("invalid outcome probability {bad}")));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > SUM_TOL {
            return Err(validation(format!("outcome probabilities sum to {total}, expected 1")));
        }
        Ok(Self { probs })
    }

    /// All mass on `q`.
    pub fn point(n: usize, q: usize) -> Result<Self> {
        if n == 0 || q > n {
            return Err(domain(format!("point outcome needs 1 <= N and q <= N (N={n}, q={q})")));
        }
        let mut probs = vec![0.0; n + 1];
        probs[q] = 1.0;
        Ok(Self { probs })
    }

    pub fn n_qubits(&self) -> usize {
        self.probs.len() - 1
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, q: usize) -> f64 {
        self.probs.get(q).copied().unwrap_or(0.0)
    }

    pub fn mean(&self) -> f64 {
        self.probs.iter().enumerate().map(|(q, p)| q as f64 * p).sum()
    }

    pub fn variance(&self) -> f64 {
        let m = self.mean();
        self.probs
            .iter()
            .enumerate()
            .map(|(q, p)| (q as f64 - m).powi(2) * p)
            .sum()
    }

    /// Mass at `q >= at_least`.
    pub fn upper_mass(&self, at_least: usize) -> f64 {
        self.probs.iter().skip(at_least).sum()
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(domain("register needs at least one qubit"));
    }
    Ok(())
}

fn check_p(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(domain(format!("failure probability must lie in [0, 1] (got {p})")));
    }
    Ok(())
}

/// Raw flat-chain probabilities (no validation), shared by both compilations.
fn flat_probs(n: usize, p: f64) -> Vec<f64> {
    let mut probs = vec![0.0; n + 1];
    if n == 1 {
        probs[1] = 1.0;
        return probs;
    }
    // The first failure at gate q+1 leaves exactly q bright qubits.
    let mut survive = 1.0;
    for prob in probs.iter_mut().take(n - 1) {
        *prob = survive * p;
        survive *= 1.0 - p;
    }
    probs[n] = survive;
    probs
}

/// Flat chain: `T(q) = (1−p)^q p` for `q <= N−2`, `T(N) = (1−p)^{N−1}`, `T(N−1) = 0`.
pub fn flat_dist(n: usize, p: f64) -> Result<OutcomeDist> {
    check_n(n)?;
    check_p(p)?;
    Ok(OutcomeDist { probs: flat_probs(n, p) })
}

/// Cascade: after a first gate (which fails with probability `p`, leaving
/// every qubit dark) the register splits into flat chains of sizes
/// `⌈N/2⌉` and `⌊N/2⌋`, whose outcomes add.
pub fn cascade_dist(n: usize, p: f64) -> Result<OutcomeDist> {
    check_n(n)?;
    check_p(p)?;
    if n == 1 {
        return Ok(OutcomeDist { probs: flat_probs(1, p) });
    }
    let left = flat_probs(n.div_ceil(2), p);
    let right = flat_probs(n / 2, p);
    let mut probs = vec![0.0; n + 1];
    for (a, pa) in left.iter().enumerate() {
        for (b, pb) in right.iter().enumerate() {
            probs[a + b] += (1.0 - p) * pa * pb;
        }
    }
    probs[0] += p;
    Ok(OutcomeDist { probs })
}

/// Validates an externally supplied pair `(T_|0⟩, T_|1⟩)` for an `n`-qubit
/// register. For input `|j⟩`, `q` counts qubits left in `|j⟩`.
pub fn general_t_pair(n: usize, t0: OutcomeDist, t1: OutcomeDist) -> Result<(OutcomeDist, OutcomeDist)> {
    check_n(n)?;
    for (label, t) in [("T0", &t0), ("T1", &t1)] {
        if t.n_qubits() != n {
            return Err(validation(format!(
                "{label} has {} entries, expected {}",
                t.probs.len(),
                n + 1
            )));
        }
    }
    Ok((t0, t1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_qubit_is_point_mass() {
        for p in [0.0, 0.3, 1.0] {
            assert_eq!(flat_dist(1, p).unwrap().probs(), &[0.0, 1.0]);
            assert_eq!(cascade_dist(1, p).unwrap().probs(), &[0.0, 1.0]);
        }
    }

    #[test]
    fn two_qubits_single_gate() {
        // gate fails: both dark; succeeds: both bright
        let d = flat_dist(2, 0.25).unwrap();
        assert_eq!(d.probs(), &[0.25, 0.0, 0.75]);
        assert_eq!(cascade_dist(2, 0.25).unwrap().probs(), &[0.25, 0.0, 0.75]);
    }

    #[test]
    fn complete_success_mass() {
        let expected = 0.995f64.powi(9);
        let f = flat_dist(10, 0.005).unwrap();
        let c = cascade_dist(10, 0.005).unwrap();
        assert!((f.prob(10) - expected).abs() < 1e-15);
        assert!((c.prob(10) - expected).abs() < 1e-15);
        assert!((expected - 0.956).abs() < 5e-4);
        assert_eq!(f.prob(9), 0.0);
        assert_eq!(c.prob(9), 0.0);
    }

    #[test]
    fn noiseless_gates() {
        for n in 1..12 {
            let c = cascade_dist(n, 0.0).unwrap();
            assert_eq!(c.prob(n), 1.0);
            assert_eq!(flat_dist(n, 0.0).unwrap().prob(n), 1.0);
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(flat_dist(0, 0.1).is_err());
        assert!(cascade_dist(0, 0.1).is_err());
        assert!(flat_dist(3, 1.5).is_err());
        assert!(GateNoise::new(-0.1, Compilation::Flat).is_err());
    }

    #[test]
    fn general_pair_checks_lengths() {
        let t0 = OutcomeDist::point(4, 4).unwrap();
        let t1 = cascade_dist(4, 0.01).unwrap();
        assert!(general_t_pair(4, t0.clone(), t1.clone()).is_ok());
        let short = OutcomeDist::point(3, 3).unwrap();
        assert!(matches!(
            general_t_pair(4, short, t1),
            Err(crate::Error::Validation(_))
        ));
    }

    #[test]
    fn outcome_dist_validation() {
        assert!(OutcomeDist::new(vec![0.5, 0.4]).is_err());
        assert!(OutcomeDist::new(vec![1.0]).is_err());
        assert!(OutcomeDist::new(vec![-0.1, 1.1]).is_err());
        let d = OutcomeDist::new(vec![0.2, 0.0, 0.8]).unwrap();
        assert!((d.mean() - 1.6).abs() < 1e-15);
        assert!((d.variance() - 0.64).abs() < 1e-15);
    }

    #[test]
    fn compilation_parses() {
        assert_eq!("flat".parse::<Compilation>().unwrap(), Compilation::Flat);
        assert_eq!("cascade".parse::<Compilation>().unwrap(), Compilation::Cascade);
        assert!("tree".parse::<Compilation>().is_err());
    }
}
