//! Explicit CNOT fan-out circuits.
//!
//! A [`Wiring`] is an ordered gate list over `N` qubits. Qubit 0 holds the
//! input; every other qubit must be targeted exactly once, while still dark,
//! by a control that has already been reached. These rules make the gate
//! graph a tree rooted at qubit 0, so any cycle is rejected at construction.
//!
//! Besides the closed-form compilations this supports arbitrary layouts
//! (e.g. the all-to-all "exponential" fan-out), whose outcome law can be
//! obtained by exhaustive enumeration or sampling.

use crate::cnot::{Compilation, OutcomeDist};
use crate::error::{domain, Result};

/// Largest gate count accepted by [`Wiring::exact_outcomes`].
pub const MAX_ENUMERATED_GATES: usize = 26;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wiring {
    n_qubits: usize,
    gates: Vec<(usize, usize)>,
}

impl Wiring {
    /// `gates` are `(control, target)` pairs in execution order.
    pub fn new(n_qubits: usize, gates: Vec<(usize, usize)>) -> Result<Self> {
        if n_qubits == 0 {
            return Err(domain("wiring needs at least one qubit"));
        }
        let mut reached = vec![false; n_qubits];
        reached[0] = true;
        for (i, &(c, t)) in gates.iter().enumerate() {
            if c >= n_qubits || t >= n_qubits {
                return Err(domain(format!("gate {i} ({c}->{t}) addresses a missing qubit")));
            }
            if !reached[c] {
                return Err(domain(format!("gate {i}: control {c} has not been reached yet")));
            }
            if reached[t] {
                return Err(domain(format!(
                    "gate {i}: target {t} was already reached (cyclic or repeated wiring)"
                )));
            }
            reached[t] = true;
        }
        if let Some(q) = reached.iter().position(|r| !r) {
            return Err(domain(format!("qubit {q} is never entangled")));
        }
        Ok(Self { n_qubits, gates })
    }

    /// Chain `0 → 1 → … → N−1`.
    pub fn flat(n: usize) -> Result<Self> {
        Self::new(n, (1..n).map(|t| (t - 1, t)).collect())
    }

    /// First gate `0 → h` with `h = ⌈N/2⌉`, then chains `0 → 1 → … → h−1`
    /// and `h → h+1 → … → N−1`.
    pub fn cascade(n: usize) -> Result<Self> {
        if n <= 2 {
            return Self::flat(n);
        }
        let h = n.div_ceil(2);
        let mut gates = vec![(0, h)];
        gates.extend((1..h).map(|t| (t - 1, t)));
        gates.extend((h + 1..n).map(|t| (t - 1, t)));
        Self::new(n, gates)
    }

    /// All-to-all fan-out: each round, every reached qubit targets a fresh one.
    pub fn exponential(n: usize) -> Result<Self> {
        let mut gates = Vec::new();
        let mut reached = vec![0usize];
        let mut next = 1;
        while next < n {
            let round: Vec<usize> = reached.clone();
            for c in round {
                if next == n {
                    break;
                }
                gates.push((c, next));
                reached.push(next);
                next += 1;
            }
        }
        Self::new(n.max(1), gates)
    }

    pub fn for_compilation(n: usize, compilation: Compilation) -> Result<Self> {
        match compilation {
            Compilation::Flat => Self::flat(n),
            Compilation::Cascade => Self::cascade(n),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[(usize, usize)] {
        &self.gates
    }

    /// Runs the circuit on a bright input; `fails(i)` decides whether gate `i`
    /// fails when its control is bright. Writes the final states into
    /// `bright` and returns how many qubits are bright.
    pub fn run(&self, mut fails: impl FnMut(usize) -> bool, bright: &mut Vec<bool>) -> usize {
        bright.clear();
        bright.resize(self.n_qubits, false);
        bright[0] = true;
        for (i, &(c, t)) in self.gates.iter().enumerate() {
            if bright[c] {
                if fails(i) {
                    bright[c] = false;
                } else {
                    bright[t] = true;
                }
            }
        }
        bright.iter().filter(|b| **b).count()
    }

    /// Outcome law by summing over all `2^gates` failure patterns.
    pub fn exact_outcomes(&self, p: f64) -> Result<OutcomeDist> {
        if !(0.0..=1.0).contains(&p) {
            return Err(domain(format!("failure probability must lie in [0, 1] (got {p})")));
        }
        let g = self.gates.len();
        if g > MAX_ENUMERATED_GATES {
            return Err(domain(format!(
                "{g} gates exceed the enumeration limit of {MAX_ENUMERATED_GATES}"
            )));
        }
        let mut probs = vec![0.0; self.n_qubits + 1];
        let mut state = Vec::with_capacity(self.n_qubits);
        for pattern in 0u64..(1u64 << g) {
            let failures = pattern.count_ones() as i32;
            let weight = p.powi(failures) * (1.0 - p).powi(g as i32 - failures);
            if weight == 0.0 {
                continue;
            }
            let q = self.run(|i| pattern >> i & 1 == 1, &mut state);
            probs[q] += weight;
        }
        OutcomeDist::new(probs)
    }
}
