use readout_tradeoff::cnot::{cascade_dist, flat_dist, general_t_pair, Compilation, GateNoise, OutcomeDist};
use readout_tradeoff::wiring::Wiring;

const PS: [f64; 4] = [0.001, 0.005, 0.01, 0.25];

fn tv(a: &OutcomeDist, b: &OutcomeDist) -> f64 {
    0.5 * a.probs().iter().zip(b.probs()).map(|(x, y)| (x - y).abs()).sum::<f64>()
}

fn theta(c: bool) -> f64 {
    if c {
        1.0
    } else {
        0.0
    }
}

/// Expanded even-size cascade law, `N = 2m`.
fn cascade_even_expanded(m: usize, p: f64, q: usize) -> f64 {
    let (m, qi) = (m as i64, q as i64);
    let s = 1.0 - p;
    s.powi(q as i32 + 1)
        * p
        * p
        * ((qi + 1) as f64 * theta(qi <= m - 2) + (2 * m - 3 - qi) as f64 * theta(m - 1 <= qi && qi <= 2 * (m - 2)))
        + 2.0 * s.powi(q as i32) * p * theta(m <= qi && qi <= 2 * m - 2)
        + s.powi(2 * m as i32 - 1) * theta(qi == 2 * m)
        + p * theta(qi == 0)
}

/// Expanded odd-size cascade law, `N = 2m + 1`, `m > 0`.
#[allow(clippy::int_plus_one)]
fn cascade_odd_expanded(m: usize, p: f64, q: usize) -> f64 {
    let (m, qi) = (m as i64, q as i64);
    let s = 1.0 - p;
    s.powi(q as i32 + 1)
        * p
        * p
        * ((qi + 1) as f64 * theta(qi <= m - 2)
            + (2 * m - 3 - qi) as f64 * theta(m - 1 <= qi && qi <= 2 * (m - 2))
            + theta(m - 1 <= qi && qi <= 2 * m - 3))
        + s.powi(q as i32) * p * (2.0 * theta(m + 1 <= qi && qi <= 2 * m - 1) + theta(qi == m))
        + s.powi(2 * m as i32) * theta(qi == 2 * m + 1)
        + p * theta(qi == 0)
}

#[test]
fn flat_matches_enumeration() {
    for n in 1..=10 {
        for p in PS {
            let exact = Wiring::flat(n).unwrap().exact_outcomes(p).unwrap();
            assert!(tv(&flat_dist(n, p).unwrap(), &exact) <= 1e-12, "n={n} p={p}");
        }
    }
}

#[test]
fn cascade_matches_enumeration() {
    for n in 1..=10 {
        for p in PS {
            let exact = Wiring::cascade(n).unwrap().exact_outcomes(p).unwrap();
            assert!(tv(&cascade_dist(n, p).unwrap(), &exact) <= 1e-12, "n={n} p={p}");
        }
    }
}

#[test]
fn cascade_seven_qubits_pointwise() {
    let exact = Wiring::cascade(7).unwrap().exact_outcomes(0.01).unwrap();
    let closed = cascade_dist(7, 0.01).unwrap();
    for q in 0..=7 {
        assert!((exact.prob(q) - closed.prob(q)).abs() <= 1e-15, "q={q}");
    }
}

#[test]
fn flat_printed_form() {
    for n in 1..=12 {
        for p in PS {
            let d = flat_dist(n, p).unwrap();
            for q in 0..=n {
                let v = (1.0 - p).powi(q as i32) * p * theta(n >= 2 && q <= n - 2)
                    + (1.0 - p).powi(n as i32 - 1) * theta(q == n);
                assert!((d.prob(q) - v).abs() <= 1e-14, "n={n} p={p} q={q}");
            }
        }
    }
}

#[test]
fn cascade_printed_even_form() {
    for m in 1..=8 {
        let n = 2 * m;
        for p in PS {
            let d = cascade_dist(n, p).unwrap();
            for q in 0..=n {
                let v = cascade_even_expanded(m, p, q);
                assert!((d.prob(q) - v).abs() <= 1e-14, "n={n} p={p} q={q}: {} vs {v}", d.prob(q));
            }
        }
    }
}

#[test]
fn cascade_printed_odd_form() {
    for m in 1..=8 {
        let n = 2 * m + 1;
        for p in PS {
            let d = cascade_dist(n, p).unwrap();
            for q in 0..=n {
                let v = cascade_odd_expanded(m, p, q);
                assert!((d.prob(q) - v).abs() <= 1e-14, "n={n} p={p} q={q}: {} vs {v}", d.prob(q));
            }
        }
    }
}

#[test]
fn structural_properties() {
    for n in 1..=16 {
        for p in [0.0, 0.001, 0.05, 0.19, 0.5, 1.0] {
            for d in [flat_dist(n, p).unwrap(), cascade_dist(n, p).unwrap()] {
                assert!((d.prob(n) - (1.0 - p).powi(n as i32 - 1)).abs() <= 1e-15);
                if n >= 2 {
                    assert_eq!(d.prob(n - 1), 0.0);
                }
            }
        }
    }
}

#[test]
fn cascade_favours_more_bright_qubits() {
    for n in 3usize..=16 {
        for p in [0.001, 0.01, 0.05, 0.1, 0.19] {
            let half = n.div_ceil(2);
            let f = flat_dist(n, p).unwrap();
            let c = cascade_dist(n, p).unwrap();
            assert!(c.upper_mass(half) >= f.upper_mass(half) - 1e-15, "n={n} p={p}");
            if n >= 4 {
                assert!(c.prob(0) >= f.prob(0), "n={n} p={p}");
            }
        }
    }
}

#[test]
fn noise_dispatch() {
    let f = GateNoise::new(0.02, Compilation::Flat).unwrap().outcome_dist(6).unwrap();
    assert_eq!(f, flat_dist(6, 0.02).unwrap());
    let c = GateNoise::new(0.02, Compilation::Cascade).unwrap().outcome_dist(6).unwrap();
    assert_eq!(c, cascade_dist(6, 0.02).unwrap());
}

#[test]
fn injected_pair_reproduces_one_sided_model() {
    let n = 5;
    let (t0, t1) = general_t_pair(n, OutcomeDist::point(n, n).unwrap(), cascade_dist(n, 0.01).unwrap()).unwrap();
    assert_eq!(t0.prob(n), 1.0);
    assert_eq!(t1, cascade_dist(n, 0.01).unwrap());
}
