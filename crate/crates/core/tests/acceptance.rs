//! End-to-end acceptance checks. Run with `cargo test --test acceptance`.
//!
//! Each criterion prints one `[PASS]` or `[FAIL]` line with its runtime; the
//! process exits non-zero if any criterion fails or overruns its budget.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use readout_tradeoff::cnot::{cascade_dist, flat_dist, Compilation, GateNoise, OutcomeDist};
use readout_tradeoff::decay::{decaying_poisson, DecayModelParams};
use readout_tradeoff::dist::{poisson_pmf, tv_distance};
use readout_tradeoff::mc::{sample_full_scheme, sample_gate_outcomes, sample_photon_counts, BasisState, McConfig};
use readout_tradeoff::optimize::log_space;
use readout_tradeoff::rates::RateParams;
use readout_tradeoff::scheme::{
    gaussian_scheme_snr, peak_snr, poisson_error_bounds, snr_direct, threshold_analytic, time_to_snr, SchemeConfig,
};
use readout_tradeoff::sweep::{min_mi_over_time, Spacing, TimeGrid};
use readout_tradeoff::wiring::Wiring;

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: readout_tradeoff::Error) -> String {
    e.to_string()
}

fn default_noisy(n: usize, p: f64) -> Result<SchemeConfig, String> {
    SchemeConfig::noisy(
        n,
        RateParams::default(),
        GateNoise::new(p, Compilation::Cascade).map_err(err)?,
    )
    .map_err(err)
}

fn outcome_tv(a: &OutcomeDist, b: &OutcomeDist) -> f64 {
    0.5 * a.probs().iter().zip(b.probs()).map(|(x, y)| (x - y).abs()).sum::<f64>()
}

fn linear_tradeoff() -> Result<String, String> {
    let rates = RateParams::default();
    let mut worst = 0.0f64;
    for s in [4.0, 8.0, 12.0] {
        let t1 = time_to_snr(&SchemeConfig::ideal(1, rates).map_err(err)?, s)
            .map_err(err)?
            .time()
            .ok_or("ideal single qubit never reaches target")?;
        for n in 1..=10 {
            let tn = time_to_snr(&SchemeConfig::ideal(n, rates).map_err(err)?, s)
                .map_err(err)?
                .time()
                .ok_or("ideal register never reaches target")?;
            let rel = ((t1 / tn - n as f64) / n as f64).abs();
            worst = worst.max(rel);
            ensure(rel <= 1e-9, || format!("S={s} N={n}: ratio {} (rel {rel:e})", t1 / tn))?;
        }
    }
    Ok(format!("max relative deviation {worst:.1e}"))
}

fn cascade_complete_success() -> Result<String, String> {
    let d = cascade_dist(10, 0.005).map_err(err)?;
    let expect = 0.995f64.powi(9);
    ensure((d.prob(10) - expect).abs() <= 1e-12, || {
        format!("T(10) = {} vs {expect}", d.prob(10))
    })?;
    let f = flat_dist(10, 0.005).map_err(err)?;
    ensure(d.prob(9) == 0.0 && f.prob(9) == 0.0, || "T(9) is not exactly zero".into())?;
    Ok(format!("T(10) = {:.15}", d.prob(10)))
}

fn enumeration() -> Result<String, String> {
    let mut worst = 0.0f64;
    for n in 1..=10 {
        for p in [0.001, 0.005, 0.01, 0.25] {
            let pairs = [
                (flat_dist(n, p), Wiring::flat(n)),
                (cascade_dist(n, p), Wiring::cascade(n)),
            ];
            for (closed, wiring) in pairs {
                let exact = wiring.map_err(err)?.exact_outcomes(p).map_err(err)?;
                let tv = outcome_tv(&closed.map_err(err)?, &exact);
                worst = worst.max(tv);
                ensure(tv <= 1e-12, || format!("N={n} p={p}: TV {tv:e}"))?;
            }
        }
    }
    Ok(format!("max TV {worst:.1e}"))
}

fn moment_formula() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let n = rng.random_range(1..=8);
        let p = rng.random_range(0.0..=0.05);
        let lambda = rng.random_range(0.0..=0.01);
        let t = rng.random_range(0.1..=10.0);
        let compilation = if rng.random_bool(0.5) {
            Compilation::Flat
        } else {
            Compilation::Cascade
        };
        let cfg = SchemeConfig::noisy(
            n,
            RateParams::new(3.5, 14.0, lambda).map_err(err)?,
            GateNoise::new(p, compilation).map_err(err)?,
        )
        .map_err(err)?;
        let direct = snr_direct(&cfg.compose(t).map_err(err)?);
        let general = cfg.snr_at(t).map_err(err)?;
        let rel = ((general - direct) / direct).abs();
        worst = worst.max(rel);
        ensure(rel <= 1e-9, || format!("N={n} p={p} lambda={lambda} t={t}: rel {rel:e}"))?;
    }
    Ok(format!("50 cases, max relative deviation {worst:.1e}"))
}

fn peak_snr_growth() -> Result<String, String> {
    let ts = log_space(0.01, 100.0, 400);
    let mut peaks = Vec::new();
    for n in 1..=5 {
        let cfg = default_noisy(n, 0.01)?;
        let s: Vec<f64> = ts.iter().map(|&t| cfg.snr_at(t)).collect::<Result<_, _>>().map_err(err)?;
        let top = s.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).map(|(i, _)| i).unwrap();
        let rising = s[..=top].windows(2).all(|w| w[1] > w[0]);
        let falling = s[top..].windows(2).all(|w| w[1] < w[0]);
        ensure(rising && falling && top > 0 && top < s.len() - 1, || {
            format!("N={n}: SNR curve not unimodal (argmax index {top})")
        })?;
        peaks.push(peak_snr(&cfg).map_err(err)?.value().0);
    }
    ensure(peaks.windows(2).all(|w| w[1] > w[0]), || format!("peaks {peaks:?}"))?;
    let shown: Vec<String> = peaks.iter().map(|s| format!("{s:.3}")).collect();
    Ok(format!("s_max = [{}]", shown.join(", ")))
}

fn super_improvement() -> Result<String, String> {
    let mut summary = Vec::new();
    for (p, above) in [(0.001, true), (0.01, false)] {
        let t1 = time_to_snr(&default_noisy(1, p)?, 8.0).map_err(err)?.time().ok_or("N=1 unreachable")?;
        let mut ratios = Vec::new();
        for n in 2..=10 {
            let tn = time_to_snr(&default_noisy(n, p)?, 8.0)
                .map_err(err)?
                .time()
                .ok_or_else(|| format!("p={p} N={n} unreachable"))?;
            let ratio = t1 / tn;
            ensure((ratio > n as f64) == above, || format!("p={p} N={n}: ratio {ratio:.4}"))?;
            ratios.push(ratio);
        }
        summary.push(format!("p={p}: ratio(10)={:.3}", ratios[8]));
    }
    Ok(summary.join(", "))
}

fn infidelity() -> Result<String, String> {
    let grid = TimeGrid::new(0.05, 50.0, 150, Spacing::Log).map_err(err)?;
    let min_mi = |p: f64, n: usize| -> Result<f64, String> {
        Ok(min_mi_over_time(&default_noisy(n, p)?, &grid).map_err(err)?.mi)
    };
    let noisy: Vec<f64> = (1..=5).map(|n| min_mi(0.01, n)).collect::<Result<_, _>>()?;
    ensure(noisy[1..].iter().all(|&m| m > noisy[0]), || {
        format!("p=0.01: N=1 is not the smallest ({noisy:?})")
    })?;
    let clean = (min_mi(0.001, 1)?, min_mi(0.001, 2)?);
    ensure(clean.1 < clean.0, || format!("p=0.001: MI(2)={} >= MI(1)={}", clean.1, clean.0))?;
    for (i, &m) in noisy.iter().enumerate().skip(2) {
        let rel = ((m - noisy[1]) / noisy[1]).abs();
        ensure(rel <= 0.25, || format!("p=0.01 N={}: {m} vs N=2 {} (rel {rel:.3})", i + 1, noisy[1]))?;
    }
    let shown: Vec<String> = noisy.iter().map(|m| format!("{m:.5}")).collect();
    Ok(format!("p=0.01 MI = [{}], p=0.001 MI(1..2) = [{:.5}, {:.5}]", shown.join(", "), clean.0, clean.1))
}

fn decay_limits() -> Result<String, String> {
    let w = decaying_poisson(&DecayModelParams::new(RateParams::new(3.5, 14.0, 0.0).map_err(err)?, 3.0).map_err(err)?)
        .map_err(err)?;
    let l = poisson_pmf(42.0).map_err(err)?;
    let a = (0..200).map(|k| (w.pmf(k) - l.pmf(k)).abs()).fold(0.0, f64::max);
    ensure(a <= 1e-12, || format!("lambda=0: max deviation {a:e}"))?;
    let w = decaying_poisson(&DecayModelParams::new(RateParams::new(9.0, 9.0, 0.0041).map_err(err)?, 2.5).map_err(err)?)
        .map_err(err)?;
    let l = poisson_pmf(22.5).map_err(err)?;
    let b = (0..200).map(|k| (w.pmf(k) - l.pmf(k)).abs()).fold(0.0, f64::max);
    ensure(b <= 1e-10, || format!("equal rates: max deviation {b:e}"))?;
    Ok(format!("max deviations {a:.1e}, {b:.1e}"))
}

fn monte_carlo() -> Result<String, String> {
    const SHOTS: u64 = 1_000_000;
    const SEED: u64 = 20_240_601;
    let h = sample_gate_outcomes(&Wiring::cascade(10).map_err(err)?, 0.005, SHOTS, SEED).map_err(err)?;
    let gates = outcome_tv(&h.to_outcome_dist(10).map_err(err)?, &cascade_dist(10, 0.005).map_err(err)?);

    let rates = RateParams::default();
    let h = sample_photon_counts(&rates, BasisState::One, 3.0, SHOTS, SEED).map_err(err)?;
    let w = decaying_poisson(&DecayModelParams::new(rates, 3.0).map_err(err)?).map_err(err)?;
    let photons = tv_distance(&h.to_dist().map_err(err)?, &w);

    let scheme = default_noisy(5, 0.01)?;
    let stats = scheme.compose(2.0).map_err(err)?;
    let (h0, h1) = sample_full_scheme(&McConfig {
        shots: SHOTS,
        seed: SEED,
        scheme,
        t: 2.0,
    })
    .map_err(err)?;
    let dark = tv_distance(&h0.to_dist().map_err(err)?, &stats.p0);
    let bright = tv_distance(&h1.to_dist().map_err(err)?, &stats.p1);

    let detail = format!("TV gates {gates:.2e}, W {photons:.2e}, scheme p0 {dark:.2e}, p1 {bright:.2e}");
    ensure([gates, photons, dark, bright].iter().all(|&tv| tv <= 5e-3), || detail.clone())?;
    Ok(detail)
}

fn gaussian_identities() -> Result<String, String> {
    let drift = 2.7;
    let mut worst = 0.0f64;
    for n in 1..=10 {
        for t in log_space(0.01, 10.0, 10) {
            let s = gaussian_scheme_snr(drift, n, t).map_err(err)?;
            let longer = gaussian_scheme_snr(drift, 1, n as f64 * t).map_err(err)?;
            let scaled = (n as f64).sqrt() * gaussian_scheme_snr(drift, 1, t).map_err(err)?;
            let rel = ((s - longer) / s).abs().max(((s - scaled) / s).abs());
            worst = worst.max(rel);
            ensure(rel <= 1e-12, || format!("N={n} t={t}: rel {rel:e}"))?;
        }
    }
    Ok(format!("max relative deviation {worst:.1e}"))
}

fn tail_brackets() -> Result<String, String> {
    let rates = RateParams::default();
    let mut checked = 0;
    for n in 1..=3 {
        let cfg = SchemeConfig::ideal(n, rates).map_err(err)?;
        for w0 in log_space(2.0, 50.0, 20) {
            let t = w0 / (rates.mu0() * n as f64);
            let stats = cfg.compose(t).map_err(err)?;
            let eta = threshold_analytic(&rates, n, t).map_err(err)?.eta_analytic;
            let b = poisson_error_bounds(&rates, n, t, eta).map_err(err)?;
            let eps0 = stats.p0.tail_ge(eta);
            let eps1 = stats.p1.head_lt(eta);
            ensure(b.eps0_lower <= eps0 && eps0 <= b.eps0_upper, || {
                format!("N={n} Ntμ0={w0}: eps0 {eps0} outside [{}, {}]", b.eps0_lower, b.eps0_upper)
            })?;
            ensure(b.eps1_lower <= eps1 && eps1 <= b.eps1_upper, || {
                format!("N={n} Ntμ0={w0}: eps1 {eps1} outside [{}, {}]", b.eps1_lower, b.eps1_upper)
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} points inside brackets"))
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, Check); 11] = [
        ("1 linear trade-off", Duration::from_secs(1), linear_tradeoff),
        ("2 cascade complete success", Duration::from_millis(1), cascade_complete_success),
        ("3 closed forms vs enumeration", Duration::from_secs(10), enumeration),
        ("4 moment SNR formula", Duration::from_secs(30), moment_formula),
        ("5 peak SNR growth", Duration::from_secs(60), peak_snr_growth),
        ("6 super-improvement", Duration::from_secs(120), super_improvement),
        ("7 infidelity behaviour", Duration::from_secs(120), infidelity),
        ("8 decay limits", Duration::from_secs(1), decay_limits),
        ("9 Monte Carlo agreement", Duration::from_secs(120), monte_carlo),
        ("10 Gaussian identities", Duration::from_millis(1), gaussian_identities),
        ("11 tail-bound containment", Duration::from_secs(5), tail_brackets),
    ];
    let mut failures = 0;
    for (name, budget, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let outcome = match result {
            Ok(detail) if elapsed <= budget => Ok(detail),
            Ok(detail) => Err(format!("{detail}; over budget {budget:?}")),
            Err(e) => Err(e),
        };
        match outcome {
            Ok(detail) => println!("[PASS] {name} ({elapsed:.3?}): {detail}"),
            Err(detail) => {
                failures += 1;
                println!("[FAIL] {name} ({elapsed:.3?}): {detail}");
            }
        }
    }
    if failures == 0 {
        println!("all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
