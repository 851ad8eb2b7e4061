//! Plugging in custom single-qubit laws and outcome distributions.

use std::sync::Arc;

use readout_tradeoff::cnot::{cascade_dist, flat_dist, OutcomeDist};
use readout_tradeoff::dist::{poisson_pmf, DiscreteDist};
use readout_tradeoff::rates::RateParams;
use readout_tradeoff::scheme::{InjectedModel, ReadoutModel, SchemeConfig, TabulatedLaws};

fn main() -> readout_tradeoff::Result<()> {
    let n = 4;
    let rates = RateParams::default();

    // Laws from a closure: a bright qubit that leaks 2% of its shots to the dark rate.
    let leaky = move |t: f64| -> readout_tradeoff::Result<(DiscreteDist, DiscreteDist)> {
        let dark = poisson_pmf(rates.mu0() * t)?;
        let bright = poisson_pmf(rates.mu1() * t)?;
        Ok((dark.clone(), DiscreteDist::mixture([(0.98, &bright), (0.02, &dark)])?))
    };
    // Input |0⟩ can be disturbed too; q counts qubits left in the nominal state.
    let model = InjectedModel::new(flat_dist(n, 0.01)?, cascade_dist(n, 0.01)?, Arc::new(leaky))?;
    let cfg = SchemeConfig::new(n, rates, ReadoutModel::GeneralInjected(model))?;
    for t in [0.5, 1.0, 2.0] {
        let m = cfg.merit_at(t)?;
        println!("t={t} ms  SNR {:.4}  MI {:.5}", m.snr, m.mi);
    }

    // Tabulated laws, e.g. from measured histograms, at fixed times only.
    let mut table = TabulatedLaws::new();
    for t in [1.0, 2.0] {
        table.insert(t, poisson_pmf(3.5 * t)?, poisson_pmf(14.0 * t)?)?;
    }
    let model = InjectedModel::new(OutcomeDist::point(n, n)?, OutcomeDist::point(n, n)?, Arc::new(table))?;
    let cfg = SchemeConfig::new(n, rates, ReadoutModel::GeneralInjected(model))?;
    println!("tabulated, t=2 ms: SNR {:.4}", cfg.snr_at(2.0)?);
    match cfg.snr_at(1.5) {
        Ok(s) => println!("t=1.5 ms: {s}"),
        Err(e) => println!("t=1.5 ms: {e}"),
    }
    Ok(())
}
