//! Threshold discrimination: optimal infidelity and the analytic threshold.

use readout_tradeoff::cnot::{Compilation, GateNoise};
use readout_tradeoff::rates::RateParams;
use readout_tradeoff::scheme::{mi_at, mi_optimal, poisson_error_bounds, threshold_analytic, SchemeConfig};
use readout_tradeoff::sweep::{min_mi_over_time, Spacing, TimeGrid};

fn main() -> readout_tradeoff::Result<()> {
    let rates = RateParams::default();

    let t = 1.0;
    let ideal = SchemeConfig::ideal(1, rates)?;
    let stats = ideal.compose(t)?;
    let th = threshold_analytic(&rates, 1, t)?;
    let (mi, eta) = mi_optimal(&stats);
    let b = poisson_error_bounds(&rates, 1, t, th.eta_analytic)?;
    println!("one ideal qubit at {t} ms");
    println!("  best threshold {eta}, MI {mi:.5}");
    println!("  analytic threshold {:.3}, MI {:.5}", th.eta_analytic, mi_at(&stats, th.eta_analytic));
    println!("  bracket [{:.5}, {:.5}]", 0.5 * (b.eps0_lower + b.eps1_lower), 0.5 * (b.eps0_upper + b.eps1_upper));

    let grid = TimeGrid::new(0.05, 50.0, 150, Spacing::Log)?;
    for p in [0.001, 0.01] {
        println!("\np={p}: lowest MI over time");
        let noise = GateNoise::new(p, Compilation::Cascade)?;
        for n in 1..=5 {
            let best = min_mi_over_time(&SchemeConfig::noisy(n, rates, noise)?, &grid)?;
            println!("  N={n}  MI {:.6} at {:.3} ms (threshold {})", best.mi, best.t, best.eta_opt);
        }
    }
    Ok(())
}
