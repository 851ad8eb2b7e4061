//! SNR against readout time for growing registers, and where it peaks.

use readout_tradeoff::cnot::{Compilation, GateNoise};
use readout_tradeoff::rates::RateParams;
use readout_tradeoff::scheme::{estimate_time_exponent, peak_snr, PeakSnr, SchemeConfig};
use readout_tradeoff::sweep::{snr_sweep, Spacing, TimeGrid};

fn main() -> readout_tradeoff::Result<()> {
    let rates = RateParams::default();
    let noise = GateNoise::new(0.01, Compilation::Cascade)?;
    let base = SchemeConfig::noisy(1, rates, noise)?;

    let grid = TimeGrid::new(0.1, 10.0, 5, Spacing::Log)?;
    for row in snr_sweep(&base, &[1, 2, 4], &grid)? {
        println!("N={}  t={:7.3} ms  SNR {:.4}", row.n, row.t_ms, row.snr);
    }

    println!();
    for n in 1..=8 {
        let cfg = base.with_n_qubits(n)?;
        match peak_snr(&cfg)? {
            PeakSnr::Peak { s_max, t_max } => println!("N={n}: peak SNR {s_max:.3} at {t_max:.2} ms"),
            PeakSnr::Unbounded { s_edge, t_edge } => println!("N={n}: still rising, {s_edge:.3} at {t_edge} ms"),
        }
    }

    let ideal = SchemeConfig::ideal(3, rates)?;
    let alpha = estimate_time_exponent(&ideal, 1.0, 100.0, 20)?;
    println!("\nideal scheme grows as t^{alpha:.3}");
    Ok(())
}
