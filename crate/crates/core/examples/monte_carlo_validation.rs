//! Cross-check the analytic laws against shot-by-shot sampling.

use readout_tradeoff::cnot::{Compilation, GateNoise};
use readout_tradeoff::dist::tv_distance;
use readout_tradeoff::mc::{sample_full_scheme, McConfig};
use readout_tradeoff::rates::RateParams;
use readout_tradeoff::scheme::{snr_direct, CompositeStats, SchemeConfig};

fn main() -> readout_tradeoff::Result<()> {
    let scheme = SchemeConfig::noisy(5, RateParams::default(), GateNoise::new(0.01, Compilation::Cascade)?)?;
    let t = 2.0;
    let exact = scheme.compose(t)?;

    for shots in [10_000, 100_000, 1_000_000] {
        let (h0, h1) = sample_full_scheme(&McConfig {
            shots,
            seed: 1,
            scheme: scheme.clone(),
            t,
        })?;
        let (d0, d1) = (h0.to_dist()?, h1.to_dist()?);
        let tv0 = tv_distance(&d0, &exact.p0);
        let tv1 = tv_distance(&d1, &exact.p1);
        let snr = snr_direct(&CompositeStats::new(d0, d1, t));
        println!("{shots:>8} shots  TV dark {tv0:.2e}  TV bright {tv1:.2e}  SNR {snr:.4}");
    }
    println!("analytic SNR {:.4}", scheme.snr_at(t)?);
    Ok(())
}
