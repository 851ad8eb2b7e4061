//! Photon counts of a bright qubit that may decay during readout.

use readout_tradeoff::decay::{decaying_poisson, decaying_poisson_moments, DecayModelParams};
use readout_tradeoff::dist::poisson_pmf;
use readout_tradeoff::rates::RateParams;

fn main() -> readout_tradeoff::Result<()> {
    let rates = RateParams::default();
    println!("mu0={} mu1={} lambda={} (1/ms)", rates.mu0(), rates.mu1(), rates.lambda());

    for t in [0.5, 3.0, 20.0] {
        let p = DecayModelParams::new(rates, t)?;
        let m = decaying_poisson_moments(&p)?;
        println!(
            "t={t:>5} ms  mean {:8.4} (no decay {:6.1})  variance {:8.4}",
            m.mean,
            rates.mu1() * t,
            m.variance
        );
    }

    let t = 3.0;
    let w = decaying_poisson(&DecayModelParams::new(rates, t)?)?;
    let ideal = poisson_pmf(rates.mu1() * t)?;
    println!("\n  k      W(k)        L(k)");
    for k in (0..=60).step_by(5) {
        println!("{k:>3}  {:.4e}  {:.4e}", w.pmf(k), ideal.pmf(k));
    }

    // Fast decay pushes the law toward the dark rate.
    let fast = RateParams::new(3.5, 14.0, 5.0)?;
    let m = decaying_poisson_moments(&DecayModelParams::new(fast, t)?)?;
    println!("\nlambda=5: mean {:.3}, dark-rate mean {:.3}", m.mean, 3.5 * t);
    Ok(())
}
