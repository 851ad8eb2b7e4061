//! Continuous Gaussian readout: SNR grows with N·t just like photon counting.

use readout_tradeoff::scheme::gaussian_scheme_snr;

fn main() -> readout_tradeoff::Result<()> {
    let drift = 2.0;
    println!("   t   N=1      N=4      1 qubit for 4t");
    for t in [0.25, 1.0, 4.0] {
        println!(
            "{t:>4}  {:.4}  {:.4}  {:.4}",
            gaussian_scheme_snr(drift, 1, t)?,
            gaussian_scheme_snr(drift, 4, t)?,
            gaussian_scheme_snr(drift, 1, 4.0 * t)?
        );
    }
    Ok(())
}
