//! Time needed to reach a target SNR, and the speed-up over one qubit.

use readout_tradeoff::cnot::{Compilation, GateNoise};
use readout_tradeoff::rates::RateParams;
use readout_tradeoff::scheme::SchemeConfig;
use readout_tradeoff::sweep::speedup_table;

fn main() -> readout_tradeoff::Result<()> {
    let target = 8.0;
    let ns: Vec<usize> = (1..=10).collect();
    let rates = RateParams::default();

    let ideal = SchemeConfig::ideal(1, rates)?;
    println!("ideal readout, target SNR {target}");
    for row in speedup_table(&ideal, &ns, target)? {
        println!("  N={:>2}  ratio {:.6}", row.n, row.ratio.unwrap_or(f64::NAN));
    }

    for p in [0.001, 0.01] {
        let base = SchemeConfig::noisy(1, rates, GateNoise::new(p, Compilation::Cascade)?)?;
        println!("\ngate failure p={p}");
        for row in speedup_table(&base, &ns, target)? {
            match (row.t_n_ms, row.ratio) {
                (Some(t), Some(r)) => {
                    let mark = match row.n {
                        1 => "",
                        n if r > n as f64 => "above N",
                        _ => "below N",
                    };
                    println!("  N={:>2}  t={t:.4} ms  ratio {r:.3}  {mark}", row.n);
                }
                _ => println!("  N={:>2}  target not reachable", row.n),
            }
        }
    }
    Ok(())
}
