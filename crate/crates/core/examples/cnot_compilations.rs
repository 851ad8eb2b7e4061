//! How gate failures spread through flat and cascade CNOT fan-outs.

use readout_tradeoff::cnot::{cascade_dist, flat_dist};
use readout_tradeoff::mc::sample_gate_outcomes;
use readout_tradeoff::wiring::Wiring;

fn main() -> readout_tradeoff::Result<()> {
    let (n, p) = (10, 0.005);
    let flat = flat_dist(n, p)?;
    let cascade = cascade_dist(n, p)?;
    println!("N={n}, p={p}: probability that q qubits end bright");
    println!(" q      flat       cascade");
    for q in 0..=n {
        println!("{q:>2}  {:.6e}  {:.6e}", flat.prob(q), cascade.prob(q));
    }
    println!("mean bright: flat {:.4}, cascade {:.4}", flat.mean(), cascade.mean());

    // Brute-force check against every failure pattern of the gate list.
    let wiring = Wiring::cascade(n)?;
    println!("\ncascade gates (control, target): {:?}", wiring.gates());
    let exact = wiring.exact_outcomes(p)?;
    let diff = exact.probs().iter().zip(cascade.probs()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    println!("max deviation from enumeration: {diff:.1e}");

    // Depth-log2 wiring has no closed form here; sample it instead.
    let exp = Wiring::exponential(n)?;
    let h = sample_gate_outcomes(&exp, p, 200_000, 7)?;
    let emp = h.to_outcome_dist(n)?;
    println!("exponential wiring, sampled P(all bright) = {:.4}", emp.prob(n));
    Ok(())
}
