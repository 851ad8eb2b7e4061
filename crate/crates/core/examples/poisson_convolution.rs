//! Exact count laws: Poisson pmfs, convolution and their moments.

use readout_tradeoff::dist::{convolve, poisson_pmf, tv_distance, DiscreteDist};

fn main() -> readout_tradeoff::Result<()> {
    let a = poisson_pmf(10.5)?;
    let b = poisson_pmf(42.0)?;
    let sum = convolve(&a, &b);
    let direct = poisson_pmf(52.5)?;
    println!("L(10.5) * L(42) has support {}..{}", sum.offset(), sum.end());
    println!("mean {:.6}  variance {:.6}", sum.mean(), sum.variance());
    println!("TV to L(52.5): {:.2e}", tv_distance(&sum, &direct));

    // Three independent dark qubits read for 1 ms each.
    let three = poisson_pmf(3.5)?.n_fold(3);
    println!("P(k >= 15) for 3 dark qubits at 1 ms: {:.6}", three.tail_ge(15.0));

    // A hand-built law mixed with a point mass.
    let coin = DiscreteDist::from_masses(0, vec![0.5, 0.5])?;
    let mix = DiscreteDist::mixture([(0.9, &coin), (0.1, &DiscreteDist::point_mass(5))])?;
    for (k, m) in mix.iter() {
        println!("  k={k}  {m:.3}");
    }
    Ok(())
}
