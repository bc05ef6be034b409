//! Sampled commuting probability next to the exact value.
//!
//! The second half samples `S8` through product replacement, which never
//! builds its 40320-element table.

use commprob::catalog::group;
use commprob::measure::pr;
use commprob::montecarlo::{estimate_pr, estimate_pr_generated};
use commprob::{Permutation, Subgroup};

fn main() -> commprob::Result<()> {
    let g = group("symmetric(5)")?;
    let k = Subgroup::whole(&g);
    let exact = pr(&g, &k).value;
    let est = estimate_pr(&g, &k, 200_000, 42, 0.99)?;
    println!(
        "S5: exact {exact} = {:.5}, estimate {:.5} in [{:.5}, {:.5}]",
        exact.to_f64(),
        est.point,
        est.lo,
        est.hi
    );

    let gens = [
        Permutation::from_cycles(8, &[vec![0, 1]]).unwrap(),
        Permutation::from_cycles(8, &[(0..8).collect()]).unwrap(),
    ];
    let est = estimate_pr_generated(8, &gens, &gens, 100_000, 42, 0.99)?;
    // 22 partitions of 8
    println!(
        "S8: exact {:.5}, estimate {:.5} ({:?})",
        22.0 / 40320.0,
        est.point,
        est.method
    );
    Ok(())
}
