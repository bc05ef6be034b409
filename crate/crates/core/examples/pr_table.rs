//! Exact commuting probabilities for each subgroup in a few small groups.
//!
//! Run with `cargo run --example pr_table`.

use commprob::catalog::{distinguished_subgroups, group};
use commprob::measure::{pr, pr_bruteforce, DEFAULT_PAIR_CAP};

fn main() -> commprob::Result<()> {
    for spec in [
        "symmetric(3)",
        "dihedral(8)",
        "quaternion_generalized(8)",
        "alternating(4)",
    ] {
        let g = group(spec)?;
        println!("{spec} (order {})", g.order());
        for (label, k) in distinguished_subgroups(&g) {
            let exact = pr(&g, &k);
            let check = pr_bruteforce(&g, &k, DEFAULT_PAIR_CAP)?;
            assert_eq!(exact.value, check.value);
            println!("  {label:<16} |K| = {:<3} Pr = {}", k.len(), exact.value);
        }
    }
    Ok(())
}
