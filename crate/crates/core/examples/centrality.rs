//! Centrality floors and the class-size bound that goes with them.

use commprob::catalog::group;
use commprob::measure::{centrality_floor, pr};
use commprob::witness::class_bound_centrality;
use commprob::Subgroup;

fn main() -> commprob::Result<()> {
    for spec in ["quaternion_generalized(8)", "symmetric(4)", "dihedral(12)"] {
        let g = group(spec)?;
        let whole = Subgroup::whole(&g);
        let (floor, at) = centrality_floor(&g, &whole);
        let n = whole.iter().map(|x| g.class_size(x)).max().unwrap() as u64;
        let verdict = class_bound_centrality(&g, &whole, 1, n)?;
        println!(
            "{spec}: Pr(G,G) = {}, floor = {floor} at {}, largest class {n}, 1/n = {}",
            pr(&g, &whole).value,
            g.label(at),
            verdict.bound
        );
    }
    Ok(())
}
