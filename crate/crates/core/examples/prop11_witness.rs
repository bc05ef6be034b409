//! A bounded-index witness pair for a subgroup with large commuting probability.
//!
//! Builds the certificate for `K = S3` inside `S3 x C2` at `epsilon = 1/2`,
//! prints the headline quantities, and re-validates it from scratch.

use commprob::catalog::group;
use commprob::measure::pr;
use commprob::witness::{prop11_witness, validate_certificate, Certificate};
use commprob::{Ratio, Subgroup};

fn main() -> commprob::Result<()> {
    let g = group("direct_product(symmetric(3),cyclic(2))")?;
    let k = Subgroup::whole(&g);
    let eps = Ratio::new(1, 2);
    println!("Pr(K,G) = {}", pr(&g, &k).value);

    let cert = prop11_witness(&g, &k, &eps)?;
    println!(
        "|X| = {}, r = {}, [K:B] = {}",
        cert.x.len(),
        cert.r,
        cert.index_k_b
    );
    println!("[G:T] = {}, |[T,B]| = {}", cert.index_g_t, cert.tb_order);

    let verdict = validate_certificate(&g, &Certificate::Prop11(cert));
    println!(
        "validator: {} checks, {} failures",
        verdict.checks,
        verdict.failures.len()
    );
    Ok(())
}
