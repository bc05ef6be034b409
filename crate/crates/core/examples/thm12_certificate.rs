//! The full loop from epsilon-centrality through `(e, T)` to the converse bound.
//! The certificate is written as JSON and read back before validation.

use commprob::catalog::group;
use commprob::measure::centrality_floor;
use commprob::witness::{thm12_witness, validate_certificate, Certificate};
use commprob::Subgroup;

fn main() -> commprob::Result<()> {
    let g = group("direct_product(quaternion_generalized(8),symmetric(3))")?;
    let k = Subgroup::whole(&g);
    let (eps, _) = centrality_floor(&g, &k);
    let cert = thm12_witness(&g, &k, &eps)?;
    println!(
        "epsilon = {eps}: l = {}, n = {}, e = {}, [G:T] = {}, |[K^e,T]| = {}, epsilon0 = {}",
        cert.derived.l,
        cert.derived.n,
        cert.inner.e,
        cert.inner.index_g_t,
        cert.inner.ket_order,
        cert.converse.epsilon0
    );

    let json = Certificate::Thm12(cert).to_json();
    let back = Certificate::from_json(&json)?;
    let verdict = validate_certificate(&g, &back);
    println!(
        "{} bytes of JSON, validator passed: {}",
        json.len(),
        verdict.passed()
    );
    Ok(())
}
