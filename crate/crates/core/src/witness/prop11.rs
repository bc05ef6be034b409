use crate::error::{Error, Result};
use crate::group::{bounded_class_set, FiniteGroup, Subgroup};
use crate::measure::pr;
use crate::ratio::Ratio;

use super::cert::{ids, set_ids, GroupRef, Prop11Certificate, QuotientRecord};
use super::eberhard::eberhard_generation_in;

pub(crate) fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::violation(msg()))
    }
}

pub(crate) fn check_epsilon(eps: &Ratio) -> Result<()> {
    if !eps.is_positive() || *eps > Ratio::one() {
        return Err(Error::precondition(format!(
            "epsilon must lie in (0, 1], got {eps}"
        )));
    }
    Ok(())
}

/// Largest `|y^conjugators|` over `y` in `s`.
pub(crate) fn max_class(g: &FiniteGroup, s: &Subgroup, conjugators: &Subgroup) -> usize {
    s.iter()
        .map(|y| g.orbit_size(y, conjugators))
        .max()
        .unwrap_or(1)
}

/// Runs the construction for `Pr(K, G) >= eps` and records every intermediate object.
pub fn prop11_witness(g: &FiniteGroup, k: &Subgroup, eps: &Ratio) -> Result<Prop11Certificate> {
    check_epsilon(eps)?;
    let pr_k_g = pr(g, k).value;
    if pr_k_g < *eps {
        return Err(Error::precondition(format!(
            "Pr(K, G) = {pr_k_g} is below epsilon = {eps}"
        )));
    }
    let threshold = eps.recip() * Ratio::from_int(2);
    let half = eps / &Ratio::from_int(2);
    let whole = Subgroup::whole(g);

    let x = bounded_class_set(g, k, &whole, &threshold);
    let nu_x = Ratio::new(x.len() as u64, k.len() as u64);
    ensure(nu_x >= half, || {
        format!("nu(X) = {nu_x} is below epsilon/2 = {half}")
    })?;
    let gen = eberhard_generation_in(g, k, &x)?;
    let b = gen.span;
    let index_k_b = k.len() / b.len();
    ensure(threshold.bounds(index_k_b as u64), || {
        format!("[K:B] = {index_k_b} exceeds 2/epsilon")
    })?;
    let max_class_b = max_class(g, &b, &whole);
    let class_cap = threshold.pow(3 * gen.r as u32);
    ensure(class_cap.bounds(max_class_b as u64), || {
        format!("class of size {max_class_b} in B exceeds (2/epsilon)^(3r) = {class_cap}")
    })?;

    let l = g.normal_closure(b.generators().iter().copied());
    let d = g.derived_subgroup(&l);
    let q = g.quotient(&d)?;
    let gb = q.target();
    let kb = q.image(k);
    let bb = q.image(&b);
    let pr_k_g_bar = pr(gb, &kb).value;
    ensure(pr_k_g_bar >= *eps, || {
        format!("Pr(K/D, G/D) = {pr_k_g_bar} is below epsilon")
    })?;

    let whole_bar = Subgroup::whole(gb);
    let y = bounded_class_set(gb, &whole_bar, &kb, &threshold);
    let mu_y = Ratio::new(y.len() as u64, gb.order() as u64);
    ensure(mu_y >= half, || {
        format!("mu(Y) = {mu_y} is below epsilon/2 = {half}")
    })?;
    let gen_y = eberhard_generation_in(gb, &whole_bar, &y)?;
    let e_bar = gen_y.span;
    let index_g_e_bar = gb.order() / e_bar.len();
    ensure(threshold.bounds(index_g_e_bar as u64), || {
        format!("[G/D : E] = {index_g_e_bar} exceeds 2/epsilon")
    })?;
    let max_class_e_bar = max_class(gb, &e_bar, &kb);
    let class_cap_y = threshold.pow(3 * gen_y.r as u32);
    ensure(class_cap_y.bounds(max_class_e_bar as u64), || {
        format!("K-class of size {max_class_e_bar} in E exceeds (2/epsilon)^(3r)")
    })?;

    let t_bar = gb.normal_core(&e_bar);
    let t = q.preimage(g, &t_bar);
    ensure(g.is_normal(&t), || "preimage T is not normal".into())?;
    let tb_bar = gb.commutator_subgroup(&t_bar, &bb);
    let tb = g.commutator_subgroup(&t, &b);
    ensure(tb.len() <= tb_bar.len() * d.len(), || {
        format!(
            "|[T,B]| = {} exceeds |[T,B] mod D| * |D| = {}",
            tb.len(),
            tb_bar.len() * d.len()
        )
    })?;

    Ok(Prop11Certificate {
        group: GroupRef::of(g),
        k: ids(k),
        epsilon: eps.clone(),
        threshold,
        pr_k_g,
        x: set_ids(&x),
        nu_x,
        b: ids(&b),
        r: gen.r,
        max_word_length: gen.minimal_k,
        index_k_b,
        max_class_b,
        l: ids(&l),
        d: ids(&d),
        quotient: QuotientRecord::of(&q),
        pr_k_g_bar,
        y: set_ids(&y),
        mu_y,
        r_y: gen_y.r,
        max_word_length_y: gen_y.minimal_k,
        e_bar: ids(&e_bar),
        index_g_e_bar,
        max_class_e_bar,
        index_g_t: g.order() / t.len(),
        t_bar: ids(&t_bar),
        t: ids(&t),
        tb_bar_order: tb_bar.len(),
        tb_bar: ids(&tb_bar),
        tb_order: tb.len(),
        tb: ids(&tb),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::testing::*;

    #[test]
    fn abelian_is_trivial() {
        let g = cyclic(6);
        let k = Subgroup::whole(&g);
        let c = prop11_witness(&g, &k, &Ratio::one()).unwrap();
        assert_eq!(c.x.len(), 6);
        assert_eq!(c.b.len(), 6);
        assert_eq!(c.d.len(), 1);
        assert_eq!(c.t.len(), 6);
        assert_eq!(c.tb_order, 1);
    }

    #[test]
    fn s3_half() {
        let g = s3();
        let k = Subgroup::whole(&g);
        let c = prop11_witness(&g, &k, &Ratio::new(1, 2)).unwrap();
        assert_eq!(c.x.len(), 6);
        assert_eq!(c.b.len(), 6);
        assert_eq!(c.d.len(), 3);
        assert_eq!(c.quotient.target.order, 2);
        assert_eq!(c.t.len(), 6);
        assert_eq!(c.tb_order, 3);
    }

    #[test]
    fn d8_center() {
        let g = d8();
        let z = g.center();
        let c = prop11_witness(&g, &z, &Ratio::one()).unwrap();
        assert_eq!(c.x, z.elements());
        assert_eq!(c.b, z.elements());
        assert_eq!(c.d.len(), 1);
        assert_eq!(c.y.len(), 8);
        assert_eq!(c.t.len(), 8);
        assert_eq!(c.tb_order, 1);
    }

    #[test]
    fn below_epsilon_is_precondition() {
        let g = s3();
        let err = prop11_witness(&g, &Subgroup::whole(&g), &Ratio::new(2, 3)).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
        assert!(matches!(
            prop11_witness(&g, &Subgroup::whole(&g), &Ratio::zero()),
            Err(Error::Precondition(_))
        ));
    }
}
