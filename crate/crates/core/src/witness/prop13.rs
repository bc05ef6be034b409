use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::group::{short_coset_reps_within, ElemSet, FiniteGroup, Subgroup};
use crate::measure::pr;
use crate::ratio::Ratio;

use super::cert::{
    ids, set_ids, CosetRep, GroupRef, MainStage, Prop13Certificate, QuotientRecord, Stage,
    StageBranch,
};
use super::prop11::{ensure, prop11_witness};

/// `l mod exponent`, with zero mapped to the exponent.
pub fn reduce_exponent(l: u64, exponent: u64) -> u64 {
    match l % exponent {
        0 => exponent,
        r => r,
    }
}

/// Union of the conjugacy classes of `{k^l : k in K}`.
pub fn power_class_union(g: &FiniteGroup, k: &Subgroup, l: u64) -> ElemSet {
    let mut out = ElemSet::empty(g.order());
    let mut seen = vec![false; g.conjugacy().classes().len()];
    for x in k.iter() {
        let c = g.conjugacy().class_index(g.pow(x, l));
        if !std::mem::replace(&mut seen[c], true) {
            for &y in &g.conjugacy().classes()[c] {
                out.insert(y);
            }
        }
    }
    out
}

/// `[H : C_H(y)]`.
pub fn index_in(g: &FiniteGroup, h: &Subgroup, y: usize) -> usize {
    h.len() / g.centralizer(&[y], h).len()
}

/// Largest `[H : C_H(x)]` over `x` in `xs`.
pub fn max_index_in(g: &FiniteGroup, h: &Subgroup, xs: &ElemSet) -> usize {
    xs.iter().map(|x| index_in(g, h, x)).max().unwrap_or(1)
}

/// Smallest divisor `d` of the exponent with `K^d <= V`.
pub fn minimal_exponent(g: &FiniteGroup, k: &Subgroup, v: &Subgroup) -> u64 {
    let exp = g.exponent();
    (1..=exp)
        .filter(|d| exp.is_multiple_of(*d))
        .find(|&d| k.iter().all(|x| v.contains(g.pow(x, d))))
        .expect("K^exponent is trivial")
}

/// Largest `|[H, x]|` over `x` in `X`, asserting each lies in `[H, H]`.
fn commutator_orders(g: &FiniteGroup, h: &Subgroup, x: &ElemSet) -> Result<usize> {
    let hh = g.derived_subgroup(h);
    let mut seen = vec![false; g.conjugacy().classes().len()];
    let mut max = 1;
    for y in x.iter() {
        // conjugate elements give conjugate subgroups inside the normal [H, H]
        if std::mem::replace(&mut seen[g.conjugacy().class_index(y)], true) {
            continue;
        }
        let hy = g.commutator_with_element(h, y);
        ensure(hy.is_subgroup_of(&hh), || {
            format!("[H, {y}] is not contained in [H, H]")
        })?;
        max = max.max(hy.len());
    }
    Ok(max)
}

/// `[H, y] <= R` for every `y`, checked on generators of `H`.
pub(crate) fn commutators_inside(
    g: &FiniteGroup,
    h: &Subgroup,
    ys: impl IntoIterator<Item = usize>,
    r: &Subgroup,
) -> bool {
    ys.into_iter().all(|y| {
        h.generators()
            .iter()
            .all(|&s| r.contains(g.commutator(s, y)))
    })
}

/// Runs the construction for `[G : C_G(g^l)] <= n` on `K`.
pub fn prop13_witness(g: &FiniteGroup, k: &Subgroup, l: u64, n: u64) -> Result<Prop13Certificate> {
    if l == 0 || n == 0 {
        return Err(Error::precondition("l and n must be positive"));
    }
    if let Some(x) = k.iter().find(|&x| g.class_size(g.pow(x, l)) as u64 > n) {
        return Err(Error::precondition(format!(
            "[G : C_G(g^l)] = {} exceeds n = {n} at element {x}",
            g.class_size(g.pow(x, l))
        )));
    }
    let exp = g.exponent();
    let inv_n = Ratio::new(1, n);
    let mut cur = reduce_exponent(l, exp);
    let mut stages = Vec::new();
    let mut prev_m: Option<usize> = None;
    let (t, v) = loop {
        let x = power_class_union(g, k, cur);
        let h = g.subgroup_generated(x.iter());
        let m = max_index_in(g, &h, &x);
        ensure(m as u64 <= n, || format!("m = {m} exceeds n = {n}"))?;
        if let Some(pm) = prev_m {
            ensure(m < pm, || format!("m did not decrease: {pm} then {m}"))?;
        }
        let max_commutator_order = commutator_orders(g, &h, &x)?;
        let stage = |branch| Stage {
            l: cur,
            x: set_ids(&x),
            h: ids(&h),
            m,
            max_commutator_order,
            branch,
        };

        if m == 1 {
            let j = g.power_subgroup(&g.power_subgroup(k, cur), cur);
            let pj = pr(g, &j).value;
            ensure(pj >= inv_n, || format!("Pr(J, G) = {pj} is below 1/n"))?;
            let inner = prop11_witness(g, &j, &inv_n)?;
            let t = Subgroup::from_elements(g, inner.t.iter().copied())?;
            let b = Subgroup::from_elements(g, inner.b.iter().copied())?;
            stages.push(stage(StageBranch::Abelian {
                j: ids(&j),
                inner: Box::new(inner),
            }));
            break (t, b);
        }

        let l2 = reduce_exponent(cur * cur, exp);
        let idx: Vec<usize> = k.iter().map(|y| index_in(g, &h, g.pow(y, l2))).collect();
        if idx.iter().all(|&i| i < m) {
            stages.push(stage(StageBranch::Descent { next_l: l2 }));
            prev_m = Some(m);
            cur = l2;
            continue;
        }

        let pos = idx.iter().position(|&i| i == m).ok_or_else(|| {
            Error::violation(format!("no element of K reaches [H : C_H(d^(l^2))] = {m}"))
        })?;
        let d = k.elements()[pos];
        let a = g.pow(d, cur);
        let ch_a = g.centralizer(&[a], &h);
        ensure(h.len() / ch_a.len() == m, || {
            format!("[H : C_H(a)] differs from m = {m}")
        })?;
        let x_list = x.to_vec();
        let reps = short_coset_reps_within(g, &h, &x_list, &ch_a)?;
        ensure(reps.reps.len() == m, || "coset count differs from m".into())?;
        ensure((reps.max_length() as usize) < m, || {
            format!(
                "coset representative of length {} exceeds m - 1",
                reps.max_length()
            )
        })?;
        let whole = Subgroup::whole(g);
        let u = g.centralizer(&reps.elements(), &whole);
        let index_g_u = g.order() / u.len();
        let u_cap = BigUint::from(n).pow(((m - 1) * m) as u32);
        ensure(BigUint::from(index_g_u) <= u_cap, || {
            format!("[G:U] = {index_g_u} exceeds n^((m-1)m)")
        })?;

        let h_a = g.commutator_with_element(&h, a);
        let mut lemma43_checked = 0;
        for y in u.iter().filter(|&y| x.contains(g.mul(y, a))) {
            ensure(h.iter().all(|s| h_a.contains(g.commutator(s, y))), || {
                format!("[H, {y}] is not contained in [H, a]")
            })?;
            lemma43_checked += 1;
        }
        let r = g.normal_closure(h_a.generators().iter().copied());
        let a_inv = g.inv(a);
        let a_inv_l = g.pow(a_inv, cur);
        let y1 = x
            .iter()
            .map(|z| g.mul(z, a_inv_l))
            .filter(|&y| u.contains(y));
        let y2 = x.iter().map(|z| g.mul(z, a_inv)).filter(|&y| u.contains(y));
        ensure(commutators_inside(g, &h, y1.chain(y2), &r), || {
            "[H, Y] is not contained in R".into()
        })?;

        let u0 = g.normal_core(&u);
        let u0a: Vec<usize> = u0
            .generators()
            .iter()
            .map(|&y| g.commutator(y, a))
            .collect();
        ensure(commutators_inside(g, &h, u0a, &r), || {
            "[U0, a] does not centralize H modulo R".into()
        })?;
        let k0 = g.intersection(k, &u0);

        let q = g.quotient(&r)?;
        let gb = q.target();
        let hb = q.image(&h);
        let z_hb = gb.centralizer(hb.elements(), &hb);
        ensure(
            k0.iter().all(|y| z_hb.contains(gb.pow(q.project(y), cur))),
            || "l-th power of an element of K0 is not central in H modulo R".into(),
        )?;
        let j_bar = gb.power_subgroup(&q.image(&k0), l2);
        let pj = pr(gb, &j_bar).value;
        ensure(pj >= inv_n, || format!("Pr(J, G/R) = {pj} is below 1/n"))?;
        let inner = prop11_witness(gb, &j_bar, &inv_n)?;
        let t_bar = Subgroup::from_elements(gb, inner.t.iter().copied())?;
        let v_bar = Subgroup::from_elements(gb, inner.b.iter().copied())?;
        let t = q.preimage(g, &t_bar);
        let v = g.intersection(&q.preimage(g, &v_bar), &g.power_subgroup(&k0, l2));
        stages.push(stage(StageBranch::Main(Box::new(MainStage {
            d,
            a,
            reps: reps
                .reps
                .iter()
                .map(|&(element, length)| CosetRep { element, length })
                .collect(),
            index_g_u,
            u: ids(&u),
            lemma43_checked,
            h_a: ids(&h_a),
            r: ids(&r),
            quotient: QuotientRecord::of(&q),
            u0: ids(&u0),
            k0: ids(&k0),
            j_bar: ids(&j_bar),
            inner,
        }))));
        break (t, v);
    };

    ensure(g.is_normal(&t), || "T is not normal".into())?;
    let e = minimal_exponent(g, k, &v);
    let k_e = g.power_subgroup(k, e);
    let ket = g.commutator_subgroup(&k_e, &t);
    Ok(Prop13Certificate {
        group: GroupRef::of(g),
        k: ids(k),
        l,
        n,
        stages,
        e,
        index_g_t: g.order() / t.len(),
        t: ids(&t),
        v: ids(&v),
        k_e: ids(&k_e),
        ket_order: ket.len(),
        ket: ids(&ket),
    })
}
