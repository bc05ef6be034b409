use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::measure::centrality_floor;
use crate::ratio::Ratio;

use super::cert::{ids, ConverseBound, CyclicRecord, DerivedLn, GroupRef, Thm12Certificate};
use super::prop11::{check_epsilon, ensure, prop11_witness};
use super::prop13::prop13_witness;

fn require_central(g: &FiniteGroup, k: &Subgroup, eps: &Ratio) -> Result<(Ratio, usize)> {
    check_epsilon(eps)?;
    let (floor, witness) = centrality_floor(g, k);
    if floor < *eps {
        return Err(Error::precondition(format!(
            "K is not {eps}-central: Pr(<x>, G) = {floor} at element {witness}"
        )));
    }
    Ok((floor, witness))
}

/// Cyclic subgroups of `K`, each keyed by its smallest generator.
pub(crate) fn cyclic_subgroups_of(g: &FiniteGroup, k: &Subgroup) -> Vec<(usize, Subgroup)> {
    let mut seen = std::collections::HashSet::new();
    k.iter()
        .filter_map(|x| {
            let c = g.cyclic_subgroup(x);
            seen.insert(c.members().clone()).then_some((x, c))
        })
        .collect()
}

/// Derives `(l, n)` with `[G : C_G(x^l)] <= n` on `K` from `eps`-centrality.
pub fn derive_ln(g: &FiniteGroup, k: &Subgroup, eps: &Ratio) -> Result<DerivedLn> {
    require_central(g, k, eps)?;
    let mut records = Vec::new();
    let mut l = 1u64;
    for (x, c) in cyclic_subgroups_of(g, k) {
        let cert = prop11_witness(g, &c, eps)?;
        let l_x = (c.len() / cert.b.len()) as u64;
        l = l.lcm(&l_x);
        records.push(CyclicRecord {
            generator: x,
            cyclic: ids(&c),
            b: cert.b,
            l_x,
            index: 0,
        });
    }
    for rec in &mut records {
        rec.index = g.class_size(g.pow(rec.generator, l));
    }
    let n = records.iter().map(|r| r.index).max().unwrap_or(1) as u64;
    ensure(
        k.iter().all(|x| g.class_size(g.pow(x, l)) as u64 <= n),
        || "[G : C_G(x^l)] exceeds n".into(),
    )?;
    Ok(DerivedLn {
        threshold: eps.recip() * Ratio::from_int(2),
        epsilon: eps.clone(),
        l,
        n,
        per_element: records,
    })
}

/// The centrality bound recovered from a normal `T` and exponent `e`.
pub fn converse_epsilon(
    g: &FiniteGroup,
    k: &Subgroup,
    t: &Subgroup,
    e: u64,
) -> Result<ConverseBound> {
    g.require_normal(t)?;
    if e == 0 {
        return Err(Error::precondition("e must be positive"));
    }
    let s = g.order() / t.len();
    let k_e = g.power_subgroup(k, e);
    let m = g.commutator_subgroup(&k_e, t).len();
    let max_index = k
        .iter()
        .map(|x| g.class_size(g.pow(x, e)))
        .max()
        .unwrap_or(1);
    ensure(max_index <= m * s, || {
        format!("[G : C_G(g^e)] = {max_index} exceeds ms = {}", m * s)
    })?;
    let epsilon0 = Ratio::new(1, e * (m * s) as u64);
    let (floor, _) = centrality_floor(g, k);
    ensure(epsilon0 <= floor, || {
        format!("epsilon0 = {epsilon0} exceeds the centrality floor {floor}")
    })?;
    Ok(ConverseBound {
        e,
        s,
        m,
        max_index,
        epsilon0,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassBoundVerdict {
    pub floor: Ratio,
    pub bound: Ratio,
    pub holds: bool,
}

/// `centrality_floor(G, K) >= 1/(l n)` when `l`-th powers of `K` have classes of size at most `n`.
pub fn class_bound_centrality(
    g: &FiniteGroup,
    k: &Subgroup,
    l: u64,
    n: u64,
) -> Result<ClassBoundVerdict> {
    if l == 0 || n == 0 {
        return Err(Error::precondition("l and n must be positive"));
    }
    if let Some(x) = k.iter().find(|&x| g.class_size(g.pow(x, l)) as u64 > n) {
        return Err(Error::precondition(format!(
            "class of the l-th power of {x} exceeds n = {n}"
        )));
    }
    let (floor, _) = centrality_floor(g, k);
    let bound = Ratio::new(1, l * n);
    let holds = floor >= bound;
    ensure(holds, || {
        format!("centrality floor {floor} is below 1/(ln) = {bound}")
    })?;
    Ok(ClassBoundVerdict {
        floor,
        bound,
        holds,
    })
}

/// Runs prop13 on the `(l, n)` derived from `eps` and closes the loop with the converse bound.
pub fn thm12_witness(g: &FiniteGroup, k: &Subgroup, eps: &Ratio) -> Result<Thm12Certificate> {
    let (floor, floor_witness) = require_central(g, k, eps)?;
    let derived = derive_ln(g, k, eps)?;
    let inner = prop13_witness(g, k, derived.l, derived.n)?;
    let t = Subgroup::from_elements(g, inner.t.iter().copied())?;
    let converse = converse_epsilon(g, k, &t, inner.e)?;
    Ok(Thm12Certificate {
        group: GroupRef::of(g),
        k: ids(k),
        epsilon: eps.clone(),
        floor,
        floor_witness,
        derived,
        inner,
        converse,
    })
}
