use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};

use super::theorem::cyclic_subgroups_of;

pub const ORACLE_MAX_ORDER: usize = 128;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleTriple {
    pub t: Vec<usize>,
    pub b: Vec<usize>,
    pub index_g_t: usize,
    pub index_k_b: usize,
    pub tb_order: usize,
}

impl OracleTriple {
    pub fn key(&self) -> (usize, usize, usize) {
        (self.index_g_t, self.index_k_b, self.tb_order)
    }

    fn dominates(&self, other: &OracleTriple) -> bool {
        let (a, b) = (self.key(), other.key());
        a.0 <= b.0 && a.1 <= b.1 && a.2 <= b.2 && a != b
    }
}

/// Pareto front of `([G:T], [K:B], |[T,B]|)` over normal `T` and cyclic-generated `B <= K`.
///
/// The `B` family is `K`, the trivial subgroup, and every cyclic subgroup of `K`.
/// Among triples with equal keys the first found is kept.
pub fn bruteforce_witness_oracle(g: &FiniteGroup, k: &Subgroup) -> Result<Vec<OracleTriple>> {
    if g.order() > ORACLE_MAX_ORDER {
        return Err(Error::SizeLimit {
            cap: ORACLE_MAX_ORDER,
        });
    }
    let mut family = vec![k.clone(), Subgroup::trivial(g)];
    family.extend(cyclic_subgroups_of(g, k).into_iter().map(|p| p.1));
    let mut seen = std::collections::HashSet::new();
    family.retain(|b| seen.insert(b.members().clone()));

    let mut all = Vec::new();
    for t in g.normal_subgroups() {
        for b in &family {
            all.push(OracleTriple {
                index_g_t: g.order() / t.len(),
                index_k_b: k.len() / b.len(),
                tb_order: g.commutator_subgroup(&t, b).len(),
                t: t.elements().to_vec(),
                b: b.elements().to_vec(),
            });
        }
    }
    let mut front: Vec<OracleTriple> = Vec::new();
    for cand in &all {
        if all.iter().any(|o| o.dominates(cand)) || front.iter().any(|f| f.key() == cand.key()) {
            continue;
        }
        front.push(cand.clone());
    }
    front.sort_by_key(|f| f.key());
    Ok(front)
}
