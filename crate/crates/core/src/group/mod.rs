//! Finite groups stored as full Cayley tables.
//!
//! Element `0` is always the identity. Groups built from generators number
//! their elements breadth-first from the identity, extending by the
//! generators in the order given, so indices are reproducible.

mod classes;
mod quotient;
mod set;
mod subgroup;
mod words;

use std::collections::HashMap;
use std::hash::Hash;

use sha2::{Digest, Sha256};

pub use classes::{bounded_class_set, ConjugacyData};
pub use quotient::QuotientMap;
pub use set::ElemSet;
pub use subgroup::Subgroup;
pub use words::{
    short_coset_reps, short_coset_reps_within, symmetrize, word_metric, CosetReps, WordMetric,
};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default cap on the number of elements of an enumerated group.
pub const DEFAULT_ORDER_CAP: usize = 2000;

#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    mult: Vec<u32>,
    inv: Vec<u32>,
    elem_orders: Vec<u32>,
    generators: Vec<usize>,
    labels: Option<Vec<Permutation>>,
    classes: ConjugacyData,
    source: String,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("source", &self.source)
            .field("order", &self.order)
            .field("generators", &self.generators)
            .finish()
    }
}

/// Breadth-first closure of `gens` under right multiplication.
///
/// Returns the elements in discovery order and, for each element, the index
/// of `element * gens[k]` for every `k`.
fn closure_by_right_action<T: Clone + Eq + Hash>(
    identity: T,
    gens: &[T],
    mul: impl Fn(&T, &T) -> T,
    cap: usize,
) -> Result<(Vec<T>, Vec<Vec<u32>>, Vec<(usize, usize)>)> {
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<T, usize> = HashMap::from([(identity, 0)]);
    let mut right: Vec<Vec<u32>> = Vec::new();
    // (predecessor, generator) that first reached each element
    let mut parent = vec![(0usize, usize::MAX)];
    let mut head = 0;
    while head < elements.len() {
        let mut row = Vec::with_capacity(gens.len());
        for (k, g) in gens.iter().enumerate() {
            let p = mul(&elements[head], g);
            let idx = match index.get(&p) {
                Some(&i) => i,
                None => {
                    if elements.len() >= cap {
                        return Err(Error::SizeLimit { cap });
                    }
                    let i = elements.len();
                    index.insert(p.clone(), i);
                    elements.push(p);
                    parent.push((head, k));
                    i
                }
            };
            row.push(idx as u32);
        }
        right.push(row);
        head += 1;
    }
    Ok((elements, right, parent))
}

/// Multiplication table from the right-action data of a breadth-first closure.
fn table_from_closure(right: &[Vec<u32>], parent: &[(usize, usize)]) -> Vec<u32> {
    let n = right.len();
    let mut mult = vec![0u32; n * n];
    for i in 0..n {
        mult[i * n] = i as u32;
        for j in 1..n {
            let (p, k) = parent[j];
            let ip = mult[i * n + p] as usize;
            mult[i * n + j] = right[ip][k];
        }
    }
    mult
}

impl FiniteGroup {
    /// Wraps a table already known to satisfy the group axioms.
    pub(crate) fn from_trusted_table(
        order: usize,
        mult: Vec<u32>,
        generators: Option<Vec<usize>>,
        labels: Option<Vec<Permutation>>,
        source: String,
    ) -> Self {
        let n = order;
        let mut inv = vec![0u32; n];
        for a in 0..n {
            let row = &mult[a * n..(a + 1) * n];
            inv[a] = row
                .iter()
                .position(|&x| x == 0)
                .expect("every element has an inverse") as u32;
        }
        let mut elem_orders = vec![1u32; n];
        for (a, slot) in elem_orders.iter_mut().enumerate() {
            let mut x = a;
            let mut k = 1;
            while x != 0 {
                x = mult[x * n + a] as usize;
                k += 1;
            }
            *slot = k;
        }
        let mut group = FiniteGroup {
            order,
            mult,
            inv,
            elem_orders,
            generators: Vec::new(),
            labels,
            classes: ConjugacyData::default(),
            source,
        };
        group.generators = match generators {
            Some(g) => g,
            None => group.greedy_generators(),
        };
        group.classes = ConjugacyData::compute(&group);
        group
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut span = Subgroup::trivial(self);
        let mut gens = Vec::new();
        for x in 0..self.order {
            if !span.contains(x) {
                gens.push(x);
                span = self.subgroup_generated(gens.iter().copied());
            }
        }
        gens
    }

    /// Closes a list of permutations on `degree` points into a Cayley-table group.
    pub fn close_generators(degree: usize, perms: &[Permutation], cap: usize) -> Result<Self> {
        let gens: Vec<Permutation> = perms.iter().map(|p| p.extended(degree)).collect();
        if let Some(p) = perms.iter().find(|p| p.degree() > degree) {
            return Err(Error::Usage(format!(
                "permutation {p} moves points beyond degree {degree}"
            )));
        }
        let (elements, right, parent) = closure_by_right_action(
            Permutation::identity(degree),
            &gens,
            |a, b| a.then(b),
            cap.max(1),
        )?;
        let mult = table_from_closure(&right, &parent);
        let mut generators: Vec<usize> = right
            .first()
            .map(|r| r.iter().map(|&i| i as usize).collect())
            .unwrap_or_default();
        generators.retain(|&g| g != 0);
        dedup_keep_order(&mut generators);
        Ok(Self::from_trusted_table(
            elements.len(),
            mult,
            Some(generators),
            Some(elements),
            "perm".to_string(),
        ))
    }

    /// Checks a raw multiplication table against the group axioms.
    ///
    /// Identity must be element 0. Associativity is checked over all triples.
    pub fn validate_table(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Validation("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Validation(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some((j, &v)) = row.iter().enumerate().find(|(_, &v)| v >= n) {
                return Err(Error::Validation(format!(
                    "entry ({i}, {j}) = {v} is out of range"
                )));
            }
        }
        for a in 0..n {
            if table[0][a] != a {
                return Err(Error::Validation(format!(
                    "element 0 is not an identity: 0*{a} = {}",
                    table[0][a]
                )));
            }
            if table[a][0] != a {
                return Err(Error::Validation(format!(
                    "element 0 is not an identity: {a}*0 = {}",
                    table[a][0]
                )));
            }
        }
        for a in 0..n {
            let Some(b) = table[a].iter().position(|&x| x == 0) else {
                return Err(Error::Validation(format!("element {a} has no inverse")));
            };
            if table[b][a] != 0 {
                return Err(Error::Validation(format!(
                    "element {a} has no two-sided inverse"
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::Validation(format!(
                            "associativity fails for ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let mult = table
            .iter()
            .flat_map(|r| r.iter().map(|&v| v as u32))
            .collect();
        Ok(Self::from_trusted_table(
            n,
            mult,
            None,
            None,
            "table".to_string(),
        ))
    }

    /// Direct product with breadth-first numbering from the factors' generators.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup, cap: usize) -> Result<Self> {
        let mut gens: Vec<(usize, usize)> = a.generators.iter().map(|&g| (g, 0)).collect();
        gens.extend(b.generators.iter().map(|&h| (0, h)));
        let (elements, right, parent) = closure_by_right_action(
            (0usize, 0usize),
            &gens,
            |x, y| (a.mul(x.0, y.0), b.mul(x.1, y.1)),
            cap,
        )?;
        let mult = table_from_closure(&right, &parent);
        let labels = match (&a.labels, &b.labels) {
            (Some(la), Some(lb)) => Some(
                elements
                    .iter()
                    .map(|&(x, y)| la[x].disjoint_sum(&lb[y]))
                    .collect(),
            ),
            _ => None,
        };
        let mut generators: Vec<usize> = right
            .first()
            .map(|r| r.iter().map(|&i| i as usize).collect())
            .unwrap_or_default();
        generators.retain(|&g| g != 0);
        dedup_keep_order(&mut generators);
        Ok(Self::from_trusted_table(
            elements.len(),
            mult,
            Some(generators),
            labels,
            format!("direct_product({},{})", a.source, b.source),
        ))
    }

    pub fn with_source(mut self, source: impl Into<String>) -> Self {
        self.source = source.into();
        self
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn labels(&self) -> Option<&[Permutation]> {
        self.labels.as_deref()
    }

    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].to_string(),
            None => x.to_string(),
        }
    }

    /// Index of the element carrying the given permutation label.
    pub fn find_label(&self, p: &Permutation) -> Option<usize> {
        let labels = self.labels.as_ref()?;
        let degree = labels.first().map_or(0, |l| l.degree());
        if p.degree() > degree {
            return None;
        }
        let p = p.extended(degree);
        labels.iter().position(|l| *l == p)
    }

    pub fn table_row(&self, a: usize) -> &[u32] {
        &self.mult[a * self.order..(a + 1) * self.order]
    }

    /// The table as nested rows.
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| self.table_row(a).iter().map(|&v| v as usize).collect())
            .collect()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn element_order(&self, a: usize) -> u64 {
        self.elem_orders[a] as u64
    }

    /// `a^e`, with `e` reduced modulo the order of `a` first.
    pub fn pow(&self, a: usize, e: u64) -> usize {
        let mut e = e % self.element_order(a);
        let mut base = a;
        let mut acc = 0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `g^-1 x g`.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|&a| self.generators.iter().all(|&b| self.commutes(a, b)))
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        self.elem_orders
            .iter()
            .fold(1u64, |acc, &o| num_integer::lcm(acc, o as u64))
    }

    pub fn conjugacy(&self) -> &ConjugacyData {
        &self.classes
    }

    pub fn class_size(&self, x: usize) -> usize {
        self.classes.class_size(x)
    }

    pub fn centralizer_size(&self, x: usize) -> usize {
        self.order / self.classes.class_size(x)
    }

    /// SHA-256 over the order and the little-endian table entries.
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update((self.order as u64).to_le_bytes());
        for &v in &self.mult {
            hasher.update(v.to_le_bytes());
        }
        hex::encode(hasher.finalize())
    }

    /// Checks that `mult` really is a group operation (used by tests and readers).
    pub fn check_axioms(&self) -> Result<()> {
        Self::validate_table(&self.table()).map(|_| ())
    }
}

fn dedup_keep_order(v: &mut Vec<usize>) {
    let mut seen = std::collections::HashSet::new();
    v.retain(|x| seen.insert(*x));
}

#[cfg(test)]
pub(crate) mod testing {
    use super::*;

    pub fn perm(degree: usize, cycles: &[&[usize]]) -> Permutation {
        let cycles: Vec<Vec<usize>> = cycles
            .iter()
            .map(|c| c.iter().map(|&p| p - 1).collect())
            .collect();
        Permutation::from_cycles(degree, &cycles).unwrap()
    }

    pub fn s3() -> FiniteGroup {
        FiniteGroup::close_generators(3, &[perm(3, &[&[1, 2]]), perm(3, &[&[1, 2, 3]])], 100)
            .unwrap()
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        let cycle: Vec<usize> = (1..=n).collect();
        let gens = if n > 1 {
            vec![perm(n, &[&cycle])]
        } else {
            vec![]
        };
        FiniteGroup::close_generators(n, &gens, 100).unwrap()
    }

    pub fn d8() -> FiniteGroup {
        FiniteGroup::close_generators(4, &[perm(4, &[&[1, 2, 3, 4]]), perm(4, &[&[2, 4]])], 100)
            .unwrap()
    }

    pub fn q8() -> FiniteGroup {
        // regular representation of <i, j>
        let i = perm(8, &[&[1, 2, 3, 4], &[5, 6, 7, 8]]);
        let j = perm(8, &[&[1, 5, 3, 7], &[2, 8, 4, 6]]);
        FiniteGroup::close_generators(8, &[i, j], 100).unwrap()
    }

    pub fn el(g: &FiniteGroup, cycles: &[&[usize]]) -> usize {
        let degree = g.labels().unwrap()[0].degree();
        g.find_label(&perm(degree, cycles)).unwrap()
    }
}
