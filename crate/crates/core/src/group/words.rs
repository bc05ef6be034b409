use super::{ElemSet, FiniteGroup, Subgroup};
use crate::error::{Error, Result};

/// Word lengths over a fixed set of elements, by breadth-first search from the identity.
#[derive(Clone, Debug)]
pub struct WordMetric {
    generators: Vec<usize>,
    lengths: Vec<Option<u32>>,
    // (previous element, index into `generators`) on one shortest word
    parent: Vec<Option<(u32, u32)>>,
    order_reached: Vec<usize>,
}

impl WordMetric {
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn length(&self, x: usize) -> Option<u32> {
        self.lengths[x]
    }

    pub fn lengths(&self) -> &[Option<u32>] {
        &self.lengths
    }

    /// Reached elements in nondecreasing length.
    pub fn reached(&self) -> &[usize] {
        &self.order_reached
    }

    pub fn reachable(&self) -> ElemSet {
        ElemSet::from_indices(self.lengths.len(), self.order_reached.iter().copied())
    }

    /// Largest finite word length.
    pub fn max_length(&self) -> u32 {
        self.order_reached
            .last()
            .and_then(|&x| self.lengths[x])
            .unwrap_or(0)
    }

    /// `X^k` for a set containing the identity: all elements of length at most `k`.
    pub fn ball(&self, k: u32) -> ElemSet {
        ElemSet::from_indices(
            self.lengths.len(),
            self.order_reached
                .iter()
                .copied()
                .filter(|&x| self.lengths[x].is_some_and(|l| l <= k)),
        )
    }

    /// One shortest factorization of `x` as a list of generator elements.
    pub fn word(&self, x: usize) -> Option<Vec<usize>> {
        self.lengths[x]?;
        let mut word = Vec::new();
        let mut cur = x;
        while let Some((prev, k)) = self.parent[cur] {
            word.push(self.generators[k as usize]);
            cur = prev as usize;
        }
        word.reverse();
        Some(word)
    }
}

/// Word metric over `x`, used exactly as given.
pub fn word_metric(g: &FiniteGroup, x: &[usize]) -> WordMetric {
    let n = g.order();
    let mut lengths = vec![None; n];
    let mut parent = vec![None; n];
    lengths[0] = Some(0);
    let mut order_reached = vec![0];
    let mut head = 0;
    while head < order_reached.len() {
        let y = order_reached[head];
        let ly = lengths[y].unwrap();
        for (k, &s) in x.iter().enumerate() {
            let z = g.mul(y, s);
            if lengths[z].is_none() {
                lengths[z] = Some(ly + 1);
                parent[z] = Some((y as u32, k as u32));
                order_reached.push(z);
            }
        }
        head += 1;
    }
    WordMetric {
        generators: x.to_vec(),
        lengths,
        parent,
        order_reached,
    }
}

/// `x` together with the inverses of its elements, deduplicated, in first-seen order.
pub fn symmetrize(g: &FiniteGroup, x: &[usize]) -> Vec<usize> {
    let mut seen = ElemSet::empty(g.order());
    let mut out = Vec::new();
    for &a in x {
        for b in [a, g.inv(a)] {
            if seen.insert(b) {
                out.push(b);
            }
        }
    }
    out
}

/// One shortest representative per right coset `D g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetReps {
    /// `(representative, word length)` in discovery order; the identity comes first.
    pub reps: Vec<(usize, u32)>,
}

impl CosetReps {
    pub fn elements(&self) -> Vec<usize> {
        self.reps.iter().map(|r| r.0).collect()
    }

    pub fn max_length(&self) -> u32 {
        self.reps.iter().map(|r| r.1).max().unwrap_or(0)
    }
}

/// Representatives of the right cosets of `d` in `G`, each of minimal word length over `x`.
pub fn short_coset_reps(g: &FiniteGroup, x: &[usize], d: &Subgroup) -> Result<CosetReps> {
    short_coset_reps_within(g, &Subgroup::whole(g), x, d)
}

/// As [`short_coset_reps`], inside the subgroup `within`, which `x` must generate.
pub fn short_coset_reps_within(
    g: &FiniteGroup,
    within: &Subgroup,
    x: &[usize],
    d: &Subgroup,
) -> Result<CosetReps> {
    if let Some(&bad) = x.iter().find(|&&a| !x.contains(&g.inv(a))) {
        return Err(Error::precondition(format!(
            "generating set is not symmetric: inverse of {bad} missing"
        )));
    }
    if !d.is_subgroup_of(within) {
        return Err(Error::precondition(
            "coset subgroup is not contained in the ambient subgroup",
        ));
    }
    let metric = word_metric(g, x);
    if metric.reached().len() != within.len()
        || !metric.reached().iter().all(|&y| within.contains(y))
    {
        return Err(Error::precondition(format!(
            "set generates a subgroup of order {}, not the ambient order {}",
            metric.reached().len(),
            within.len()
        )));
    }
    let mut covered = ElemSet::empty(g.order());
    let mut reps = Vec::new();
    for &y in metric.reached() {
        if covered.contains(y) {
            continue;
        }
        for k in d.iter() {
            covered.insert(g.mul(k, y));
        }
        reps.push((y, metric.length(y).unwrap()));
    }
    Ok(CosetReps { reps })
}
