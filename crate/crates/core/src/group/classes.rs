use super::{ElemSet, FiniteGroup, Subgroup};
use crate::ratio::Ratio;

/// Conjugacy classes of a group, computed once at construction.
#[derive(Clone, Debug, Default)]
pub struct ConjugacyData {
    class_of: Vec<u32>,
    classes: Vec<Vec<usize>>,
}

impl ConjugacyData {
    pub(crate) fn compute(g: &FiniteGroup) -> Self {
        let n = g.order();
        let mut class_of = vec![u32::MAX; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if class_of[x] != u32::MAX {
                continue;
            }
            let id = classes.len() as u32;
            let orbit = orbit_under(g, x, g.generators());
            for &y in &orbit {
                class_of[y] = id;
            }
            let mut orbit = orbit;
            orbit.sort_unstable();
            classes.push(orbit);
        }
        ConjugacyData { class_of, classes }
    }

    /// Classes ordered by their smallest member; members sorted.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_index(&self, x: usize) -> usize {
        self.class_of[x] as usize
    }

    pub fn class_of(&self, x: usize) -> &[usize] {
        &self.classes[self.class_of[x] as usize]
    }

    pub fn class_size(&self, x: usize) -> usize {
        self.class_of(x).len()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

/// Orbit of `x` under conjugation by the group generated by `gens`.
pub(crate) fn orbit_under(g: &FiniteGroup, x: usize, gens: &[usize]) -> Vec<usize> {
    let mut seen = ElemSet::empty(g.order());
    seen.insert(x);
    let mut orbit = vec![x];
    let mut head = 0;
    while head < orbit.len() {
        let y = orbit[head];
        for &s in gens {
            let z = g.conj(y, s);
            if seen.insert(z) {
                orbit.push(z);
            }
        }
        head += 1;
    }
    orbit
}

impl FiniteGroup {
    /// Size of `x^S`, the orbit of `x` under conjugation by the subgroup `S`.
    pub fn orbit_size(&self, x: usize, conjugators: &Subgroup) -> usize {
        if conjugators.len() == self.order() {
            return self.class_size(x);
        }
        orbit_under(self, x, conjugators.generators()).len()
    }

    pub fn center(&self) -> Subgroup {
        let members = (0..self.order()).filter(|&x| self.class_size(x) == 1);
        Subgroup::from_closed_members(self, ElemSet::from_indices(self.order(), members))
    }
}

/// `{ x in domain : |x^conjugators| <= bound }`, compared exactly.
pub fn bounded_class_set(
    g: &FiniteGroup,
    domain: &Subgroup,
    conjugators: &Subgroup,
    bound: &Ratio,
) -> ElemSet {
    ElemSet::from_indices(
        g.order(),
        domain
            .iter()
            .filter(|&x| bound.bounds(g.orbit_size(x, conjugators) as u64)),
    )
}
