use std::fmt;

use super::{ElemSet, FiniteGroup};
use crate::error::{Error, Result};

/// A subgroup stored by explicit membership, with a small generating list.
#[derive(Clone)]
pub struct Subgroup {
    members: ElemSet,
    elements: Vec<usize>,
    generators: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.members.hash(state)
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {}, {:?})", self.len(), self.elements)
    }
}

/// Breadth-first closure of `{identity}` under right multiplication by `gens`.
fn close(g: &FiniteGroup, gens: &[usize]) -> ElemSet {
    let mut members = ElemSet::empty(g.order());
    members.insert(0);
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        for &s in gens {
            let y = g.mul(x, s);
            if members.insert(y) {
                queue.push(y);
            }
        }
        head += 1;
    }
    members
}

impl Subgroup {
    /// Wraps a set already known to be closed, deriving generators greedily.
    pub(crate) fn from_closed_members(g: &FiniteGroup, members: ElemSet) -> Self {
        let mut generators = Vec::new();
        let mut span = ElemSet::from_indices(g.order(), [0]);
        for x in members.iter() {
            if !span.contains(x) {
                generators.push(x);
                span = close(g, &generators);
            }
        }
        debug_assert_eq!(span, members);
        let elements = members.to_vec();
        Subgroup {
            members,
            elements,
            generators,
        }
    }

    /// Checks closure and returns the subgroup formed by exactly `elements`.
    pub fn from_elements(
        g: &FiniteGroup,
        elements: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let mut members = ElemSet::empty(g.order());
        for x in elements {
            if x >= g.order() {
                return Err(Error::Usage(format!(
                    "element index {x} out of range for order {}",
                    g.order()
                )));
            }
            members.insert(x);
        }
        if !members.contains(0) {
            return Err(Error::Precondition(
                "set does not contain the identity".into(),
            ));
        }
        for a in members.iter() {
            if !members.contains(g.inv(a)) {
                return Err(Error::Precondition(format!(
                    "set is not closed under inverse at {a}"
                )));
            }
            for b in members.iter() {
                if !members.contains(g.mul(a, b)) {
                    return Err(Error::Precondition(format!(
                        "set is not closed: {a}*{b} missing"
                    )));
                }
            }
        }
        Ok(Self::from_closed_members(g, members))
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Subgroup {
            members: ElemSet::from_indices(g.order(), [0]),
            elements: vec![0],
            generators: vec![],
        }
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Subgroup {
            members: ElemSet::full(g.order()),
            elements: (0..g.order()).collect(),
            generators: g.generators().to_vec(),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    /// Sorted member indices.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.elements.iter().copied()
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    /// `[self : sub]`; `None` unless `sub` is contained in `self`.
    pub fn index_of(&self, sub: &Subgroup) -> Option<usize> {
        sub.is_subgroup_of(self).then(|| self.len() / sub.len())
    }
}

impl FiniteGroup {
    /// Smallest subgroup containing `seed`.
    pub fn subgroup_generated(&self, seed: impl IntoIterator<Item = usize>) -> Subgroup {
        let mut members = ElemSet::from_indices(self.order(), [0]);
        let mut generators = Vec::new();
        for x in seed {
            if !members.contains(x) {
                generators.push(x);
                members = close(self, &generators);
            }
        }
        let elements = members.to_vec();
        Subgroup {
            members,
            elements,
            generators,
        }
    }

    pub fn cyclic_subgroup(&self, x: usize) -> Subgroup {
        self.subgroup_generated([x])
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        Subgroup::from_closed_members(self, a.members.intersection(&b.members))
    }

    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        self.subgroup_generated(a.generators.iter().chain(b.generators.iter()).copied())
    }

    /// `C_within(xs)`: elements of `within` commuting with every element of `xs`.
    pub fn centralizer(&self, xs: &[usize], within: &Subgroup) -> Subgroup {
        let members = within
            .iter()
            .filter(|&h| xs.iter().all(|&x| self.commutes(x, h)));
        Subgroup::from_closed_members(self, ElemSet::from_indices(self.order(), members))
    }

    /// `C_G(x)` in the whole group.
    pub fn element_centralizer(&self, x: usize) -> Subgroup {
        let members = (0..self.order()).filter(|&h| self.commutes(x, h));
        Subgroup::from_closed_members(self, ElemSet::from_indices(self.order(), members))
    }

    /// `<[a, b] : a in A, b in B>` with `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut comms = ElemSet::empty(self.order());
        for x in a.iter() {
            for y in b.iter() {
                comms.insert(self.commutator(x, y));
            }
        }
        self.subgroup_generated(comms.iter())
    }

    /// `[H, x] = <[h, x] : h in H>`.
    pub fn commutator_with_element(&self, h: &Subgroup, x: usize) -> Subgroup {
        let comms = ElemSet::from_indices(self.order(), h.iter().map(|y| self.commutator(y, x)));
        self.subgroup_generated(comms.iter())
    }

    pub fn derived_subgroup(&self, h: &Subgroup) -> Subgroup {
        self.commutator_subgroup(h, h)
    }

    /// Returns the first `(member, conjugator, conjugate)` that leaves `h`, if any.
    pub fn normality_violation(&self, h: &Subgroup) -> Option<(usize, usize, usize)> {
        for &x in h.generators() {
            for &g in self.generators() {
                let c = self.conj(x, g);
                if !h.contains(c) {
                    return Some((x, g, c));
                }
            }
        }
        None
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.normality_violation(h).is_none()
    }

    pub fn require_normal(&self, h: &Subgroup) -> Result<()> {
        match self.normality_violation(h) {
            None => Ok(()),
            Some((member, by, conjugate)) => Err(Error::NotNormal {
                member,
                by,
                conjugate,
            }),
        }
    }

    /// Smallest normal subgroup containing `seed`.
    pub fn normal_closure(&self, seed: impl IntoIterator<Item = usize>) -> Subgroup {
        let mut n = self.subgroup_generated(seed);
        while let Some((_, _, c)) = self.normality_violation(&n) {
            n = self.subgroup_generated(n.generators().iter().copied().chain([c]));
        }
        n
    }

    /// Largest normal subgroup of the group inside `h`: the union of the
    /// conjugacy classes lying entirely in `h`.
    pub fn normal_core(&self, h: &Subgroup) -> Subgroup {
        let mut members = ElemSet::empty(self.order());
        for class in self.conjugacy().classes() {
            if class.iter().all(|&x| h.contains(x)) {
                for &x in class {
                    members.insert(x);
                }
            }
        }
        Subgroup::from_closed_members(self, members)
    }

    /// `<k^e : k in K>`.
    pub fn power_subgroup(&self, k: &Subgroup, e: u64) -> Subgroup {
        assert!(e >= 1, "exponent must be positive");
        let powers = ElemSet::from_indices(self.order(), k.iter().map(|x| self.pow(x, e)));
        self.subgroup_generated(powers.iter())
    }

    /// Conjugate subgroup `H^g`.
    pub fn conjugate_subgroup(&self, h: &Subgroup, g: usize) -> Subgroup {
        let members = ElemSet::from_indices(self.order(), h.iter().map(|x| self.conj(x, g)));
        Subgroup::from_closed_members(self, members)
    }

    /// All cyclic subgroups, each once, ordered by smallest generator index.
    pub fn cyclic_subgroups(&self) -> Vec<(usize, Subgroup)> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for x in 0..self.order() {
            let c = self.cyclic_subgroup(x);
            if seen.insert(c.members().clone()) {
                out.push((x, c));
            }
        }
        out
    }

    /// Every normal subgroup, as joins of normal closures of single classes.
    pub fn normal_subgroups(&self) -> Vec<Subgroup> {
        let closures: Vec<Subgroup> = {
            let mut seen = std::collections::HashSet::new();
            self.conjugacy()
                .classes()
                .iter()
                .map(|c| self.normal_closure([c[0]]))
                .filter(|n| seen.insert(n.members().clone()))
                .collect()
        };
        let mut all = vec![Subgroup::trivial(self)];
        let mut seen: std::collections::HashSet<ElemSet> =
            all.iter().map(|n| n.members().clone()).collect();
        let mut head = 0;
        while head < all.len() {
            for c in &closures {
                if c.is_subgroup_of(&all[head]) {
                    continue;
                }
                let j = self.join(&all[head], c);
                if seen.insert(j.members().clone()) {
                    all.push(j);
                }
            }
            head += 1;
        }
        all.sort_by_key(|n| (n.len(), n.elements().to_vec()));
        all
    }
}
