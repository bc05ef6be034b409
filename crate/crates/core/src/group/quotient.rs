use super::{ElemSet, FiniteGroup, Subgroup};
use crate::error::Result;

/// The projection `G -> G/N` together with the coset group.
///
/// Cosets are numbered by their smallest member, so the kernel is coset 0.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    kernel: Subgroup,
    target: FiniteGroup,
    projection: Vec<usize>,
    reps: Vec<usize>,
}

impl QuotientMap {
    pub fn new(g: &FiniteGroup, kernel: &Subgroup) -> Result<Self> {
        g.require_normal(kernel)?;
        let n = g.order();
        let mut projection = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if projection[x] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for k in kernel.iter() {
                projection[g.mul(x, k)] = id;
            }
        }
        let m = reps.len();
        let mut mult = vec![0u32; m * m];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                mult[i * m + j] = projection[g.mul(a, b)] as u32;
            }
        }
        let mut gens: Vec<usize> = g
            .generators()
            .iter()
            .map(|&x| projection[x])
            .filter(|&c| c != 0)
            .collect();
        let mut seen = std::collections::HashSet::new();
        gens.retain(|c| seen.insert(*c));
        let target = FiniteGroup::from_trusted_table(
            m,
            mult,
            Some(gens),
            None,
            format!("quotient({}; kernel order {})", g.source(), kernel.len()),
        );
        Ok(QuotientMap {
            kernel: kernel.clone(),
            target,
            projection,
            reps,
        })
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn projection(&self) -> &[usize] {
        &self.projection
    }

    pub fn project(&self, x: usize) -> usize {
        self.projection[x]
    }

    /// Smallest member of each coset.
    pub fn representatives(&self) -> &[usize] {
        &self.reps
    }

    pub fn image(&self, h: &Subgroup) -> Subgroup {
        let members =
            ElemSet::from_indices(self.target.order(), h.iter().map(|x| self.projection[x]));
        Subgroup::from_closed_members(&self.target, members)
    }

    pub fn image_set(&self, xs: &ElemSet) -> ElemSet {
        ElemSet::from_indices(self.target.order(), xs.iter().map(|x| self.projection[x]))
    }

    pub fn preimage(&self, g: &FiniteGroup, h: &Subgroup) -> Subgroup {
        let members = (0..g.order()).filter(|&x| h.contains(self.projection[x]));
        Subgroup::from_closed_members(g, ElemSet::from_indices(g.order(), members))
    }
}

impl FiniteGroup {
    pub fn quotient(&self, kernel: &Subgroup) -> Result<QuotientMap> {
        QuotientMap::new(self, kernel)
    }
}

#[cfg(test)]
mod tests {
    use super::super::testing::*;
    use super::*;
    use crate::error::Error;

    #[test]
    fn trivial_kernel_relabels_identically() {
        let g = s3();
        let q = g.quotient(&Subgroup::trivial(&g)).unwrap();
        assert_eq!(q.target().order(), 6);
        assert_eq!(q.projection(), &[0, 1, 2, 3, 4, 5]);
        assert_eq!(q.target().table(), g.table());
    }

    #[test]
    fn s3_mod_a3() {
        let g = s3();
        let a3 = g.cyclic_subgroup(el(&g, &[&[1, 2, 3]]));
        let q = g.quotient(&a3).unwrap();
        assert_eq!(q.target().order(), 2);
        assert_eq!(q.target().order() * a3.len(), g.order());
    }

    #[test]
    fn d8_mod_center_is_klein() {
        let g = d8();
        let q = g.quotient(&g.center()).unwrap();
        assert_eq!(q.target().order(), 4);
        assert!(q.target().conjugacy().class_sizes().iter().all(|&s| s == 1));
        assert_eq!(q.target().exponent(), 2);
    }

    #[test]
    fn projection_is_a_homomorphism() {
        let g = q8();
        for n in g.normal_subgroups() {
            let q = g.quotient(&n).unwrap();
            for a in 0..g.order() {
                for b in 0..g.order() {
                    assert_eq!(
                        q.project(g.mul(a, b)),
                        q.target().mul(q.project(a), q.project(b))
                    );
                }
            }
            assert_eq!(q.preimage(&g, &Subgroup::trivial(q.target())), n);
        }
    }

    #[test]
    fn rejects_non_normal_kernel() {
        let g = s3();
        let h = g.cyclic_subgroup(el(&g, &[&[1, 2]]));
        assert!(matches!(g.quotient(&h), Err(Error::NotNormal { .. })));
    }
}
