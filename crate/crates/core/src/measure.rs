//! Exact uniform-measure computations on finite groups.
//!
//! `Pr(K, G)` is the fraction of pairs in `K x G` that commute, which equals
//! `sum_{x in K} |C_G(x)| / (|K| |G|)`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{ElemSet, FiniteGroup, Subgroup};
use crate::ratio::Ratio;

/// Default cap on `|K| * |G|` for pair counting.
pub const DEFAULT_PAIR_CAP: usize = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrMethod {
    ClassFormula,
    BruteForce,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrReport {
    pub value: Ratio,
    pub method: PrMethod,
    pub k_size: usize,
    pub g_size: usize,
}

/// `|A| / |G|`.
pub fn subset_measure(g: &FiniteGroup, a: &ElemSet) -> Ratio {
    Ratio::new(a.len() as u64, g.order() as u64)
}

/// `Pr(K, G)` from centralizer sizes.
pub fn pr(g: &FiniteGroup, k: &Subgroup) -> PrReport {
    let total: u64 = k.iter().map(|x| g.centralizer_size(x) as u64).sum();
    PrReport {
        value: Ratio::new(total, (k.len() * g.order()) as u64),
        method: PrMethod::ClassFormula,
        k_size: k.len(),
        g_size: g.order(),
    }
}

/// `Pr(H, K)` for subgroups `H <= K` of `g`, counting `|C_K(x)|` directly.
pub fn pr_relative(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> PrReport {
    if k.len() == g.order() {
        return pr(g, h);
    }
    let total: u64 = h
        .iter()
        .map(|x| k.iter().filter(|&y| g.commutes(x, y)).count() as u64)
        .sum();
    PrReport {
        value: Ratio::new(total, (h.len() * k.len()) as u64),
        method: PrMethod::ClassFormula,
        k_size: h.len(),
        g_size: k.len(),
    }
}

/// `Pr(K, G)` by counting commuting pairs.
pub fn pr_bruteforce(g: &FiniteGroup, k: &Subgroup, pair_cap: usize) -> Result<PrReport> {
    let pairs = k.len() * g.order();
    if pairs > pair_cap {
        return Err(Error::SizeLimit { cap: pair_cap });
    }
    let count = k
        .iter()
        .map(|x| (0..g.order()).filter(|&y| g.commutes(x, y)).count() as u64)
        .sum::<u64>();
    Ok(PrReport {
        value: Ratio::new(count, pairs as u64),
        method: PrMethod::BruteForce,
        k_size: k.len(),
        g_size: g.order(),
    })
}

/// `Pr(<x>, G)`.
pub fn cyclic_pr(g: &FiniteGroup, x: usize) -> Ratio {
    pr(g, &g.cyclic_subgroup(x)).value
}

/// `min_{x in K} Pr(<x>, G)` and the smallest element attaining it.
///
/// `K` is `eps`-central exactly when `eps` is at most this value.
pub fn centrality_floor(g: &FiniteGroup, k: &Subgroup) -> (Ratio, usize) {
    let mut cache: HashMap<ElemSet, Ratio> = HashMap::new();
    let mut best: Option<(Ratio, usize)> = None;
    for x in k.iter() {
        let c = g.cyclic_subgroup(x);
        let value = cache
            .entry(c.members().clone())
            .or_insert_with(|| pr(g, &c).value)
            .clone();
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, x));
        }
    }
    best.expect("subgroups are non-empty")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotonicityVerdict {
    pub pr_k_g: Ratio,
    pub pr_h_g: Ratio,
    pub pr_h_k: Ratio,
}

/// Checks `Pr(K, G) <= Pr(H, G) <= Pr(H, K)` for `H <= K`.
pub fn check_monotonicity(
    g: &FiniteGroup,
    h: &Subgroup,
    k: &Subgroup,
) -> Result<MonotonicityVerdict> {
    if !h.is_subgroup_of(k) {
        return Err(Error::precondition("H is not contained in K"));
    }
    let v = MonotonicityVerdict {
        pr_k_g: pr(g, k).value,
        pr_h_g: pr(g, h).value,
        pr_h_k: pr_relative(g, h, k).value,
    };
    if !(v.pr_k_g <= v.pr_h_g && v.pr_h_g <= v.pr_h_k) {
        return Err(Error::violation(format!(
            "monotonicity chain broken: Pr(K,G) = {}, Pr(H,G) = {}, Pr(H,K) = {}",
            v.pr_k_g, v.pr_h_g, v.pr_h_k
        )));
    }
    Ok(v)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientVerdict {
    pub pr_k_g: Ratio,
    pub pr_image: Ratio,
    pub pr_meet: Ratio,
}

impl QuotientVerdict {
    pub fn product(&self) -> Ratio {
        &self.pr_image * &self.pr_meet
    }
}

/// Checks `Pr(K, G) <= Pr(KN/N, G/N) * Pr(K meet N, N)` for normal `N`.
pub fn check_quotient_inequality(
    g: &FiniteGroup,
    n: &Subgroup,
    k: &Subgroup,
) -> Result<QuotientVerdict> {
    let q = g.quotient(n)?;
    let image = q.image(k);
    let meet = g.intersection(k, n);
    let v = QuotientVerdict {
        pr_k_g: pr(g, k).value,
        pr_image: pr(q.target(), &image).value,
        pr_meet: pr_relative(g, &meet, n).value,
    };
    if v.pr_k_g > v.product() {
        return Err(Error::violation(format!(
            "quotient inequality broken: Pr(K,G) = {} > {} * {}",
            v.pr_k_g, v.pr_image, v.pr_meet
        )));
    }
    Ok(v)
}

/// Checks `[H : K] <= 1/eps` given `mu(K) >= eps * mu(H) > 0`; returns the index.
pub fn index_bound_check(
    g: &FiniteGroup,
    h: &Subgroup,
    k: &Subgroup,
    eps: &Ratio,
) -> Result<usize> {
    if !k.is_subgroup_of(h) {
        return Err(Error::precondition("K is not contained in H"));
    }
    let mu_k = subset_measure(g, k.members());
    let mu_h = subset_measure(g, h.members());
    let scaled = eps * &mu_h;
    if !(scaled.is_positive() && mu_k >= scaled) {
        return Err(Error::precondition(format!(
            "mu(K) = {mu_k} is below eps * mu(H) = {scaled}"
        )));
    }
    let index = h.len() / k.len();
    if !eps.recip().bounds(index as u64) {
        return Err(Error::violation(format!(
            "index {index} exceeds 1/eps = {}",
            eps.recip()
        )));
    }
    Ok(index)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::testing::*;

    #[test]
    fn subset_measures() {
        let g = s3();
        assert_eq!(subset_measure(&g, &ElemSet::full(6)), Ratio::one());
        let a3 = g.cyclic_subgroup(el(&g, &[&[1, 2, 3]]));
        assert_eq!(subset_measure(&g, a3.members()), Ratio::new(1, 2));
        assert_eq!(subset_measure(&g, &ElemSet::empty(6)), Ratio::zero());
    }

    #[test]
    fn pr_examples() {
        let c = cyclic(5);
        assert_eq!(pr(&c, &Subgroup::whole(&c)).value, Ratio::one());
        let g = s3();
        assert_eq!(pr(&g, &Subgroup::whole(&g)).value, Ratio::new(1, 2));
        let a3 = g.cyclic_subgroup(el(&g, &[&[1, 2, 3]]));
        assert_eq!(pr(&g, &a3).value, Ratio::new(2, 3));
    }

    #[test]
    fn brute_force_examples() {
        let d = d8();
        assert_eq!(
            pr_bruteforce(&d, &Subgroup::trivial(&d), 100)
                .unwrap()
                .value,
            Ratio::one()
        );
        assert_eq!(
            pr_bruteforce(&d, &Subgroup::whole(&d), 100).unwrap().value,
            Ratio::new(5, 8)
        );
        let q = q8();
        assert_eq!(
            pr_bruteforce(&q, &Subgroup::whole(&q), 100).unwrap().value,
            Ratio::new(5, 8)
        );
        assert!(matches!(
            pr_bruteforce(&q, &Subgroup::whole(&q), 63),
            Err(Error::SizeLimit { cap: 63 })
        ));
    }

    #[test]
    fn floors() {
        let c = cyclic(4);
        assert_eq!(
            centrality_floor(&c, &Subgroup::whole(&c)),
            (Ratio::one(), 0)
        );
        let g = s3();
        let (f, x) = centrality_floor(&g, &Subgroup::whole(&g));
        assert_eq!(f, Ratio::new(2, 3));
        assert_eq!(x, 1);
        let q = q8();
        assert_eq!(
            centrality_floor(&q, &Subgroup::whole(&q)).0,
            Ratio::new(3, 4)
        );
    }

    #[test]
    fn monotonicity_examples() {
        let g = s3();
        let whole = Subgroup::whole(&g);
        let a3 = g.cyclic_subgroup(el(&g, &[&[1, 2, 3]]));
        let v = check_monotonicity(&g, &a3, &whole).unwrap();
        assert_eq!(
            (v.pr_k_g, v.pr_h_g, v.pr_h_k),
            (Ratio::new(1, 2), Ratio::new(2, 3), Ratio::new(2, 3))
        );
        let v = check_monotonicity(&g, &Subgroup::trivial(&g), &a3).unwrap();
        assert_eq!(v.pr_h_k, Ratio::one());
        let v = check_monotonicity(&g, &a3, &a3).unwrap();
        assert!(v.pr_h_g <= v.pr_h_k);
        assert!(check_monotonicity(&g, &whole, &a3).is_err());
    }

    #[test]
    fn quotient_inequality_examples() {
        let g = s3();
        let whole = Subgroup::whole(&g);
        let v = check_quotient_inequality(&g, &Subgroup::trivial(&g), &whole).unwrap();
        assert_eq!(v.pr_k_g, v.product());
        let d = d8();
        let v = check_quotient_inequality(&d, &d.center(), &Subgroup::whole(&d)).unwrap();
        assert_eq!(
            (v.pr_k_g.clone(), v.product()),
            (Ratio::new(5, 8), Ratio::one())
        );
        let a3 = g.cyclic_subgroup(el(&g, &[&[1, 2, 3]]));
        let v = check_quotient_inequality(&g, &a3, &a3).unwrap();
        assert_eq!(
            (v.pr_k_g.clone(), v.product()),
            (Ratio::new(2, 3), Ratio::one())
        );
        let t = g.cyclic_subgroup(1);
        assert!(matches!(
            check_quotient_inequality(&g, &t, &whole),
            Err(Error::NotNormal { .. })
        ));
    }

    #[test]
    fn index_bounds() {
        let g = cyclic(6);
        let whole = Subgroup::whole(&g);
        assert_eq!(
            index_bound_check(&g, &whole, &whole, &Ratio::one()).unwrap(),
            1
        );
        assert_eq!(
            index_bound_check(&g, &whole, &whole, &Ratio::new(1, 2)).unwrap(),
            1
        );
        let k = g.cyclic_subgroup(g.pow(g.generators()[0], 3));
        assert_eq!(
            index_bound_check(&g, &whole, &k, &Ratio::new(1, 3)).unwrap(),
            3
        );
        assert!(matches!(
            index_bound_check(&g, &whole, &k, &Ratio::new(1, 2)),
            Err(Error::Precondition(_))
        ));
    }
}
