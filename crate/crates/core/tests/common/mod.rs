//! Brute-force oracles that only use the multiplication table.
#![allow(dead_code)]

use std::collections::BTreeSet;

use commprob::{FiniteGroup, Ratio, Subgroup};

pub fn commuting_pairs(g: &FiniteGroup, k: &[usize], h: &[usize]) -> u64 {
    let mut c = 0;
    for &x in k {
        for &y in h {
            if g.mul(x, y) == g.mul(y, x) {
                c += 1;
            }
        }
    }
    c
}

/// `Pr(K, G)` by pair counting.
pub fn pr(g: &FiniteGroup, k: &[usize]) -> Ratio {
    let all: Vec<usize> = (0..g.order()).collect();
    Ratio::new(commuting_pairs(g, k, &all), (k.len() * g.order()) as u64)
}

/// `Pr(H, K)` by pair counting.
pub fn pr_in(g: &FiniteGroup, h: &[usize], k: &[usize]) -> Ratio {
    Ratio::new(commuting_pairs(g, h, k), (h.len() * k.len()) as u64)
}

pub fn conjugates(g: &FiniteGroup, x: usize) -> BTreeSet<usize> {
    (0..g.order())
        .map(|y| g.mul(g.mul(g.inv(y), x), y))
        .collect()
}

pub fn class_size(g: &FiniteGroup, x: usize) -> usize {
    conjugates(g, x).len()
}

pub fn power(g: &FiniteGroup, x: usize, e: u64) -> usize {
    (0..e).fold(0, |acc, _| g.mul(acc, x))
}

pub fn cyclic(g: &FiniteGroup, x: usize) -> Vec<usize> {
    let mut out = vec![0];
    let mut y = x;
    while y != 0 {
        out.push(y);
        y = g.mul(y, x);
    }
    out.sort_unstable();
    out
}

/// Minimum over `x in K` of `Pr(<x>, G)`, by pair counting.
pub fn floor(g: &FiniteGroup, k: &[usize]) -> Ratio {
    k.iter().map(|&x| pr(g, &cyclic(g, x))).min().unwrap()
}

/// Product set `A B`.
pub fn product(g: &FiniteGroup, a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> BTreeSet<usize> {
    a.iter()
        .flat_map(|&x| b.iter().map(move |&y| g.mul(x, y)))
        .collect()
}

/// Balls `[B_0, B_1, ...]` with `B_k = (X + e)^k`, up to and including the first repeat.
/// For `X` containing the identity these are the product sets `X^k`.
pub fn powers(g: &FiniteGroup, x: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
    let mut x = x.clone();
    x.insert(0);
    let mut out = vec![BTreeSet::from([0])];
    loop {
        let next = product(g, out.last().unwrap(), &x);
        let done = &next == out.last().unwrap();
        out.push(next);
        if done {
            return out;
        }
    }
}

/// `X^k` read off a stabilized power list.
pub fn power_set(powers: &[BTreeSet<usize>], k: usize) -> &BTreeSet<usize> {
    &powers[k.min(powers.len() - 1)]
}

/// Closure of `seed` under multiplication.
pub fn generated(g: &FiniteGroup, seed: &[usize]) -> BTreeSet<usize> {
    let mut s: BTreeSet<usize> = seed.iter().copied().chain([0]).collect();
    loop {
        let next = product(g, &s, &s);
        if next == s {
            return s;
        }
        s = next;
    }
}

pub fn is_normal(g: &FiniteGroup, t: &[usize]) -> bool {
    let set: BTreeSet<usize> = t.iter().copied().collect();
    t.iter().all(|&x| conjugates(g, x).is_subset(&set))
}

pub fn subgroup(g: &FiniteGroup, elems: &[usize]) -> Subgroup {
    Subgroup::from_elements(g, elems.iter().copied()).unwrap()
}
