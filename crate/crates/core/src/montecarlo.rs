//! Sampled estimates of commuting probabilities.
//!
//! Randomness comes from ChaCha8 seeded with a 64-bit value. Samples are drawn
//! in fixed chunks of [`CHUNK`], chunk `i` using ChaCha stream `i`, so results
//! do not depend on the number of worker threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use statrs::distribution::{Beta, ContinuousCDF};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::measure::cyclic_pr;
use crate::perm::Permutation;

pub const CHUNK: u64 = 4096;
pub const BURN_IN: usize = 50;
pub const TABLE_WIDTH: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampleMethod {
    UniformIndex,
    RandomWord,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub point: f64,
    pub lo: f64,
    pub hi: f64,
    pub samples: u64,
    pub successes: u64,
    pub seed: u64,
    pub method: SampleMethod,
    pub confidence: f64,
}

impl Estimate {
    fn new(successes: u64, samples: u64, seed: u64, method: SampleMethod, confidence: f64) -> Self {
        let (lo, hi) = clopper_pearson(successes, samples, confidence);
        Estimate {
            point: successes as f64 / samples as f64,
            lo,
            hi,
            samples,
            successes,
            seed,
            method,
            confidence,
        }
    }

    /// Binomial standard deviation at probability `p`.
    pub fn sigma(&self, p: f64) -> f64 {
        (p * (1.0 - p) / self.samples as f64).sqrt()
    }
}

/// Exact binomial interval for `k` successes in `n` trials.
pub fn clopper_pearson(k: u64, n: u64, confidence: f64) -> (f64, f64) {
    let alpha = 1.0 - confidence;
    let lo = if k == 0 {
        0.0
    } else {
        Beta::new(k as f64, (n - k + 1) as f64)
            .unwrap()
            .inverse_cdf(alpha / 2.0)
    };
    let hi = if k == n {
        1.0
    } else {
        Beta::new((k + 1) as f64, (n - k) as f64)
            .unwrap()
            .inverse_cdf(1.0 - alpha / 2.0)
    };
    (lo, hi)
}

fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Counts successes of `trial` over `samples` draws, split into independent chunks.
fn chunked<S, F>(
    samples: u64,
    seed: u64,
    init: impl Fn(&mut ChaCha8Rng) -> S + Sync,
    trial: F,
) -> u64
where
    F: Fn(&mut S, &mut ChaCha8Rng) -> bool + Sync,
{
    let chunks = samples.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = stream(seed, c);
            let mut state = init(&mut rng);
            let len = CHUNK.min(samples - c * CHUNK);
            (0..len).filter(|_| trial(&mut state, &mut rng)).count() as u64
        })
        .sum()
}

fn check_args(samples: u64, confidence: f64) -> Result<()> {
    if samples == 0 {
        return Err(Error::precondition("samples must be at least 1"));
    }
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(Error::precondition(format!(
            "confidence must lie in (0, 1), got {confidence}"
        )));
    }
    Ok(())
}

/// Uniform element of an enumerated group.
pub fn sample_element(g: &FiniteGroup, rng: &mut impl Rng) -> usize {
    rng.gen_range(0..g.order())
}

/// Product-replacement random walk over a generating set.
#[derive(Clone, Debug)]
pub struct ProductReplacement {
    table: Vec<Permutation>,
    acc: Permutation,
}

impl ProductReplacement {
    /// Starts from `gens` padded to [`TABLE_WIDTH`] and runs [`BURN_IN`] steps.
    pub fn new(degree: usize, gens: &[Permutation], rng: &mut impl Rng) -> Self {
        let mut table: Vec<Permutation> = gens.iter().map(|p| p.extended(degree)).collect();
        if table.is_empty() {
            table.push(Permutation::identity(degree));
        }
        let base = table.len();
        for i in table.len()..TABLE_WIDTH {
            let p = table[i % base].clone();
            table.push(p);
        }
        let mut walk = ProductReplacement {
            table,
            acc: Permutation::identity(degree),
        };
        for _ in 0..BURN_IN {
            walk.step(rng);
        }
        walk
    }

    pub fn step(&mut self, rng: &mut impl Rng) -> &Permutation {
        let w = self.table.len();
        let i = rng.gen_range(0..w);
        let j = (i + rng.gen_range(1..w.max(2))) % w;
        let other = if rng.gen() {
            self.table[j].clone()
        } else {
            self.table[j].inverse()
        };
        self.table[i] = if rng.gen() {
            self.table[i].then(&other)
        } else {
            other.then(&self.table[i])
        };
        self.acc = self.acc.then(&self.table[i]);
        &self.acc
    }
}

/// Estimates `Pr(K, G)` by uniform draws from enumerated `K` and `G`.
pub fn estimate_pr(
    g: &FiniteGroup,
    k: &Subgroup,
    samples: u64,
    seed: u64,
    confidence: f64,
) -> Result<Estimate> {
    check_args(samples, confidence)?;
    let ks = k.elements();
    let hits = chunked(
        samples,
        seed,
        |_| (),
        |_, rng| {
            let x = ks[rng.gen_range(0..ks.len())];
            g.commutes(x, sample_element(g, rng))
        },
    );
    Ok(Estimate::new(
        hits,
        samples,
        seed,
        SampleMethod::UniformIndex,
        confidence,
    ))
}

/// Estimates `Pr(K, G)` for generator-presented permutation groups by random walks.
pub fn estimate_pr_generated(
    degree: usize,
    g_gens: &[Permutation],
    k_gens: &[Permutation],
    samples: u64,
    seed: u64,
    confidence: f64,
) -> Result<Estimate> {
    check_args(samples, confidence)?;
    let init = |rng: &mut ChaCha8Rng| {
        (
            ProductReplacement::new(degree, k_gens, rng),
            ProductReplacement::new(degree, g_gens, rng),
        )
    };
    let hits = chunked(samples, seed, init, |(wk, wg), rng| {
        let x = wk.step(rng).clone();
        let y = wg.step(rng);
        x.then(y) == y.then(&x)
    });
    Ok(Estimate::new(
        hits,
        samples,
        seed,
        SampleMethod::RandomWord,
        confidence,
    ))
}

#[derive(Clone, Debug, Serialize)]
pub struct FloorEstimate {
    /// Exact `Pr(<g>, G)` at the worst sampled element.
    pub estimate: Estimate,
    pub worst: usize,
    /// Distinct elements examined.
    pub elements: usize,
}

/// Upper-biased estimate of the centrality floor: minimum of `Pr(<g>, G)` over sampled `g in K`.
///
/// When `element_samples >= |K|` every element is examined and the result is exact.
/// For each sampled element the reported interval comes from `pair_samples` draws of `(x, y)`
/// in `<g> x G`.
pub fn estimate_centrality_floor(
    g: &FiniteGroup,
    k: &Subgroup,
    element_samples: u64,
    pair_samples: u64,
    seed: u64,
    confidence: f64,
) -> Result<FloorEstimate> {
    check_args(element_samples, confidence)?;
    check_args(pair_samples, confidence)?;
    let candidates: Vec<usize> = if element_samples as usize >= k.len() {
        k.elements().to_vec()
    } else {
        let mut rng = stream(seed, u64::MAX);
        let mut picked: Vec<usize> = (0..element_samples)
            .map(|_| k.elements()[rng.gen_range(0..k.len())])
            .collect();
        picked.sort_unstable();
        picked.dedup();
        picked
    };
    let worst = candidates
        .iter()
        .copied()
        .min_by(|&a, &b| cyclic_pr(g, a).cmp(&cyclic_pr(g, b)).then(a.cmp(&b)))
        .expect("K is nonempty");
    let estimate = estimate_pr(g, &g.cyclic_subgroup(worst), pair_samples, seed, confidence)?;
    Ok(FloorEstimate {
        estimate,
        worst,
        elements: candidates.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::testing::*;

    #[test]
    fn trivial_group_identity() {
        let g = cyclic(1);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert!((0..100).all(|_| sample_element(&g, &mut rng) == 0));
    }

    #[test]
    fn uniform_index_draws() {
        let g = cyclic(6);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 600_000;
        let mut counts = [0u64; 6];
        for _ in 0..n {
            counts[sample_element(&g, &mut rng)] += 1;
        }
        let p = 1.0 / 6.0;
        let sigma = (n as f64 * p * (1.0 - p)).sqrt();
        assert!(
            counts
                .iter()
                .all(|&c| (c as f64 - n as f64 * p).abs() < 5.0 * sigma),
            "{counts:?}"
        );
    }

    #[test]
    fn deterministic_draws() {
        let g = cyclic(12);
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..50)
                .map(|_| sample_element(&g, &mut rng))
                .collect::<Vec<_>>()
        };
        assert_eq!(draw(5), draw(5));
    }

    #[test]
    fn abelian_estimate_is_one() {
        let g = cyclic(5);
        let e = estimate_pr(&g, &Subgroup::whole(&g), 1000, 1, 0.95).unwrap();
        assert_eq!((e.point, e.hi), (1.0, 1.0));
        assert!(e.lo <= 1.0 && e.lo > 0.99);
    }

    #[test]
    fn s3_within_four_sigma() {
        let g = s3();
        let e = estimate_pr(&g, &Subgroup::whole(&g), 100_000, 42, 0.99).unwrap();
        assert!((e.point - 0.5).abs() <= 4.0 * e.sigma(0.5));
        assert!(e.lo <= e.point && e.point <= e.hi);
        assert_eq!(
            e,
            estimate_pr(&g, &Subgroup::whole(&g), 100_000, 42, 0.99).unwrap()
        );
    }

    #[test]
    fn thread_count_does_not_matter() {
        let g = s3();
        let k = Subgroup::whole(&g);
        let one = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let a = one.install(|| estimate_pr(&g, &k, 50_000, 9, 0.95).unwrap());
        let b = estimate_pr(&g, &k, 50_000, 9, 0.95).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn random_word_on_s3() {
        let gens = [perm(3, &[&[1, 2]]), perm(3, &[&[1, 2, 3]])];
        let e = estimate_pr_generated(3, &gens, &gens, 100_000, 7, 0.99).unwrap();
        assert_eq!(e.method, SampleMethod::RandomWord);
        assert!((e.point - 0.5).abs() < 0.02, "{}", e.point);
    }

    #[test]
    fn floor_examples() {
        let g = cyclic(4);
        assert_eq!(
            estimate_centrality_floor(&g, &Subgroup::whole(&g), 10, 1000, 1, 0.95)
                .unwrap()
                .estimate
                .point,
            1.0
        );
        let g = s3();
        let f = estimate_centrality_floor(&g, &Subgroup::whole(&g), 6, 20_000, 1, 0.999).unwrap();
        assert_eq!(cyclic_pr(&g, f.worst), crate::ratio::Ratio::new(2, 3));
        assert!(f.estimate.lo <= 2.0 / 3.0 && 2.0 / 3.0 <= f.estimate.hi);
        let g = q8();
        let f = estimate_centrality_floor(&g, &Subgroup::whole(&g), 8, 20_000, 1, 0.999).unwrap();
        assert_eq!(cyclic_pr(&g, f.worst), crate::ratio::Ratio::new(3, 4));
    }

    #[test]
    fn clopper_pearson_edges() {
        assert_eq!(clopper_pearson(0, 10, 0.95).0, 0.0);
        assert_eq!(clopper_pearson(10, 10, 0.95).1, 1.0);
        let (lo, hi) = clopper_pearson(5, 10, 0.95);
        assert!((lo - 0.187).abs() < 1e-3 && (hi - 0.813).abs() < 1e-3);
    }
}
