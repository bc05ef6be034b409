//! Corpus-wide property suites for the measure and generation inequalities.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::catalog::CorpusEntry;
use crate::error::{Error, Result};
use crate::group::{short_coset_reps, symmetrize, ElemSet, Subgroup};
use crate::measure::{check_monotonicity, check_quotient_inequality};
use crate::witness::eberhard_generation;

#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub groups: usize,
    pub checks: usize,
    pub violations: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &str, groups: usize) -> Self {
        SuiteReport {
            suite: suite.into(),
            groups,
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn record(&mut self, outcome: Result<()>, context: impl FnOnce() -> String) -> Result<()> {
        self.checks += 1;
        match outcome {
            Ok(()) => Ok(()),
            Err(e @ Error::LemmaViolation(_)) => {
                self.violations.push(format!("{}: {e}", context()));
                Ok(())
            }
            Err(e) => Err(e),
        }
    }
}

/// `Pr(K,G) <= Pr(H,G) <= Pr(H,K)` over chains of distinguished subgroups.
pub fn monotonicity_suite(entries: &[CorpusEntry]) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("monotonicity", entries.len());
    for e in entries {
        for (hn, h) in &e.subgroups {
            for (kn, k) in e.subgroups.iter().filter(|(_, k)| h.is_subgroup_of(k)) {
                let out = check_monotonicity(&e.group, h, k).map(|_| ());
                rep.record(out, || format!("{} H={hn} K={kn}", e.name))?;
            }
        }
    }
    Ok(rep)
}

/// The quotient inequality over every normal `N` and distinguished `K`.
pub fn quotient_suite(entries: &[CorpusEntry]) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("quotient", entries.len());
    for e in entries {
        for n in e.group.normal_subgroups() {
            for (kn, k) in &e.subgroups {
                let out = check_quotient_inequality(&e.group, &n, k).map(|_| ());
                rep.record(out, || format!("{} |N|={} K={kn}", e.name, n.len()))?;
            }
        }
    }
    Ok(rep)
}

/// Random symmetric subsets containing the identity, one per sample.
pub fn random_symmetric_subset(entry: &CorpusEntry, rng: &mut impl Rng) -> ElemSet {
    let g = &entry.group;
    let density: f64 = rng.gen();
    let mut x = ElemSet::from_indices(g.order(), [0]);
    for a in 1..g.order() {
        if rng.gen_bool(density) {
            x.insert(a);
            x.insert(g.inv(a));
        }
    }
    x
}

/// Generation by `3r`-fold products on seeded random subsets.
pub fn eberhard_suite(entries: &[CorpusEntry], samples: usize, seed: u64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("eberhard", entries.len());
    if entries.is_empty() {
        return Ok(rep);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..samples {
        let e = &entries[rng.gen_range(0..entries.len())];
        let x = random_symmetric_subset(e, &mut rng);
        let out = eberhard_generation(&e.group, &x).map(|_| ());
        rep.record(out, || format!("{} sample {i} |X|={}", e.name, x.len()))?;
    }
    Ok(rep)
}

/// Largest index of the subgroups examined by [`lemma41_suite`].
pub const LEMMA41_MAX_INDEX: usize = 8;

/// Shortest coset representatives of length below the index, for subgroups of small index.
pub fn lemma41_suite(entries: &[CorpusEntry]) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("lemma41", entries.len());
    for e in entries {
        let g = &e.group;
        let mut subgroups: Vec<Subgroup> = e.subgroups.iter().map(|p| p.1.clone()).collect();
        subgroups.extend(g.normal_subgroups());
        subgroups.extend(g.cyclic_subgroups().into_iter().map(|p| p.1));
        let mut seen = std::collections::HashSet::new();
        subgroups.retain(|s| {
            g.order() / s.len() <= LEMMA41_MAX_INDEX && seen.insert(s.members().clone())
        });
        let gen_sets = [
            symmetrize(g, g.generators()),
            (0..g.order()).collect::<Vec<_>>(),
        ];
        for d in &subgroups {
            let index = g.order() / d.len();
            for (si, x) in gen_sets.iter().enumerate() {
                let out = short_coset_reps(g, x, d).and_then(|reps| {
                    if reps.reps.len() != index {
                        return Err(Error::violation(format!(
                            "{} representatives for index {index}",
                            reps.reps.len()
                        )));
                    }
                    if reps.max_length() as usize > index - 1 {
                        return Err(Error::violation(format!(
                            "length {} above index - 1",
                            reps.max_length()
                        )));
                    }
                    Ok(())
                });
                rep.record(out, || format!("{} |D|={} set {si}", e.name, d.len()))?;
            }
        }
    }
    Ok(rep)
}
