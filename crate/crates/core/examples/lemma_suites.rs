//! Runs the property suites over the corpus up to order 24.

use commprob::catalog::test_corpus;
use commprob::suites::{eberhard_suite, lemma41_suite, monotonicity_suite, quotient_suite};

fn main() -> commprob::Result<()> {
    let corpus = test_corpus(24);
    let reports = [
        monotonicity_suite(&corpus)?,
        quotient_suite(&corpus)?,
        eberhard_suite(&corpus, 20, 7)?,
        lemma41_suite(&corpus)?,
    ];
    for r in &reports {
        println!(
            "{:<13} {} groups, {} checks, {} violations",
            r.suite,
            r.groups,
            r.checks,
            r.violations.len()
        );
    }
    Ok(())
}
