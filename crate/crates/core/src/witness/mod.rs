//! Witness extraction: executable versions of the structure results on
//! commuting probability, with certificates that can be re-checked offline.

mod cert;
mod eberhard;
mod oracle;
mod prop11;
mod prop13;
mod theorem;
mod validate;

pub use cert::*;
pub use eberhard::{eberhard_generation, eberhard_generation_in, minimal_r, GenerationReport};
pub use oracle::{bruteforce_witness_oracle, OracleTriple, ORACLE_MAX_ORDER};
pub use prop11::prop11_witness;
pub use prop13::{minimal_exponent, power_class_union, prop13_witness, reduce_exponent};
pub use theorem::{
    class_bound_centrality, converse_epsilon, derive_ln, thm12_witness, ClassBoundVerdict,
};
pub use validate::{validate_certificate, Failure, Verdict};
