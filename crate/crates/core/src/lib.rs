//! Exact commuting probabilities for finite groups, epsilon-centrality, and
//! executable witness pipelines that produce checkable certificates.
//!
//! Groups are enumerated as Cayley tables ([`FiniteGroup`]); subgroups are
//! explicit member sets ([`Subgroup`]). Every probability is an exact
//! [`Ratio`]. Sampling lives only in [`montecarlo`].
//!
//! The runnable programs under `examples/` walk through each capability.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod group;
pub mod measure;
pub mod montecarlo;
pub mod perm;
pub mod ratio;
pub mod suites;
pub mod witness;

pub use error::{Error, ErrorKind, Result};
pub use group::{ElemSet, FiniteGroup, QuotientMap, Subgroup, WordMetric};
pub use perm::Permutation;
pub use ratio::Ratio;
