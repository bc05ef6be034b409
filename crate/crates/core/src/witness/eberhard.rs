use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{word_metric, ElemSet, FiniteGroup, Subgroup};
use crate::ratio::Ratio;

/// Outcome of the product-set generation check for a symmetric set `X`.
#[derive(Clone, Debug, Serialize)]
pub struct GenerationReport {
    #[serde(skip)]
    pub span: Subgroup,
    /// `|X| / |ambient|`
    pub measure: Ratio,
    /// Least `r >= 1` with `(r + 1) mu(X) > 1`.
    pub r: u64,
    /// Least `k >= 1` with `X^k = <X>`.
    pub minimal_k: u32,
    /// Least `i` with `X^(3i+1) = X^(3i)`.
    pub stabilization: u64,
}

/// Least `r >= 1` with `(r + 1) * measure > 1`.
pub fn minimal_r(measure: &Ratio) -> u64 {
    assert!(measure.is_positive());
    // r + 1 > 1/measure  <=>  r >= floor(1/measure)
    let r: u64 = measure.recip().floor().try_into().expect("r fits in u64");
    r.max(1)
}

/// Checks `<X> = X^(3r)` inside the whole group.
pub fn eberhard_generation(g: &FiniteGroup, x: &ElemSet) -> Result<GenerationReport> {
    eberhard_generation_in(g, &Subgroup::whole(g), x)
}

/// Checks `<X> = X^(3r)` with the measure taken in `ambient`.
pub fn eberhard_generation_in(
    g: &FiniteGroup,
    ambient: &Subgroup,
    x: &ElemSet,
) -> Result<GenerationReport> {
    if !x.contains(0) {
        return Err(Error::precondition("set does not contain the identity"));
    }
    if let Some(a) = x.iter().find(|&a| !x.contains(g.inv(a))) {
        return Err(Error::precondition(format!(
            "set is not symmetric: inverse of {a} missing"
        )));
    }
    if !x.is_subset(ambient.members()) {
        return Err(Error::precondition(
            "set is not contained in the ambient subgroup",
        ));
    }
    let elements = x.to_vec();
    let metric = word_metric(g, &elements);
    let span = Subgroup::from_elements(g, metric.reached().iter().copied())?;
    let measure = Ratio::new(x.len() as u64, ambient.len() as u64);
    let r = minimal_r(&measure);
    let minimal_k = metric.max_length().max(1);
    // no element of length exactly 3i+1 means X^(3i+1) = X^(3i)
    let has_length = |len: u64| {
        metric
            .reached()
            .iter()
            .any(|&y| metric.length(y) == Some(len as u32))
    };
    let stabilization = (0..)
        .find(|&i| !has_length(3 * i + 1))
        .expect("lengths are bounded");
    if minimal_k as u64 > 3 * r {
        return Err(Error::violation(format!(
            "<X> needs products of {minimal_k} elements, above 3r = {}",
            3 * r
        )));
    }
    if stabilization > r {
        return Err(Error::violation(format!(
            "X^(3i+1) = X^(3i) first at i = {stabilization} > r = {r}"
        )));
    }
    Ok(GenerationReport {
        span,
        measure,
        r,
        minimal_k,
        stabilization,
    })
}
