use super::{build_named, GroupSpec};
use crate::group::{FiniteGroup, Subgroup, DEFAULT_ORDER_CAP};

/// A corpus group with its distinguished subgroups.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub group: FiniteGroup,
    /// `(label, subgroup)`, deduplicated by membership.
    pub subgroups: Vec<(String, Subgroup)>,
}

const CORPUS: &[&str] = &[
    "cyclic(1)",
    "cyclic(2)",
    "cyclic(3)",
    "cyclic(4)",
    "cyclic(5)",
    "cyclic(6)",
    "cyclic(7)",
    "cyclic(8)",
    "cyclic(9)",
    "cyclic(10)",
    "cyclic(12)",
    "cyclic(16)",
    "cyclic(24)",
    "elementary_abelian(2,2)",
    "elementary_abelian(2,3)",
    "elementary_abelian(2,4)",
    "elementary_abelian(3,2)",
    "elementary_abelian(3,3)",
    "elementary_abelian(5,2)",
    "elementary_abelian(2,5)",
    "elementary_abelian(2,6)",
    "dihedral(6)",
    "dihedral(8)",
    "dihedral(10)",
    "dihedral(12)",
    "dihedral(14)",
    "dihedral(16)",
    "dihedral(18)",
    "dihedral(20)",
    "dihedral(24)",
    "dihedral(32)",
    "quaternion_generalized(8)",
    "quaternion_generalized(12)",
    "quaternion_generalized(16)",
    "quaternion_generalized(24)",
    "quaternion_generalized(32)",
    "symmetric(3)",
    "symmetric(4)",
    "symmetric(5)",
    "symmetric(6)",
    "alternating(4)",
    "alternating(5)",
    "alternating(6)",
    "direct_product(cyclic(2),symmetric(3))",
    "direct_product(cyclic(4),cyclic(2))",
    "direct_product(cyclic(2),dihedral(8))",
    "direct_product(cyclic(2),quaternion_generalized(8))",
    "direct_product(cyclic(3),symmetric(3))",
    "direct_product(cyclic(3),quaternion_generalized(8))",
    "direct_product(cyclic(2),alternating(4))",
    "direct_product(cyclic(4),symmetric(3))",
    "direct_product(symmetric(3),symmetric(3))",
    "direct_product(cyclic(3),alternating(4))",
    "direct_product(cyclic(2),symmetric(4))",
    "direct_product(quaternion_generalized(8),symmetric(3))",
    "direct_product(dihedral(8),dihedral(8))",
    "direct_product(quaternion_generalized(8),cyclic(8))",
    "direct_product(symmetric(3),alternating(4))",
];

fn nominal_order(spec: &GroupSpec) -> u64 {
    use super::NamedGroup::*;
    match spec {
        GroupSpec::Named { name, params } => match name {
            Cyclic | Dihedral | Quaternion => params[0],
            Symmetric => (1..=params[0]).product(),
            Alternating => ((1..=params[0]).product::<u64>() / 2).max(1),
            ElementaryAbelian => params[0].pow(params[1] as u32),
        },
        GroupSpec::DirectProduct(a, b) => nominal_order(a) * nominal_order(b),
        _ => u64::MAX,
    }
}

/// Center, derived subgroup, every cyclic subgroup, the whole and trivial
/// subgroups, and one non-normal subgroup when one exists.
pub fn distinguished_subgroups(g: &FiniteGroup) -> Vec<(String, Subgroup)> {
    let mut out: Vec<(String, Subgroup)> = Vec::new();
    let mut push = |label: String, s: Subgroup| {
        if !out.iter().any(|(_, t)| *t == s) {
            out.push((label, s));
        }
    };
    let whole = Subgroup::whole(g);
    push("G".into(), whole.clone());
    push("trivial".into(), Subgroup::trivial(g));
    push("center".into(), g.center());
    push("derived".into(), g.derived_subgroup(&whole));
    let cyclic = g.cyclic_subgroups();
    let non_normal = cyclic
        .iter()
        .find(|(_, c)| !g.is_normal(c))
        .map(|(_, c)| c.clone())
        .or_else(|| {
            // joins of two cyclic subgroups, for groups whose cyclic subgroups are all normal
            cyclic
                .iter()
                .flat_map(|(_, a)| cyclic.iter().map(move |(_, b)| (a, b)))
                .find_map(|(a, b)| {
                    let j = g.join(a, b);
                    (!g.is_normal(&j)).then_some(j)
                })
        });
    for (x, c) in cyclic {
        push(format!("cyclic:{}", g.label(x)), c);
    }
    if let Some(s) = non_normal {
        out.push(("nonnormal".into(), s));
    }
    out
}

/// Corpus groups of order at most `max_order`, in a fixed order.
pub fn test_corpus(max_order: usize) -> Vec<CorpusEntry> {
    let max_order = max_order.min(DEFAULT_ORDER_CAP);
    CORPUS
        .iter()
        .map(|s| s.parse::<GroupSpec>().expect("corpus specs parse"))
        .filter(|spec| nominal_order(spec) <= max_order as u64)
        .map(|spec| {
            let group = build_named(&spec, DEFAULT_ORDER_CAP).expect("corpus groups build");
            let subgroups = distinguished_subgroups(&group);
            CorpusEntry {
                name: spec.to_string(),
                group,
                subgroups,
            }
        })
        .collect()
}
