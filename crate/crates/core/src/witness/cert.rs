//! Serializable certificate records.
//!
//! Element sets and subgroups are sorted index arrays; rationals are
//! `{"num", "den"}` string pairs; groups are referenced by source and digest.

use serde::{Deserialize, Serialize};

use crate::group::{ElemSet, FiniteGroup, QuotientMap, Subgroup};
use crate::ratio::Ratio;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRef {
    pub source: String,
    pub order: usize,
    pub digest: String,
}

impl GroupRef {
    pub fn of(g: &FiniteGroup) -> Self {
        GroupRef {
            source: g.source().to_string(),
            order: g.order(),
            digest: g.digest(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientRecord {
    pub kernel: Vec<usize>,
    pub projection: Vec<usize>,
    pub target: GroupRef,
}

impl QuotientRecord {
    pub fn of(q: &QuotientMap) -> Self {
        QuotientRecord {
            kernel: q.kernel().elements().to_vec(),
            projection: q.projection().to_vec(),
            target: GroupRef::of(q.target()),
        }
    }
}

pub(crate) fn ids(s: &Subgroup) -> Vec<usize> {
    s.elements().to_vec()
}

pub(crate) fn set_ids(s: &ElemSet) -> Vec<usize> {
    s.to_vec()
}

/// Trace of the construction for `Pr(K, G) >= eps`: a normal `T` and `B <= K`
/// with `[G:T]`, `[K:B]` and `|[T, B]|` reported.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop11Certificate {
    pub group: GroupRef,
    pub k: Vec<usize>,
    pub epsilon: Ratio,
    /// `2 / epsilon`
    pub threshold: Ratio,
    pub pr_k_g: Ratio,
    /// `{x in K : |x^G| <= 2/eps}`
    pub x: Vec<usize>,
    pub nu_x: Ratio,
    pub b: Vec<usize>,
    pub r: u64,
    pub max_word_length: u32,
    pub index_k_b: usize,
    pub max_class_b: usize,
    pub l: Vec<usize>,
    /// `[L, L]`
    pub d: Vec<usize>,
    pub quotient: QuotientRecord,
    pub pr_k_g_bar: Ratio,
    /// `{y in G/D : |y^(K/D)| <= 2/eps}`, in quotient indices
    pub y: Vec<usize>,
    pub mu_y: Ratio,
    pub r_y: u64,
    pub max_word_length_y: u32,
    pub e_bar: Vec<usize>,
    pub index_g_e_bar: usize,
    pub max_class_e_bar: usize,
    pub t_bar: Vec<usize>,
    pub t: Vec<usize>,
    pub index_g_t: usize,
    pub tb_bar: Vec<usize>,
    pub tb_bar_order: usize,
    pub tb: Vec<usize>,
    pub tb_order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetRep {
    pub element: usize,
    pub length: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MainStage {
    pub d: usize,
    pub a: usize,
    pub reps: Vec<CosetRep>,
    pub u: Vec<usize>,
    pub index_g_u: usize,
    /// Number of `u in U` with `u a in X` for which `[H, u] <= [H, a]` was checked.
    pub lemma43_checked: usize,
    pub h_a: Vec<usize>,
    pub r: Vec<usize>,
    pub quotient: QuotientRecord,
    pub u0: Vec<usize>,
    pub k0: Vec<usize>,
    pub j_bar: Vec<usize>,
    pub inner: Prop11Certificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "branch", rename_all = "snake_case")]
pub enum StageBranch {
    Abelian {
        j: Vec<usize>,
        inner: Box<Prop11Certificate>,
    },
    Descent {
        next_l: u64,
    },
    Main(Box<MainStage>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stage {
    /// Exponent for this level, reduced modulo the group exponent.
    pub l: u64,
    pub x: Vec<usize>,
    pub h: Vec<usize>,
    pub m: usize,
    /// Largest `|[H, x]|` over `x in X`.
    pub max_commutator_order: usize,
    #[serde(flatten)]
    pub branch: StageBranch,
}

/// Trace of the construction for `[G : C_G(g^l)] <= n` on `K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop13Certificate {
    pub group: GroupRef,
    pub k: Vec<usize>,
    pub l: u64,
    pub n: u64,
    pub stages: Vec<Stage>,
    pub e: u64,
    pub t: Vec<usize>,
    pub index_g_t: usize,
    pub v: Vec<usize>,
    pub k_e: Vec<usize>,
    pub ket: Vec<usize>,
    pub ket_order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicRecord {
    /// Smallest generator of the cyclic subgroup.
    pub generator: usize,
    pub cyclic: Vec<usize>,
    pub b: Vec<usize>,
    pub l_x: u64,
    /// `[G : C_G(x^l)]` for the final `l`.
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedLn {
    pub epsilon: Ratio,
    pub threshold: Ratio,
    pub l: u64,
    pub n: u64,
    pub per_element: Vec<CyclicRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConverseBound {
    pub e: u64,
    /// `[G : T]`
    pub s: usize,
    /// `|[K^e, T]|`
    pub m: usize,
    /// `max_{g in K} [G : C_G(g^e)]`
    pub max_index: usize,
    /// `1 / (e m s)`
    pub epsilon0: Ratio,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thm12Certificate {
    pub group: GroupRef,
    pub k: Vec<usize>,
    pub epsilon: Ratio,
    pub floor: Ratio,
    pub floor_witness: usize,
    pub derived: DerivedLn,
    pub inner: Prop13Certificate,
    pub converse: ConverseBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Prop11(Prop11Certificate),
    Prop13(Prop13Certificate),
    Thm12(Thm12Certificate),
}

impl Certificate {
    pub fn group(&self) -> &GroupRef {
        match self {
            Certificate::Prop11(c) => &c.group,
            Certificate::Prop13(c) => &c.group,
            Certificate::Thm12(c) => &c.group,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn from_json(text: &str) -> crate::Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}
