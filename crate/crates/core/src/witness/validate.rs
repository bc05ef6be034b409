//! Re-verification of stored certificates against raw group data.

use std::fmt::Debug;

use num_bigint::BigUint;
use num_integer::Integer;
use serde::Serialize;

use crate::group::{
    bounded_class_set, short_coset_reps_within, word_metric, ElemSet, FiniteGroup, Subgroup,
};
use crate::measure::{centrality_floor, pr};
use crate::ratio::Ratio;

use super::cert::*;
use super::eberhard::minimal_r;
use super::prop11::max_class;
use super::prop13::{
    commutators_inside, index_in, max_index_in, minimal_exponent, power_class_union,
    reduce_exponent,
};
use super::theorem::cyclic_subgroups_of;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub clause: String,
    pub detail: String,
}

/// Outcome of [`validate_certificate`].
#[derive(Clone, Debug, Default, Serialize)]
pub struct Verdict {
    pub checks: usize,
    pub failures: Vec<Failure>,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Checker {
    verdict: Verdict,
    prefix: String,
}

impl Checker {
    fn check(&mut self, clause: &str, ok: bool, detail: impl FnOnce() -> String) -> bool {
        self.verdict.checks += 1;
        if !ok {
            self.verdict.failures.push(Failure {
                clause: format!("{}{clause}", self.prefix),
                detail: detail(),
            });
        }
        ok
    }

    fn eq<T: PartialEq + Debug + ?Sized>(
        &mut self,
        clause: &str,
        stored: &T,
        expected: &T,
    ) -> bool {
        self.check(clause, stored == expected, || {
            format!("stored {stored:?}, recomputed {expected:?}")
        })
    }

    fn nested<R>(&mut self, prefix: &str, f: impl FnOnce(&mut Checker) -> R) -> R {
        let inner = format!("{}{prefix}.", self.prefix);
        let outer = std::mem::replace(&mut self.prefix, inner);
        let out = f(self);
        self.prefix = outer;
        out
    }

    /// Strictly increasing indices below `universe`.
    fn set(&mut self, clause: &str, universe: usize, v: &[usize]) -> Option<ElemSet> {
        let sorted = v.windows(2).all(|w| w[0] < w[1]);
        let in_range = v.iter().all(|&x| x < universe);
        self.check(
            &format!("{clause} is a sorted index set"),
            sorted && in_range,
            || format!("{} entries, universe {universe}", v.len()),
        )
        .then(|| ElemSet::from_indices(universe, v.iter().copied()))
    }

    fn subgroup(&mut self, clause: &str, g: &FiniteGroup, v: &[usize]) -> Option<Subgroup> {
        self.set(clause, g.order(), v)?;
        let s = Subgroup::from_elements(g, v.iter().copied());
        self.check(&format!("{clause} is a subgroup"), s.is_ok(), || {
            s.as_ref().unwrap_err().to_string()
        });
        s.ok()
    }

    fn group(&mut self, stored: &GroupRef, g: &FiniteGroup) -> bool {
        let actual = GroupRef::of(g);
        let a = self.eq("group.order", &stored.order, &actual.order);
        let b = self.eq("group.digest", &stored.digest, &actual.digest);
        let c = self.eq("group.source", &stored.source, &actual.source);
        a && b && c
    }
}

/// Re-checks every stored field of `cert` against `g`.
pub fn validate_certificate(g: &FiniteGroup, cert: &Certificate) -> Verdict {
    let mut c = Checker {
        verdict: Verdict::default(),
        prefix: String::new(),
    };
    match cert {
        Certificate::Prop11(p) => {
            check_prop11(&mut c, g, p);
        }
        Certificate::Prop13(p) => {
            check_prop13(&mut c, g, p);
        }
        Certificate::Thm12(t) => check_thm12(&mut c, g, t),
    }
    c.verdict
}

/// Returns the recomputed `r`.
fn check_generation(
    c: &mut Checker,
    g: &FiniteGroup,
    x: &ElemSet,
    measure: &Ratio,
    r: u64,
    max_len: u32,
    name: &str,
) -> u64 {
    let expected_r = minimal_r(measure);
    c.eq(
        &format!("r{name} is least with (r+1) mu > 1"),
        &r,
        &expected_r,
    );
    let metric = word_metric(g, &x.to_vec());
    c.eq(
        &format!("max_word_length{name}"),
        &max_len,
        &metric.max_length().max(1),
    );
    c.check(
        &format!("word lengths over X{name} are at most 3r"),
        max_len as u64 <= 3 * r,
        || format!("{max_len} > {}", 3 * r),
    );
    let stab = (0..)
        .find(|&i| {
            !metric
                .reached()
                .iter()
                .any(|&y| metric.length(y) == Some(3 * i + 1))
        })
        .unwrap();
    c.check(
        &format!("X{name}^(3i+1) = X{name}^(3i) for some i <= r"),
        stab as u64 <= r,
        || format!("first at {stab}"),
    );
    expected_r
}

/// Returns `(T, B)` as recomputed when the input fields are well formed.
fn check_prop11(
    c: &mut Checker,
    g: &FiniteGroup,
    p: &Prop11Certificate,
) -> Option<(Subgroup, Subgroup)> {
    c.group(&p.group, g);
    let k = c.subgroup("k", g, &p.k)?;
    let eps = &p.epsilon;
    if !c.check(
        "epsilon in (0, 1]",
        eps.is_positive() && *eps <= Ratio::one(),
        || eps.to_string(),
    ) {
        return None;
    }
    let threshold = eps.recip() * Ratio::from_int(2);
    let half = eps / &Ratio::from_int(2);
    c.eq("threshold = 2/epsilon", &p.threshold, &threshold);
    let pr_k_g = pr(g, &k).value;
    c.eq("pr_k_g = Pr(K, G)", &p.pr_k_g, &pr_k_g);
    c.check("Pr(K, G) >= epsilon", pr_k_g >= *eps, || pr_k_g.to_string());

    let whole = Subgroup::whole(g);
    let x = bounded_class_set(g, &k, &whole, &threshold);
    c.set("x", g.order(), &p.x);
    c.eq("x = {x in K : |x^G| <= 2/epsilon}", &p.x, &x.to_vec());
    let nu_x = Ratio::new(x.len() as u64, k.len() as u64);
    c.eq("nu_x = |X|/|K|", &p.nu_x, &nu_x);
    c.check("nu_x >= epsilon/2", p.nu_x >= half, || p.nu_x.to_string());
    let b = g.subgroup_generated(x.iter());
    c.eq("b = <X>", p.b.as_slice(), b.elements());
    let r = check_generation(c, g, &x, &nu_x, p.r, p.max_word_length, "");
    c.eq("index_k_b = [K:B]", &p.index_k_b, &(k.len() / b.len()));
    c.check(
        "[K:B] <= 2/epsilon",
        threshold.bounds(p.index_k_b as u64),
        || p.index_k_b.to_string(),
    );
    c.eq(
        "max_class_b = max |b^G|",
        &p.max_class_b,
        &max_class(g, &b, &whole),
    );
    c.check(
        "|b^G| <= (2/epsilon)^(3r)",
        threshold.pow(3 * r as u32).bounds(p.max_class_b as u64),
        || p.max_class_b.to_string(),
    );

    let l = g.normal_closure(b.generators().iter().copied());
    c.eq("l = normal closure of B", p.l.as_slice(), l.elements());
    let d = g.derived_subgroup(&l);
    c.eq("d = [L, L]", p.d.as_slice(), d.elements());
    c.eq(
        "quotient.kernel = D",
        p.quotient.kernel.as_slice(),
        d.elements(),
    );
    let q = g
        .quotient(&d)
        .expect("derived subgroup of a normal subgroup is normal");
    c.eq(
        "quotient.projection",
        p.quotient.projection.as_slice(),
        q.projection(),
    );
    let gb = q.target();
    c.nested("quotient.target", |c| c.group(&p.quotient.target, gb));
    let kb = q.image(&k);
    let bb = q.image(&b);
    let pr_bar = pr(gb, &kb).value;
    c.eq("pr_k_g_bar = Pr(K/D, G/D)", &p.pr_k_g_bar, &pr_bar);
    c.check("Pr(K/D, G/D) >= epsilon", p.pr_k_g_bar >= *eps, || {
        p.pr_k_g_bar.to_string()
    });

    let whole_bar = Subgroup::whole(gb);
    let y = bounded_class_set(gb, &whole_bar, &kb, &threshold);
    c.set("y", gb.order(), &p.y);
    c.eq("y = {y in G/D : |y^(K/D)| <= 2/epsilon}", &p.y, &y.to_vec());
    let mu_y = Ratio::new(y.len() as u64, gb.order() as u64);
    c.eq("mu_y = |Y|/|G/D|", &p.mu_y, &mu_y);
    c.check("mu_y >= epsilon/2", p.mu_y >= half, || p.mu_y.to_string());
    let r_y = check_generation(c, gb, &y, &mu_y, p.r_y, p.max_word_length_y, "_y");
    let e_bar = gb.subgroup_generated(y.iter());
    c.eq("e_bar = <Y>", p.e_bar.as_slice(), e_bar.elements());
    c.eq(
        "index_g_e_bar = [G/D : E]",
        &p.index_g_e_bar,
        &(gb.order() / e_bar.len()),
    );
    c.check(
        "[G/D : E] <= 2/epsilon",
        threshold.bounds(p.index_g_e_bar as u64),
        || p.index_g_e_bar.to_string(),
    );
    c.eq(
        "max_class_e_bar = max |e^(K/D)|",
        &p.max_class_e_bar,
        &max_class(gb, &e_bar, &kb),
    );
    c.check(
        "|e^(K/D)| <= (2/epsilon)^(3r_y)",
        threshold
            .pow(3 * r_y as u32)
            .bounds(p.max_class_e_bar as u64),
        || p.max_class_e_bar.to_string(),
    );

    let t_bar = gb.normal_core(&e_bar);
    c.eq(
        "t_bar = normal core of E",
        p.t_bar.as_slice(),
        t_bar.elements(),
    );
    let t = q.preimage(g, &t_bar);
    c.eq("t = preimage of t_bar", p.t.as_slice(), t.elements());
    if let Some(stored_t) = c.subgroup("t", g, &p.t) {
        c.check("T is normal in G", g.is_normal(&stored_t), || {
            "conjugate leaves T".into()
        });
    }
    c.eq("index_g_t = [G:T]", &p.index_g_t, &(g.order() / t.len()));
    let tb_bar = gb.commutator_subgroup(&t_bar, &bb);
    c.eq(
        "tb_bar = [T/D, B/D]",
        p.tb_bar.as_slice(),
        tb_bar.elements(),
    );
    c.eq("tb_bar_order", &p.tb_bar_order, &tb_bar.len());
    let tb = g.commutator_subgroup(&t, &b);
    c.eq("tb = [T, B]", p.tb.as_slice(), tb.elements());
    c.eq("tb_order", &p.tb_order, &tb.len());
    c.check(
        "|[T,B]| <= |[T/D, B/D]| |D|",
        p.tb_order <= p.tb_bar_order * d.len(),
        || format!("{} > {} * {}", p.tb_order, p.tb_bar_order, d.len()),
    );
    Some((t, b))
}

fn check_prop13(c: &mut Checker, g: &FiniteGroup, p: &Prop13Certificate) -> Option<()> {
    c.group(&p.group, g);
    let k = c.subgroup("k", g, &p.k)?;
    if !c.check("l and n are positive", p.l >= 1 && p.n >= 1, || {
        format!("l = {}, n = {}", p.l, p.n)
    }) {
        return None;
    }
    let worst = k
        .iter()
        .map(|x| g.class_size(g.pow(x, p.l)))
        .max()
        .unwrap_or(1);
    c.check("[G : C_G(g^l)] <= n on K", worst as u64 <= p.n, || {
        format!("{worst} > {}", p.n)
    });
    let exp = g.exponent();
    let inv_n = Ratio::new(1, p.n);
    let mut expected_l = reduce_exponent(p.l, exp);
    let mut prev_m: Option<usize> = None;
    let mut result: Option<(Subgroup, Subgroup)> = None;
    c.check("at least one stage", !p.stages.is_empty(), String::new);

    for (i, s) in p.stages.iter().enumerate() {
        let last = i + 1 == p.stages.len();
        let done = c.nested(&format!("stages[{i}]"), |c| {
            c.eq("l", &s.l, &expected_l);
            let cur = expected_l;
            let x = power_class_union(g, &k, cur);
            c.set("x", g.order(), &s.x);
            c.eq(
                "x = union of classes of l-th powers of K",
                &s.x,
                &x.to_vec(),
            );
            let h = g.subgroup_generated(x.iter());
            c.eq("h = <X>", s.h.as_slice(), h.elements());
            let m = max_index_in(g, &h, &x);
            c.eq("m = max [H : C_H(x)]", &s.m, &m);
            c.check("m <= n", s.m as u64 <= p.n, || s.m.to_string());
            if let Some(pm) = prev_m {
                c.check("m decreases strictly", s.m < pm, || {
                    format!("{pm} then {}", s.m)
                });
            }
            let hh = g.derived_subgroup(&h);
            let mut max_order = 1;
            let mut contained = true;
            for y in x.iter() {
                let hy = g.commutator_with_element(&h, y);
                contained &= hy.is_subgroup_of(&hh);
                max_order = max_order.max(hy.len());
            }
            c.check("[H, x] <= [H, H] for x in X", contained, String::new);
            c.eq("max_commutator_order", &s.max_commutator_order, &max_order);
            let l2 = reduce_exponent(cur * cur, exp);
            let all_below = k.iter().all(|y| index_in(g, &h, g.pow(y, l2)) < m);

            match &s.branch {
                StageBranch::Abelian { j, inner } => {
                    c.check("abelian branch has m = 1", s.m == 1, || s.m.to_string());
                    c.check("abelian branch ends the trace", last, String::new);
                    let jj = g.power_subgroup(&g.power_subgroup(&k, cur), cur);
                    c.eq("j = (K^l)^l", j.as_slice(), jj.elements());
                    c.eq("inner.k = J", inner.k.as_slice(), jj.elements());
                    c.eq("inner.epsilon = 1/n", &inner.epsilon, &inv_n);
                    let tb = c.nested("inner", |c| check_prop11(c, g, inner));
                    Some(tb)
                }
                StageBranch::Descent { next_l } => {
                    c.check("descent branch has m >= 2", s.m >= 2, || s.m.to_string());
                    c.check(
                        "descent: [H : C_H(g^(l^2))] <= m - 1 on K",
                        all_below,
                        String::new,
                    );
                    c.eq("next_l = l^2 reduced", next_l, &l2);
                    c.check("descent is followed by a stage", !last, String::new);
                    expected_l = *next_l;
                    prev_m = Some(s.m);
                    None
                }
                StageBranch::Main(ms) => {
                    c.check("main branch has m >= 2", s.m >= 2, || s.m.to_string());
                    c.check("main branch ends the trace", last, String::new);
                    c.check(
                        "main: some g in K has [H : C_H(g^(l^2))] = m",
                        !all_below,
                        String::new,
                    );
                    Some(c.nested("main", |c| {
                        check_main(c, g, &k, &h, &x, m, cur, l2, p.n, ms)
                    }))
                }
            }
        });
        if let Some(r) = done {
            result = r;
            break;
        }
    }

    let (t, v) = result?;
    c.eq("t", p.t.as_slice(), t.elements());
    if let Some(stored_t) = c.subgroup("t", g, &p.t) {
        c.check("T is normal in G", g.is_normal(&stored_t), || {
            "conjugate leaves T".into()
        });
    }
    c.eq("index_g_t = [G:T]", &p.index_g_t, &(g.order() / t.len()));
    c.eq("v", p.v.as_slice(), v.elements());
    let e_ok = p.e >= 1 && exp.is_multiple_of(p.e);
    c.check("e divides the exponent", e_ok, || p.e.to_string());
    if e_ok {
        c.check(
            "K^e <= V",
            k.iter().all(|x| v.contains(g.pow(x, p.e))),
            || format!("e = {}", p.e),
        );
    }
    c.eq(
        "e is the least such divisor",
        &p.e,
        &minimal_exponent(g, &k, &v),
    );
    let k_e = g.power_subgroup(&k, p.e.max(1));
    c.eq("k_e = K^e", p.k_e.as_slice(), k_e.elements());
    let ket = g.commutator_subgroup(&k_e, &t);
    c.eq("ket = [K^e, T]", p.ket.as_slice(), ket.elements());
    c.eq("ket_order", &p.ket_order, &ket.len());
    Some(())
}

#[allow(clippy::too_many_arguments)]
fn check_main(
    c: &mut Checker,
    g: &FiniteGroup,
    k: &Subgroup,
    h: &Subgroup,
    x: &ElemSet,
    m: usize,
    cur: u64,
    l2: u64,
    n: u64,
    ms: &MainStage,
) -> Option<(Subgroup, Subgroup)> {
    let d = k.iter().find(|&y| index_in(g, h, g.pow(y, l2)) == m);
    c.eq("d is the least element reaching m", &Some(ms.d), &d);
    let d = d?;
    let a = g.pow(d, cur);
    c.eq("a = d^l", &ms.a, &a);
    let ch_a = g.centralizer(&[a], h);
    c.check("[H : C_H(a)] = m", h.len() / ch_a.len() == m, String::new);
    let reps = short_coset_reps_within(g, h, &x.to_vec(), &ch_a).ok()?;
    let expected: Vec<CosetRep> = reps
        .reps
        .iter()
        .map(|&(element, length)| CosetRep { element, length })
        .collect();
    c.eq(
        "reps = shortest right coset representatives",
        &ms.reps,
        &expected,
    );
    let metric = word_metric(g, &x.to_vec());
    let valid_reps = ms
        .reps
        .iter()
        .all(|r| r.element < g.order() && metric.length(r.element) == Some(r.length));
    c.check(
        "rep lengths are word lengths over X",
        valid_reps,
        String::new,
    );
    c.check("m representatives", ms.reps.len() == m, || {
        ms.reps.len().to_string()
    });
    c.check(
        "rep lengths <= m - 1",
        ms.reps.iter().all(|r| (r.length as usize) < m),
        String::new,
    );
    let rep_elems: Vec<usize> = expected.iter().map(|r| r.element).collect();
    let whole = Subgroup::whole(g);
    let u = g.centralizer(&rep_elems, &whole);
    c.eq("u = C_G(reps)", ms.u.as_slice(), u.elements());
    c.eq("index_g_u = [G:U]", &ms.index_g_u, &(g.order() / u.len()));
    let cap = BigUint::from(n).pow(((m - 1) * m) as u32);
    c.check(
        "[G:U] <= n^((m-1)m)",
        BigUint::from(ms.index_g_u) <= cap,
        || ms.index_g_u.to_string(),
    );

    let h_a = g.commutator_with_element(h, a);
    c.eq("h_a = [H, a]", ms.h_a.as_slice(), h_a.elements());
    let mut count = 0;
    let mut lemma = true;
    for y in u.iter().filter(|&y| x.contains(g.mul(y, a))) {
        lemma &= h.iter().all(|s| h_a.contains(g.commutator(s, y)));
        count += 1;
    }
    c.check("[H, u] <= [H, a] when u a in X", lemma, String::new);
    c.eq("lemma43_checked", &ms.lemma43_checked, &count);
    let r = g.normal_closure(h_a.generators().iter().copied());
    c.eq(
        "r = normal closure of [H, a]",
        ms.r.as_slice(),
        r.elements(),
    );
    let a_inv = g.inv(a);
    let a_inv_l = g.pow(a_inv, cur);
    c.check(
        "[H, Y1] <= R",
        commutators_inside(
            g,
            h,
            x.iter()
                .map(|z| g.mul(z, a_inv_l))
                .filter(|&y| u.contains(y)),
            &r,
        ),
        String::new,
    );
    c.check(
        "[H, Y2] <= R",
        commutators_inside(
            g,
            h,
            x.iter().map(|z| g.mul(z, a_inv)).filter(|&y| u.contains(y)),
            &r,
        ),
        String::new,
    );

    let u0 = g.normal_core(&u);
    c.eq("u0 = normal core of U", ms.u0.as_slice(), u0.elements());
    c.check(
        "[U0, a] centralizes H modulo R",
        commutators_inside(
            g,
            h,
            u0.generators().iter().map(|&y| g.commutator(y, a)),
            &r,
        ),
        String::new,
    );
    let k0 = g.intersection(k, &u0);
    c.eq("k0 = K meet U0", ms.k0.as_slice(), k0.elements());
    c.eq(
        "quotient.kernel = R",
        ms.quotient.kernel.as_slice(),
        r.elements(),
    );
    let q = g.quotient(&r).expect("normal closure is normal");
    c.eq(
        "quotient.projection",
        ms.quotient.projection.as_slice(),
        q.projection(),
    );
    let gb = q.target();
    c.nested("quotient.target", |c| c.group(&ms.quotient.target, gb));
    let hb = q.image(h);
    let z_hb = gb.centralizer(hb.elements(), &hb);
    c.check(
        "l-th powers of K0 are central in H modulo R",
        k0.iter().all(|y| z_hb.contains(gb.pow(q.project(y), cur))),
        String::new,
    );
    let j_bar = gb.power_subgroup(&q.image(&k0), l2);
    c.eq(
        "j_bar = (K0 R/R)^(l^2)",
        ms.j_bar.as_slice(),
        j_bar.elements(),
    );
    c.eq("inner.k = j_bar", ms.inner.k.as_slice(), j_bar.elements());
    c.eq("inner.epsilon = 1/n", &ms.inner.epsilon, &Ratio::new(1, n));
    let (t_bar, v_bar) = c.nested("inner", |c| check_prop11(c, gb, &ms.inner))?;
    let t = q.preimage(g, &t_bar);
    let v = g.intersection(&q.preimage(g, &v_bar), &g.power_subgroup(&k0, l2));
    Some((t, v))
}

fn check_thm12(c: &mut Checker, g: &FiniteGroup, t: &Thm12Certificate) {
    c.group(&t.group, g);
    let Some(k) = c.subgroup("k", g, &t.k) else {
        return;
    };
    let eps = &t.epsilon;
    if !c.check(
        "epsilon in (0, 1]",
        eps.is_positive() && *eps <= Ratio::one(),
        || eps.to_string(),
    ) {
        return;
    }
    let (floor, witness) = centrality_floor(g, &k);
    c.eq("floor = centrality floor of K", &t.floor, &floor);
    c.eq("floor_witness", &t.floor_witness, &witness);
    c.check("epsilon <= floor", *eps <= floor, || floor.to_string());

    let dl = &t.derived;
    c.nested("derived", |c| {
        c.eq("epsilon", &dl.epsilon, eps);
        let threshold = eps.recip() * Ratio::from_int(2);
        c.eq("threshold = 2/epsilon", &dl.threshold, &threshold);
        let cyclics = cyclic_subgroups_of(g, &k);
        c.eq(
            "per_element covers each cyclic subgroup of K once",
            &dl.per_element
                .iter()
                .map(|r| r.generator)
                .collect::<Vec<_>>(),
            &cyclics.iter().map(|p| p.0).collect::<Vec<_>>(),
        );
        let whole = Subgroup::whole(g);
        let mut l = 1u64;
        for (i, (_, cyc)) in cyclics.iter().enumerate() {
            let Some(rec) = dl.per_element.get(i) else {
                break;
            };
            c.nested(&format!("per_element[{i}]"), |c| {
                c.eq("cyclic = <x>", rec.cyclic.as_slice(), cyc.elements());
                let xs = bounded_class_set(g, cyc, &whole, &threshold);
                let b = g.subgroup_generated(xs.iter());
                c.eq(
                    "b = generated by small classes of <x>",
                    rec.b.as_slice(),
                    b.elements(),
                );
                let l_x = (cyc.len() / b.len()) as u64;
                c.eq("l_x = [<x> : B_x]", &rec.l_x, &l_x);
                l = l.lcm(&l_x);
            });
        }
        c.eq("l = lcm of l_x", &dl.l, &l);
        let mut n = 1;
        for (i, (rec, (x, _))) in dl.per_element.iter().zip(&cyclics).enumerate() {
            let idx = g.class_size(g.pow(*x, l));
            c.eq(
                &format!("per_element[{i}].index = [G : C_G(x^l)]"),
                &rec.index,
                &idx,
            );
            n = n.max(idx);
        }
        c.eq("n = max index", &dl.n, &(n as u64));
        let worst = k
            .iter()
            .map(|x| g.class_size(g.pow(x, l)))
            .max()
            .unwrap_or(1);
        c.check("[G : C_G(x^l)] <= n on K", worst as u64 <= dl.n, || {
            worst.to_string()
        });
    });

    c.eq("inner.k = K", t.inner.k.as_slice(), k.elements());
    c.eq("inner.l = derived l", &t.inner.l, &dl.l);
    c.eq("inner.n = derived n", &t.inner.n, &dl.n);
    c.nested("inner", |c| check_prop13(c, g, &t.inner));

    let cv = &t.converse;
    c.nested("converse", |c| {
        c.eq("e = inner e", &cv.e, &t.inner.e);
        let Some(tt) = c.subgroup("inner.t", g, &t.inner.t) else {
            return;
        };
        if !c.check("T is normal in G", g.is_normal(&tt), String::new) {
            return;
        }
        let e = cv.e.max(1);
        let s = g.order() / tt.len();
        c.eq("s = [G:T]", &cv.s, &s);
        let m = g.commutator_subgroup(&g.power_subgroup(&k, e), &tt).len();
        c.eq("m = |[K^e, T]|", &cv.m, &m);
        let max_index = k
            .iter()
            .map(|x| g.class_size(g.pow(x, e)))
            .max()
            .unwrap_or(1);
        c.eq("max_index = max [G : C_G(g^e)]", &cv.max_index, &max_index);
        c.check(
            "[G : C_G(g^e)] <= ms on K",
            cv.max_index <= cv.m * cv.s,
            String::new,
        );
        let eps0 = Ratio::new(1, e * (m * s) as u64);
        c.eq("epsilon0 = 1/(e m s)", &cv.epsilon0, &eps0);
        c.check("epsilon0 <= floor", cv.epsilon0 <= floor, || {
            cv.epsilon0.to_string()
        });
    });
}
