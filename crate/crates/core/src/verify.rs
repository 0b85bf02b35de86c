//! Hypothesis/conclusion checkers.
//!
//! Every checker evaluates its hypothesis and its conclusion independently.
//! The reported conclusion is `skipped` exactly when the hypothesis fails; the
//! value computed anyway (when it is cheap enough to compute) is kept under
//! `details.conclusion_holds`.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::action::{ActionPair, MixedSeries};
use crate::autsearch::{brute_force_aut, sylow_p_subgroup};
use crate::backend::Permutation;
use crate::catalog::sigma_pair;
use crate::error::Result;
use crate::group::{is_power_of, log_p, p_part, Automorphism, GroupTable, Subgroup};
use crate::series::{
    has_small_order, is_omega_regular_of, is_p_central_of_height, lower_central_series, lower_central_series_of,
    nilpotency_class, nilpotency_class_of, omega_conv_of, omega_set_of, omega_subgroup_of, xu_inequality_of,
};

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Skipped,
}

impl Outcome {
    fn of(b: bool) -> Outcome {
        if b {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Verdict {
    pub check: String,
    pub subject: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, u64>,
    pub hypothesis: Outcome,
    pub conclusion: Outcome,
    /// Hex element keys.
    pub witnesses: Vec<String>,
    #[serde(default)]
    pub details: BTreeMap<String, Value>,
    pub millis: u64,
}

impl Verdict {
    /// Hypothesis holds and conclusion fails.
    pub fn is_failure(&self) -> bool {
        self.hypothesis == Outcome::Pass && self.conclusion == Outcome::Fail
    }

    /// The same verdict with timing zeroed, for run-to-run comparison.
    pub fn untimed(&self) -> Verdict {
        Verdict {
            millis: 0,
            ..self.clone()
        }
    }
}

struct Rec {
    check: String,
    subject: String,
    params: BTreeMap<String, u64>,
    witnesses: Vec<String>,
    details: BTreeMap<String, Value>,
    start: Instant,
}

impl Rec {
    fn new(check: &str, subject: &str) -> Rec {
        Rec {
            check: check.to_string(),
            subject: subject.to_string(),
            params: BTreeMap::new(),
            witnesses: Vec::new(),
            details: BTreeMap::new(),
            start: Instant::now(),
        }
    }

    fn param(mut self, key: &str, v: u64) -> Rec {
        self.params.insert(key.to_string(), v);
        self
    }

    fn detail(&mut self, key: &str, v: impl Serialize) {
        self.details
            .insert(key.to_string(), serde_json::to_value(v).unwrap_or(Value::Null));
    }

    fn witness(&mut self, g: &GroupTable, x: usize) {
        self.witnesses.push(g.key(x).to_hex());
    }

    fn hypothesis_witness(&mut self, g: &GroupTable, x: Option<usize>) {
        if let Some(x) = x {
            self.detail("hypothesis_witness", g.key(x).to_hex());
        }
    }

    /// `conclusion = None` means it was not evaluated.
    fn finish(mut self, hypothesis: bool, conclusion: Option<bool>) -> Verdict {
        self.detail("conclusion_holds", conclusion);
        let conclusion = match (hypothesis, conclusion) {
            (false, _) => Outcome::Skipped,
            (true, Some(c)) => Outcome::of(c),
            (true, None) => unreachable!("conclusion must be evaluated when the hypothesis holds"),
        };
        if conclusion != Outcome::Fail {
            self.witnesses.clear();
        }
        Verdict {
            check: self.check,
            subject: self.subject,
            params: self.params,
            hypothesis: Outcome::of(hypothesis),
            conclusion,
            witnesses: self.witnesses,
            details: self.details,
            millis: self.start.elapsed().as_millis() as u64,
        }
    }
}

fn automorphism_key(a: &Automorphism) -> String {
    Permutation::new(a.map().to_vec())
        .map(|q| crate::backend::Element::from(q).key().to_hex())
        .unwrap_or_default()
}

/// Quantities shared by all action checks on one pair.
pub struct Facts<'a> {
    pub pair: &'a ActionPair,
    pub p: u32,
    pub series: MixedSeries,
    /// `[G, A]`.
    pub h: Subgroup,
    /// `A` as a permutation group.
    pub a_perm: Arc<GroupTable>,
}

impl<'a> Facts<'a> {
    pub fn new(pair: &'a ActionPair) -> Result<Facts<'a>> {
        let p = pair.group().require_prime()?;
        let series = pair.gamma_ga_full();
        let h = series.term(2).expect("full series").clone();
        let a_perm = pair.aut_as_perm_group()?;
        Ok(Facts {
            pair,
            p,
            series,
            h,
            a_perm,
        })
    }

    pub fn group(&self) -> &GroupTable {
        self.pair.group()
    }

    pub fn subject(&self) -> String {
        format!("{} | {}", self.group().name(), self.pair.label())
    }

    /// `γ_k(G,A)`.
    pub fn gamma(&self, k: usize) -> &Subgroup {
        self.series.term(k).expect("full series")
    }

    fn a_is_p_group(&self) -> bool {
        is_power_of(self.a_perm.order() as u64, self.p as u64)
    }

    /// `n` with `p^n = exp(H)`.
    fn log_exp_h(&self) -> u32 {
        log_p(self.group().exponent_of(&self.h), self.p as u64)
    }

    fn log_exp_a(&self) -> u32 {
        log_p(p_part(self.a_perm.exponent(), self.p as u64), self.p as u64)
    }

    fn hypothesis_on(&self, rec: &mut Rec, k: usize) -> bool {
        let x = self.gamma(k);
        let w = self.pair.p_central_witness(x, self.p);
        rec.hypothesis_witness(self.group(), w);
        rec.detail("gamma_k_order", x.order());
        w.is_none()
    }
}

/// First element of `a` outside `b`.
fn first_outside(a: &Subgroup, b: &Subgroup) -> Option<usize> {
    a.members().iter().copied().find(|&x| !b.contains(x))
}

/// (i) regularity of `[G,A]`, (ii) regularity of `A`, (iii) `exp[G,A] = exp A`,
/// (iv) both classes at most `n + p − 2`.
pub fn check_theorem_main1(f: &Facts) -> Verdict {
    let g = f.group();
    let p = f.p;
    let mut r = Rec::new("main1", &f.subject());
    let hyp = f.hypothesis_on(&mut r, p as usize);

    let exp_h = g.exponent_of(&f.h);
    let a = &f.a_perm;
    let exp_a = a.exponent();
    let top = f.log_exp_h().max(f.log_exp_a()).max(1);
    let mut part_i = true;
    for i in 1..=top {
        if !is_omega_regular_of(g, &f.h, p, i) {
            part_i = false;
            let set = omega_set_of(g, &f.h, p, i);
            let sub = omega_subgroup_of(g, &f.h, p, i);
            if let Some(x) = sub.members().iter().find(|x| set.binary_search(x).is_err()) {
                r.witness(g, *x);
            }
        }
    }
    let aw = a.whole();
    let part_ii = (1..=top).all(|i| is_omega_regular_of(a, &aw, p, i));
    let part_iii = exp_h == exp_a;
    let class_a = nilpotency_class(a);
    let class_h = nilpotency_class_of(g, &f.h);
    let bound = if is_power_of(exp_a, p as u64) {
        Some(log_p(exp_a, p as u64) as usize + p as usize - 2)
    } else {
        None
    };
    let part_iv = matches!((bound, class_a, class_h), (Some(b), Some(ca), Some(ch)) if ca <= b && ch <= b);

    r.detail("gamma_orders", f.series.orders());
    r.detail("h_order", f.h.order());
    r.detail("a_order", a.order());
    r.detail("exp_h", exp_h);
    r.detail("exp_a", exp_a);
    r.detail("class_a", class_a);
    r.detail("class_h", class_h);
    r.detail("class_bound", bound);
    r.detail(
        "parts",
        json!({"i": part_i, "ii": part_ii, "iii": part_iii, "iv": part_iv}),
    );
    r.finish(hyp, Some(part_i && part_ii && part_iii && part_iv))
}

/// Nonzero `k` with `p^k ≤ exp(Q)`, at least one.
fn omega_range(exp: u64, p: u32) -> std::ops::RangeInclusive<u32> {
    1..=log_p(p_part(exp, p as u64), p as u64).max(1)
}

/// `exp(G′) = exp(G/Z(G))` for a group acting on itself, plus the separately
/// reported `[X, G] = Ω_k(G′)` with `X/Z = Ω_k(G/Z)`.
pub fn check_corollary_cor(g: &GroupTable) -> Result<(Verdict, Verdict)> {
    let p = g.require_prime()?;
    let subject = g.name().to_string();
    let mut r = Rec::new("cor", &subject);
    let mut r2 = Rec::new("cor.omega", &subject);
    let lcs = lower_central_series(g);
    let gp = lcs.term(p as usize);
    let small: Vec<usize> = gp
        .members()
        .iter()
        .copied()
        .filter(|&x| has_small_order(g, x, p))
        .collect();
    let bad = small
        .iter()
        .copied()
        .find(|&x| g.generators().iter().any(|&y| g.mul(x, y) != g.mul(y, x)));
    r.hypothesis_witness(g, bad);
    r2.hypothesis_witness(g, bad);
    let hyp = bad.is_none();

    let whole = g.whole();
    let derived = g.commutator_subgroup(&whole, &whole);
    let q = g.quotient(&g.center())?;
    let qt = q.table();
    let exp_derived = g.exponent_of(&derived);
    let exp_central_quotient = qt.exponent();
    r.detail("exp_derived", exp_derived);
    r.detail("exp_central_quotient", exp_central_quotient);

    let mut omega_ok = true;
    let mut sizes = Vec::new();
    for k in omega_range(exp_central_quotient.max(exp_derived), p) {
        let x = q.preimage(g, &omega_subgroup_of(qt, &qt.whole(), p, k));
        let lhs = g.commutator_subgroup(&x, &whole);
        let rhs = omega_subgroup_of(g, &derived, p, k);
        sizes.push((k, lhs.order(), rhs.order()));
        if lhs != rhs {
            omega_ok = false;
            if let Some(w) = first_outside(&lhs, &rhs).or_else(|| first_outside(&rhs, &lhs)) {
                r2.witness(g, w);
            }
        }
    }
    r2.detail("k_lhs_rhs_orders", sizes);
    Ok((
        r.finish(hyp, Some(exp_derived == exp_central_quotient)),
        r2.finish(hyp, Some(omega_ok)),
    ))
}

/// `[γ_i(G,A), γ_j(A)] ≤ γ_{i+j}(G,A)`, exhaustively over elements.
pub fn check_lemma_l0_1(f: &Facts) -> Verdict {
    let g = f.group();
    let mut r = Rec::new("l0.1", &f.subject());
    let a = &f.a_perm;
    let lcs_a = lower_central_series(a);
    let mut ok = true;
    'outer: for j in 1..=lcs_a.terms.len() {
        let aj = lcs_a.term(j);
        for i in 1..=f.series.terms.len() {
            let target = f.gamma(i + j);
            for &ai in aj.members() {
                let images = match a.element(ai) {
                    crate::backend::Element::Perm(q) => q.images(),
                    _ => unreachable!(),
                };
                for &c in f.gamma(i).members() {
                    let v = g.mul(g.inv(c), images[c] as usize);
                    if !target.contains(v) {
                        ok = false;
                        r.witness(g, c);
                        r.witness(g, v);
                        r.detail("failing_ij", (i, j));
                        break 'outer;
                    }
                }
            }
        }
    }
    r.detail("a_lower_central_orders", lcs_a.orders());
    r.finish(true, Some(ok))
}

/// The normal-closure series against the definition, for `k ≤ kmax`.
pub fn check_lemma_l0_2(f: &Facts, kmax: usize, order_limit: usize, budget: u64) -> Result<Verdict> {
    let g = f.group();
    let mut r = Rec::new("l0.2", &f.subject()).param("kmax", kmax as u64);
    let hyp = g.order() <= order_limit;
    r.detail("order_limit", order_limit);
    if !hyp {
        return Ok(r.finish(false, None));
    }
    let max_len = g.order() * kmax + 1;
    let defs = f.pair.gamma_ga_definitional_series(kmax, max_len, budget)?;
    let mut mismatches = Vec::new();
    for (k, d) in (1..=kmax).zip(&defs) {
        let s = f.gamma(k);
        if d != s {
            mismatches.push(k);
            if let Some(w) = first_outside(d, s).or_else(|| first_outside(s, d)) {
                r.witness(g, w);
            }
        }
    }
    r.detail(
        "definitional_orders",
        defs.iter().map(Subgroup::order).collect::<Vec<_>>(),
    );
    r.detail(
        "series_orders",
        (1..=kmax).map(|k| f.gamma(k).order()).collect::<Vec<_>>(),
    );
    r.detail("mismatched_k", &mismatches);
    Ok(r.finish(true, Some(mismatches.is_empty())))
}

/// Strict descent of `γ_i(G,A)` until it reaches 1, when `A` is a p-group.
pub fn check_lemma_l0_3(f: &Facts) -> Verdict {
    let mut r = Rec::new("l0.3", &f.subject());
    let hyp = f.a_is_p_group();
    let last = f.series.terms.last().expect("nonempty");
    r.detail("gamma_orders", f.series.orders());
    if !last.is_trivial() {
        r.witness(f.group(), last.members()[1]);
    }
    r.finish(hyp, Some(last.is_trivial()))
}

/// `Ω(γ_{k−1}(H)) ≤ Ω(γ_k(G,A)) ≤ Z(H)` when `A` is p-central on `γ_k(G,A)`.
pub fn check_lemma_l1(f: &Facts, k: usize) -> Verdict {
    let g = f.group();
    let p = f.p;
    let mut r = Rec::new("l1", &f.subject()).param("k", k as u64);
    let hyp = k >= 2 && f.hypothesis_on(&mut r, k);
    let lcs_h = lower_central_series_of(g, &f.h);
    let left = omega_conv_of(g, lcs_h.term(k.saturating_sub(1).max(1)), p);
    let mid = omega_conv_of(g, f.gamma(k), p);
    let z = g.center_of(&f.h);
    let first = left.is_subset_of(&mid);
    let second = mid.is_subset_of(&z);
    if let Some(w) = first_outside(&left, &mid) {
        r.witness(g, w);
    }
    if let Some(w) = first_outside(&mid, &z) {
        r.witness(g, w);
    }
    r.detail(
        "orders",
        json!({"omega_lcs_h": left.order(), "omega_gamma_k": mid.order(), "center_h": z.order()}),
    );
    r.finish(hyp, Some(first && second))
}

/// `exp Ω_n(H) ≤ p^n`, and `|H : H^{p^n}| ≤ |Ω_n(H)|` for odd `p`.
pub fn check_c5(f: &Facts) -> Result<Verdict> {
    let g = f.group();
    let p = f.p;
    let mut r = Rec::new("c5", &f.subject());
    let hyp = f.hypothesis_on(&mut r, p as usize);
    let mut ok = true;
    let mut rows = Vec::new();
    for n in 1..=f.log_exp_h() + 1 {
        let om = omega_subgroup_of(g, &f.h, p, n);
        let e = g.exponent_of(&om);
        let first = e <= (p as u64).pow(n);
        let second = if p == 2 {
            None
        } else {
            Some(xu_inequality_of(g, &f.h, p, n)?.holds)
        };
        if !first {
            if let Some(&x) = om.members().iter().find(|&&x| g.element_order(x) > (p as u64).pow(n)) {
                r.witness(g, x);
            }
        }
        ok &= first && second.unwrap_or(true);
        rows.push(json!({"n": n, "exp_omega": e, "index_bound": second}));
    }
    r.detail("rows", rows);
    Ok(r.finish(hyp, Some(ok)))
}

/// `exp[G,A] ≤ p` when `|A| = p` and `A` is p-central on `γ_p(G,A)`.
pub fn check_lemma_l2(f: &Facts) -> Verdict {
    let g = f.group();
    let p = f.p;
    let mut r = Rec::new("l2", &f.subject());
    let central = f.hypothesis_on(&mut r, p as usize);
    r.detail("a_order", f.a_perm.order());
    let hyp = f.a_perm.order() == p as usize && central;
    let exp_h = g.exponent_of(&f.h);
    if let Some(&x) = f.h.members().iter().find(|&&x| g.element_order(x) > p as u64) {
        r.witness(g, x);
    }
    r.detail("exp_h", exp_h);
    r.finish(hyp, Some(exp_h <= p as u64))
}

fn l6_hypothesis(f: &Facts, r: &mut Rec, k: usize) -> bool {
    let a_p = f.a_is_p_group();
    r.detail("a_is_p_group", a_p);
    let in_range = k >= 1 && k <= f.p as usize;
    let central = f.hypothesis_on(r, k);
    a_p && in_range && central
}

/// p-centrality of `A` on `γ_k` survives passage to `G/Ω_i([G,A])`.
pub fn check_lemma_l6(f: &Facts, k: usize, i: u32) -> Result<Verdict> {
    let g = f.group();
    let p = f.p;
    let mut r = Rec::new("l6", &f.subject()).param("k", k as u64).param("i", i as u64);
    let hyp = l6_hypothesis(f, &mut r, k);
    let n = omega_subgroup_of(g, &f.h, p, i);
    let (qpair, q) = f.pair.induced_quotient(&n)?;
    let qs = qpair.gamma_ga(k);
    let qk = qs.term(k).expect("computed to k");
    let w = qpair.p_central_witness(qk, p);
    if let Some(x) = w {
        r.witness(g, q.representative(x));
    }
    r.detail("quotient_order", qpair.group().order());
    r.detail("quotient_gamma_k_order", qk.order());
    Ok(r.finish(hyp, Some(w.is_none())))
}

/// With `L = γ_k(G,A)`: `A` is p-central on `L/Ω_i(L)` and `[A, Ω_i(L)] ≤ Ω_{i−1}(L)`.
pub fn check_lemma_l6prime(f: &Facts, k: usize, i: u32) -> Result<Verdict> {
    let g = f.group();
    let p = f.p;
    let mut r = Rec::new("l6prime", &f.subject())
        .param("k", k as u64)
        .param("i", i as u64);
    let hyp = l6_hypothesis(f, &mut r, k);
    let l = f.gamma(k);
    let om_i = omega_subgroup_of(g, l, p, i);
    let om_prev = omega_subgroup_of(g, l, p, i - 1);
    let (qpair, q) = f.pair.induced_quotient(&om_i)?;
    let image = q.image(l);
    let w = qpair.p_central_witness(&image, p);
    if let Some(x) = w {
        r.witness(g, q.representative(x));
    }
    let mut stabilizes = true;
    'outer: for &x in om_i.members() {
        for a in f.pair.a_generators() {
            let c = f.pair.mixed_commutator(x, a);
            if !om_prev.contains(c) {
                stabilizes = false;
                r.witness(g, x);
                break 'outer;
            }
        }
    }
    r.detail(
        "parts",
        json!({"p_central_on_quotient": w.is_none(), "stabilizes_omega": stabilizes}),
    );
    Ok(r.finish(hyp, Some(w.is_none() && stabilizes)))
}

/// A faithful `A` that is p-central on some `γ_i(G,A)` is a p-group.
pub fn check_p7(f: &Facts, i: usize) -> Verdict {
    let mut r = Rec::new("p7", &f.subject()).param("i", i as u64);
    let hyp = f.hypothesis_on(&mut r, i);
    r.detail("a_order", f.a_perm.order());
    r.finish(hyp, Some(f.a_is_p_group()))
}

/// `σ^{p^n} = 1 ⟺ [G, σ] ≤ Ω_n([G,A])` for every `σ ∈ A` and every `n` up to `log_p exp(A) + 1`.
pub fn check_p8(f: &Facts) -> Verdict {
    let g = f.group();
    let p = f.p;
    let mut r = Rec::new("p8", &f.subject());
    let hyp = f.hypothesis_on(&mut r, p as usize);
    let top = f.log_exp_a() + 1;
    let omegas: Vec<Subgroup> = (0..=top).map(|n| omega_subgroup_of(g, &f.h, p, n)).collect();
    let mut ok = true;
    let mut checked = 0usize;
    'outer: for sigma in f.pair.a_elements() {
        let order = sigma.order();
        for n in 0..=top {
            let order_divides = (p as u64).pow(n) % order == 0;
            let trivial = (0..g.order()).all(|x| omegas[n as usize].contains(f.pair.mixed_commutator(x, sigma)));
            checked += 1;
            if order_divides != trivial {
                ok = false;
                r.witnesses.push(automorphism_key(sigma));
                r.detail("failing", json!({"n": n, "order": order, "acts_trivially": trivial}));
                break 'outer;
            }
        }
    }
    r.detail("cases", checked);
    r.finish(hyp, Some(ok))
}

/// Whether the elements of order prime to `p` form a subgroup of index a power of `p`.
pub fn normal_p_complement(g: &GroupTable, p: u32) -> (bool, Option<usize>) {
    let target = g.order() / p_part(g.order() as u64, p as u64) as usize;
    let set: Vec<usize> = (0..g.order())
        .filter(|&x| !g.element_order(x).is_multiple_of(p as u64))
        .collect();
    let sub = g.subgroup_generated(set.iter().copied());
    let ok = set.len() == target && sub.order() == target;
    let witness = sub.members().iter().copied().find(|x| set.binary_search(x).is_err());
    (ok, witness)
}

/// `G` acting on `γ_i(G)` by conjugation, p-centrally, has a normal p-complement.
pub fn check_main2(g: &GroupTable, p: u32, i: usize) -> Verdict {
    let mut r = Rec::new("main2", g.name()).param("p", p as u64).param("i", i as u64);
    let lcs = lower_central_series(g);
    let gi = lcs.term(i);
    let bad = gi
        .members()
        .iter()
        .copied()
        .find(|&x| has_small_order(g, x, p) && g.generators().iter().any(|&y| g.mul(x, y) != g.mul(y, x)));
    r.hypothesis_witness(g, bad);
    r.detail("gamma_i_order", gi.order());
    let (ok, w) = normal_p_complement(g, p);
    if let Some(w) = w {
        r.witness(g, w);
    }
    r.finish(bad.is_none(), Some(ok))
}

/// p-central of height `k` (4-central when `p = 2`) implies a normal p-complement.
pub fn check_gw(g: &GroupTable, p: u32, k: usize) -> Result<Verdict> {
    let mut r = Rec::new("gw", g.name()).param("p", p as u64).param("k", k as u64);
    if p == 2 {
        r.detail("variant", "4-central");
    }
    let hyp = is_p_central_of_height(g, p, k)?;
    let (ok, w) = normal_p_complement(g, p);
    if let Some(w) = w {
        r.witness(g, w);
    }
    Ok(r.finish(hyp, Some(ok)))
}

/// A Sylow p-subgroup of `Aut(G)` has exponent `p` for non-cyclic `G` of
/// order at most `p^p` and exponent `p`.
pub fn check_ya1(g: Arc<GroupTable>, budget: u64) -> Result<Verdict> {
    let mut r = Rec::new("ya1", g.name());
    let p = match g.prime() {
        Some(p) => p,
        None => return Ok(r.finish(false, None)),
    };
    let small = (g.order() as u64) <= (p as u64).saturating_pow(p);
    let exp_p = g.exponent() == p as u64;
    let cyclic = (0..g.order()).any(|x| g.element_order(x) == g.order() as u64);
    r.detail(
        "hypothesis_parts",
        json!({"order_at_most_p_to_p": small, "exponent_p": exp_p, "cyclic": cyclic}),
    );
    let hyp = small && exp_p && !cyclic;
    if !hyp {
        return Ok(r.finish(false, None));
    }
    let aut = brute_force_aut(g, budget)?;
    let s = sylow_p_subgroup(&aut.perm, p);
    let e = aut.perm.exponent_of(&s);
    if e != p as u64 {
        if let Some(&x) = s
            .members()
            .iter()
            .find(|&&x| aut.perm.element_order(x) != 1 && aut.perm.element_order(x) != p as u64)
        {
            r.witness(&aut.perm, x);
        }
    }
    r.detail("aut_order", aut.order());
    r.detail("sylow_order", s.order());
    r.detail("sylow_exponent", e);
    Ok(r.finish(true, Some(e == p as u64)))
}

/// Regularity consequences of `Ω(γ_{p−1}(G)) ≤ Z(G)`.
pub fn check_l4(g: &GroupTable) -> Result<Verdict> {
    let p = g.require_prime()?;
    let mut r = Rec::new("l4", g.name());
    let lcs = lower_central_series(g);
    let om = omega_conv_of(g, lcs.term((p as usize - 1).max(1)), p);
    let z = g.center();
    let bad = first_outside(&om, &z);
    r.hypothesis_witness(g, bad);
    let whole = g.whole();
    let mut ok = true;
    for n in 1..=log_p(g.exponent(), p as u64) + 1 {
        let regular = is_omega_regular_of(g, &whole, p, n);
        let index = if p == 2 {
            true
        } else {
            xu_inequality_of(g, &whole, p, n)?.holds
        };
        if !(regular && index) {
            ok = false;
            r.detail("failing_n", n);
            break;
        }
    }
    Ok(r.finish(bad.is_none(), Some(ok)))
}

/// Stored expectations for a catalog group.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    pub order: Option<usize>,
    pub exponent: Option<u64>,
    /// Nilpotency class; `-1` for non-nilpotent groups.
    pub class: Option<i64>,
}

impl Expectation {
    pub fn is_empty(&self) -> bool {
        self.order.is_none() && self.exponent.is_none() && self.class.is_none()
    }
}

pub fn check_catalog(g: &GroupTable, expect: &Expectation) -> Verdict {
    let mut r = Rec::new("catalog", g.name());
    let class = nilpotency_class(g).map_or(-1, |c| c as i64);
    let observed = Expectation {
        order: Some(g.order()),
        exponent: Some(g.exponent()),
        class: Some(class),
    };
    let ok = expect.order.is_none_or(|v| Some(v) == observed.order)
        && expect.exponent.is_none_or(|v| Some(v) == observed.exponent)
        && expect.class.is_none_or(|v| Some(v) == observed.class);
    r.detail("expected", expect);
    r.detail("observed", &observed);
    r.finish(true, Some(ok))
}

/// The two readings of the σ example's p-centrality claim.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SigmaWording {
    pub p: u32,
    pub e_order: usize,
    pub sigma_order: u64,
    pub exp_commutator: u64,
    /// `dim γ_p(E,A)` from the normal-closure series.
    pub gamma_p_dim: u32,
    /// The same from the definitional search, when `|E|` is within the limit.
    pub gamma_p_dim_definitional: Option<u32>,
    pub p_central_on_gamma_p: bool,
    /// `dim [E, _p A]`.
    pub iterated_dim: u32,
    pub p_central_on_iterated: bool,
    /// Which reading the example's claim holds under.
    pub claim_holds_for: Vec<String>,
}

pub fn sigma_wording(p: u32, definitional_limit: usize) -> Result<SigmaWording> {
    let pair = sigma_pair(p)?;
    let e = pair.group();
    let series = pair.gamma_ga(p as usize + 1);
    let gamma_p = series.term(p as usize).expect("computed");
    // E is abelian, so [E, _p A] is the p-fold A-commutator of E
    let mut iterated = e.whole();
    for _ in 0..p {
        let seeds: Vec<usize> = iterated
            .members()
            .iter()
            .map(|&x| pair.mixed_commutator(x, &pair.a_generators()[0]))
            .collect();
        iterated = e.subgroup_generated(seeds);
    }
    let dim = |s: &Subgroup| log_p(s.order() as u64, p as u64);
    let gamma_p_dim_definitional = if e.order() <= definitional_limit {
        Some(dim(&pair.gamma_ga_definitional(p as usize, e.order() * p as usize + 1)?))
    } else {
        None
    };
    let on_gamma = pair.is_p_central_action_at(gamma_p, p);
    let on_iter = pair.is_p_central_action_at(&iterated, p);
    let mut claim_holds_for = Vec::new();
    if on_gamma {
        claim_holds_for.push("gamma_p(E,A)".to_string());
    }
    if on_iter {
        claim_holds_for.push("[E,_pA]".to_string());
    }
    Ok(SigmaWording {
        p,
        e_order: e.order(),
        sigma_order: pair.a_generators()[0].order(),
        exp_commutator: e.exponent_of(&pair.commutator_ga()),
        gamma_p_dim: dim(gamma_p),
        gamma_p_dim_definitional,
        p_central_on_gamma_p: on_gamma,
        iterated_dim: dim(&iterated),
        p_central_on_iterated: on_iter,
        claim_holds_for,
    })
}

/// Report-only verdict: always passes; the content is in `details`.
pub fn check_sigma_wording(p: u32, definitional_limit: usize) -> Result<Verdict> {
    let mut r = Rec::new("sigma.wording", &format!("sigma_pair({p})")).param("p", p as u64);
    let report = sigma_wording(p, definitional_limit)?;
    r.detail("report", &report);
    r.detail("gate", false);
    Ok(r.finish(true, Some(true)))
}
