//! Invariants over catalog groups and action pairs, with proptest choosing
//! the group, the pair and the random elements.

use std::sync::Arc;

use proptest::prelude::*;

use pcentral::action::ActionPair;
use pcentral::autsearch::brute_force_aut;
use pcentral::catalog::build_str;
use pcentral::corpus::{build_action, run_corpus, ActionSpec, Caps, ExperimentConfig};
use pcentral::series::{
    agemo, describe, is_omega_regular, lower_central_series, omega_conv, omega_set, omega_subgroup,
    upper_central_series,
};
use pcentral::verify::{self, Facts, Outcome};
use pcentral::{Element, GroupTable};

const GROUPS: &[&str] = &[
    "elementary_abelian(2,3)",
    "elementary_abelian(3,2)",
    "cyclic(2,3)",
    "cyclic(3,2)",
    "heisenberg(2)",
    "heisenberg(3)",
    "heisenberg(5)",
    "ut(4,2)",
    "dihedral(16)",
    "dihedral(32)",
    "quaternion(8)",
    "wreath_cp_cp(3)",
    "direct_product(quaternion(8),cyclic(2,1))",
    "direct_product(heisenberg(3),cyclic(3,1))",
];

const MIXED: &[&str] = &[
    "sym(3)",
    "sym(4)",
    "alt(4)",
    "sl2_3",
    "c3_by_c4",
    "direct_product(quaternion(8),cyclic(3,1))",
];

const PAIRS: &[(&str, &str)] = &[
    ("elementary_abelian(2,3)", "jordan"),
    ("elementary_abelian(3,3)", "jordan"),
    ("elementary_abelian(3,4)", "jordan"),
    ("elementary_abelian(3,4)", "jordan_power(3)"),
    ("elementary_abelian(5,2)", "jordan"),
    ("elementary_abelian(3,2)", "full_aut"),
    ("heisenberg(3)", "inner"),
    ("heisenberg(3)", "sylow_aut"),
    ("heisenberg(3)", "trivial"),
    ("quaternion(8)", "full_aut"),
    ("dihedral(16)", "sylow_aut"),
    ("ut(4,2)", "inner"),
    ("wreath_cp_cp(3)", "inner"),
    ("cyclic(3,2)", "full_aut"),
];

fn group(spec: &str) -> GroupTable {
    build_str(spec).unwrap()
}

fn pair(g: &str, a: &str) -> ActionPair {
    let g = Arc::new(group(g));
    build_action(&g, &ActionSpec::parse(a).unwrap(), &Caps::default()).unwrap()
}

fn any_group() -> impl Strategy<Value = &'static str> {
    prop::sample::select(GROUPS.iter().chain(MIXED).copied().collect::<Vec<_>>())
}

fn p_group() -> impl Strategy<Value = &'static str> {
    prop::sample::select(GROUPS.to_vec())
}

fn any_pair() -> impl Strategy<Value = (&'static str, &'static str)> {
    prop::sample::select(PAIRS.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn backend_associativity_and_powers(spec in any_group(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>(), c in any::<prop::sample::Index>(), j in 0u64..40, k in 0u64..40) {
        let g = group(spec);
        let n = g.order();
        let (x, y, z) = (g.element(a.index(n)), g.element(b.index(n)), g.element(c.index(n)));
        let l = x.multiply(y).unwrap().multiply(z).unwrap();
        let r = x.multiply(&y.multiply(z).unwrap()).unwrap();
        prop_assert_eq!(l.key(), r.key());
        prop_assert_eq!(x.power(j + k).key(), x.power(j).multiply(&x.power(k)).unwrap().key());
        let order = g.element_order(a.index(n));
        prop_assert_eq!(x.invert().unwrap().key(), x.power(order - 1).key());
    }

    #[test]
    fn keys_round_trip(spec in any_group()) {
        let g = group(spec);
        for i in 0..g.order() {
            let k = g.key(i);
            prop_assert_eq!(Element::decode(&k).unwrap().key(), k.clone());
            prop_assert_eq!(g.index_of_key(&k).unwrap(), i);
        }
    }

    #[test]
    fn lagrange_and_quotients(spec in any_group(), s in any::<prop::sample::Index>(), t in any::<prop::sample::Index>()) {
        let g = group(spec);
        let n = g.order();
        let h = g.subgroup_generated([s.index(n), t.index(n)]);
        prop_assert_eq!(n % h.order(), 0);
        let w = g.whole();
        let normals = [g.center(), g.commutator_subgroup(&w, &w), g.normal_closure([s.index(n)])];
        for k in normals {
            prop_assert_eq!(n % k.order(), 0);
            let q = g.quotient(&k).unwrap();
            prop_assert_eq!(q.order() * k.order(), n);
            let mut hit = vec![false; q.order()];
            for x in 0..n {
                hit[q.project(x)] = true;
                prop_assert_eq!(q.project(x) == q.project(g.identity()), k.contains(x));
            }
            prop_assert!(hit.iter().all(|&b| b));
        }
    }

    #[test]
    fn series_monotonicity(spec in p_group()) {
        let g = group(spec);
        let lcs = lower_central_series(&g);
        for w in lcs.terms.windows(2) {
            prop_assert!(w[1].is_subset_of(&w[0]));
            prop_assert!(w[1].order() < w[0].order());
        }
        prop_assert!(lcs.last().is_trivial());
        let ucs = upper_central_series(&g).unwrap();
        for w in ucs.terms.windows(2) {
            prop_assert!(w[0].is_subset_of(&w[1]));
        }
        let p = g.prime().unwrap() as u64;
        let m = pcentral::group::log_p(g.exponent(), p);
        for i in 1..=m + 1 {
            prop_assert!(omega_subgroup(&g, i).unwrap().is_subset_of(&omega_subgroup(&g, i + 1).unwrap()));
            prop_assert!(agemo(&g, i + 1).unwrap().is_subset_of(&agemo(&g, i).unwrap()));
            if is_omega_regular(&g, i).unwrap() {
                prop_assert_eq!(omega_subgroup(&g, i).unwrap().order(), omega_set(&g, i).unwrap().len());
            }
        }
        prop_assert_eq!(omega_set(&g, m).unwrap().len(), g.order());
        if m > 0 {
            prop_assert!(omega_set(&g, m - 1).unwrap().len() < g.order());
        }
    }

    #[test]
    fn automorphisms_respect_characteristic_subgroups(spec in prop::sample::select(vec!["quaternion(8)", "dihedral(8)", "heisenberg(3)", "elementary_abelian(2,3)", "sym(3)", "cyclic(3,2)"]), pick in any::<prop::sample::Index>()) {
        let g = Arc::new(group(spec));
        let aut = brute_force_aut(Arc::clone(&g), 10_000_000).unwrap();
        let a = &aut.automorphisms[pick.index(aut.automorphisms.len())];
        for x in 0..g.order() {
            prop_assert_eq!(g.element_order(a.apply(x)), g.element_order(x));
        }
        let w = g.whole();
        prop_assert!(a.preserves(&g.center()));
        prop_assert!(a.preserves(&g.commutator_subgroup(&w, &w)));
        if g.prime().is_some() {
            prop_assert!(a.preserves(&omega_conv(&g).unwrap()));
        }
    }

    #[test]
    fn mixed_series_normal_and_invariant(pr in any_pair()) {
        let pair = pair(pr.0, pr.1);
        let g = pair.group();
        let s = pair.gamma_ga_full();
        for t in &s.terms {
            prop_assert!(g.is_normal(t));
            prop_assert!(pair.is_invariant(t));
        }
        prop_assert_eq!(pair.commutator_ga(), pair.gamma_ga(2).term(2).unwrap().clone());
        if g.order() <= 256 {
            let defs = pair.gamma_ga_definitional_series(5, g.order() * 5 + 1, 200_000_000).unwrap();
            for (k, d) in (1..=5).zip(&defs) {
                prop_assert_eq!(d, s.term(k).unwrap());
            }
        }
    }

    #[test]
    fn verdict_shape_and_main1_exponents(pr in any_pair()) {
        let pair = pair(pr.0, pr.1);
        let f = Facts::new(&pair).unwrap();
        let mut vs = vec![
            verify::check_theorem_main1(&f),
            verify::check_lemma_l0_1(&f),
            verify::check_lemma_l0_3(&f),
            verify::check_lemma_l2(&f),
            verify::check_p8(&f),
            verify::check_c5(&f).unwrap(),
        ];
        for k in 2..=4 {
            vs.push(verify::check_lemma_l1(&f, k));
        }
        for i in 1..=3 {
            vs.push(verify::check_p7(&f, i));
            vs.push(verify::check_lemma_l6(&f, 1, i as u32).unwrap());
            vs.push(verify::check_lemma_l6prime(&f, 1, i as u32).unwrap());
        }
        for v in &vs {
            prop_assert_eq!(v.conclusion == Outcome::Skipped, v.hypothesis == Outcome::Fail, "{}", v.check);
            prop_assert!(!v.is_failure(), "{} on {}", v.check, v.subject);
        }
        if vs[0].hypothesis == Outcome::Pass {
            prop_assert_eq!(g_exp(&pair), f.a_perm.exponent());
        }
    }

    #[test]
    fn group_checks_shape(spec in any_group(), i in 1usize..5) {
        let g = Arc::new(group(spec));
        let mut vs = Vec::new();
        for p in [2u32, 3] {
            vs.push(verify::check_main2(&g, p, i));
            vs.push(verify::check_gw(&g, p, i).unwrap());
        }
        if g.prime().is_some() {
            let (a, b) = verify::check_corollary_cor(&g).unwrap();
            vs.push(a);
            vs.push(b);
            vs.push(verify::check_l4(&g).unwrap());
        }
        for v in &vs {
            prop_assert_eq!(v.conclusion == Outcome::Skipped, v.hypothesis == Outcome::Fail, "{}", v.check);
            prop_assert!(!v.is_failure(), "{} on {}", v.check, v.subject);
        }
    }

    #[test]
    fn builds_are_deterministic(spec in any_group()) {
        let a = group(spec);
        let b = group(spec);
        prop_assert_eq!(a.order(), b.order());
        prop_assert!((0..a.order()).all(|i| a.key(i) == b.key(i)));
        prop_assert_eq!(describe(&a).unwrap(), describe(&b).unwrap());
    }
}

fn g_exp(pair: &ActionPair) -> u64 {
    pair.group().exponent_of(&pair.commutator_ga())
}

#[test]
fn corpus_runs_are_deterministic() {
    let cfg = ExperimentConfig::from_toml_str(
        r#"
parallelism = 2
sigma = [3]
[[corpus]]
group = "heisenberg(3)"
actions = ["inner", "sylow_aut"]
[[corpus]]
group = "dihedral(16)"
actions = ["inner"]
[[corpus]]
group = "sym(4)"
"#,
    )
    .unwrap();
    let dir = tempfile::tempdir().unwrap();
    let a = run_corpus(&cfg, dir.path()).unwrap();
    let b = run_corpus(&cfg, dir.path()).unwrap();
    let strip = |r: &pcentral::RunReport| r.verdicts().map(|v| v.untimed()).collect::<Vec<_>>();
    assert_eq!(strip(&a), strip(&b));
    assert!(!a.records.is_empty());
    assert_eq!(a.exit_code(), 0);
}
