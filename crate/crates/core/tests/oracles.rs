//! Engine results against the naive reference implementations in `common`.

mod common;

use std::collections::HashMap;
use std::sync::Arc;

use common::{KeySet, NaiveGroup};
use pcentral::autsearch::brute_force_aut;
use pcentral::catalog::{build_str, sigma_pair, sigma_power_closed_form};
use pcentral::corpus::ExperimentConfig;
use pcentral::series::{lower_central_series, nilpotency_class};
use pcentral::verify::{check_corollary_cor, normal_p_complement, sigma_wording};
use pcentral::{Element, ElementKey, FpMatrix, GroupTable};

fn naive(g: &GroupTable) -> NaiveGroup {
    let gens: Vec<Element> = if g.generators().is_empty() {
        vec![g.element(g.identity()).clone()]
    } else {
        g.generators().iter().map(|&x| g.element(x).clone()).collect()
    };
    NaiveGroup::generated(&gens)
}

fn keys(g: &GroupTable, s: &pcentral::Subgroup) -> KeySet {
    s.members().iter().map(|&x| g.key(x)).collect()
}

#[test]
fn default_corpus_expectations_match_naive_oracle() {
    let cfg = ExperimentConfig::default_corpus();
    for entry in &cfg.corpus {
        let Some(expect) = &entry.expect else { continue };
        let g = build_str(&entry.group).unwrap();
        let n = naive(&g);
        assert_eq!(expect.order, Some(n.order()), "{}", entry.group);
        assert_eq!(expect.exponent, Some(n.exponent()), "{}", entry.group);
        assert_eq!(expect.class, Some(n.class()), "{}", entry.group);
        assert_eq!(g.order(), n.order());
        assert_eq!(g.exponent(), n.exponent());
        assert_eq!(nilpotency_class(&g).map_or(-1, |c| c as i64), n.class());
    }
}

#[test]
fn lower_central_series_matches_naive() {
    for spec in ["ut(4,2)", "wreath_cp_cp(3)", "sym(4)", "dihedral(32)", "sl2_3"] {
        let g = build_str(spec).unwrap();
        let n = naive(&g);
        assert_eq!(lower_central_series(&g).orders(), n.lower_central_orders(), "{spec}");
        let all = n.all_keys();
        let derived = n.commutator_of(&all, &all);
        let w = g.whole();
        assert_eq!(keys(&g, &g.commutator_subgroup(&w, &w)), derived, "{spec}");
        assert_eq!(keys(&g, &g.center()), n.center(), "{spec}");
    }
}

/// `exp(G/Z)` as the least `e` with `x^e ∈ Z` for every `x`.
fn naive_central_quotient_exponent(n: &NaiveGroup) -> u64 {
    let z = n.center();
    (1..)
        .find(|&e| n.elements.values().all(|x| z.contains(&x.power(e).key())))
        .unwrap()
}

#[test]
fn corollary_exponents_against_naive() {
    for (spec, both) in [("heisenberg(3)", 3), ("quaternion(8)", 2)] {
        let g = build_str(spec).unwrap();
        let n = naive(&g);
        let all = n.all_keys();
        let derived = n.commutator_of(&all, &all);
        let exp_derived = derived
            .iter()
            .map(|k| NaiveGroup::element_order(&n.elements[k]))
            .max()
            .unwrap();
        assert_eq!(exp_derived, both);
        assert_eq!(naive_central_quotient_exponent(&n), both);
        let (cor, _) = check_corollary_cor(&g).unwrap();
        assert_eq!(cor.details["exp_derived"], both);
        assert_eq!(cor.details["exp_central_quotient"], both);
    }
}

#[test]
fn normal_complement_against_naive() {
    for (spec, p, expected) in [
        ("direct_product(quaternion(8),cyclic(3,1))", 2, true),
        ("sym(3)", 3, false),
        ("sym(3)", 2, true),
        ("alt(4)", 3, true),
        ("alt(4)", 2, false),
        ("sl2_3", 2, false),
        ("sym(4)", 2, false),
    ] {
        let g = build_str(spec).unwrap();
        let n = naive(&g);
        let pp = |mut m: u64| {
            while m.is_multiple_of(p as u64) {
                m /= p as u64;
            }
            m
        };
        let coprime: Vec<&Element> = n
            .elements
            .values()
            .filter(|x| !NaiveGroup::element_order(x).is_multiple_of(p as u64))
            .collect();
        let closed = coprime.iter().all(|x| {
            coprime
                .iter()
                .all(|y| !NaiveGroup::element_order(&x.multiply(y).unwrap()).is_multiple_of(p as u64))
        });
        let naive_answer = closed && coprime.len() as u64 == pp(n.order() as u64);
        assert_eq!(naive_answer, expected, "{spec} p={p}");
        assert_eq!(normal_p_complement(&g, p).0, expected, "{spec} p={p}");
    }
}

/// Automorphisms counted by trying every image tuple for the generators.
fn naive_aut_count(g: &GroupTable) -> usize {
    let n = naive(g);
    let gens: Vec<Element> = g.generators().iter().map(|&x| g.element(x).clone()).collect();
    let elems: Vec<Element> = n.elements.values().cloned().collect();
    let mut count = 0;
    let mut tuple = vec![0usize; gens.len()];
    loop {
        let images: Vec<&Element> = tuple.iter().map(|&i| &elems[i]).collect();
        let one = gens[0].identity_like();
        let mut f: HashMap<ElementKey, Element> = HashMap::new();
        f.insert(one.key(), one.clone());
        let mut stack = vec![one];
        let mut hom = true;
        'bfs: while let Some(x) = stack.pop() {
            let fx = f[&x.key()].clone();
            for (gi, g) in gens.iter().enumerate() {
                let y = x.multiply(g).unwrap();
                let fy = fx.multiply(images[gi]).unwrap();
                match f.get(&y.key()) {
                    Some(prev) if *prev != fy => {
                        hom = false;
                        break 'bfs;
                    }
                    Some(_) => {}
                    None => {
                        f.insert(y.key(), fy);
                        stack.push(y);
                    }
                }
            }
        }
        if hom {
            let image: KeySet = f.values().map(Element::key).collect();
            if image.len() == n.order() {
                count += 1;
            }
        }
        let mut i = 0;
        loop {
            if i == tuple.len() {
                return count;
            }
            tuple[i] += 1;
            if tuple[i] < elems.len() {
                break;
            }
            tuple[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn automorphism_counts_against_naive() {
    for (spec, known) in [
        ("quaternion(8)", 24),
        ("dihedral(8)", 8),
        ("cyclic(3,2)", 6),
        ("elementary_abelian(3,2)", 48),
        ("elementary_abelian(2,2)", 6),
        ("heisenberg(3)", 432),
        ("sym(3)", 6),
    ] {
        let g = Arc::new(build_str(spec).unwrap());
        let naive_count = naive_aut_count(&g);
        assert_eq!(naive_count, known, "{spec}");
        assert_eq!(brute_force_aut(g, 10_000_000).unwrap().order(), known, "{spec}");
    }
}

fn span(p: u32, vectors: &[Vec<u32>]) -> std::collections::BTreeSet<Vec<u32>> {
    let n = vectors.first().map_or(0, Vec::len);
    let mut set = std::collections::BTreeSet::new();
    set.insert(vec![0; n]);
    for w in vectors {
        if set.contains(w) {
            continue;
        }
        let mut grown = set.clone();
        for v in &set {
            let mut x = v.clone();
            for _ in 1..p {
                x = x.iter().zip(w).map(|(a, b)| (a + b) % p).collect();
                grown.insert(x.clone());
            }
        }
        set = grown;
    }
    set
}

fn all_vectors(p: u32, n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                (0..p).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// `(σ^j − 1) v` for every `j` and every `v` in `s`.
fn commutate(p: u32, sigma: &FpMatrix, s: &std::collections::BTreeSet<Vec<u32>>, all_of_a: bool) -> Vec<Vec<u32>> {
    let mut powers = vec![sigma.clone()];
    if all_of_a {
        while !powers.last().unwrap().is_identity() {
            let next = powers.last().unwrap().mul(sigma).unwrap();
            powers.push(next);
        }
    }
    let mut out = Vec::new();
    for m in &powers {
        for v in s {
            let w = m.apply(v);
            out.push(w.iter().zip(v).map(|(a, b)| (a + p - b) % p).collect());
        }
    }
    out
}

#[test]
fn sigma_example_against_vector_oracle() {
    for p in [2u32, 3, 5] {
        let n = p as usize + 1;
        let sigma = FpMatrix::jordan_block(p, n).unwrap();
        let mut m = FpMatrix::identity(p, n).unwrap();
        let mut order = 0;
        loop {
            m = m.mul(&sigma).unwrap();
            order += 1;
            if m.is_identity() {
                break;
            }
        }
        assert_eq!(order, (p * p) as u64);

        let pair = sigma_pair(p).unwrap();
        assert_eq!(pair.a_order() as u64, order);

        // E abelian: γ_{i+1}(E,A) = [γ_i, A]
        let full = span(p, &all_vectors(p, n));
        let mut gamma = full.clone();
        for _ in 1..p {
            gamma = span(p, &commutate(p, &sigma, &gamma, true));
        }
        let mut iterated = full;
        for _ in 0..p {
            iterated = span(p, &commutate(p, &sigma, &iterated, false));
        }
        let dim = |s: &std::collections::BTreeSet<Vec<u32>>| (s.len() as f64).log(p as f64).round() as u32;
        // p-central: A fixes every element of small order, which here is every element
        let fixed = |s: &std::collections::BTreeSet<Vec<u32>>| s.iter().all(|v| sigma.apply(v) == *v);

        let report = sigma_wording(p, 4096).unwrap();
        assert_eq!(report.gamma_p_dim, dim(&gamma), "p={p}");
        assert_eq!(report.iterated_dim, dim(&iterated), "p={p}");
        assert_eq!(report.p_central_on_gamma_p, fixed(&gamma), "p={p}");
        assert_eq!(report.p_central_on_iterated, fixed(&iterated), "p={p}");
        assert_eq!(report.exp_commutator, p as u64);
        if p == 3 {
            assert_eq!((dim(&gamma), fixed(&gamma)), (2, false));
            assert_eq!((dim(&iterated), fixed(&iterated)), (1, true));
        }
    }
}

#[test]
fn closed_form_against_repeated_multiplication() {
    for p in [2u32, 3, 5] {
        let sigma = FpMatrix::jordan_block(p, p as usize + 1).unwrap();
        let mut m = FpMatrix::identity(p, p as usize + 1).unwrap();
        for n in 0..=(p * p) as u64 {
            assert_eq!(sigma_power_closed_form(p, n).unwrap(), m, "p={p} n={n}");
            m = m.mul(&sigma).unwrap();
        }
    }
}
