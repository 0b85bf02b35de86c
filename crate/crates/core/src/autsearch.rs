//! Exhaustive automorphism groups of small groups and Sylow subgroups by extension.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::backend::{Element, Permutation};
use crate::catalog::tag_prime;
use crate::error::{Error, Result};
use crate::group::{is_power_of, p_part, Automorphism, GroupTable, Subgroup, DEFAULT_CAP};

/// Default number of search nodes (partial image tuples) before giving up.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug)]
pub struct AutGroupResult {
    pub domain: Arc<GroupTable>,
    /// Sorted by generator images.
    pub automorphisms: Vec<Automorphism>,
    /// The automorphisms as permutations of the element indices of the domain.
    pub perm: Arc<GroupTable>,
    pub nodes: u64,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AutSummary {
    pub group: String,
    pub group_order: usize,
    pub aut_order: usize,
    pub inner_order: usize,
    pub prime: Option<u32>,
    pub p_part: Option<u64>,
    pub sylow_exponent: Option<u64>,
    pub nodes: u64,
}

impl AutGroupResult {
    pub fn order(&self) -> usize {
        self.automorphisms.len()
    }

    pub fn summary(&self) -> AutSummary {
        let g = &self.domain;
        let prime = g.prime();
        let (p_part, sylow_exponent) = match prime {
            Some(p) => {
                let s = sylow_p_subgroup(&self.perm, p);
                (Some(s.order() as u64), Some(self.perm.exponent_of(&s)))
            }
            None => (None, None),
        };
        AutSummary {
            group: g.name().to_string(),
            group_order: g.order(),
            aut_order: self.order(),
            inner_order: g.order() / g.center().order(),
            prime,
            p_part,
            sylow_exponent,
            nodes: self.nodes,
        }
    }

    /// The automorphism represented by an element of `perm`.
    pub fn automorphism_at(&self, idx: usize) -> Result<Automorphism> {
        match self.perm.element(idx) {
            Element::Perm(q) => Automorphism::from_map(&self.domain, q.images().to_vec()),
            Element::Matrix(_) => unreachable!("permutation group"),
        }
    }
}

/// Greedy generating sequence: repeatedly adjoin the highest-order element
/// not yet covered, breaking ties by canonical index.
pub fn minimal_generating_sequence(g: &GroupTable) -> Vec<usize> {
    let mut h = g.trivial_subgroup();
    let mut seq = Vec::new();
    while h.order() < g.order() {
        let x = (0..g.order())
            .filter(|&x| !h.contains(x))
            .max_by(|&a, &b| g.element_order(a).cmp(&g.element_order(b)).then(b.cmp(&a)))
            .expect("proper subgroup has a complement element");
        h = g.extend(&h, x);
        seq.push(x);
    }
    seq
}

/// Extends `gens[i] ↦ imgs[i]` over `⟨gens⟩`; `None` if it is not a
/// well-defined injective homomorphism there.
fn partial_map(g: &GroupTable, gens: &[usize], imgs: &[usize]) -> Option<usize> {
    let n = g.order();
    let mut map = vec![u32::MAX; n];
    let mut hit = vec![false; n];
    map[g.identity()] = g.identity() as u32;
    hit[g.identity()] = true;
    let mut stack = vec![g.identity()];
    let mut size = 1;
    while let Some(x) = stack.pop() {
        let fx = map[x] as usize;
        for (&s, &t) in gens.iter().zip(imgs) {
            let y = g.mul(x, s);
            let fy = g.mul(fx, t);
            if map[y] == u32::MAX {
                if std::mem::replace(&mut hit[fy], true) {
                    return None;
                }
                map[y] = fy as u32;
                size += 1;
                stack.push(y);
            } else if map[y] as usize != fy {
                return None;
            }
        }
    }
    Some(size)
}

struct Search<'a> {
    g: &'a GroupTable,
    seq: &'a [usize],
    candidates: Vec<Vec<usize>>,
    sizes: Vec<usize>,
    nodes: &'a AtomicU64,
    budget: u64,
}

impl Search<'_> {
    fn descend(&self, imgs: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) -> Result<()> {
        let j = imgs.len();
        if j == self.seq.len() {
            out.push(imgs.clone());
            return Ok(());
        }
        for &y in &self.candidates[j] {
            if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
                return Err(Error::BudgetExceeded(self.budget));
            }
            imgs.push(y);
            // the image of ⟨g_1..g_j⟩ must have the same size as ⟨g_1..g_j⟩
            if partial_map(self.g, &self.seq[..=j], imgs) == Some(self.sizes[j]) {
                self.descend(imgs, out)?;
            }
            imgs.pop();
        }
        Ok(())
    }
}

/// All automorphisms of `g`, by backtracking over generator images.
pub fn brute_force_aut(g: Arc<GroupTable>, budget: u64) -> Result<AutGroupResult> {
    let seq = minimal_generating_sequence(&g);
    if seq.is_empty() {
        let id = Automorphism::identity(&g);
        let perm = Arc::new(GroupTable::close(&[Permutation::identity(1)?.into()], 1)?);
        return Ok(AutGroupResult {
            domain: g,
            automorphisms: vec![id],
            perm,
            nodes: 0,
        });
    }
    let candidates: Vec<Vec<usize>> = seq
        .iter()
        .map(|&s| {
            let o = g.element_order(s);
            (0..g.order()).filter(|&y| g.element_order(y) == o).collect()
        })
        .collect();
    let mut sizes = Vec::with_capacity(seq.len());
    let mut h = g.trivial_subgroup();
    for &s in &seq {
        h = g.extend(&h, s);
        sizes.push(h.order());
    }
    let nodes = AtomicU64::new(0);
    let search = Search {
        g: &g,
        seq: &seq,
        candidates,
        sizes,
        nodes: &nodes,
        budget,
    };
    let tuples: Vec<Vec<Vec<usize>>> = search.candidates[0]
        .par_iter()
        .map(|&y| {
            let mut out = Vec::new();
            nodes.fetch_add(1, Ordering::Relaxed);
            let mut imgs = vec![y];
            if partial_map(&g, &seq[..1], &imgs) == Some(search.sizes[0]) {
                search.descend(&mut imgs, &mut out)?;
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut automorphisms = tuples
        .into_iter()
        .flatten()
        .map(|imgs| Automorphism::from_images(&g, &seq, &imgs))
        .collect::<Result<Vec<_>>>()?;
    automorphisms.sort_by(|a, b| a.generator_images().cmp(b.generator_images()));
    automorphisms.dedup_by(|a, b| a.aut_equal(b));
    let perm = Arc::new(realize(&g, &automorphisms)?);
    Ok(AutGroupResult {
        domain: g,
        automorphisms,
        perm,
        nodes: nodes.load(Ordering::Relaxed),
    })
}

/// Permutation group generated by a greedily chosen subset of `autos`, checked to have order `|autos|`.
fn realize(g: &GroupTable, autos: &[Automorphism]) -> Result<GroupTable> {
    let as_perm = |a: &Automorphism| -> Result<Element> { Ok(Permutation::new(a.map().to_vec())?.into()) };
    let cap = DEFAULT_CAP.max(autos.len());
    let mut gens = vec![Permutation::identity(g.order())?.into()];
    let mut t = GroupTable::close(&gens, cap)?;
    for a in autos {
        if t.order() == autos.len() {
            break;
        }
        let e = as_perm(a)?;
        if t.index_of(&e).is_none() {
            gens.push(e);
            t = GroupTable::close(&gens, cap)?;
        }
    }
    if t.order() != autos.len() {
        return Err(Error::Mismatch(format!(
            "automorphisms generate a group of order {} but {} were found",
            t.order(),
            autos.len()
        )));
    }
    let hint = g.prime().filter(|&p| is_power_of(t.order() as u64, p as u64));
    Ok(tag_prime(t, hint)?.with_name(format!("Aut({})", g.name())))
}

fn is_p_element(g: &GroupTable, x: usize, p: u32) -> bool {
    is_power_of(g.element_order(x), p as u64)
}

/// A Sylow `p`-subgroup grown one normalizing `p`-element at a time.
pub fn sylow_p_subgroup(g: &GroupTable, p: u32) -> Subgroup {
    let target = p_part(g.order() as u64, p as u64) as usize;
    let whole = g.whole();
    let mut s = g.trivial_subgroup();
    while s.order() < target {
        let n = g.normalizer_in(&s, &whole);
        let x = n
            .members()
            .iter()
            .copied()
            .find(|&x| !s.contains(x) && is_p_element(g, x, p))
            .expect("a non-Sylow p-subgroup has a p-element of its normalizer outside it");
        s = g.extend(&s, x);
        assert!(
            is_power_of(s.order() as u64, p as u64),
            "extension left the p-subgroups"
        );
    }
    s
}
