//! A group `A` of automorphisms acting on an enumerated group `G`.
//!
//! Mixed commutators use `[g, a] = g⁻¹·a(g)`, which is the inner commutator
//! `g⁻¹a⁻¹ga` read inside the semidirect product `G ⋊ A`.

use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::backend::{Element, Permutation};
use crate::catalog::tag_prime;
use crate::error::{Error, Result};
use crate::group::{is_power_of, Automorphism, GroupTable, QuotientGroup, Subgroup, DEFAULT_CAP};
use crate::series::{has_small_order, omega_subgroup_of};

/// Default bound on `|A|`.
pub const A_CAP: usize = 10_000;

/// Default transition budget for the definitional γ oracle.
pub const DEFINITIONAL_BUDGET: u64 = 200_000_000;

#[derive(Debug)]
pub struct ActionPair {
    group: Arc<GroupTable>,
    a_gens: Vec<Automorphism>,
    a_elements: Vec<Automorphism>,
    label: String,
    perm: OnceLock<Arc<GroupTable>>,
}

/// `γ_1(G,A) ⊇ γ_2(G,A) ⊇ …`, truncated at stabilization or at the requested length.
#[derive(Clone, Debug)]
pub struct MixedSeries {
    pub terms: Vec<Subgroup>,
    /// 1-based index of the first term equal to its successor, if reached.
    pub stabilized_at: Option<usize>,
}

impl MixedSeries {
    /// `γ_k(G,A)`; past the stable point the last term repeats.
    pub fn term(&self, k: usize) -> Option<&Subgroup> {
        let k = k.max(1);
        if k <= self.terms.len() {
            Some(&self.terms[k - 1])
        } else if self.stabilized_at.is_some() {
            self.terms.last()
        } else {
            None
        }
    }

    pub fn orders(&self) -> Vec<usize> {
        self.terms.iter().map(Subgroup::order).collect()
    }
}

/// Both sides of `σ^{p^n} = 1 ⟺ σ acts trivially on G/Ω_n([G,A])`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct P8Outcome {
    pub n: u32,
    pub order_divides: bool,
    pub acts_trivially: bool,
    pub holds: bool,
}

impl ActionPair {
    /// Closes `gens` under composition. Every generator must be an automorphism of `group`.
    pub fn new(group: Arc<GroupTable>, gens: Vec<Automorphism>) -> Result<ActionPair> {
        Self::with_cap(group, gens, A_CAP)
    }

    pub fn with_cap(group: Arc<GroupTable>, gens: Vec<Automorphism>, cap: usize) -> Result<ActionPair> {
        if gens.iter().any(|a| a.domain_order() != group.order()) {
            return Err(Error::DomainMismatch);
        }
        let id = Automorphism::identity(&group);
        let mut seen: HashMap<Vec<u32>, ()> = HashMap::new();
        seen.insert(id.generator_images().to_vec(), ());
        let mut elements = vec![id];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for s in &gens {
                let next = elements[i].compose(s)?;
                if seen.insert(next.generator_images().to_vec(), ()).is_none() {
                    if elements.len() >= cap {
                        return Err(Error::CapExceeded(cap));
                    }
                    elements.push(next);
                    queue.push_back(elements.len() - 1);
                }
            }
        }
        Ok(ActionPair {
            group,
            a_gens: gens,
            a_elements: elements,
            label: String::new(),
            perm: OnceLock::new(),
        })
    }

    pub fn trivial(group: Arc<GroupTable>) -> ActionPair {
        Self::new(group, Vec::new())
            .expect("trivial action always closes")
            .with_label("trivial")
    }

    /// `G` acting on itself by conjugation, generated by the inner automorphisms of its generators.
    pub fn inner(group: Arc<GroupTable>) -> Result<ActionPair> {
        let gens = group
            .generators()
            .iter()
            .map(|&h| Automorphism::inner(&group, h))
            .filter(|a| !a.is_identity())
            .collect();
        Ok(Self::new(group, gens)?.with_label("inner"))
    }

    pub fn with_label(mut self, label: impl Into<String>) -> ActionPair {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn shared_group(&self) -> Arc<GroupTable> {
        Arc::clone(&self.group)
    }

    pub fn a_generators(&self) -> &[Automorphism] {
        &self.a_gens
    }

    pub fn a_elements(&self) -> &[Automorphism] {
        &self.a_elements
    }

    pub fn a_order(&self) -> usize {
        self.a_elements.len()
    }

    /// `[g, a] = g⁻¹·a(g)`.
    pub fn mixed_commutator(&self, g: usize, a: &Automorphism) -> usize {
        let t = &self.group;
        t.mul(t.inv(g), a.apply(g))
    }

    /// Normal closure of `[x, a]` over `x ∈ X` and the generators of `A`, made
    /// `A`-invariant.
    fn commutate_with_a(&self, x: &Subgroup) -> Subgroup {
        let t = &self.group;
        let mut seeds = Vec::new();
        let mut seen = vec![false; t.order()];
        for &c in x.members() {
            for a in &self.a_gens {
                let v = self.mixed_commutator(c, a);
                if !std::mem::replace(&mut seen[v], true) {
                    seeds.push(v);
                }
            }
        }
        let mut h = t.normal_closure(seeds);
        loop {
            let images: Vec<usize> = self
                .a_gens
                .iter()
                .flat_map(|a| h.gens().iter().map(|&y| a.apply(y)))
                .filter(|&y| !h.contains(y))
                .collect();
            if images.is_empty() {
                break;
            }
            let more: Vec<usize> = h.gens().iter().copied().chain(images).collect();
            h = t.normal_closure(more);
        }
        assert!(t.is_normal(&h), "mixed commutator subgroup is not normal");
        assert!(self.is_invariant(&h), "mixed commutator subgroup is not A-invariant");
        h
    }

    /// `[G, A]`.
    pub fn commutator_ga(&self) -> Subgroup {
        self.commutate_with_a(&self.group.whole())
    }

    /// `γ_{i+1}(G,A)` as the normal closure of `[γ_i(G,A), A]`.
    pub fn gamma_ga(&self, k: usize) -> MixedSeries {
        let mut terms = vec![self.group.whole()];
        let mut stabilized_at = None;
        while terms.len() < k.max(1) {
            let next = self.commutate_with_a(terms.last().unwrap());
            if &next == terms.last().unwrap() {
                stabilized_at = Some(terms.len());
                break;
            }
            terms.push(next);
        }
        if stabilized_at.is_none() && terms.last().is_some_and(Subgroup::is_trivial) {
            stabilized_at = Some(terms.len());
        }
        MixedSeries { terms, stabilized_at }
    }

    /// The full series up to the stable term.
    pub fn gamma_ga_full(&self) -> MixedSeries {
        self.gamma_ga(self.group.order().max(2) + 1)
    }

    /// `γ_k(G,A)` straight from the definition, by exhaustive search over
    /// left-normed commutators of length at most `max_len`.
    pub fn gamma_ga_definitional(&self, k: usize, max_len: usize) -> Result<Subgroup> {
        Ok(self
            .gamma_ga_definitional_series(k, max_len, DEFINITIONAL_BUDGET)?
            .pop()
            .expect("k ≥ 1"))
    }

    /// `[γ_1, …, γ_kmax]` from one search.
    ///
    /// A state is a commutator value together with the number of `A`-entries
    /// used so far (capped at `kmax − 1`). Every state reachable within
    /// `max_len` entries is visited; each visit costs `|G| + |A|` transitions
    /// charged against `budget`.
    pub fn gamma_ga_definitional_series(&self, kmax: usize, max_len: usize, budget: u64) -> Result<Vec<Subgroup>> {
        if kmax == 0 || max_len < kmax {
            return Err(Error::InvalidArgument(format!(
                "need 1 ≤ k ≤ max_len, got k = {kmax}, max_len = {max_len}"
            )));
        }
        let t = &self.group;
        let n = t.order();
        let top = kmax - 1;
        let slot = |v: usize, c: usize| v * kmax + c;
        let mut depth = vec![usize::MAX; n * kmax];
        let mut queue = VecDeque::new();
        for x in 0..n {
            depth[slot(x, 0)] = 1;
            queue.push_back((x, 0usize));
        }
        let mut spent = 0u64;
        let step = (n + self.a_elements.len()) as u64;
        while let Some((v, c)) = queue.pop_front() {
            let d = depth[slot(v, c)];
            if d >= max_len {
                continue;
            }
            spent += step;
            if spent > budget {
                return Err(Error::CapExceeded(budget as usize));
            }
            let vi = t.inv(v);
            for x in 0..n {
                let w = t.commutator(v, x);
                if depth[slot(w, c)] == usize::MAX {
                    depth[slot(w, c)] = d + 1;
                    queue.push_back((w, c));
                }
            }
            let c2 = (c + 1).min(top);
            for a in &self.a_elements {
                let w = t.mul(vi, a.apply(v));
                if depth[slot(w, c2)] == usize::MAX {
                    depth[slot(w, c2)] = d + 1;
                    queue.push_back((w, c2));
                }
            }
        }
        // values reached with at least k−1 A-entries generate γ_k
        let mut out = Vec::with_capacity(kmax);
        for k in 1..=kmax {
            let vals = (0..n).filter(|&v| (k - 1..kmax).any(|c| depth[slot(v, c)] != usize::MAX));
            out.push(t.subgroup_generated(vals));
        }
        Ok(out)
    }

    pub fn is_invariant(&self, h: &Subgroup) -> bool {
        self.a_gens.iter().all(|a| a.preserves(h))
    }

    /// Whether `A` fixes every `x ∈ X` with `x^p = 1` (`x^4 = 1` when `p = 2`).
    pub fn is_p_central_action(&self, x: &Subgroup) -> Result<bool> {
        let p = self.group.require_prime()?;
        Ok(self.is_p_central_action_at(x, p))
    }

    pub fn is_p_central_action_at(&self, x: &Subgroup, p: u32) -> bool {
        let t = &self.group;
        x.members()
            .iter()
            .filter(|&&y| has_small_order(t, y, p))
            .all(|&y| self.a_gens.iter().all(|a| a.apply(y) == y))
    }

    /// An element of `X` of small order moved by some generator of `A`.
    pub fn p_central_witness(&self, x: &Subgroup, p: u32) -> Option<usize> {
        let t = &self.group;
        x.members()
            .iter()
            .copied()
            .find(|&y| has_small_order(t, y, p) && self.a_gens.iter().any(|a| a.apply(y) != y))
    }

    /// The action induced on `G/N`, with each induced map revalidated.
    pub fn induced_quotient_action(&self, n: &Subgroup) -> Result<ActionPair> {
        self.induced_quotient(n).map(|(pair, _)| pair)
    }

    /// As [`ActionPair::induced_quotient_action`], also returning the quotient map.
    pub fn induced_quotient(&self, n: &Subgroup) -> Result<(ActionPair, QuotientGroup)> {
        if !self.is_invariant(n) {
            return Err(Error::NotInvariant);
        }
        let q = self.group.quotient(n)?;
        let qt = q.shared_table();
        let gens = self
            .a_gens
            .iter()
            .map(|a| {
                let map = (0..qt.order())
                    .map(|c| q.project(a.apply(q.representative(c))) as u32)
                    .collect();
                Automorphism::from_map(&qt, map)
            })
            .collect::<Result<Vec<_>>>()?;
        let pair = ActionPair::new(qt, gens)?.with_label(format!("{}/N", self.label));
        Ok((pair, q))
    }

    /// `A` as a permutation group on the element indices of `G`.
    pub fn aut_as_perm_group(&self) -> Result<Arc<GroupTable>> {
        if let Some(t) = self.perm.get() {
            return Ok(Arc::clone(t));
        }
        let n = self.group.order();
        let mut gens: Vec<Element> = self
            .a_gens
            .iter()
            .map(|a| Permutation::new(a.map().to_vec()).map(Element::from))
            .collect::<Result<_>>()?;
        if gens.is_empty() {
            gens.push(Permutation::identity(n)?.into());
        }
        let t = GroupTable::close(&gens, DEFAULT_CAP.max(self.a_order()))?;
        assert_eq!(t.order(), self.a_order(), "permutation image of A is not faithful");
        let hint = self.group.prime().filter(|&p| is_power_of(t.order() as u64, p as u64));
        let t = tag_prime(t, hint)?.with_name(format!("A[{}]", self.label));
        Ok(Arc::clone(self.perm.get_or_init(|| Arc::new(t))))
    }

    /// The index of `a` inside `aut_as_perm_group`.
    pub fn perm_index(&self, a: &Automorphism) -> Result<usize> {
        let t = self.aut_as_perm_group()?;
        let e: Element = Permutation::new(a.map().to_vec())?.into();
        t.index_of(&e).ok_or(Error::NotInGroup)
    }

    /// The automorphism of `G` named by an index of `aut_as_perm_group`.
    pub fn automorphism_at(&self, idx: usize) -> Result<Automorphism> {
        let t = self.aut_as_perm_group()?;
        match t.element(idx) {
            Element::Perm(q) => Automorphism::from_map(&self.group, q.images().to_vec()),
            Element::Matrix(_) => unreachable!("permutation group"),
        }
    }

    /// `⟨a⟩` for every `a ∈ A` of order `p`, one pair per distinct subgroup.
    pub fn order_p_subactions(&self, p: u32) -> Result<Vec<ActionPair>> {
        let mut seen: HashMap<Vec<Vec<u32>>, ()> = HashMap::new();
        let mut out = Vec::new();
        for a in &self.a_elements {
            if a.order() != p as u64 {
                continue;
            }
            let mut keys: Vec<Vec<u32>> = (1..p as u64).map(|j| a.power(j).generator_images().to_vec()).collect();
            keys.sort();
            if seen.insert(keys, ()).is_none() {
                out.push(
                    ActionPair::new(Arc::clone(&self.group), vec![a.clone()])?
                        .with_label(format!("{}:order-{p}", self.label)),
                );
            }
        }
        Ok(out)
    }

    /// Both sides of the order/centralizer equivalence for a single `σ ∈ A` and `n`.
    pub fn p8_equivalence(&self, sigma: &Automorphism, n: u32) -> Result<P8Outcome> {
        let p = self.group.require_prime()?;
        let h = self.commutator_ga();
        Ok(self.p8_with(sigma, n, p, &h))
    }

    pub(crate) fn p8_with(&self, sigma: &Automorphism, n: u32, p: u32, h: &Subgroup) -> P8Outcome {
        let t = &self.group;
        let order_divides = (p as u64).pow(n).is_multiple_of(sigma.order());
        let omega = omega_subgroup_of(t, h, p, n);
        let acts_trivially = (0..t.order()).all(|g| omega.contains(self.mixed_commutator(g, sigma)));
        P8Outcome {
            n,
            order_divides,
            acts_trivially,
            holds: order_divides == acts_trivially,
        }
    }
}
