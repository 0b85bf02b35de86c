//! Fully enumerated finite groups.
//!
//! A [`GroupTable`] holds every element of a group in canonical key order, so
//! elements are addressed by index everywhere else in the crate. Products are
//! answered from a Cayley table for small groups and from stored generator
//! words otherwise; neither path touches the backend after construction.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::backend::{Element, ElementKey};
use crate::error::{Error, Result};

/// Default enumeration cap.
pub const DEFAULT_CAP: usize = 200_000;

/// Groups up to this order get a full Cayley table.
const TABLE_LIMIT: usize = 2048;

pub fn is_power_of(n: u64, p: u64) -> bool {
    if n == 0 || p < 2 {
        return false;
    }
    let mut n = n;
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// The largest power of `p` dividing `n`.
pub fn p_part(n: u64, p: u64) -> u64 {
    let mut n = n;
    let mut part = 1;
    while n.is_multiple_of(p) {
        n /= p;
        part *= p;
    }
    part
}

/// `log_p(n)` for an exact power of `p`.
pub fn log_p(n: u64, p: u64) -> u32 {
    debug_assert!(is_power_of(n, p));
    let mut n = n;
    let mut e = 0;
    while n > 1 {
        n /= p;
        e += 1;
    }
    e
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

pub struct GroupTable {
    name: String,
    prime: Option<u32>,
    elements: Vec<Element>,
    index: HashMap<Element, usize>,
    identity: usize,
    generators: Vec<usize>,
    right_gen: Vec<Vec<u32>>,
    word_start: Vec<u32>,
    words: Vec<u16>,
    bfs_order: Vec<usize>,
    inverse: Vec<u32>,
    orders: Vec<u64>,
    table: Option<Vec<u32>>,
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupTable")
            .field("name", &self.name)
            .field("prime", &self.prime)
            .field("order", &self.order())
            .field("generators", &self.generators.len())
            .finish()
    }
}

impl GroupTable {
    /// Breadth-first closure of `generators` under right multiplication.
    pub fn close(generators: &[Element], cap: usize) -> Result<GroupTable> {
        let first = generators
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty generator list".into()))?;
        if let Some(bad) = generators.iter().find(|g| !g.same_shape(first)) {
            return Err(Error::Mismatch(format!(
                "generator {:?} does not match {:?}",
                bad.backend_name(),
                first.backend_name()
            )));
        }
        let ngens = generators.len();
        let id = first.identity_like();
        let mut list = vec![id.clone()];
        let mut found: HashMap<Element, usize> = HashMap::new();
        found.insert(id, 0);
        let mut parent: Vec<(u32, u16)> = vec![(0, 0)];
        let mut right: Vec<Vec<u32>> = vec![Vec::new(); ngens];
        let mut i = 0;
        while i < list.len() {
            for (k, g) in generators.iter().enumerate() {
                let y = list[i].multiply(g)?;
                let idx = match found.get(&y) {
                    Some(&j) => j,
                    None => {
                        let j = list.len();
                        if j >= cap {
                            return Err(Error::CapExceeded(cap));
                        }
                        found.insert(y.clone(), j);
                        list.push(y);
                        parent.push((i as u32, k as u16));
                        j
                    }
                };
                right[k].push(idx as u32);
            }
            i += 1;
        }
        drop(found);

        // Re-index by canonical key order.
        let n = list.len();
        let keys: Vec<ElementKey> = list.iter().map(Element::key).collect();
        let mut by_key: Vec<usize> = (0..n).collect();
        by_key.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        let mut new_of = vec![0u32; n];
        for (new, &old) in by_key.iter().enumerate() {
            new_of[old] = new as u32;
        }
        let mut slots: Vec<Option<Element>> = list.into_iter().map(Some).collect();
        let elements: Vec<Element> = by_key
            .iter()
            .map(|&old| slots[old].take().expect("each slot taken once"))
            .collect();
        let index: HashMap<Element, usize> = elements.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();

        let mut right_gen = vec![vec![0u32; n]; ngens];
        for k in 0..ngens {
            for old in 0..n {
                right_gen[k][new_of[old] as usize] = new_of[right[k][old] as usize];
            }
        }
        drop(right);

        // Generator words, assigned in BFS (insertion) order.
        let bfs_order: Vec<usize> = (0..n).map(|old| new_of[old] as usize).collect();
        let mut word_of: Vec<Vec<u16>> = vec![Vec::new(); n];
        for old in 1..n {
            let (par, k) = parent[old];
            let mut w = word_of[par as usize].clone();
            w.push(k);
            word_of[old] = w;
        }
        let mut word_start = Vec::with_capacity(n + 1);
        let mut words = Vec::new();
        let mut by_new: Vec<Vec<u16>> = vec![Vec::new(); n];
        for (old, w) in word_of.into_iter().enumerate() {
            by_new[new_of[old] as usize] = w;
        }
        for w in &by_new {
            word_start.push(words.len() as u32);
            words.extend_from_slice(w);
        }
        word_start.push(words.len() as u32);

        let identity = new_of[0] as usize;
        let gens_idx: Vec<usize> = generators.iter().map(|g| index[g]).collect();

        let mut table = GroupTable {
            name: String::new(),
            prime: None,
            elements,
            index,
            identity,
            generators: gens_idx,
            right_gen,
            word_start,
            words,
            bfs_order,
            inverse: Vec::new(),
            orders: Vec::new(),
            table: None,
        };

        if n <= TABLE_LIMIT {
            let mut t = vec![0u32; n * n];
            for x in 0..n {
                t[x * n + identity] = x as u32;
            }
            for old in 1..n {
                let y = new_of[old] as usize;
                let (par, k) = parent[old];
                let py = new_of[par as usize] as usize;
                let rg = &table.right_gen[k as usize];
                for x in 0..n {
                    t[x * n + y] = rg[t[x * n + py] as usize];
                }
            }
            table.table = Some(t);
        }

        let mut inverse = vec![0u32; n];
        for (i, e) in table.elements.iter().enumerate() {
            inverse[i] = table.index[&e.invert()?] as u32;
        }
        table.inverse = inverse;

        let mut orders = vec![0u64; n];
        for x in 0..n {
            if orders[x] != 0 {
                continue;
            }
            let mut z = x;
            let mut ord = 1u64;
            while z != identity {
                z = table.mul(z, x);
                ord += 1;
            }
            orders[x] = ord;
            // x^{-1} has the same order
            orders[table.inverse[x] as usize] = ord;
        }
        table.orders = orders;
        Ok(table)
    }

    /// Tags the group with its prime after checking `|G|` is a power of `p`.
    pub fn into_p_group(mut self, p: u32) -> Result<GroupTable> {
        if !crate::backend::is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if !is_power_of(self.order() as u64, p as u64) {
            return Err(Error::NotPGroup(self.order()));
        }
        self.prime = Some(p);
        Ok(self)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> GroupTable {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn prime(&self) -> Option<u32> {
        self.prime
    }

    /// The distinguished prime, required by p-group operations.
    pub fn require_prime(&self) -> Result<u32> {
        self.prime.ok_or(Error::NotPGroup(self.order()))
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn element(&self, i: usize) -> &Element {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn key(&self, i: usize) -> ElementKey {
        self.elements[i].key()
    }

    pub fn index_of(&self, e: &Element) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn index_of_key(&self, key: &ElementKey) -> Result<usize> {
        let e = Element::decode(key)?;
        self.index_of(&e).ok_or(Error::NotInGroup)
    }

    /// Elements in the order they were discovered by the generator BFS.
    pub fn bfs_order(&self) -> &[usize] {
        &self.bfs_order
    }

    /// The generator word (indices into `generators()`) used to reach `x`.
    pub fn word(&self, x: usize) -> &[u16] {
        &self.words[self.word_start[x] as usize..self.word_start[x + 1] as usize]
    }

    /// `x · generators()[k]`.
    pub fn mul_gen(&self, x: usize, k: usize) -> usize {
        self.right_gen[k][x] as usize
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        if let Some(t) = &self.table {
            return t[x * self.order() + y] as usize;
        }
        let mut z = x;
        for &k in self.word(y) {
            z = self.right_gen[k as usize][z] as usize;
        }
        z
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x] as usize
    }

    pub fn element_order(&self, x: usize) -> u64 {
        self.orders[x]
    }

    pub fn pow(&self, x: usize, mut k: u64) -> usize {
        k %= self.orders[x];
        let mut result = self.identity;
        let mut base = x;
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(result, base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(base, base);
            }
        }
        result
    }

    /// `x⁻¹ y⁻¹ x y`.
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        let a = self.mul(self.inv(x), self.inv(y));
        self.mul(self.mul(a, x), y)
    }

    /// Left-normed commutator `[x_1, ..., x_k]`.
    pub fn left_normed(&self, xs: &[usize]) -> usize {
        let mut c = xs.first().copied().unwrap_or(self.identity);
        for &x in xs.iter().skip(1) {
            c = self.commutator(c, x);
        }
        c
    }

    /// `g⁻¹ x g`.
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn is_p_group(&self, p: u32) -> bool {
        is_power_of(self.order() as u64, p as u64)
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter().all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    // ---- subgroups ----

    pub fn trivial_subgroup(&self) -> Subgroup {
        let mut mask = vec![false; self.order()];
        mask[self.identity] = true;
        Subgroup {
            members: vec![self.identity],
            mask,
            gens: Vec::new(),
        }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            members: (0..self.order()).collect(),
            mask: vec![true; self.order()],
            gens: self.generators.clone(),
        }
    }

    /// Adjoins `s` to the subgroup `h` (Dimino's coset extension).
    pub fn extend(&self, h: &Subgroup, s: usize) -> Subgroup {
        if h.contains(s) {
            return h.clone();
        }
        let mut gens = h.gens.clone();
        gens.push(s);
        let mut mask = h.mask.clone();
        let mut members = h.members.clone();
        let mut reps = vec![self.identity];
        let mut r = 0;
        while r < reps.len() {
            for &g in &gens {
                let y = self.mul(reps[r], g);
                if !mask[y] {
                    for &x in &h.members {
                        let z = self.mul(x, y);
                        mask[z] = true;
                        members.push(z);
                    }
                    reps.push(y);
                }
            }
            r += 1;
        }
        members.sort_unstable();
        Subgroup { members, mask, gens }
    }

    /// Smallest subgroup containing the given element indices.
    pub fn subgroup_generated<I: IntoIterator<Item = usize>>(&self, gens: I) -> Subgroup {
        self.extend_by(&self.trivial_subgroup(), gens)
    }

    pub fn extend_by<I: IntoIterator<Item = usize>>(&self, h: &Subgroup, gens: I) -> Subgroup {
        let mut h = h.clone();
        for s in gens {
            if !h.contains(s) {
                h = self.extend(&h, s);
            }
        }
        h
    }

    /// Element-level entry point; fails if some element is outside the group.
    pub fn subgroup_generated_by(&self, elements: &[Element]) -> Result<Subgroup> {
        let idx = elements
            .iter()
            .map(|e| self.index_of(e).ok_or(Error::NotInGroup))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.subgroup_generated(idx))
    }

    /// Builds a subgroup from a membership predicate known to describe a subgroup.
    pub fn subgroup_from_mask(&self, mask: Vec<bool>) -> Subgroup {
        let members: Vec<usize> = (0..self.order()).filter(|&i| mask[i]).collect();
        let gens = self.subgroup_generated(members.iter().copied()).gens;
        Subgroup { members, mask, gens }
    }

    /// Whether `h` is normalized by every generator of `k`.
    pub fn is_normal_in(&self, h: &Subgroup, k: &Subgroup) -> bool {
        h.gens
            .iter()
            .all(|&x| k.gens.iter().all(|&g| h.contains(self.conjugate(x, g))))
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.is_normal_in(h, &self.whole())
    }

    /// Normal closure of `⟨s⟩` inside the subgroup `k`.
    pub fn normal_closure_in<I: IntoIterator<Item = usize>>(&self, s: I, k: &Subgroup) -> Subgroup {
        let mut h = self.subgroup_generated(s);
        loop {
            let mut grew = false;
            let mut i = 0;
            while i < h.gens.len() {
                let x = h.gens[i];
                for &g in &k.gens {
                    let c = self.conjugate(x, g);
                    if !h.contains(c) {
                        h = self.extend(&h, c);
                        grew = true;
                    }
                }
                i += 1;
            }
            if !grew {
                return h;
            }
        }
    }

    pub fn normal_closure<I: IntoIterator<Item = usize>>(&self, s: I) -> Subgroup {
        self.normal_closure_in(s, &self.whole())
    }

    /// `[X, Y]`: the normal closure inside `⟨X, Y⟩` of the commutators of
    /// generators. When both arguments are normal in the whole group the
    /// result is checked to be normal as well.
    pub fn commutator_subgroup(&self, x: &Subgroup, y: &Subgroup) -> Subgroup {
        let joined = self.extend_by(x, y.gens.iter().copied());
        let seeds: Vec<usize> = x
            .gens
            .iter()
            .flat_map(|&a| y.gens.iter().map(move |&b| (a, b)))
            .map(|(a, b)| self.commutator(a, b))
            .collect();
        let c = self.normal_closure_in(seeds, &joined);
        if self.is_normal(x) && self.is_normal(y) {
            assert!(self.is_normal(&c), "commutator of normal subgroups must be normal");
        }
        c
    }

    /// `[X, Y]` generated by every pairwise commutator. Quadratic; used as an oracle.
    pub fn commutator_subgroup_exhaustive(&self, x: &Subgroup, y: &Subgroup) -> Subgroup {
        let mut h = self.trivial_subgroup();
        for &a in &x.members {
            for &b in &y.members {
                let c = self.commutator(a, b);
                if !h.contains(c) {
                    h = self.extend(&h, c);
                }
            }
        }
        h
    }

    /// Centralizer in `within` of the listed elements.
    pub fn centralizer_in(&self, s: &[usize], within: &Subgroup) -> Subgroup {
        let mut mask = vec![false; self.order()];
        for &x in &within.members {
            if s.iter().all(|&y| self.mul(x, y) == self.mul(y, x)) {
                mask[x] = true;
            }
        }
        self.subgroup_from_mask(mask)
    }

    pub fn centralizer(&self, s: &[usize]) -> Subgroup {
        self.centralizer_in(s, &self.whole())
    }

    /// Center of the subgroup `h`.
    pub fn center_of(&self, h: &Subgroup) -> Subgroup {
        self.centralizer_in(&h.gens, h)
    }

    pub fn center(&self) -> Subgroup {
        self.center_of(&self.whole())
    }

    /// Normalizer of `h` inside `within`.
    pub fn normalizer_in(&self, h: &Subgroup, within: &Subgroup) -> Subgroup {
        let mut mask = vec![false; self.order()];
        for &g in &within.members {
            if h.gens.iter().all(|&x| h.contains(self.conjugate(x, g))) {
                mask[g] = true;
            }
        }
        self.subgroup_from_mask(mask)
    }

    pub fn exponent_of(&self, h: &Subgroup) -> u64 {
        h.members.iter().fold(1, |acc, &x| lcm(acc, self.orders[x]))
    }

    pub fn exponent(&self) -> u64 {
        self.exponent_of(&self.whole())
    }

    /// Quotient by a normal subgroup, realized as the permutation action on cosets.
    pub fn quotient(&self, n: &Subgroup) -> Result<QuotientGroup> {
        QuotientGroup::new(self, n)
    }
}

/// A subgroup of an enumerated group, stored by element indices.
#[derive(Clone)]
pub struct Subgroup {
    members: Vec<usize>,
    mask: Vec<bool>,
    gens: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {})", self.order())
    }
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    /// Member indices in canonical order.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// A generating set produced while building the subgroup.
    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, g: &GroupTable, other: &Subgroup) -> Subgroup {
        let mask = self.mask.iter().zip(&other.mask).map(|(&a, &b)| a && b).collect();
        g.subgroup_from_mask(mask)
    }
}

/// `G/N`, realized as the permutation group induced on the cosets of `N`.
#[derive(Debug)]
pub struct QuotientGroup {
    table: Arc<GroupTable>,
    kernel: Subgroup,
    projection: Vec<u32>,
    reps: Vec<usize>,
}

impl QuotientGroup {
    fn new(g: &GroupTable, n: &Subgroup) -> Result<QuotientGroup> {
        if !g.is_normal(n) {
            return Err(Error::NotNormal);
        }
        let size = g.order();
        let mut coset = vec![u32::MAX; size];
        let mut coset_reps: Vec<usize> = Vec::new();
        for x in 0..size {
            if coset[x] != u32::MAX {
                continue;
            }
            let c = coset_reps.len() as u32;
            coset_reps.push(x);
            for &k in n.members() {
                coset[g.mul(k, x)] = c;
            }
        }
        let m = coset_reps.len();
        let gen_perm = |h: usize| -> Result<Element> {
            let images = coset_reps.iter().map(|&r| coset[g.mul(r, h)]).collect();
            Ok(crate::backend::Permutation::new(images)?.into())
        };
        let gens = if g.generators().is_empty() {
            vec![crate::backend::Permutation::identity(m)?.into()]
        } else {
            g.generators()
                .iter()
                .map(|&h| gen_perm(h))
                .collect::<Result<Vec<_>>>()?
        };
        let mut table = GroupTable::close(&gens, DEFAULT_CAP)?;
        if let Some(p) = g.prime() {
            table = table.into_p_group(p)?;
        }
        table.name = format!("{}/N", g.name());
        if table.order() != m {
            return Err(Error::Mismatch(format!(
                "coset action has order {} but index is {}",
                table.order(),
                m
            )));
        }

        // Walk the cosets along generator edges to label each with its quotient element.
        let mut qidx = vec![u32::MAX; m];
        let id_coset = coset[g.identity()] as usize;
        qidx[id_coset] = table.identity() as u32;
        let gen_q: Vec<usize> = gens.iter().map(|e| table.index_of(e).unwrap()).collect();
        let mut queue = VecDeque::from([id_coset]);
        while let Some(c) = queue.pop_front() {
            for (k, &h) in g.generators().iter().enumerate() {
                let d = coset[g.mul(coset_reps[c], h)] as usize;
                if qidx[d] == u32::MAX {
                    qidx[d] = table.mul(qidx[c] as usize, gen_q[k]) as u32;
                    queue.push_back(d);
                }
            }
        }
        let projection: Vec<u32> = coset.iter().map(|&c| qidx[c as usize]).collect();
        let mut reps = vec![usize::MAX; m];
        for (c, &r) in coset_reps.iter().enumerate() {
            reps[qidx[c] as usize] = r;
        }
        Ok(QuotientGroup {
            table: Arc::new(table),
            kernel: n.clone(),
            projection,
            reps,
        })
    }

    pub fn table(&self) -> &GroupTable {
        &self.table
    }

    pub fn shared_table(&self) -> Arc<GroupTable> {
        Arc::clone(&self.table)
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    /// Image of a parent element.
    pub fn project(&self, x: usize) -> usize {
        self.projection[x] as usize
    }

    /// The canonically minimal coset representative of a quotient element.
    pub fn representative(&self, q: usize) -> usize {
        self.reps[q]
    }

    pub fn image(&self, h: &Subgroup) -> Subgroup {
        self.table.subgroup_generated(h.gens().iter().map(|&x| self.project(x)))
    }

    /// Full preimage in the parent of a quotient subgroup.
    pub fn preimage(&self, g: &GroupTable, s: &Subgroup) -> Subgroup {
        let mask: Vec<bool> = (0..g.order()).map(|x| s.contains(self.project(x))).collect();
        let members: Vec<usize> = (0..g.order()).filter(|&x| mask[x]).collect();
        let gens = g
            .extend_by(
                &g.subgroup_generated(self.kernel.gens().iter().copied()),
                s.gens().iter().map(|&q| self.reps[q]),
            )
            .gens;
        Subgroup { members, mask, gens }
    }
}

/// A bijective endomorphism stored as its full element map, together with
/// the images of the domain's generators.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Automorphism {
    map: Vec<u32>,
    gens: Vec<u32>,
    gen_images: Vec<u32>,
}

impl fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Automorphism(gens -> {:?})", self.gen_images)
    }
}

impl Automorphism {
    /// Extends `gens[i] ↦ images[i]` along the Cayley graph of `g`, checking
    /// every edge for consistency and the result for bijectivity.
    pub fn from_images(g: &GroupTable, gens: &[usize], images: &[usize]) -> Result<Automorphism> {
        if gens.len() != images.len() {
            return Err(Error::InvalidArgument(
                "generator and image lists differ in length".into(),
            ));
        }
        let n = g.order();
        let mut map = vec![u32::MAX; n];
        map[g.identity()] = g.identity() as u32;
        let mut queue = VecDeque::from([g.identity()]);
        while let Some(x) = queue.pop_front() {
            let fx = map[x] as usize;
            for (k, (&s, &t)) in gens.iter().zip(images).enumerate() {
                let y = g.mul(x, s);
                let fy = g.mul(fx, t) as u32;
                if map[y] == u32::MAX {
                    map[y] = fy;
                    queue.push_back(y);
                } else if map[y] != fy {
                    return Err(Error::NotAHomomorphism {
                        element: x,
                        generator: k,
                    });
                }
            }
        }
        if map.contains(&u32::MAX) {
            return Err(Error::InvalidArgument(
                "listed elements do not generate the group".into(),
            ));
        }
        let mut seen = vec![false; n];
        for &v in &map {
            if std::mem::replace(&mut seen[v as usize], true) {
                return Err(Error::NotBijective);
            }
        }
        Ok(Self::from_map_unchecked(g, map))
    }

    /// Validates a full map as an automorphism.
    pub fn from_map(g: &GroupTable, map: Vec<u32>) -> Result<Automorphism> {
        if map.len() != g.order() {
            return Err(Error::DomainMismatch);
        }
        let images: Vec<usize> = g.generators().iter().map(|&x| map[x] as usize).collect();
        let a = Self::from_images(g, g.generators(), &images)?;
        if a.map != map {
            let bad = (0..map.len()).find(|&i| a.map[i] != map[i]).unwrap_or(0);
            return Err(Error::NotAHomomorphism {
                element: bad,
                generator: 0,
            });
        }
        Ok(a)
    }

    pub(crate) fn from_map_unchecked(g: &GroupTable, map: Vec<u32>) -> Automorphism {
        let gens: Vec<u32> = g.generators().iter().map(|&x| x as u32).collect();
        let gen_images = gens.iter().map(|&x| map[x as usize]).collect();
        Automorphism { map, gens, gen_images }
    }

    pub fn identity(g: &GroupTable) -> Automorphism {
        Self::from_map_unchecked(g, (0..g.order() as u32).collect())
    }

    /// Conjugation `x ↦ h⁻¹ x h`.
    pub fn inner(g: &GroupTable, h: usize) -> Automorphism {
        let map = (0..g.order()).map(|x| g.conjugate(x, h) as u32).collect();
        Self::from_map_unchecked(g, map)
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x] as usize
    }

    pub fn map(&self) -> &[u32] {
        &self.map
    }

    pub fn generator_images(&self) -> &[u32] {
        &self.gen_images
    }

    pub fn domain_order(&self) -> usize {
        self.map.len()
    }

    pub fn is_identity(&self) -> bool {
        self.gens == self.gen_images
    }

    fn with_map(&self, map: Vec<u32>) -> Automorphism {
        let gen_images = self.gens.iter().map(|&x| map[x as usize]).collect();
        Automorphism {
            map,
            gens: self.gens.clone(),
            gen_images,
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism> {
        if self.map.len() != other.map.len() || self.gens != other.gens {
            return Err(Error::DomainMismatch);
        }
        let map: Vec<u32> = other.map.iter().map(|&y| self.map[y as usize]).collect();
        Ok(self.with_map(map))
    }

    pub fn inverse(&self) -> Automorphism {
        let mut inv = vec![0u32; self.map.len()];
        for (i, &x) in self.map.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        self.with_map(inv)
    }

    pub fn power(&self, mut k: u64) -> Automorphism {
        let mut result: Vec<u32> = (0..self.map.len() as u32).collect();
        let mut base = self.map.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.iter().map(|&y| base[y as usize]).collect();
            }
            k >>= 1;
            if k > 0 {
                base = base.iter().map(|&y| base[y as usize]).collect();
            }
        }
        self.with_map(result)
    }

    pub fn order(&self) -> u64 {
        let mut cur = self.gen_images.clone();
        let mut k = 1;
        while cur != self.gens {
            cur = cur.iter().map(|&y| self.map[y as usize]).collect();
            k += 1;
        }
        k
    }

    /// Equality by generator images: homomorphisms agreeing on generators agree everywhere.
    pub fn aut_equal(&self, other: &Automorphism) -> bool {
        self.gens == other.gens && self.gen_images == other.gen_images
    }

    /// Whether the automorphism maps `h` into (hence onto) itself.
    pub fn preserves(&self, h: &Subgroup) -> bool {
        h.members().iter().all(|&x| h.contains(self.apply(x)))
    }
}
