//! Naive reference implementations. They work on raw elements through the
//! backend only and never touch the indexed tables, so they can serve as
//! oracles for the engine.
#![allow(dead_code)]

use std::collections::hash_map::Entry;
use std::collections::{BTreeSet, HashMap};

use pcentral::{Element, ElementKey};

/// A finite group as a set of elements keyed by their canonical bytes.
pub struct NaiveGroup {
    pub elements: HashMap<ElementKey, Element>,
}

pub type KeySet = BTreeSet<ElementKey>;

fn mul(a: &Element, b: &Element) -> Element {
    a.multiply(b).unwrap()
}

fn inv(a: &Element) -> Element {
    a.invert().unwrap()
}

pub fn commutator(a: &Element, b: &Element) -> Element {
    mul(&mul(&inv(a), &inv(b)), &mul(a, b))
}

impl NaiveGroup {
    pub fn generated(gens: &[Element]) -> NaiveGroup {
        let one = gens[0].identity_like();
        let mut elements = HashMap::new();
        elements.insert(one.key(), one.clone());
        let mut frontier = vec![one];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = mul(&x, g);
                if let Entry::Vacant(e) = elements.entry(y.key()) {
                    e.insert(y.clone());
                    frontier.push(y);
                }
            }
        }
        NaiveGroup { elements }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element_order(x: &Element) -> u64 {
        let mut y = x.clone();
        let mut n = 1;
        while !y.is_identity() {
            y = mul(&y, x);
            n += 1;
        }
        n
    }

    pub fn exponent(&self) -> u64 {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.elements
            .values()
            .map(Self::element_order)
            .fold(1, |acc, o| acc / gcd(acc, o) * o)
    }

    /// Subgroup generated by `seeds`, as a key set.
    pub fn closure(&self, seeds: impl IntoIterator<Item = Element>) -> KeySet {
        let seeds: Vec<Element> = seeds.into_iter().collect();
        let any = self.elements.values().next().unwrap();
        let mut set = KeySet::new();
        set.insert(any.identity_like().key());
        let mut members = vec![any.identity_like()];
        let mut i = 0;
        while i < members.len() {
            let x = members[i].clone();
            for s in &seeds {
                let y = mul(&x, s);
                if set.insert(y.key()) {
                    members.push(y);
                }
            }
            i += 1;
        }
        set
    }

    pub fn all_keys(&self) -> KeySet {
        self.elements.keys().cloned().collect()
    }

    fn get(&self, k: &ElementKey) -> &Element {
        &self.elements[k]
    }

    /// `⟨[x, y] : x ∈ a, y ∈ b⟩` over every pair.
    pub fn commutator_of(&self, a: &KeySet, b: &KeySet) -> KeySet {
        let mut seeds = Vec::new();
        let mut seen = KeySet::new();
        for x in a {
            for y in b {
                let c = commutator(self.get(x), self.get(y));
                if seen.insert(c.key()) {
                    seeds.push(c);
                }
            }
        }
        self.closure(seeds)
    }

    /// Orders of the lower central series until it repeats.
    pub fn lower_central_orders(&self) -> Vec<usize> {
        let all = self.all_keys();
        let mut cur = all.clone();
        let mut out = vec![cur.len()];
        loop {
            let next = self.commutator_of(&cur, &all);
            if next == cur {
                return out;
            }
            out.push(next.len());
            cur = next;
        }
    }

    /// Nilpotency class, or -1 when the lower central series stalls above 1.
    pub fn class(&self) -> i64 {
        let orders = self.lower_central_orders();
        if *orders.last().unwrap() == 1 {
            orders.len() as i64 - 1
        } else {
            -1
        }
    }

    pub fn center(&self) -> KeySet {
        self.elements
            .iter()
            .filter(|(_, x)| self.elements.values().all(|y| mul(x, y) == mul(y, x)))
            .map(|(k, _)| k.clone())
            .collect()
    }
}
