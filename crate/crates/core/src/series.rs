//! Classical series and p-group predicates.
//!
//! Everything here works relative to an ambient subgroup `H` of an enumerated
//! group, so the same code serves `G` itself, `[G, A]`, or any term of a series
//! without re-enumerating.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{is_power_of, GroupTable, Subgroup};

/// The exponent bound behind "order dividing p (4 if p = 2)".
///
/// Every predicate that uses the parenthetical convention goes through here.
pub fn central_exponent(p: u32) -> u64 {
    if p == 2 {
        4
    } else {
        p as u64
    }
}

/// `i` such that `Ω(G) = Ω_i(G)`: 1 for odd `p`, 2 for `p = 2`.
pub fn omega_conv_index(p: u32) -> u32 {
    if p == 2 {
        2
    } else {
        1
    }
}

/// Whether `x^e = 1` for `e = central_exponent(p)`.
pub fn has_small_order(g: &GroupTable, x: usize, p: u32) -> bool {
    central_exponent(p).is_multiple_of(g.element_order(x))
}

/// A labelled chain of subgroups.
#[derive(Clone, Debug)]
pub struct SeriesRecord {
    pub label: &'static str,
    pub terms: Vec<Subgroup>,
    /// Index (1-based for γ, 0-based for Z and Ω) of the first term equal to its successor.
    pub stabilized_at: usize,
}

impl SeriesRecord {
    pub fn orders(&self) -> Vec<usize> {
        self.terms.iter().map(Subgroup::order).collect()
    }

    pub fn last(&self) -> &Subgroup {
        self.terms.last().expect("series has at least one term")
    }

    /// `γ_i` (1-based) for a descending series, clamped to the stable tail.
    pub fn term(&self, i: usize) -> &Subgroup {
        let idx = i.saturating_sub(1).min(self.terms.len() - 1);
        &self.terms[idx]
    }
}

/// Serializable order list, as it appears in reports.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SeriesOrders {
    pub label: String,
    pub orders: Vec<usize>,
}

impl From<&SeriesRecord> for SeriesOrders {
    fn from(s: &SeriesRecord) -> Self {
        SeriesOrders {
            label: s.label.to_string(),
            orders: s.orders(),
        }
    }
}

/// `γ_1 = H`, `γ_{i+1} = [γ_i, H]`, until the series repeats.
pub fn lower_central_series_of(g: &GroupTable, h: &Subgroup) -> SeriesRecord {
    let mut terms = vec![h.clone()];
    loop {
        let next = g.commutator_subgroup(terms.last().unwrap(), h);
        if &next == terms.last().unwrap() {
            let stabilized_at = terms.len();
            return SeriesRecord {
                label: "gamma",
                terms,
                stabilized_at,
            };
        }
        terms.push(next);
    }
}

pub fn lower_central_series(g: &GroupTable) -> SeriesRecord {
    lower_central_series_of(g, &g.whole())
}

/// Nilpotency class of `H`; `None` when the lower central series stalls above 1.
/// The trivial group has class 0.
pub fn nilpotency_class_of(g: &GroupTable, h: &Subgroup) -> Option<usize> {
    let s = lower_central_series_of(g, h);
    if s.last().is_trivial() {
        Some(s.terms.len() - 1)
    } else {
        None
    }
}

pub fn nilpotency_class(g: &GroupTable) -> Option<usize> {
    nilpotency_class_of(g, &g.whole())
}

/// `Z_0 = 1`, `Z_{i+1}` the preimage of the center of `G/Z_i`.
pub fn upper_central_series(g: &GroupTable) -> Result<SeriesRecord> {
    let mut terms = vec![g.trivial_subgroup()];
    loop {
        let cur = terms.last().unwrap();
        let q = g.quotient(cur)?;
        let zq = q.table().center();
        let next = q.preimage(g, &zq);
        if &next == cur {
            let stabilized_at = terms.len() - 1;
            return Ok(SeriesRecord {
                label: "zeta",
                terms,
                stabilized_at,
            });
        }
        terms.push(next);
    }
}

/// `Z_k(G)`, clamped to the top of the upper central series.
pub fn upper_central_term(g: &GroupTable, k: usize) -> Result<Subgroup> {
    let s = upper_central_series(g)?;
    Ok(s.terms[k.min(s.terms.len() - 1)].clone())
}

fn p_power(p: u32, i: u32) -> u64 {
    (p as u64).pow(i)
}

fn require_p_group(g: &GroupTable, h: &Subgroup) -> Result<u32> {
    let p = g.require_prime()?;
    if !is_power_of(h.order() as u64, p as u64) {
        return Err(Error::NotPGroup(h.order()));
    }
    Ok(p)
}

/// The set `{ x ∈ H : x^{p^i} = 1 }`.
pub fn omega_set_of(g: &GroupTable, h: &Subgroup, p: u32, i: u32) -> Vec<usize> {
    let e = p_power(p, i);
    h.members()
        .iter()
        .copied()
        .filter(|&x| e.is_multiple_of(g.element_order(x)))
        .collect()
}

pub fn omega_set(g: &GroupTable, i: u32) -> Result<Vec<usize>> {
    let w = g.whole();
    let p = require_p_group(g, &w)?;
    Ok(omega_set_of(g, &w, p, i))
}

/// `Ω_i(H)`: the subgroup generated by `omega_set_of`.
pub fn omega_subgroup_of(g: &GroupTable, h: &Subgroup, p: u32, i: u32) -> Subgroup {
    g.subgroup_generated(omega_set_of(g, h, p, i))
}

pub fn omega_subgroup(g: &GroupTable, i: u32) -> Result<Subgroup> {
    let w = g.whole();
    let p = require_p_group(g, &w)?;
    Ok(omega_subgroup_of(g, &w, p, i))
}

/// `Ω(H)`: `Ω_1` for odd `p`, `Ω_2` for `p = 2`.
pub fn omega_conv_of(g: &GroupTable, h: &Subgroup, p: u32) -> Subgroup {
    omega_subgroup_of(g, h, p, omega_conv_index(p))
}

pub fn omega_conv(g: &GroupTable) -> Result<Subgroup> {
    let w = g.whole();
    let p = require_p_group(g, &w)?;
    Ok(omega_conv_of(g, &w, p))
}

/// `H^{p^n}`: the subgroup generated by all `p^n`-th powers.
pub fn agemo_of(g: &GroupTable, h: &Subgroup, p: u32, n: u32) -> Subgroup {
    let e = p_power(p, n);
    g.subgroup_generated(h.members().iter().map(|&x| g.pow(x, e)))
}

pub fn agemo(g: &GroupTable, n: u32) -> Result<Subgroup> {
    let w = g.whole();
    let p = require_p_group(g, &w)?;
    Ok(agemo_of(g, &w, p, n))
}

/// Whether the elements of `H` of order dividing `p^i` form a subgroup.
pub fn is_omega_regular_of(g: &GroupTable, h: &Subgroup, p: u32, i: u32) -> bool {
    let set = omega_set_of(g, h, p, i);
    omega_subgroup_of(g, h, p, i).order() == set.len()
}

pub fn is_omega_regular(g: &GroupTable, i: u32) -> Result<bool> {
    let w = g.whole();
    let p = require_p_group(g, &w)?;
    Ok(is_omega_regular_of(g, &w, p, i))
}

/// Both sides of `|H : H^{p^n}| ≤ |Ω_n(H)|`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct XuComparison {
    pub n: u32,
    pub index: usize,
    pub omega_order: usize,
    pub holds: bool,
}

pub fn xu_inequality_of(g: &GroupTable, h: &Subgroup, p: u32, n: u32) -> Result<XuComparison> {
    if p == 2 {
        return Err(Error::OddPrimeRequired);
    }
    let index = h.order() / agemo_of(g, h, p, n).order();
    let omega_order = omega_subgroup_of(g, h, p, n).order();
    Ok(XuComparison {
        n,
        index,
        omega_order,
        holds: index <= omega_order,
    })
}

pub fn xu_inequality(g: &GroupTable, n: u32) -> Result<XuComparison> {
    let w = g.whole();
    let p = require_p_group(g, &w)?;
    xu_inequality_of(g, &w, p, n)
}

/// Every element of order dividing `p` (4 if `p = 2`) lies in `Z_k(G)`.
pub fn is_p_central_of_height(g: &GroupTable, p: u32, k: usize) -> Result<bool> {
    if k == 0 {
        return Err(Error::InvalidArgument("height must be at least 1".into()));
    }
    let z = upper_central_term(g, k)?;
    Ok((0..g.order()).all(|x| !has_small_order(g, x, p) || z.contains(x)))
}

/// Invariants printed by `pcentral show`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GroupDescription {
    pub name: String,
    pub order: usize,
    pub prime: Option<u32>,
    pub exponent: u64,
    pub class: Option<usize>,
    pub lower_central: Vec<usize>,
    pub upper_central: Vec<usize>,
    /// `|Ω_i(G)|` for `i = 1, 2, ...` until it reaches `|G|`.
    pub omega: Vec<usize>,
    /// `|G^{p^n}|` for `n = 1, 2, ...` until it is trivial.
    pub agemo: Vec<usize>,
    pub omega_regular: Option<bool>,
    /// Least `k` with every element of order dividing p (4 if p = 2) in `Z_k`.
    pub p_central_height: Option<usize>,
}

pub fn describe(g: &GroupTable) -> Result<GroupDescription> {
    let w = g.whole();
    let mut d = GroupDescription {
        name: g.name().to_string(),
        order: g.order(),
        prime: g.prime(),
        exponent: g.exponent(),
        class: nilpotency_class(g),
        lower_central: lower_central_series(g).orders(),
        upper_central: upper_central_series(g)?.orders(),
        omega: Vec::new(),
        agemo: Vec::new(),
        omega_regular: None,
        p_central_height: None,
    };
    if let Some(p) = g.prime() {
        for i in 1.. {
            let o = omega_subgroup_of(g, &w, p, i).order();
            d.omega.push(o);
            if o == g.order() {
                break;
            }
        }
        for n in 1.. {
            let o = agemo_of(g, &w, p, n).order();
            d.agemo.push(o);
            if o == 1 {
                break;
            }
        }
        d.omega_regular = Some(is_omega_regular_of(g, &w, p, omega_conv_index(p)));
        let class = d.class.unwrap_or(0).max(1);
        for k in 1..=class {
            if is_p_central_of_height(g, p, k)? {
                d.p_central_height = Some(k);
                break;
            }
        }
    }
    Ok(d)
}
