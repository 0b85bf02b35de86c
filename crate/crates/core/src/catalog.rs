//! Deterministic constructors for the group families used throughout the crate.
//!
//! Families are named by a small grammar, `name(arg, ...)`, where each
//! argument is an integer or another family, e.g.
//! `direct_product(quaternion(8), cyclic(3,1))`.
//!
//! | family | model |
//! |---|---|
//! | `elementary_abelian(p,n)` | translation matrices of size n+1 over GF(p) |
//! | `cyclic(p,n)` | a p^n-cycle |
//! | `heisenberg(p)` | `ut(3,p)` |
//! | `ut(n,p)` | upper unitriangular n×n matrices over GF(p) |
//! | `dihedral(m)` | symmetries of an m/2-gon, order m |
//! | `quaternion(8)` | Q8 inside SL(2,3) |
//! | `direct_product(a,b)` | disjoint union of permutation models |
//! | `wreath_cp_cp(p)` | Sylow p-subgroup of Sym(p²) |
//! | `sym(n)`, `alt(n)` | natural permutation action |
//! | `sl2_3` | SL(2,3) on the nonzero vectors of GF(3)² |
//! | `c3_by_c4` | C3 ⋊ C4 with the generator of C4 inverting C3 |

use std::fmt;
use std::sync::Arc;

use crate::action::ActionPair;
use crate::backend::{is_prime, Element, FpMatrix, Permutation};
use crate::error::{Error, Result};
use crate::group::{is_power_of, Automorphism, GroupTable, DEFAULT_CAP};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyArg {
    Int(i64),
    Family(FamilySpec),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub name: String,
    pub args: Vec<FamilyArg>,
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        if !self.args.is_empty() {
            write!(f, "(")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                match a {
                    FamilyArg::Int(n) => write!(f, "{n}")?,
                    FamilyArg::Family(s) => write!(f, "{s}")?,
                }
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            column: self.pos + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{}`", c as char)))
        }
    }

    fn spec(&mut self) -> Result<FamilySpec> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a family name"));
        }
        let name = std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii")
            .to_string();
        if name.as_bytes()[0].is_ascii_digit() {
            self.pos = start;
            return Err(self.err("family names start with a letter"));
        }
        let mut args = Vec::new();
        if self.peek() == Some(b'(') {
            self.pos += 1;
            if self.peek() != Some(b')') {
                loop {
                    args.push(self.arg()?);
                    match self.peek() {
                        Some(b',') => self.pos += 1,
                        _ => break,
                    }
                }
            }
            self.expect(b')')?;
        }
        Ok(FamilySpec { name, args })
    }

    fn arg(&mut self) -> Result<FamilyArg> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == b'-' => {
                let start = self.pos;
                self.pos += 1;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                text.parse().map(FamilyArg::Int).map_err(|_| Error::Parse {
                    column: start + 1,
                    message: format!("bad integer `{text}`"),
                })
            }
            Some(_) => self.spec().map(FamilyArg::Family),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

impl FamilySpec {
    pub fn parse(text: &str) -> Result<FamilySpec> {
        let mut parser = Parser {
            src: text.as_bytes(),
            pos: 0,
        };
        let spec = parser.spec()?;
        if parser.peek().is_some() {
            return Err(parser.err("trailing input"));
        }
        Ok(spec)
    }

    fn int(&self, i: usize) -> Result<i64> {
        match self.args.get(i) {
            Some(FamilyArg::Int(n)) => Ok(*n),
            _ => Err(Error::InvalidArgument(format!(
                "{}: argument {} must be an integer",
                self.name,
                i + 1
            ))),
        }
    }

    fn family(&self, i: usize) -> Result<&FamilySpec> {
        match self.args.get(i) {
            Some(FamilyArg::Family(s)) => Ok(s),
            _ => Err(Error::InvalidArgument(format!(
                "{}: argument {} must be a family",
                self.name,
                i + 1
            ))),
        }
    }

    fn arity(&self, n: usize) -> Result<()> {
        if self.args.len() != n {
            return Err(Error::InvalidArgument(format!(
                "{} takes {} argument(s), got {}",
                self.name,
                n,
                self.args.len()
            )));
        }
        Ok(())
    }
}

fn prime_arg(spec: &FamilySpec, i: usize) -> Result<u32> {
    let p = spec.int(i)?;
    if !(2..=255).contains(&p) || !is_prime(p as u32) {
        return Err(Error::InvalidArgument(format!(
            "{}: {p} is not a prime below 256",
            spec.name
        )));
    }
    Ok(p as u32)
}

fn small_arg(spec: &FamilySpec, i: usize, lo: i64, hi: i64) -> Result<usize> {
    let n = spec.int(i)?;
    if n < lo || n > hi {
        return Err(Error::InvalidArgument(format!(
            "{}: argument {} must lie in [{lo}, {hi}]",
            spec.name,
            i + 1
        )));
    }
    Ok(n as usize)
}

/// Builds a family with the default cap.
pub fn build(spec: &FamilySpec) -> Result<GroupTable> {
    build_capped(spec, DEFAULT_CAP)
}

pub fn build_str(text: &str) -> Result<GroupTable> {
    build(&FamilySpec::parse(text)?)
}

pub fn build_capped(spec: &FamilySpec, cap: usize) -> Result<GroupTable> {
    let (gens, hint) = generators(spec, cap)?;
    let g = GroupTable::close(&gens, cap)?;
    let g = tag_prime(g, hint)?;
    Ok(g.with_name(spec.to_string()))
}

/// Attaches the prime when the order is a prime power (or the hint for trivial groups).
pub fn tag_prime(g: GroupTable, hint: Option<u32>) -> Result<GroupTable> {
    let n = g.order() as u64;
    if n == 1 {
        return match hint {
            Some(p) => g.into_p_group(p),
            None => Ok(g),
        };
    }
    if let Some(p) = hint {
        if is_power_of(n, p as u64) {
            return g.into_p_group(p);
        }
    }
    let mut q = 2u64;
    while q * q <= n && !n.is_multiple_of(q) {
        q += 1;
    }
    let q = if n.is_multiple_of(q) { q } else { n };
    if is_power_of(n, q) {
        g.into_p_group(q as u32)
    } else {
        Ok(g)
    }
}

fn generators(spec: &FamilySpec, cap: usize) -> Result<(Vec<Element>, Option<u32>)> {
    match spec.name.as_str() {
        "elementary_abelian" => {
            spec.arity(2)?;
            let p = prime_arg(spec, 0)?;
            let n = small_arg(spec, 1, 0, 16)?;
            check_size(p as u64, n as u32, cap)?;
            Ok((elementary_abelian_gens(p, n)?, Some(p)))
        }
        "cyclic" => {
            spec.arity(2)?;
            let p = prime_arg(spec, 0)?;
            let n = small_arg(spec, 1, 0, 16)?;
            let m = check_size(p as u64, n as u32, cap)?;
            let cycle: Vec<u32> = (0..m as u32).collect();
            Ok((vec![Permutation::from_cycles(m as usize, &[&cycle])?.into()], Some(p)))
        }
        "heisenberg" => {
            spec.arity(1)?;
            let p = prime_arg(spec, 0)?;
            check_size(p as u64, 3, cap)?;
            Ok((unitriangular_gens(3, p)?, Some(p)))
        }
        "ut" => {
            spec.arity(2)?;
            let n = small_arg(spec, 0, 2, 12)?;
            let p = prime_arg(spec, 1)?;
            check_size(p as u64, (n * (n - 1) / 2) as u32, cap)?;
            Ok((unitriangular_gens(n, p)?, Some(p)))
        }
        "dihedral" => {
            spec.arity(1)?;
            let m = small_arg(spec, 0, 6, 2 * 65535)?;
            if m % 2 != 0 {
                return Err(Error::InvalidArgument("dihedral order must be even".into()));
            }
            if m > cap {
                return Err(Error::CapExceeded(cap));
            }
            let k = m / 2;
            let rot: Vec<u32> = (0..k as u32).collect();
            let r = Permutation::from_cycles(k, &[&rot])?;
            let s = Permutation::new((0..k as u32).map(|i| (k as u32 - i) % k as u32).collect())?;
            Ok((vec![r.into(), s.into()], None))
        }
        "quaternion" => {
            spec.arity(1)?;
            if spec.int(0)? != 8 {
                return Err(Error::InvalidArgument("only quaternion(8) is supported".into()));
            }
            let i = FpMatrix::new(3, 2, &[0, 2, 1, 0])?;
            let j = FpMatrix::new(3, 2, &[1, 1, 1, 2])?;
            Ok((vec![i.into(), j.into()], Some(2)))
        }
        "direct_product" => {
            spec.arity(2)?;
            let a = build_capped(spec.family(0)?, cap)?;
            let b = build_capped(spec.family(1)?, cap)?;
            if a.order().saturating_mul(b.order()) > cap {
                return Err(Error::CapExceeded(cap));
            }
            let hint = match (a.prime(), b.prime()) {
                (Some(p), Some(q)) if p == q => Some(p),
                (Some(p), _) if b.order() == 1 => Some(p),
                (_, Some(q)) if a.order() == 1 => Some(q),
                _ => None,
            };
            Ok((direct_product_gens(&a, &b)?, hint))
        }
        "wreath_cp_cp" => {
            spec.arity(1)?;
            let p = prime_arg(spec, 0)?;
            check_size(p as u64, p + 1, cap)?;
            let pp = (p * p) as usize;
            let cycle: Vec<u32> = (0..p).collect();
            let a = Permutation::from_cycles(pp, &[&cycle])?;
            let b = Permutation::new((0..pp as u32).map(|i| (i + p) % pp as u32).collect())?;
            Ok((vec![a.into(), b.into()], Some(p)))
        }
        "sym" | "alt" => {
            spec.arity(1)?;
            let n = small_arg(spec, 0, 1, 12)?;
            let fact: u64 = (1..=n as u64).product();
            if fact as usize > cap {
                return Err(Error::CapExceeded(cap));
            }
            let gens = if spec.name == "sym" {
                let cycle: Vec<u32> = (0..n as u32).collect();
                let mut g = vec![Permutation::from_cycles(n, &[&cycle])?.into()];
                if n >= 2 {
                    g.push(Permutation::from_cycles(n, &[&[0, 1]])?.into());
                }
                g
            } else if n < 3 {
                vec![Permutation::identity(n)?.into()]
            } else {
                // 3-cycles (0 1 k) generate Alt(n)
                (2..n as u32)
                    .map(|k| Permutation::from_cycles(n, &[&[0, 1, k]]).map(Element::from))
                    .collect::<Result<Vec<_>>>()?
            };
            Ok((gens, None))
        }
        "sl2_3" => {
            spec.arity(0)?;
            let a = FpMatrix::new(3, 2, &[1, 1, 0, 1])?;
            let b = FpMatrix::new(3, 2, &[1, 0, 1, 1])?;
            Ok((vec![vector_action(&a)?.into(), vector_action(&b)?.into()], None))
        }
        "c3_by_c4" => {
            spec.arity(0)?;
            let a = Permutation::from_cycles(7, &[&[0, 1, 2]])?;
            let b = Permutation::from_cycles(7, &[&[1, 2], &[3, 4, 5, 6]])?;
            Ok((vec![a.into(), b.into()], None))
        }
        other => Err(Error::UnknownFamily(other.to_string())),
    }
}

fn check_size(p: u64, e: u32, cap: usize) -> Result<u64> {
    let size = p.checked_pow(e).ok_or(Error::CapExceeded(cap))?;
    if size > cap as u64 || size > u16::MAX as u64 {
        return Err(Error::CapExceeded(cap));
    }
    Ok(size)
}

/// The translation matrix `[[1, v], [0, I]]` representing `v ∈ GF(p)^n`.
pub fn vector_element(p: u32, v: &[u32]) -> Result<Element> {
    let n = v.len();
    let d = n + 1;
    let mut e = vec![0i64; d * d];
    for i in 0..d {
        e[i * d + i] = 1;
    }
    for (j, &x) in v.iter().enumerate() {
        e[j + 1] = x as i64;
    }
    Ok(FpMatrix::new(p, d, &e)?.into())
}

/// Inverse of [`vector_element`]; `None` for anything but a translation matrix.
pub fn element_vector(e: &Element) -> Option<Vec<u32>> {
    match e {
        Element::Matrix(m) => {
            let d = m.dim();
            let translation = m.get(0, 0) == 1 && (1..d).all(|i| (0..d).all(|j| m.get(i, j) == u32::from(i == j)));
            translation.then(|| (1..d).map(|j| m.get(0, j)).collect())
        }
        Element::Perm(_) => None,
    }
}

pub fn unit_vector(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn elementary_abelian_gens(p: u32, n: usize) -> Result<Vec<Element>> {
    if n == 0 {
        return Ok(vec![FpMatrix::identity(p, 1)?.into()]);
    }
    (0..n).map(|i| vector_element(p, &unit_vector(n, i))).collect()
}

fn unitriangular_gens(n: usize, p: u32) -> Result<Vec<Element>> {
    (0..n - 1)
        .map(|i| {
            let mut e = vec![0i64; n * n];
            for k in 0..n {
                e[k * n + k] = 1;
            }
            e[i * n + i + 1] = 1;
            FpMatrix::new(p, n, &e).map(Element::from)
        })
        .collect()
}

/// Permutation of the nonzero vectors of GF(p)^n induced by a matrix.
fn vector_action(m: &FpMatrix) -> Result<Permutation> {
    let p = m.modulus();
    let n = m.dim();
    let total = (p as usize).pow(n as u32);
    let decode = |mut idx: usize| -> Vec<u32> {
        let mut v = vec![0; n];
        for x in v.iter_mut() {
            *x = (idx % p as usize) as u32;
            idx /= p as usize;
        }
        v
    };
    let encode = |v: &[u32]| -> usize { v.iter().rev().fold(0, |acc, &x| acc * p as usize + x as usize) };
    let images = (1..total)
        .map(|idx| (encode(&m.apply(&decode(idx))) - 1) as u32)
        .collect();
    Permutation::new(images)
}

/// Faithful permutation generators: the group's own permutations, or the left
/// regular representation for matrix groups.
fn permutation_model(g: &GroupTable) -> Vec<Permutation> {
    g.generators()
        .iter()
        .map(|&x| match g.element(x) {
            Element::Perm(q) => q.clone(),
            Element::Matrix(_) => Permutation::new((0..g.order()).map(|y| g.mul(x, y) as u32).collect())
                .expect("left multiplication is a bijection"),
        })
        .collect()
}

fn direct_product_gens(a: &GroupTable, b: &GroupTable) -> Result<Vec<Element>> {
    let pa = permutation_model(a);
    let pb = permutation_model(b);
    let da = pa[0].degree();
    let db = pb[0].degree();
    let d = da + db;
    let mut gens = Vec::new();
    for q in &pa {
        let mut images: Vec<u32> = (0..d as u32).collect();
        images[..da].copy_from_slice(q.images());
        gens.push(Permutation::new(images)?.into());
    }
    for q in &pb {
        let mut images: Vec<u32> = (0..d as u32).collect();
        for (i, &x) in q.images().iter().enumerate() {
            images[da + i] = da as u32 + x;
        }
        gens.push(Permutation::new(images)?.into());
    }
    Ok(gens)
}

/// Automorphism of `elementary_abelian(p,n)` given by a matrix acting on column vectors.
pub fn matrix_automorphism(g: &GroupTable, m: &FpMatrix) -> Result<Automorphism> {
    let p = m.modulus();
    let n = m.dim();
    let gens = g.generators();
    if gens.len() != n {
        return Err(Error::Mismatch(format!(
            "matrix of size {n} against {} generators",
            gens.len()
        )));
    }
    for (i, &x) in gens.iter().enumerate() {
        if element_vector(g.element(x)).as_deref() != Some(&unit_vector(n, i)[..]) {
            return Err(Error::InvalidArgument(format!(
                "{} is not presented by translation matrices",
                g.name()
            )));
        }
    }
    let images = (0..n)
        .map(|i| {
            let col = m.apply(&unit_vector(n, i));
            let e = vector_element(p, &col)?;
            g.index_of(&e).ok_or(Error::NotInGroup)
        })
        .collect::<Result<Vec<_>>>()?;
    Automorphism::from_images(g, gens, &images)
}

/// `E = (Z/p)^{p+1}` acted on by the Jordan block σ with superdiagonal 1.
pub fn sigma_pair(p: u32) -> Result<ActionPair> {
    let spec = FamilySpec::parse(&format!("elementary_abelian({p},{})", p + 1))?;
    let e = Arc::new(build(&spec)?);
    let sigma = FpMatrix::jordan_block(p, p as usize + 1)?;
    let a = matrix_automorphism(&e, &sigma)?;
    ActionPair::new(e, vec![a]).map(|pair| pair.with_label("jordan"))
}

fn binomial_mod(n: u64, k: u64, p: u32) -> u32 {
    if k > n {
        return 0;
    }
    // exact value while it fits, Lucas otherwise
    let mut acc: u128 = 1;
    for i in 0..k {
        match acc.checked_mul((n - i) as u128) {
            Some(v) => acc = v / (i as u128 + 1),
            None => return lucas(n, k, p),
        }
    }
    (acc % p as u128) as u32
}

fn lucas(mut n: u64, mut k: u64, p: u32) -> u32 {
    let mut result = 1u64;
    while k > 0 {
        let (ni, ki) = (n % p as u64, k % p as u64);
        if ki > ni {
            return 0;
        }
        result = result * binomial_mod(ni, ki, p) as u64 % p as u64;
        n /= p as u64;
        k /= p as u64;
    }
    result as u32
}

/// σⁿ in closed form: entry `(i, i+j)` is `binom(n, j) mod p`.
pub fn sigma_power_closed_form(p: u32, n: u64) -> Result<FpMatrix> {
    let d = p as usize + 1;
    let mut e = vec![0i64; d * d];
    for i in 0..d {
        for j in 0..d - i {
            e[i * d + i + j] = binomial_mod(n, j as u64, p) as i64;
        }
    }
    FpMatrix::new(p, d, &e)
}
