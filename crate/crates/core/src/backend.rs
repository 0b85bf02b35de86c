//! Exact arithmetic for the two element backends: square matrices over a
//! prime field and permutations of `{0, ..., m-1}`.
//!
//! Every element has a canonical byte key. Keys are self-delimiting and
//! totally ordered lexicographically; that order is the canonical order used
//! wherever a group needs determinism.
//!
//! Key layout:
//!
//! ```text
//! matrix:      0x00 | p (u16 LE) | n (u8) | n*n entries (u8, row-major)
//! permutation: 0x01 | degree (u16 LE) | images (u16 LE each)
//! ```

use std::fmt;

use crate::error::{Error, Result};

const TAG_MATRIX: u8 = 0;
const TAG_PERM: u8 = 1;

/// Largest modulus whose residues fit the one-byte entry encoding.
pub const MAX_MODULUS: u32 = 255;

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Square matrix over GF(p).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u16,
    n: u8,
    entries: Vec<u16>,
}

impl FpMatrix {
    /// Builds a matrix from row-major entries, reducing every entry mod `p`.
    pub fn new(p: u32, n: usize, entries: &[i64]) -> Result<Self> {
        if !is_prime(p) || p > MAX_MODULUS {
            return Err(Error::InvalidArgument(format!("modulus {p} must be a prime below 256")));
        }
        if n == 0 || n > u8::MAX as usize {
            return Err(Error::InvalidArgument(format!("dimension {n} out of range")));
        }
        if entries.len() != n * n {
            return Err(Error::InvalidArgument(format!(
                "expected {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        let m = p as i64;
        Ok(FpMatrix {
            p: p as u16,
            n: n as u8,
            entries: entries.iter().map(|&e| e.rem_euclid(m) as u16).collect(),
        })
    }

    pub fn identity(p: u32, n: usize) -> Result<Self> {
        let mut e = vec![0i64; n * n];
        for i in 0..n {
            e[i * n + i] = 1;
        }
        Self::new(p, n, &e)
    }

    pub fn zero(p: u32, n: usize) -> Result<Self> {
        Self::new(p, n, &vec![0; n * n])
    }

    /// The n×n upper unitriangular Jordan block: ones on the diagonal and superdiagonal.
    pub fn jordan_block(p: u32, n: usize) -> Result<Self> {
        let mut e = vec![0i64; n * n];
        for i in 0..n {
            e[i * n + i] = 1;
            if i + 1 < n {
                e[i * n + i + 1] = 1;
            }
        }
        Self::new(p, n, &e)
    }

    pub fn modulus(&self) -> u32 {
        self.p as u32
    }

    pub fn dim(&self) -> usize {
        self.n as usize
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.entries[row * self.dim() + col] as u32
    }

    pub fn entries(&self) -> &[u16] {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.get(i, j) == (i == j) as u32))
    }

    fn check_compatible(&self, other: &FpMatrix) -> Result<()> {
        if self.p != other.p || self.n != other.n {
            return Err(Error::Mismatch(format!(
                "GF({})^{}x{} vs GF({})^{}x{}",
                self.p, self.n, self.n, other.p, other.n, other.n
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_compatible(other)?;
        let n = self.dim();
        let p = self.p as u32;
        let mut out = vec![0u16; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k] as u32;
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let idx = i * n + j;
                    out[idx] = ((out[idx] as u32 + a * other.entries[k * n + j] as u32) % p) as u16;
                }
            }
        }
        Ok(FpMatrix {
            p: self.p,
            n: self.n,
            entries: out,
        })
    }

    /// Gauss-Jordan inversion over GF(p).
    pub fn inverse(&self) -> Result<FpMatrix> {
        let n = self.dim();
        let p = self.p as u32;
        let w = 2 * n;
        let mut aug = vec![0u32; n * w];
        for i in 0..n {
            for j in 0..n {
                aug[i * w + j] = self.get(i, j);
            }
            aug[i * w + n + i] = 1;
        }
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| aug[r * w + col] != 0)
                .ok_or(Error::SingularMatrix(p))?;
            if pivot != col {
                for j in 0..w {
                    aug.swap(pivot * w + j, col * w + j);
                }
            }
            let inv = mod_inverse(aug[col * w + col], p);
            for j in 0..w {
                aug[col * w + j] = aug[col * w + j] * inv % p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = aug[r * w + col];
                if f == 0 {
                    continue;
                }
                for j in 0..w {
                    let sub = f * aug[col * w + j] % p;
                    aug[r * w + j] = (aug[r * w + j] + p - sub) % p;
                }
            }
        }
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                out.push(aug[i * w + n + j] as u16);
            }
        }
        Ok(FpMatrix {
            p: self.p,
            n: self.n,
            entries: out,
        })
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let n = self.dim();
        let p = self.p as u32;
        (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j) * v[j]).sum::<u32>() % p)
            .collect()
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})[", self.p)?;
        for i in 0..self.dim() {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.dim() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

fn mod_inverse(a: u32, p: u32) -> u32 {
    // Fermat: a^(p-2) mod p
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

/// Permutation of `{0, ..., degree-1}`, stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let m = images.len();
        if m == 0 || m > u16::MAX as usize {
            return Err(Error::InvalidArgument(format!("degree {m} out of range")));
        }
        let mut seen = vec![false; m];
        for &i in &images {
            let i = i as usize;
            if i >= m || seen[i] {
                return Err(Error::InvalidArgument("image array is not a bijection".into()));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(degree: usize) -> Result<Self> {
        Self::new((0..degree as u32).collect())
    }

    /// Builds a permutation from disjoint cycles (0-based points).
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for cycle in cycles {
            for (k, &pt) in cycle.iter().enumerate() {
                let next = cycle[(k + 1) % cycle.len()];
                if pt as usize >= degree || next as usize >= degree {
                    return Err(Error::InvalidArgument(format!(
                        "cycle point out of range for degree {degree}"
                    )));
                }
                images[pt as usize] = next;
            }
        }
        Self::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `(self ∘ other)(i) = self(other(i))`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::Mismatch(format!(
                "permutation degrees {} vs {}",
                self.degree(),
                other.degree()
            )));
        }
        Ok(Permutation {
            images: other.images.iter().map(|&i| self.images[i as usize]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

/// A group element in one of the two backends.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Element {
    Matrix(FpMatrix),
    Perm(Permutation),
}

/// Canonical byte encoding of an element. Byte equality is element equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ElementKey(pub Vec<u8>);

impl ElementKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        hex::decode(s).map(ElementKey).map_err(|e| Error::Decode(e.to_string()))
    }
}

impl Element {
    pub fn multiply(&self, other: &Element) -> Result<Element> {
        match (self, other) {
            (Element::Matrix(a), Element::Matrix(b)) => a.mul(b).map(Element::Matrix),
            (Element::Perm(a), Element::Perm(b)) => a.compose(b).map(Element::Perm),
            _ => Err(Error::Mismatch("matrix vs permutation".into())),
        }
    }

    pub fn invert(&self) -> Result<Element> {
        match self {
            Element::Matrix(a) => a.inverse().map(Element::Matrix),
            Element::Perm(a) => Ok(Element::Perm(a.inverse())),
        }
    }

    /// Identity of the same backend and shape.
    pub fn identity_like(&self) -> Element {
        match self {
            Element::Matrix(a) => {
                Element::Matrix(FpMatrix::identity(a.modulus(), a.dim()).expect("shape already validated"))
            }
            Element::Perm(a) => Element::Perm(Permutation::identity(a.degree()).expect("degree already validated")),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Element::Matrix(a) => a.is_identity(),
            Element::Perm(a) => a.is_identity(),
        }
    }

    /// Square-and-multiply power; `power(0)` is the identity.
    pub fn power(&self, mut k: u64) -> Element {
        let mut result = self.identity_like();
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.multiply(&base).expect("same shape");
            }
            k >>= 1;
            if k > 0 {
                base = base.multiply(&base).expect("same shape");
            }
        }
        result
    }

    /// Whether two elements can be multiplied together.
    pub fn same_shape(&self, other: &Element) -> bool {
        match (self, other) {
            (Element::Matrix(a), Element::Matrix(b)) => a.p == b.p && a.n == b.n,
            (Element::Perm(a), Element::Perm(b)) => a.degree() == b.degree(),
            _ => false,
        }
    }

    pub fn backend_name(&self) -> &'static str {
        match self {
            Element::Matrix(_) => "matrix",
            Element::Perm(_) => "permutation",
        }
    }

    pub fn key(&self) -> ElementKey {
        let mut out = Vec::new();
        self.encode_into(&mut out);
        ElementKey(out)
    }

    pub fn encode_into(&self, out: &mut Vec<u8>) {
        match self {
            Element::Matrix(m) => {
                out.push(TAG_MATRIX);
                out.extend_from_slice(&m.p.to_le_bytes());
                out.push(m.n);
                out.extend(m.entries.iter().map(|&e| e as u8));
            }
            Element::Perm(q) => {
                out.push(TAG_PERM);
                out.extend_from_slice(&(q.degree() as u16).to_le_bytes());
                for &i in &q.images {
                    out.extend_from_slice(&(i as u16).to_le_bytes());
                }
            }
        }
    }

    /// Decodes one element from the front of `bytes`, returning it with the
    /// number of bytes consumed.
    pub fn decode_prefix(bytes: &[u8]) -> Result<(Element, usize)> {
        let short = || Error::Decode("truncated element key".into());
        match bytes.first() {
            Some(&TAG_MATRIX) => {
                if bytes.len() < 4 {
                    return Err(short());
                }
                let p = u16::from_le_bytes([bytes[1], bytes[2]]) as u32;
                let n = bytes[3] as usize;
                let end = 4 + n * n;
                if bytes.len() < end {
                    return Err(short());
                }
                let entries: Vec<i64> = bytes[4..end].iter().map(|&b| b as i64).collect();
                if entries.iter().any(|&e| e >= p as i64) {
                    return Err(Error::Decode("matrix entry not reduced".into()));
                }
                let m = FpMatrix::new(p, n, &entries).map_err(|e| Error::Decode(e.to_string()))?;
                Ok((Element::Matrix(m), end))
            }
            Some(&TAG_PERM) => {
                if bytes.len() < 3 {
                    return Err(short());
                }
                let m = u16::from_le_bytes([bytes[1], bytes[2]]) as usize;
                let end = 3 + 2 * m;
                if bytes.len() < end {
                    return Err(short());
                }
                let images = bytes[3..end]
                    .chunks_exact(2)
                    .map(|c| u16::from_le_bytes([c[0], c[1]]) as u32)
                    .collect();
                let q = Permutation::new(images).map_err(|e| Error::Decode(e.to_string()))?;
                Ok((Element::Perm(q), end))
            }
            Some(&t) => Err(Error::Decode(format!("unknown backend tag {t}"))),
            None => Err(short()),
        }
    }

    pub fn decode(key: &ElementKey) -> Result<Element> {
        let (e, used) = Self::decode_prefix(key.as_bytes())?;
        if used != key.0.len() {
            return Err(Error::Decode("trailing bytes after element".into()));
        }
        Ok(e)
    }
}

impl From<FpMatrix> for Element {
    fn from(m: FpMatrix) -> Self {
        Element::Matrix(m)
    }
}

impl From<Permutation> for Element {
    fn from(q: Permutation) -> Self {
        Element::Perm(q)
    }
}
