//! On-disk group files.
//!
//! A group file stores only the generators; loading re-closes them, which
//! reproduces the same canonical element order and hence the same indices.
//!
//! Layout: `PCGRP1\0\0`, prime (u32 LE, 0 if none), order (u64 LE),
//! generator count (u32 LE), the self-delimiting generator keys, then the
//! name length (u32 LE) and UTF-8 name.

use std::fs;
use std::path::{Path, PathBuf};

use crate::backend::Element;
use crate::catalog::{build_capped, FamilySpec};
use crate::error::{Error, Result};
use crate::group::{GroupTable, DEFAULT_CAP};

const MAGIC: &[u8; 8] = b"PCGRP1\0\0";

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "PCENTRAL_CACHE_DIR";

pub fn encode_group(g: &GroupTable) -> Vec<u8> {
    let mut out = MAGIC.to_vec();
    out.extend_from_slice(&g.prime().unwrap_or(0).to_le_bytes());
    out.extend_from_slice(&(g.order() as u64).to_le_bytes());
    let gens: Vec<usize> = if g.generators().is_empty() {
        vec![g.identity()]
    } else {
        g.generators().to_vec()
    };
    out.extend_from_slice(&(gens.len() as u32).to_le_bytes());
    for x in gens {
        g.element(x).encode_into(&mut out);
    }
    let name = g.name().as_bytes();
    out.extend_from_slice(&(name.len() as u32).to_le_bytes());
    out.extend_from_slice(name);
    out
}

fn take<'a>(bytes: &mut &'a [u8], n: usize) -> Result<&'a [u8]> {
    if bytes.len() < n {
        return Err(Error::Decode("truncated group file".into()));
    }
    let (head, tail) = bytes.split_at(n);
    *bytes = tail;
    Ok(head)
}

fn u32_le(bytes: &mut &[u8]) -> Result<u32> {
    Ok(u32::from_le_bytes(take(bytes, 4)?.try_into().unwrap()))
}

pub fn decode_group(mut bytes: &[u8]) -> Result<GroupTable> {
    if take(&mut bytes, 8)? != MAGIC {
        return Err(Error::Decode("bad magic".into()));
    }
    let prime = u32_le(&mut bytes)?;
    let order = u64::from_le_bytes(take(&mut bytes, 8)?.try_into().unwrap()) as usize;
    let count = u32_le(&mut bytes)? as usize;
    let mut gens = Vec::with_capacity(count);
    for _ in 0..count {
        let (e, used) = Element::decode_prefix(bytes)?;
        take(&mut bytes, used)?;
        gens.push(e);
    }
    let len = u32_le(&mut bytes)? as usize;
    let name = std::str::from_utf8(take(&mut bytes, len)?)
        .map_err(|_| Error::Decode("name is not UTF-8".into()))?
        .to_string();
    if !bytes.is_empty() {
        return Err(Error::Decode("trailing bytes".into()));
    }
    let mut g = GroupTable::close(&gens, order.max(1))?;
    if g.order() != order {
        return Err(Error::Decode(format!(
            "generators close to order {} but file says {order}",
            g.order()
        )));
    }
    if prime != 0 {
        g = g.into_p_group(prime)?;
    }
    Ok(g.with_name(name))
}

pub fn save_group(g: &GroupTable, path: &Path) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, encode_group(g))?;
    Ok(())
}

pub fn load_group(path: &Path) -> Result<GroupTable> {
    decode_group(&fs::read(path)?)
}

pub fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

fn cache_file(dir: &Path, spec: &FamilySpec) -> PathBuf {
    let stem: String = spec
        .to_string()
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect();
    dir.join(format!("{stem}.bin"))
}

/// Builds `spec`, going through the cache directory when one is configured.
/// An unreadable cache entry is rebuilt and overwritten.
pub fn build_cached(spec: &FamilySpec, cap: usize, dir: Option<&Path>) -> Result<GroupTable> {
    let Some(dir) = dir else {
        return build_capped(spec, cap);
    };
    let path = cache_file(dir, spec);
    if let Ok(g) = load_group(&path) {
        if g.name() == spec.to_string() {
            return Ok(g);
        }
    }
    let g = build_capped(spec, cap)?;
    save_group(&g, &path)?;
    Ok(g)
}

pub fn build_default(spec: &FamilySpec) -> Result<GroupTable> {
    build_cached(spec, DEFAULT_CAP, cache_dir().as_deref())
}
