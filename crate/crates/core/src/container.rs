//! Byte-level helpers for the serialized state container.
//!
//! Layout: magic `XTNO`, little-endian `u16` format version, one mode byte,
//! then a mode-specific body. Extensor coefficients are written in
//! increasing mask order.

use crate::algebra::{Extensor, TruncatedPoly};
use crate::error::{Error, Result};
use crate::ring::{take, Ring};

pub const MAGIC: &[u8; 4] = b"XTNO";
pub const FORMAT_VERSION: u16 = 1;

pub const MODE_RANDOMIZED: u8 = 0;
pub const MODE_DETERMINISTIC: u8 = 1;
pub const MODE_UNDIRECTED: u8 = 2;

pub(crate) fn write_header(out: &mut Vec<u8>, mode: u8) {
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    out.push(mode);
}

/// Checks magic and version and returns the mode byte.
pub fn read_header(input: &mut &[u8]) -> Result<u8> {
    let magic = take(input, 4).map_err(|_| Error::Format("missing header".into()))?;
    if magic != MAGIC {
        return Err(Error::Format("bad magic bytes".into()));
    }
    let version = get_u16(input)?;
    if version != FORMAT_VERSION {
        return Err(Error::Version {
            found: version,
            expected: FORMAT_VERSION,
        });
    }
    Ok(get_u8(input)?)
}

/// Mode byte of a serialized state without consuming it.
pub fn peek_mode(bytes: &[u8]) -> Result<u8> {
    let mut s = bytes;
    read_header(&mut s)
}

pub(crate) fn put_u8(out: &mut Vec<u8>, v: u8) {
    out.push(v);
}

pub(crate) fn put_u32(out: &mut Vec<u8>, v: u32) {
    out.extend_from_slice(&v.to_le_bytes());
}

pub(crate) fn put_u64(out: &mut Vec<u8>, v: u64) {
    out.extend_from_slice(&v.to_le_bytes());
}

pub(crate) fn put_usize(out: &mut Vec<u8>, v: usize) {
    put_u32(out, u32::try_from(v).expect("size fits in u32"));
}

pub(crate) fn get_u8(input: &mut &[u8]) -> Result<u8> {
    Ok(take(input, 1)?[0])
}

pub(crate) fn get_u16(input: &mut &[u8]) -> Result<u16> {
    Ok(u16::from_le_bytes(take(input, 2)?.try_into().unwrap()))
}

pub(crate) fn get_u32(input: &mut &[u8]) -> Result<u32> {
    Ok(u32::from_le_bytes(take(input, 4)?.try_into().unwrap()))
}

pub(crate) fn get_u64(input: &mut &[u8]) -> Result<u64> {
    Ok(u64::from_le_bytes(take(input, 8)?.try_into().unwrap()))
}

pub(crate) fn get_usize(input: &mut &[u8]) -> Result<usize> {
    Ok(get_u32(input)? as usize)
}

/// Reads a count and rejects values that could not possibly fit in the
/// remaining input (each item takes at least `min_item` bytes).
pub(crate) fn get_count(input: &mut &[u8], min_item: usize) -> Result<usize> {
    let n = get_usize(input)?;
    if n.saturating_mul(min_item.max(1)) > input.len() {
        return Err(Error::Format(format!("count {n} exceeds remaining input")));
    }
    Ok(n)
}

pub(crate) fn put_extensor<R: Ring>(ring: &R, out: &mut Vec<u8>, x: &Extensor<R::Elem>) {
    for c in x.coeffs() {
        ring.write_elem(c, out);
    }
}

pub(crate) fn get_extensor<R: Ring>(ring: &R, input: &mut &[u8], dims: u32) -> Result<Extensor<R::Elem>> {
    let n = 1usize << dims;
    let mut coeffs = Vec::with_capacity(n.min(input.len()));
    for _ in 0..n {
        coeffs.push(ring.read_elem(input)?);
    }
    Extensor::from_coeffs(dims, coeffs)
}

pub(crate) fn put_poly<R: Ring>(ring: &R, out: &mut Vec<u8>, p: &TruncatedPoly<R::Elem>) {
    for t in p.terms() {
        put_extensor(ring, out, t);
    }
}

pub(crate) fn get_poly<R: Ring>(
    ring: &R,
    input: &mut &[u8],
    dims: u32,
    cap: usize,
) -> Result<TruncatedPoly<R::Elem>> {
    let mut terms = Vec::with_capacity(cap + 1);
    for _ in 0..=cap {
        terms.push(get_extensor(ring, input, dims)?);
    }
    TruncatedPoly::from_terms(terms)
}
