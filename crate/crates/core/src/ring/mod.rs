//! Coefficient rings for extensors.
//!
//! Every algorithm in this crate is generic over [`Ring`]. Two instances are
//! provided: the binary extension field [`Gf2m`] used by the randomized
//! algorithms, and the arbitrary-precision integers [`Integers`] used by the
//! deterministic (lifted) ones.

mod gf2m;
mod integer;
mod prf;

pub use gf2m::{Gf2m, Gf2mElement, DEFAULT_FIELD_DEGREE};
pub use integer::{BigInteger, Integers};
pub use prf::{prf_sample, prf_u64, Tag};

use std::fmt::Debug;

use crate::error::Result;

/// A commutative coefficient ring with an explicit context object.
///
/// The context carries whatever the elements need (the field modulus and
/// lookup tables, for instance); elements themselves are plain values.
pub trait Ring: Clone + Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Debug + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// True when `1 + 1 = 0`.
    fn is_char2(&self) -> bool;

    /// Image of a small integer under the canonical map `Z -> R`.
    fn from_i64(&self, v: i64) -> Self::Elem;

    /// Injective embedding of an index into the ring, used for Vandermonde
    /// nodes. Fails when the ring has fewer than `i + 1` elements.
    fn embed_index(&self, i: u64) -> Result<Self::Elem>;

    /// Uniform sample keyed by `(seed, tag)`.
    fn sample(&self, seed: u64, tag: &Tag) -> Self::Elem;

    /// Serialize one element onto `out`.
    fn write_elem(&self, a: &Self::Elem, out: &mut Vec<u8>);

    /// Deserialize one element, advancing `input`.
    fn read_elem(&self, input: &mut &[u8]) -> Result<Self::Elem>;

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

    fn sub_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.sub(a, b);
    }

    /// `acc += a * b`
    fn mul_add_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        let p = self.mul(a, b);
        self.add_assign(acc, &p);
    }

    /// `acc -= a * b`
    fn mul_sub_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        let p = self.mul(a, b);
        self.sub_assign(acc, &p);
    }

    /// `(-1)^k`
    fn sign(&self, negative: bool) -> Self::Elem {
        if negative {
            self.neg(&self.one())
        } else {
            self.one()
        }
    }
}

/// Rings whose context can be written next to serialized states.
pub trait RingParams: Ring + Sized {
    /// Distinguishes rings in serialized headers.
    const TAG: u8;
    fn write_params(&self, out: &mut Vec<u8>);
    fn read_params(input: &mut &[u8]) -> Result<Self>;
}

impl RingParams for Gf2m {
    const TAG: u8 = 0;

    fn write_params(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&self.degree().to_le_bytes());
        out.extend_from_slice(&self.modulus().to_le_bytes());
    }

    fn read_params(input: &mut &[u8]) -> Result<Self> {
        let degree = u32::from_le_bytes(take(input, 4)?.try_into().unwrap());
        let modulus = u64::from_le_bytes(take(input, 8)?.try_into().unwrap());
        Gf2m::with_modulus(degree, modulus)
    }
}

impl RingParams for Integers {
    const TAG: u8 = 1;

    fn write_params(&self, _out: &mut Vec<u8>) {}

    fn read_params(_input: &mut &[u8]) -> Result<Self> {
        Ok(Integers)
    }
}

pub(crate) fn take<'a>(input: &mut &'a [u8], n: usize) -> Result<&'a [u8]> {
    if input.len() < n {
        return Err(crate::Error::Format(format!(
            "truncated input: wanted {n} bytes, {} left",
            input.len()
        )));
    }
    let (head, tail) = input.split_at(n);
    *input = tail;
    Ok(head)
}
