//! Fully dynamic set-system problems over maintained extensor products.
//!
//! Every structure is generic over the coefficient ring. Over a
//! characteristic-2 field the element codes are Vandermonde vectors and the
//! answers have one-sided error; over the integers they are lifted
//! Vandermonde codes, every maintained value stays in the even subalgebra,
//! and the answers are exact.
//!
//! Sets are handed in as element lists over `1..=N` and come back as
//! opaque [`Handle`]s; removal takes the handle, so duplicate sets are
//! legal. States are single-writer: mutations take `&mut self` and no
//! internal locking is done.

mod exact;
mod matching;
mod partial;

pub use exact::{AtLeastCover, ExactCover, Packing, PackingCounter};
pub use matching::Matching;
pub use partial::{DominatingSet, PartialCover};

use std::fmt;

use crate::algebra::{vandermonde, Blade};
use crate::error::{Error, Result};
use crate::ring::Ring;

/// Identifies one inserted set or tuple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Handle(pub u64);

impl fmt::Display for Handle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Code dimension for `k` slots: `k`, doubled when lifting.
pub(crate) fn code_dims<R: Ring>(ring: &R, k: usize) -> u32 {
    if ring.is_char2() {
        k as u32
    } else {
        2 * k as u32
    }
}

/// The Vandermonde code at `node`, lifted unless the ring has
/// characteristic 2.
pub(crate) fn element_code<R: Ring>(ring: &R, node: u64, k: usize) -> Result<Blade<R::Elem>> {
    let v = vandermonde(ring, node, k as u32)?;
    Ok(if ring.is_char2() {
        Blade::from_vector(v)
    } else {
        Blade::lifted(ring, &v)
    })
}

/// Sorted, deduplicated, and checked against `1..=universe`.
pub(crate) fn normalize_set(elements: &[usize], universe: usize) -> Result<Vec<usize>> {
    if elements.is_empty() {
        return Err(Error::InvalidUpdate("sets must be nonempty".into()));
    }
    if let Some(&a) = elements.iter().find(|&&a| a == 0 || a > universe) {
        return Err(Error::ElementOutOfRange(a, universe));
    }
    let mut s = elements.to_vec();
    s.sort_unstable();
    s.dedup();
    Ok(s)
}

pub(crate) fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests;
