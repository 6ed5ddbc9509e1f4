//! The exterior algebra over a coefficient ring.
//!
//! An [`Extensor`] in dimension `D` is a dense vector of `2^D` coefficients
//! indexed by bitmask: bit `j` of the mask stands for the generator
//! `e_{j+1}`, and the mask `I` holds the coefficient of the basis element
//! `e_I` (the generators of `I` wedged in ascending order).

mod code;
mod poly;
mod wedge;

pub use code::{lift, vandermonde, Blade, CodeVector};
pub use poly::TruncatedPoly;
pub use wedge::{
    add_scaled_assign, ext_add, ext_sub, skew_mul, skew_mul_acc, wedge, wedge_acc, wedge_char2,
    wedge_naive, wedge_naive_acc, wedge_vectors,
};

use crate::error::{Error, Result};
use crate::ring::Ring;

/// Largest supported number of generators.
pub const MAX_DIMS: u32 = 26;

pub(crate) fn check_dims(dims: u32) -> Result<()> {
    if dims > MAX_DIMS {
        Err(Error::DimensionCap(dims))
    } else {
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Extensor<E> {
    dims: u32,
    coeffs: Vec<E>,
}

impl<E: Clone + PartialEq> Extensor<E> {
    pub fn zero<R: Ring<Elem = E>>(ring: &R, dims: u32) -> Result<Self> {
        check_dims(dims)?;
        Ok(Self::zero_unchecked(ring, dims))
    }

    pub(crate) fn zero_unchecked<R: Ring<Elem = E>>(ring: &R, dims: u32) -> Self {
        Extensor {
            dims,
            coeffs: vec![ring.zero(); 1usize << dims],
        }
    }

    pub fn scalar<R: Ring<Elem = E>>(ring: &R, dims: u32, c: E) -> Result<Self> {
        let mut x = Self::zero(ring, dims)?;
        x.coeffs[0] = c;
        Ok(x)
    }

    pub fn one<R: Ring<Elem = E>>(ring: &R, dims: u32) -> Result<Self> {
        Self::scalar(ring, dims, ring.one())
    }

    /// The basis element `e_I` for the bitmask `I`.
    pub fn basis<R: Ring<Elem = E>>(ring: &R, dims: u32, mask: usize) -> Result<Self> {
        let mut x = Self::zero(ring, dims)?;
        if mask >> dims != 0 {
            return Err(Error::InvalidParameter(format!(
                "mask {mask:#b} does not fit in {dims} dimensions"
            )));
        }
        x.coeffs[mask] = ring.one();
        Ok(x)
    }

    pub fn from_coeffs(dims: u32, coeffs: Vec<E>) -> Result<Self> {
        check_dims(dims)?;
        if coeffs.len() != 1usize << dims {
            return Err(Error::InvalidParameter(format!(
                "expected {} coefficients, got {}",
                1usize << dims,
                coeffs.len()
            )));
        }
        Ok(Extensor { dims, coeffs })
    }

    /// Builds `sum c * e_I` from `(I, c)` pairs; repeated masks accumulate.
    pub fn from_terms<R: Ring<Elem = E>>(ring: &R, dims: u32, terms: &[(usize, E)]) -> Result<Self> {
        let mut x = Self::zero(ring, dims)?;
        for (mask, c) in terms {
            if mask >> dims != 0 {
                return Err(Error::InvalidParameter(format!(
                    "mask {mask:#b} does not fit in {dims} dimensions"
                )));
            }
            ring.add_assign(&mut x.coeffs[*mask], c);
        }
        Ok(x)
    }

    pub fn dims(&self) -> u32 {
        self.dims
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn coeff(&self, mask: usize) -> &E {
        &self.coeffs[mask]
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [E] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn top_mask(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The coefficient of `e_[D]`.
    pub fn top(&self) -> &E {
        &self.coeffs[self.coeffs.len() - 1]
    }

    pub fn is_zero<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        self.coeffs.iter().all(|c| ring.is_zero(c))
    }

    /// Masks with a nonzero coefficient, in increasing order.
    pub fn support<'a, R: Ring<Elem = E>>(&'a self, ring: &'a R) -> impl Iterator<Item = usize> + 'a {
        self.coeffs
            .iter()
            .enumerate()
            .filter(move |(_, c)| !ring.is_zero(c))
            .map(|(i, _)| i)
    }

    /// True when every nonzero coefficient sits on an even-popcount mask.
    pub fn is_even<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        self.support(ring).all(|m| m.count_ones() % 2 == 0)
    }

    /// True when every nonzero coefficient sits on a mask of popcount `degree`.
    pub fn is_homogeneous<R: Ring<Elem = E>>(&self, ring: &R, degree: u32) -> bool {
        self.support(ring).all(|m| m.count_ones() == degree)
    }

    pub fn add_assign<R: Ring<Elem = E>>(&mut self, ring: &R, other: &Self) {
        assert_eq!(self.dims, other.dims, "extensor dimension mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            ring.add_assign(a, b);
        }
    }

    pub fn sub_assign<R: Ring<Elem = E>>(&mut self, ring: &R, other: &Self) {
        assert_eq!(self.dims, other.dims, "extensor dimension mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            ring.sub_assign(a, b);
        }
    }

    pub fn scale<R: Ring<Elem = E>>(&self, ring: &R, c: &E) -> Self {
        Extensor {
            dims: self.dims,
            coeffs: self.coeffs.iter().map(|a| ring.mul(a, c)).collect(),
        }
    }

    pub fn neg<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        Extensor {
            dims: self.dims,
            coeffs: self.coeffs.iter().map(|a| ring.neg(a)).collect(),
        }
    }

    pub fn set_zero<R: Ring<Elem = E>>(&mut self, ring: &R) {
        for c in &mut self.coeffs {
            *c = ring.zero();
        }
    }
}

/// Parity of `#{(i, j) in I x J : i > j}`, the sign exponent of `e_I ^ e_J`.
#[inline]
pub fn wedge_sign(i: usize, j: usize) -> bool {
    (j & suffix_parity(i)).count_ones() & 1 == 1
}

/// Bit `j` of the result is the parity of the bits of `mask` strictly above `j`.
#[inline]
pub(crate) fn suffix_parity(mask: usize) -> usize {
    let mut s = mask as u64;
    s ^= s >> 1;
    s ^= s >> 2;
    s ^= s >> 4;
    s ^= s >> 8;
    s ^= s >> 16;
    s ^= s >> 32;
    (s >> 1) as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Integers;

    fn sign_by_pairs(i: usize, j: usize) -> bool {
        let mut count = 0;
        for a in 0..32 {
            for b in 0..32 {
                if i >> a & 1 == 1 && j >> b & 1 == 1 && a > b {
                    count += 1;
                }
            }
        }
        count % 2 == 1
    }

    #[test]
    fn sign_matches_pair_count() {
        for i in 0..256usize {
            for j in 0..256usize {
                if i & j == 0 {
                    assert_eq!(wedge_sign(i, j), sign_by_pairs(i, j), "{i:b} {j:b}");
                }
            }
        }
    }

    #[test]
    fn constructors_validate() {
        let z = Integers;
        assert!(Extensor::zero(&z, MAX_DIMS + 1).is_err());
        assert!(Extensor::basis(&z, 3, 8).is_err());
        assert!(Extensor::<crate::ring::BigInteger>::from_coeffs(2, vec![0.into(); 3]).is_err());
        let x = Extensor::basis(&z, 3, 0b101).unwrap();
        assert_eq!(x.support(&z).collect::<Vec<_>>(), vec![0b101]);
        assert!(x.is_even(&z));
        assert!(x.is_homogeneous(&z, 2));
    }
}
