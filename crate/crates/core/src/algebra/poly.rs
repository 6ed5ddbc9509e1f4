use super::{add_scaled_assign, wedge_acc, wedge_naive_acc, Blade, Extensor};
use crate::error::{Error, Result};
use crate::ring::Ring;

/// A polynomial in `z` with extensor coefficients, reduced modulo
/// `z^(cap+1)`. With `cap = 0` it is just an extensor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedPoly<E> {
    terms: Vec<Extensor<E>>,
}

impl<E: Clone + PartialEq> TruncatedPoly<E> {
    pub fn zero<R: Ring<Elem = E>>(ring: &R, dims: u32, cap: usize) -> Result<Self> {
        let z = Extensor::zero(ring, dims)?;
        Ok(TruncatedPoly {
            terms: vec![z; cap + 1],
        })
    }

    pub fn one<R: Ring<Elem = E>>(ring: &R, dims: u32, cap: usize) -> Result<Self> {
        let mut p = Self::zero(ring, dims, cap)?;
        p.terms[0] = Extensor::one(ring, dims)?;
        Ok(p)
    }

    /// `x z^0`.
    pub fn constant<R: Ring<Elem = E>>(ring: &R, x: Extensor<E>, cap: usize) -> Self {
        let mut terms = vec![Extensor::zero_unchecked(ring, x.dims()); cap + 1];
        terms[0] = x;
        TruncatedPoly { terms }
    }

    pub fn from_terms(terms: Vec<Extensor<E>>) -> Result<Self> {
        let dims = match terms.first() {
            Some(t) => t.dims(),
            None => return Err(Error::InvalidParameter("polynomial needs at least one term".into())),
        };
        if let Some(t) = terms.iter().find(|t| t.dims() != dims) {
            return Err(Error::DimensionMismatch(dims, t.dims()));
        }
        Ok(TruncatedPoly { terms })
    }

    pub fn cap(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn dims(&self) -> u32 {
        self.terms[0].dims()
    }

    /// The coefficient of `z^i`.
    pub fn coeff(&self, i: usize) -> &Extensor<E> {
        &self.terms[i]
    }

    pub fn coeff_mut(&mut self, i: usize) -> &mut Extensor<E> {
        &mut self.terms[i]
    }

    pub fn terms(&self) -> &[Extensor<E>] {
        &self.terms
    }

    pub fn is_zero<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        self.terms.iter().all(|t| t.is_zero(ring))
    }

    /// Highest power of `z` with a nonzero coefficient.
    pub fn degree<R: Ring<Elem = E>>(&self, ring: &R) -> Option<usize> {
        (0..self.terms.len()).rev().find(|&i| !self.terms[i].is_zero(ring))
    }

    fn check_shape(&self, other: &Self) {
        assert_eq!(self.terms.len(), other.terms.len(), "polynomial cap mismatch");
        assert_eq!(self.dims(), other.dims(), "polynomial dimension mismatch");
    }

    pub fn add_assign<R: Ring<Elem = E>>(&mut self, ring: &R, other: &Self) {
        self.check_shape(other);
        for (a, b) in self.terms.iter_mut().zip(&other.terms) {
            a.add_assign(ring, b);
        }
    }

    pub fn sub_assign<R: Ring<Elem = E>>(&mut self, ring: &R, other: &Self) {
        self.check_shape(other);
        for (a, b) in self.terms.iter_mut().zip(&other.terms) {
            a.sub_assign(ring, b);
        }
    }

    /// `self += c * other`
    pub fn add_scaled<R: Ring<Elem = E>>(&mut self, ring: &R, other: &Self, c: &E) {
        self.check_shape(other);
        for (a, b) in self.terms.iter_mut().zip(&other.terms) {
            add_scaled_assign(ring, a, b, c);
        }
    }

    pub fn scale<R: Ring<Elem = E>>(&self, ring: &R, c: &E) -> Self {
        TruncatedPoly {
            terms: self.terms.iter().map(|t| t.scale(ring, c)).collect(),
        }
    }

    pub fn neg<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        TruncatedPoly {
            terms: self.terms.iter().map(|t| t.neg(ring)).collect(),
        }
    }

    /// `z * self`, dropping the overflowing top term.
    pub fn mul_z<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len());
        terms.push(Extensor::zero_unchecked(ring, self.dims()));
        terms.extend(self.terms[..self.terms.len() - 1].iter().cloned());
        TruncatedPoly { terms }
    }

    /// `self ^ other`, truncated.
    pub fn wedge<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        let mut out = Self::zero_like(ring, self);
        out.wedge_acc(ring, self, other);
        out
    }

    /// `self += a ^ b`, truncated.
    pub fn wedge_acc<R: Ring<Elem = E>>(&mut self, ring: &R, a: &Self, b: &Self) {
        self.check_shape(a);
        self.check_shape(b);
        let cap = self.cap();
        for i in 0..=cap {
            if a.terms[i].is_zero(ring) {
                continue;
            }
            for j in 0..=(cap - i) {
                wedge_acc(ring, &mut self.terms[i + j], &a.terms[i], &b.terms[j]);
            }
        }
    }

    /// `z^shift * (q ^ self)`, truncated. Iterates only the nonzero
    /// coefficients of `q`.
    pub fn left_mul_sparse<R: Ring<Elem = E>>(&self, ring: &R, q: &Extensor<E>, shift: usize) -> Self {
        let mut out = Self::zero_like(ring, self);
        let cap = self.cap();
        for i in 0..=cap.saturating_sub(shift) {
            if shift + i > cap {
                break;
            }
            wedge_naive_acc(ring, &mut out.terms[i + shift], q, &self.terms[i]);
        }
        out
    }

    /// `self ^ blade`, times `z` when `graded`.
    pub fn apply_blade<R: Ring<Elem = E>>(&self, ring: &R, blade: &Blade<E>, graded: bool) -> Self {
        let cap = self.cap();
        let mut terms: Vec<Extensor<E>> = Vec::with_capacity(cap + 1);
        if graded {
            terms.push(Extensor::zero_unchecked(ring, self.dims()));
            for t in &self.terms[..cap] {
                terms.push(blade.apply(ring, t));
            }
        } else {
            for t in &self.terms {
                terms.push(blade.apply(ring, t));
            }
        }
        TruncatedPoly { terms }
    }

    pub(crate) fn zero_like<R: Ring<Elem = E>>(ring: &R, p: &Self) -> Self {
        TruncatedPoly {
            terms: vec![Extensor::zero_unchecked(ring, p.dims()); p.terms.len()],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{vandermonde, CodeVector};
    use crate::ring::{BigInteger, Gf2m, Gf2mElement, Integers};

    #[test]
    fn truncation_drops_high_powers() {
        let f = Gf2m::new(8).unwrap();
        let one = TruncatedPoly::one(&f, 2, 2).unwrap();
        let z1 = one.mul_z(&f);
        let z2 = z1.wedge(&f, &z1);
        assert!(!z2.coeff(2).is_zero(&f));
        assert!(z2.wedge(&f, &z1).is_zero(&f));
    }

    #[test]
    fn graded_blade_shifts_degree() {
        let z = Integers;
        let p = TruncatedPoly::one(&z, 3, 3).unwrap();
        let b = Blade::from_vector(vandermonde(&z, 2, 3).unwrap());
        let q = p.apply_blade(&z, &b, true);
        assert!(q.coeff(0).is_zero(&z));
        assert_eq!(q.coeff(1), &b.to_extensor(&z).unwrap());
        assert_eq!(q.degree(&z), Some(1));
    }

    #[test]
    fn sparse_left_multiplication_matches_general() {
        let f = Gf2m::new(8).unwrap();
        let v = CodeVector::new(vec![Gf2mElement(3), Gf2mElement(0), Gf2mElement(9)]);
        let q = v.to_extensor(&f);
        let mut p = TruncatedPoly::one(&f, 3, 2).unwrap();
        p.coeff_mut(1).coeffs_mut()[0b010] = Gf2mElement(5);
        let general = TruncatedPoly::constant(&f, q.clone(), 2).mul_z(&f).wedge(&f, &p);
        assert_eq!(p.left_mul_sparse(&f, &q, 1), general);
    }

    #[test]
    fn from_terms_checks_dimensions() {
        let z = Integers;
        let a: Extensor<BigInteger> = Extensor::one(&z, 2).unwrap();
        let b = Extensor::one(&z, 3).unwrap();
        assert!(TruncatedPoly::from_terms(vec![a, b]).is_err());
    }
}
