use super::{check_dims, skew_mul_acc, Extensor};
use crate::error::{Error, Result};
use crate::ring::Ring;

/// A degree-one extensor `sum v[i] e_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CodeVector<E> {
    entries: Vec<E>,
}

impl<E: Clone + PartialEq> CodeVector<E> {
    pub fn new(entries: Vec<E>) -> Self {
        CodeVector { entries }
    }

    pub fn dims(&self) -> u32 {
        self.entries.len() as u32
    }

    pub fn entries(&self) -> &[E] {
        &self.entries
    }

    pub fn to_extensor<R: Ring<Elem = E>>(&self, ring: &R) -> Extensor<E> {
        let mut x = Extensor::zero_unchecked(ring, self.dims());
        for (j, c) in self.entries.iter().enumerate() {
            x.coeffs_mut()[1 << j] = c.clone();
        }
        x
    }

    /// Embeds into a larger space with `before` leading and `after`
    /// trailing zero coordinates.
    pub fn pad<R: Ring<Elem = E>>(&self, ring: &R, before: usize, after: usize) -> Self {
        let mut entries = vec![ring.zero(); before];
        entries.extend(self.entries.iter().cloned());
        entries.extend(std::iter::repeat(ring.zero()).take(after));
        CodeVector { entries }
    }

    pub fn scale<R: Ring<Elem = E>>(&self, ring: &R, c: &E) -> Self {
        CodeVector {
            entries: self.entries.iter().map(|a| ring.mul(a, c)).collect(),
        }
    }

    pub fn add<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!(self.dims(), other.dims(), "code vector dimension mismatch");
        CodeVector {
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| ring.add(a, b)).collect(),
        }
    }
}

/// `(1, j, j^2, ..., j^{D-1})` with `j` the ring's embedding of `i`.
pub fn vandermonde<R: Ring>(ring: &R, i: u64, dims: u32) -> Result<CodeVector<R::Elem>> {
    check_dims(dims)?;
    let j = ring.embed_index(i)?;
    let mut entries = Vec::with_capacity(dims as usize);
    let mut p = ring.one();
    for _ in 0..dims {
        entries.push(p.clone());
        p = ring.mul(&p, &j);
    }
    Ok(CodeVector { entries })
}

/// The degree-two code `(v, 0) ^ (0, v)` in twice the dimension.
pub fn lift<R: Ring>(ring: &R, v: &CodeVector<R::Elem>) -> Result<Extensor<R::Elem>> {
    check_dims(2 * v.dims())?;
    Blade::lifted(ring, v).to_extensor(ring)
}

/// A wedge of code vectors `v_1 ^ ... ^ v_m`, kept factored so that
/// multiplying by it costs `m` skew products. The empty blade is the
/// scalar 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Blade<E> {
    dims: u32,
    factors: Vec<CodeVector<E>>,
}

impl<E: Clone + PartialEq> Blade<E> {
    pub fn scalar_one(dims: u32) -> Self {
        Blade { dims, factors: Vec::new() }
    }

    pub fn from_vector(v: CodeVector<E>) -> Self {
        Blade {
            dims: v.dims(),
            factors: vec![v],
        }
    }

    pub fn from_factors(dims: u32, factors: Vec<CodeVector<E>>) -> Result<Self> {
        if let Some(f) = factors.iter().find(|f| f.dims() != dims) {
            return Err(Error::DimensionMismatch(dims, f.dims()));
        }
        Ok(Blade { dims, factors })
    }

    /// `(v, 0) ^ (0, v)`.
    pub fn lifted<R: Ring<Elem = E>>(ring: &R, v: &CodeVector<E>) -> Self {
        let k = v.dims() as usize;
        Blade {
            dims: 2 * v.dims(),
            factors: vec![v.pad(ring, 0, k), v.pad(ring, k, 0)],
        }
    }

    pub fn dims(&self) -> u32 {
        self.dims
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[CodeVector<E>] {
        &self.factors
    }

    /// `self ^ other`.
    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.dims, other.dims, "blade dimension mismatch");
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Blade { dims: self.dims, factors }
    }

    /// `x ^ self`.
    pub fn apply<R: Ring<Elem = E>>(&self, ring: &R, x: &Extensor<E>) -> Extensor<E> {
        let mut cur = x.clone();
        for f in &self.factors {
            let mut next = Extensor::zero_unchecked(ring, self.dims);
            skew_mul_acc(ring, &mut next, &cur, f);
            cur = next;
        }
        cur
    }

    pub fn to_extensor<R: Ring<Elem = E>>(&self, ring: &R) -> Result<Extensor<E>> {
        Ok(self.apply(ring, &Extensor::one(ring, self.dims)?))
    }
}
