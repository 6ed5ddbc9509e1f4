use std::collections::HashMap;

use super::{check_k, element_code, Handle};
use crate::algebra::{add_scaled_assign, check_dims, Blade, Extensor, TruncatedPoly};
use crate::error::{Error, Result};
use crate::ring::{Gf2m, Integers, Ring, Tag, DEFAULT_FIELD_DEGREE};

#[derive(Clone, Debug, PartialEq, Eq)]
struct Entry<E> {
    tuple: Vec<usize>,
    y: E,
}

/// d-dimensional k-matching: `k` tuples that differ pairwise in every
/// coordinate.
///
/// Only coordinates `2..=d` are coded. For each first-coordinate value `a`
/// the accumulator `Q_a` sums `y_t M_t` over live tuples with `t[1] = a`,
/// and `P(z) = prod_a (1 + z Q_a)` is kept modulo `z^(k+1)`. An update of
/// `Q_a` divides out the old factor and multiplies in the new one; factors
/// with `Q_a = 0` are identities and never touched.
#[derive(Clone, Debug)]
pub struct Matching<R: Ring> {
    ring: R,
    d: usize,
    k: usize,
    seed: u64,
    sizes: Vec<usize>,
    /// `codes[i][x - 1]` codes value `x` of coordinate `i + 2`.
    codes: Vec<Vec<Blade<R::Elem>>>,
    q: Vec<Extensor<R::Elem>>,
    pz: TruncatedPoly<R::Elem>,
    live: HashMap<u64, Entry<R::Elem>>,
    next: u64,
}

impl Matching<Gf2m> {
    pub fn randomized(sizes: &[usize], k: usize, seed: u64) -> Result<Self> {
        Self::new(Gf2m::new(DEFAULT_FIELD_DEGREE)?, sizes, k, seed)
    }
}

impl Matching<Integers> {
    pub fn deterministic(sizes: &[usize], k: usize) -> Result<Self> {
        Self::new(Integers, sizes, k, 0)
    }
}

impl<R: Ring> Matching<R> {
    /// `sizes[i]` is the size of universe `i + 1`; values of each
    /// coordinate range over `1..=sizes[i]`.
    pub fn new(ring: R, sizes: &[usize], k: usize, seed: u64) -> Result<Self> {
        check_k(k)?;
        let d = sizes.len();
        if d < 2 {
            return Err(Error::InvalidParameter("need at least two coordinates".into()));
        }
        let slots = (d - 1) * k;
        let dims = if ring.is_char2() { slots } else { 2 * slots } as u32;
        check_dims(dims)?;
        // Universes are disjoint, so their values get disjoint nodes.
        let mut node = 0u64;
        let mut codes = Vec::with_capacity(d - 1);
        for &size in &sizes[1..] {
            let mut c = Vec::with_capacity(size);
            for _ in 0..size {
                node += 1;
                c.push(element_code(&ring, node, slots)?);
            }
            codes.push(c);
        }
        Ok(Matching {
            q: vec![Extensor::zero(&ring, dims)?; sizes[0]],
            pz: TruncatedPoly::one(&ring, dims, k)?,
            ring,
            d,
            k,
            seed,
            sizes: sizes.to_vec(),
            codes,
            live: HashMap::new(),
            next: 0,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.live.len()
    }

    pub fn is_empty(&self) -> bool {
        self.live.is_empty()
    }

    pub fn accumulator(&self, a: usize) -> &Extensor<R::Elem> {
        &self.q[a - 1]
    }

    pub fn polynomial(&self) -> &TruncatedPoly<R::Elem> {
        &self.pz
    }

    fn check_tuple(&self, tuple: &[usize]) -> Result<()> {
        if tuple.len() != self.d {
            return Err(Error::InvalidUpdate(format!("tuple has {} coordinates, expected {}", tuple.len(), self.d)));
        }
        for (&x, &size) in tuple.iter().zip(&self.sizes) {
            if x == 0 || x > size {
                return Err(Error::ElementOutOfRange(x, size));
            }
        }
        Ok(())
    }

    /// `pz * (1 + z q)`.
    fn times_factor(&self, pz: &TruncatedPoly<R::Elem>, q: &Extensor<R::Elem>) -> TruncatedPoly<R::Elem> {
        let mut out = pz.clone();
        out.add_assign(&self.ring, &pz.left_mul_sparse(&self.ring, q, 1));
        out
    }

    /// `pz * (1 + z q)^{-1}`. In characteristic 2 the factor is its own
    /// inverse; otherwise the series `sum_i (-z q)^i` stops at `z^k`.
    fn divide_factor(&self, pz: &TruncatedPoly<R::Elem>, q: &Extensor<R::Elem>) -> TruncatedPoly<R::Elem> {
        if self.ring.is_char2() {
            return self.times_factor(pz, q);
        }
        let mut acc = pz.clone();
        let mut cur = pz.clone();
        for i in 1..=self.k {
            cur = cur.left_mul_sparse(&self.ring, q, 1);
            if cur.is_zero(&self.ring) {
                break;
            }
            if i % 2 == 1 {
                acc.sub_assign(&self.ring, &cur);
            } else {
                acc.add_assign(&self.ring, &cur);
            }
        }
        acc
    }

    /// `Q_a += sign y M_t` and the matching update of `P(z)`.
    fn update(&mut self, tuple: &[usize], y: &R::Elem, negate: bool) {
        let a = tuple[0] - 1;
        let mut m = Extensor::one(&self.ring, self.pz.dims()).expect("checked dims");
        for (i, &x) in tuple[1..].iter().enumerate() {
            m = self.codes[i][x - 1].apply(&self.ring, &m);
        }
        let old = self.q[a].clone();
        let c = if negate { self.ring.neg(y) } else { y.clone() };
        add_scaled_assign(&self.ring, &mut self.q[a], &m, &c);
        let mut pz = self.pz.clone();
        if !old.is_zero(&self.ring) {
            pz = self.divide_factor(&pz, &old);
        }
        if !self.q[a].is_zero(&self.ring) {
            pz = self.times_factor(&pz, &self.q[a]);
        }
        debug_assert!(self.ring.is_char2() || pz.terms().iter().all(|t| t.is_even(&self.ring)));
        self.pz = pz;
    }

    pub fn insert(&mut self, tuple: &[usize]) -> Result<Handle> {
        self.check_tuple(tuple)?;
        let h = self.next;
        self.next += 1;
        let y = if self.ring.is_char2() {
            self.ring.sample(self.seed, &Tag::new("tuple").with(h))
        } else {
            self.ring.one()
        };
        self.update(tuple, &y, false);
        self.live.insert(h, Entry { tuple: tuple.to_vec(), y });
        Ok(Handle(h))
    }

    pub fn remove(&mut self, handle: Handle) -> Result<()> {
        let e = self.live.remove(&handle.0).ok_or(Error::UnknownHandle(handle.0))?;
        self.update(&e.tuple, &e.y, true);
        Ok(())
    }

    pub fn witness(&self) -> &R::Elem {
        self.pz.coeff(self.k).top()
    }

    pub fn query(&self) -> bool {
        !self.ring.is_zero(self.witness())
    }
}
