use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use super::{check_k, code_dims, element_code, normalize_set, Handle};
use crate::algebra::{add_scaled_assign, check_dims, Blade, CodeVector, Extensor};
use crate::error::{Error, Result};
use crate::kpath::{factorial, lift_sign_negative, trial_count, DEFAULT_COUNT_CONSTANT};
use crate::ring::{prf_u64, Gf2m, Integers, Ring, Tag, DEFAULT_FIELD_DEGREE};

#[derive(Clone, Debug, PartialEq, Eq)]
struct Entry<E> {
    elements: Vec<usize>,
    y: E,
}

/// Exact k-partial cover: is there a pairwise-disjoint sub-collection whose
/// union has exactly `k` elements?
///
/// Maintains `P = prod_S (1 + y_S chi(S))` with `chi(S)` the ascending wedge
/// of element codes. Over the integers every `y_S` is 1 and the codes are
/// lifted, so all factors are even and commute.
#[derive(Clone, Debug)]
pub struct ExactCover<R: Ring> {
    ring: R,
    universe: usize,
    k: usize,
    seed: u64,
    /// `codes[a - 1]` codes element `a`.
    codes: Vec<Blade<R::Elem>>,
    p: Extensor<R::Elem>,
    live: HashMap<u64, Entry<R::Elem>>,
    next: u64,
}

impl ExactCover<Gf2m> {
    pub fn randomized(universe: usize, k: usize, seed: u64) -> Result<Self> {
        Self::new(Gf2m::new(DEFAULT_FIELD_DEGREE)?, universe, k, seed)
    }
}

impl ExactCover<Integers> {
    pub fn deterministic(universe: usize, k: usize) -> Result<Self> {
        Self::new(Integers, universe, k, 0)
    }
}

impl<R: Ring> ExactCover<R> {
    /// Element `a` gets the Vandermonde code at node `a`.
    pub fn new(ring: R, universe: usize, k: usize, seed: u64) -> Result<Self> {
        check_k(k)?;
        let codes = (1..=universe as u64)
            .map(|a| element_code(&ring, a, k))
            .collect::<Result<Vec<_>>>()?;
        let dims = code_dims(&ring, k);
        Self::with_codes(ring, k, dims, codes, seed)
    }

    pub(crate) fn with_codes(ring: R, k: usize, dims: u32, codes: Vec<Blade<R::Elem>>, seed: u64) -> Result<Self> {
        check_k(k)?;
        check_dims(dims)?;
        if let Some(c) = codes.iter().find(|c| c.dims() != dims) {
            return Err(Error::DimensionMismatch(dims, c.dims()));
        }
        Ok(ExactCover {
            p: Extensor::one(&ring, dims)?,
            ring,
            universe: codes.len(),
            k,
            seed,
            codes,
            live: HashMap::new(),
            next: 0,
        })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.live.len()
    }

    pub fn is_empty(&self) -> bool {
        self.live.is_empty()
    }

    /// The maintained product.
    pub fn product(&self) -> &Extensor<R::Elem> {
        &self.p
    }

    /// `P += sign * y * (P ^ chi(S))`. Sets larger than `k` have
    /// `chi(S) = 0` and are skipped.
    fn multiply(&mut self, elements: &[usize], y: &R::Elem, negate: bool) {
        if elements.len() > self.k {
            return;
        }
        let mut x = self.p.clone();
        for &a in elements {
            x = self.codes[a - 1].apply(&self.ring, &x);
        }
        let c = if negate { self.ring.neg(y) } else { y.clone() };
        add_scaled_assign(&self.ring, &mut self.p, &x, &c);
        debug_assert!(self.ring.is_char2() || self.p.is_even(&self.ring));
    }

    pub fn insert(&mut self, elements: &[usize]) -> Result<Handle> {
        let elements = normalize_set(elements, self.universe)?;
        let h = self.next;
        self.next += 1;
        let y = if self.ring.is_char2() {
            self.ring.sample(self.seed, &Tag::new("exact-set").with(h))
        } else {
            self.ring.one()
        };
        // (1 + y X)(1 - y X) = 1 - y^2 X^2 = 1 since X is a blade.
        self.multiply(&elements, &y, false);
        self.live.insert(h, Entry { elements, y });
        Ok(Handle(h))
    }

    pub fn remove(&mut self, handle: Handle) -> Result<()> {
        let e = self.live.remove(&handle.0).ok_or(Error::UnknownHandle(handle.0))?;
        self.multiply(&e.elements, &e.y, true);
        Ok(())
    }

    /// Elements of a live set.
    pub fn elements(&self, handle: Handle) -> Result<&[usize]> {
        self.live
            .get(&handle.0)
            .map(|e| e.elements.as_slice())
            .ok_or(Error::UnknownHandle(handle.0))
    }

    /// The coefficient of `e_[D]` in `P`.
    pub fn witness(&self) -> &R::Elem {
        self.p.top()
    }

    /// True answers are always correct; over a field a false answer is
    /// wrong with probability at most `k / |F|`.
    pub fn query(&self) -> bool {
        !self.ring.is_zero(self.witness())
    }
}

/// Is there a pairwise-disjoint sub-collection covering at least `k`
/// elements? A set with `k` or more elements answers directly; otherwise
/// some disjoint union has size in `k..=2k`, so one exact state per size
/// suffices.
#[derive(Clone, Debug)]
pub struct AtLeastCover<R: Ring> {
    k: usize,
    universe: usize,
    large: usize,
    states: Vec<ExactCover<R>>,
    /// Handle to the per-state handle of a small set, or `None` for a
    /// large one.
    live: HashMap<u64, Option<Handle>>,
    next: u64,
}

impl<R: Ring> AtLeastCover<R> {
    pub fn new(ring: R, universe: usize, k: usize, seed: u64) -> Result<Self> {
        check_k(k)?;
        let states = (k..=2 * k)
            .map(|kk| ExactCover::new(ring.clone(), universe, kk, prf_u64(seed, &Tag::new("at-least").with(kk as u64))))
            .collect::<Result<Vec<_>>>()?;
        Ok(AtLeastCover {
            k,
            universe,
            large: 0,
            states,
            live: HashMap::new(),
            next: 0,
        })
    }

    pub fn insert(&mut self, elements: &[usize]) -> Result<Handle> {
        let elements = normalize_set(elements, self.universe)?;
        let inner = if elements.len() >= self.k {
            self.large += 1;
            None
        } else {
            let mut h = None;
            for s in &mut self.states {
                h = Some(s.insert(&elements)?);
            }
            h
        };
        let h = self.next;
        self.next += 1;
        self.live.insert(h, inner);
        Ok(Handle(h))
    }

    pub fn remove(&mut self, handle: Handle) -> Result<()> {
        match self.live.remove(&handle.0).ok_or(Error::UnknownHandle(handle.0))? {
            None => self.large -= 1,
            Some(inner) => {
                for s in &mut self.states {
                    s.remove(inner)?;
                }
            }
        }
        Ok(())
    }

    pub fn query(&self) -> bool {
        self.large > 0 || self.states.iter().any(|s| s.query())
    }
}

/// m-set k-packing: `k` pairwise-disjoint sets, each of size `m`. This is
/// exact cover of `mk` elements.
#[derive(Clone, Debug)]
pub struct Packing<R: Ring> {
    m: usize,
    inner: ExactCover<R>,
}

impl<R: Ring> Packing<R> {
    pub fn new(ring: R, universe: usize, m: usize, k: usize, seed: u64) -> Result<Self> {
        check_k(m)?;
        Ok(Packing {
            m,
            inner: ExactCover::new(ring, universe, m * k, seed)?,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.inner.k() / self.m
    }

    pub fn insert(&mut self, elements: &[usize]) -> Result<Handle> {
        let s = normalize_set(elements, self.inner.universe())?;
        if s.len() != self.m {
            return Err(Error::InvalidUpdate(format!("set has {} elements, expected {}", s.len(), self.m)));
        }
        self.inner.insert(&s)
    }

    pub fn remove(&mut self, handle: Handle) -> Result<()> {
        self.inner.remove(handle)
    }

    pub fn query(&self) -> bool {
        self.inner.query()
    }

    pub fn exact(&self) -> &ExactCover<R> {
        &self.inner
    }
}

/// Approximate count of k-packings of m-sets. Each trial lifts uniform
/// sign codes; a packing contributes a squared `mk x mk` sign determinant,
/// whose mean is `(mk)!`.
#[derive(Clone, Debug)]
pub struct PackingCounter {
    m: usize,
    k: usize,
    trials: Vec<ExactCover<Integers>>,
}

impl PackingCounter {
    /// Uses `ceil(60 / epsilon^2)` trials.
    pub fn new(universe: usize, m: usize, k: usize, epsilon: f64, seed: u64) -> Result<Self> {
        Self::with_trials(universe, m, k, trial_count(epsilon, DEFAULT_COUNT_CONSTANT)?, seed)
    }

    pub fn with_trials(universe: usize, m: usize, k: usize, trials: usize, seed: u64) -> Result<Self> {
        check_k(m)?;
        check_k(k)?;
        if trials == 0 {
            return Err(Error::InvalidParameter("the trial count must be positive".into()));
        }
        let size = m * k;
        let ring = Integers;
        let trials = (0..trials as u64)
            .into_par_iter()
            .map(|t| {
                let tseed = prf_u64(seed, &Tag::new("packing-trial").with(t));
                let codes = (1..=universe as u64)
                    .map(|a| {
                        let entries = (0..size)
                            .map(|i| ring.sample(tseed, &Tag::new("sign").with(a).with(i as u64)))
                            .collect();
                        Blade::lifted(&ring, &CodeVector::new(entries))
                    })
                    .collect();
                ExactCover::with_codes(ring, size, 2 * size as u32, codes, tseed)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PackingCounter { m, k, trials })
    }

    pub fn trials(&self) -> usize {
        self.trials.len()
    }

    /// Every trial assigns the same handle to the same insertion.
    pub fn insert(&mut self, elements: &[usize]) -> Result<Handle> {
        let s = normalize_set(elements, self.trials[0].universe())?;
        if s.len() != self.m {
            return Err(Error::InvalidUpdate(format!("set has {} elements, expected {}", s.len(), self.m)));
        }
        let hs = self
            .trials
            .par_iter_mut()
            .map(|t| t.insert(&s))
            .collect::<Result<Vec<_>>>()?;
        Ok(hs[0])
    }

    pub fn remove(&mut self, handle: Handle) -> Result<()> {
        self.trials.par_iter_mut().try_for_each(|t| t.remove(handle))
    }

    /// Signed, `(mk)!`-normalized witness of every trial.
    pub fn raw_estimates(&self) -> Vec<BigRational> {
        let size = self.m * self.k;
        let fact = factorial(size);
        let negative = lift_sign_negative(size);
        self.trials
            .iter()
            .map(|t| {
                let w = t.witness().to_bigint();
                BigRational::new(if negative { -w } else { w }, fact.clone())
            })
            .collect()
    }

    /// Mean of the trial estimates.
    pub fn estimate(&self) -> BigRational {
        let sum = self.raw_estimates().into_iter().fold(BigRational::zero(), |a, b| a + b);
        sum / BigRational::from_integer(BigInt::from(self.trials.len()))
    }
}
