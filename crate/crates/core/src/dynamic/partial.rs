use std::collections::HashMap;

use super::{check_k, code_dims, element_code, normalize_set, Handle};
use crate::algebra::{add_scaled_assign, check_dims, wedge, Blade, Extensor, TruncatedPoly};
use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;
use crate::ring::{Gf2m, Integers, Ring, Tag, DEFAULT_FIELD_DEGREE};

#[derive(Clone, Debug, PartialEq, Eq)]
struct Entry<E> {
    elements: Vec<usize>,
    /// Per-slot set weights; empty for large sets and over the integers.
    weights: Vec<E>,
}

#[derive(Clone, Debug)]
enum Scheme<E> {
    /// Characteristic 2: `P_j = sum_S w_{S,j} prod_{a in S} (1 + y_{a,j} chi(a))`
    /// for `j < k`, over small sets.
    Slots { y: Vec<Vec<E>>, p: Vec<Extensor<E>> },
    /// Integers: `P(z) = prod_S (1 + z [prod_{a in S} (1 + chi(a)) - 1])`,
    /// kept modulo `z^(k+2)` so the vanishing `z^(k+1)` term is observable.
    Graded { pz: TruncatedPoly<E> },
}

/// k-partial cover: the fewest sets whose union has at least `k` elements.
///
/// Sets of `k` or more elements are only counted. Over a field the
/// randomized slot products are used: the extra per-set weights keep
/// different choices of sets for the same slot pattern from cancelling in
/// characteristic 2. Over the integers the single-variable polynomial is
/// maintained, with removal through the truncated inverse series.
#[derive(Clone, Debug)]
pub struct PartialCover<R: Ring> {
    ring: R,
    universe: usize,
    k: usize,
    seed: u64,
    codes: Vec<Blade<R::Elem>>,
    large: usize,
    scheme: Scheme<R::Elem>,
    live: HashMap<u64, Entry<R::Elem>>,
    next: u64,
}

impl PartialCover<Gf2m> {
    pub fn randomized(universe: usize, k: usize, seed: u64) -> Result<Self> {
        Self::new(Gf2m::new(DEFAULT_FIELD_DEGREE)?, universe, k, seed)
    }
}

impl PartialCover<Integers> {
    pub fn deterministic(universe: usize, k: usize) -> Result<Self> {
        Self::new(Integers, universe, k, 0)
    }
}

impl<R: Ring> PartialCover<R> {
    pub fn new(ring: R, universe: usize, k: usize, seed: u64) -> Result<Self> {
        check_k(k)?;
        let dims = code_dims(&ring, k);
        check_dims(dims)?;
        let codes = (1..=universe as u64)
            .map(|a| element_code(&ring, a, k))
            .collect::<Result<Vec<_>>>()?;
        let scheme = if ring.is_char2() {
            let y = (1..=universe as u64)
                .map(|a| (0..k as u64).map(|j| ring.sample(seed, &Tag::new("slot").with(a).with(j))).collect())
                .collect();
            Scheme::Slots {
                y,
                p: vec![Extensor::zero(&ring, dims)?; k],
            }
        } else {
            Scheme::Graded {
                pz: TruncatedPoly::one(&ring, dims, k + 1)?,
            }
        };
        Ok(PartialCover {
            ring,
            universe,
            k,
            seed,
            codes,
            large: 0,
            scheme,
            live: HashMap::new(),
            next: 0,
        })
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

    /// Live sets with at least `k` elements.
    pub fn large_count(&self) -> usize {
        self.large
    }

    /// The slot sums over a field, `None` over the integers.
    pub fn slots(&self) -> Option<&[Extensor<R::Elem>]> {
        match &self.scheme {
            Scheme::Slots { p, .. } => Some(p),
            Scheme::Graded { .. } => None,
        }
    }

    /// `P(z)` over the integers, `None` over a field.
    pub fn polynomial(&self) -> Option<&TruncatedPoly<R::Elem>> {
        match &self.scheme {
            Scheme::Slots { .. } => None,
            Scheme::Graded { pz } => Some(pz),
        }
    }

    /// `x prod_{a in S} (1 + c_a chi(a))` by skew products; `c_a = 1`
    /// when `y` is `None`.
    fn expand(&self, x: &Extensor<R::Elem>, elements: &[usize], y: Option<usize>) -> Extensor<R::Elem> {
        let mut cur = x.clone();
        for &a in elements {
            let t = self.codes[a - 1].apply(&self.ring, &cur);
            match (y, &self.scheme) {
                (Some(j), Scheme::Slots { y, .. }) => add_scaled_assign(&self.ring, &mut cur, &t, &y[a - 1][j]),
                _ => cur.add_assign(&self.ring, &t),
            }
        }
        cur
    }

    /// `X p` with `X = z [prod_{a in S} (1 + chi(a)) - 1]`.
    fn times_x(&self, p: &TruncatedPoly<R::Elem>, elements: &[usize]) -> TruncatedPoly<R::Elem> {
        let terms = p
            .terms()
            .iter()
            .map(|t| {
                let mut e = self.expand(t, elements, None);
                e.sub_assign(&self.ring, t);
                e
            })
            .collect();
        TruncatedPoly::from_terms(terms).expect("same shape").mul_z(&self.ring)
    }

    /// Multiplies the maintained value by the factor of a small set, or by
    /// its inverse.
    fn apply(&mut self, elements: &[usize], weights: &[R::Elem], remove: bool) {
        let ring = self.ring.clone();
        match &self.scheme {
            Scheme::Slots { p, .. } => {
                let one = Extensor::one(&ring, p[0].dims()).expect("checked dims");
                let terms: Vec<_> = (0..self.k).map(|j| self.expand(&one, elements, Some(j))).collect();
                let Scheme::Slots { p, .. } = &mut self.scheme else { unreachable!() };
                for (j, t) in terms.iter().enumerate() {
                    // characteristic 2: subtracting is adding
                    add_scaled_assign(&ring, &mut p[j], t, &weights[j]);
                }
            }
            Scheme::Graded { pz } => {
                let next = if remove {
                    // (1 + X)^{-1} = sum_i (-X)^i; X^(k+1) = 0 ends the series.
                    let mut acc = pz.clone();
                    let mut cur = pz.clone();
                    for i in 1..=pz.cap() {
                        cur = self.times_x(&cur, elements);
                        if cur.is_zero(&ring) {
                            break;
                        }
                        if i % 2 == 1 {
                            acc.sub_assign(&ring, &cur);
                        } else {
                            acc.add_assign(&ring, &cur);
                        }
                    }
                    acc
                } else {
                    let mut acc = pz.clone();
                    acc.add_assign(&ring, &self.times_x(pz, elements));
                    acc
                };
                assert!(
                    next.coeff(self.k + 1).is_zero(&ring),
                    "P(z) has degree above k; a product of more than k lifted codes must vanish"
                );
                debug_assert!(next.terms().iter().all(|t| t.is_even(&ring)));
                self.scheme = Scheme::Graded { pz: next };
            }
        }
    }

    pub fn insert(&mut self, elements: &[usize]) -> Result<Handle> {
        let h = self.next;
        self.insert_weighted(elements, Tag::new("set-weight").with(h))
    }

    /// Insertion with weights keyed by `key` instead of the handle. Weights
    /// only need to be independent across simultaneously live sets, so a
    /// caller that keeps at most one live set per key may reuse it; an
    /// insert-remove pair then restores the exact same state.
    pub(crate) fn insert_keyed(&mut self, elements: &[usize], key: u64) -> Result<Handle> {
        self.insert_weighted(elements, Tag::new("keyed-weight").with(key))
    }

    fn insert_weighted(&mut self, elements: &[usize], tag: Tag) -> Result<Handle> {
        let elements = normalize_set(elements, self.universe)?;
        let h = self.next;
        self.next += 1;
        let mut weights = Vec::new();
        if elements.len() >= self.k {
            self.large += 1;
        } else {
            if self.ring.is_char2() {
                weights = (0..self.k as u64)
                    .map(|j| self.ring.sample(self.seed, &tag.clone().with(j)))
                    .collect();
            }
            self.apply(&elements, &weights, false);
        }
        self.live.insert(h, Entry { elements, weights });
        Ok(Handle(h))
    }

    pub fn remove(&mut self, handle: Handle) -> Result<()> {
        let e = self.live.remove(&handle.0).ok_or(Error::UnknownHandle(handle.0))?;
        if e.elements.len() >= self.k {
            self.large -= 1;
        } else {
            self.apply(&e.elements, &e.weights, true);
        }
        Ok(())
    }

    /// The least number of sets covering `k` elements. Over a field the
    /// answer is never below the truth and exceeds it with small
    /// probability.
    pub fn query(&self) -> Option<usize> {
        if self.large > 0 {
            return Some(1);
        }
        match &self.scheme {
            Scheme::Slots { p, .. } => {
                let mut prefix = p[0].clone();
                if !self.ring.is_zero(prefix.top()) {
                    return Some(1);
                }
                for (t, pj) in p.iter().enumerate().skip(1) {
                    prefix = wedge(&self.ring, &prefix, pj).expect("same dims");
                    if !self.ring.is_zero(prefix.top()) {
                        return Some(t + 1);
                    }
                }
                None
            }
            Scheme::Graded { pz } => (1..=self.k).find(|&t| !self.ring.is_zero(pz.coeff(t).top())),
        }
    }
}

/// t-dominating set: the fewest vertices whose closed neighbourhoods
/// together contain at least `t` vertices. Partial cover over the sets
/// `{v} + N(v)`, with element `v + 1` standing for vertex `v`.
#[derive(Clone, Debug)]
pub struct DominatingSet<R: Ring> {
    graph: UndirectedGraph,
    active: Vec<bool>,
    handles: Vec<Option<Handle>>,
    cover: PartialCover<R>,
}

impl<R: Ring> DominatingSet<R> {
    pub fn new(ring: R, graph: &UndirectedGraph, t: usize, seed: u64) -> Result<Self> {
        let n = graph.n();
        let mut s = DominatingSet {
            graph: graph.clone(),
            active: vec![true; n],
            handles: vec![None; n],
            cover: PartialCover::new(ring, n, t, seed)?,
        };
        for v in 0..n {
            s.refresh(v)?;
        }
        Ok(s)
    }

    pub fn graph(&self) -> &UndirectedGraph {
        &self.graph
    }

    pub fn is_active(&self, v: usize) -> bool {
        self.active[v]
    }

    pub fn cover(&self) -> &PartialCover<R> {
        &self.cover
    }

    /// Replaces the set of `v` by its current closed neighbourhood.
    fn refresh(&mut self, v: usize) -> Result<()> {
        if let Some(h) = self.handles[v].take() {
            self.cover.remove(h)?;
        }
        if self.active[v] {
            let mut set: Vec<usize> = self.graph.adjacency()[v].iter().map(|&u| u + 1).collect();
            set.push(v + 1);
            // One live set per vertex, so the vertex can key its weights.
            self.handles[v] = Some(self.cover.insert_keyed(&set, v as u64)?);
        }
        Ok(())
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.graph.n() {
            return Err(Error::VertexOutOfRange(v, self.graph.n()));
        }
        Ok(())
    }

    /// Two removals and two insertions.
    pub fn update_edge(&mut self, u: usize, v: usize, insert: bool) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::InvalidUpdate(format!("self-loop at {u}")));
        }
        if !self.active[u] || !self.active[v] {
            return Err(Error::InvalidUpdate(format!("edge {{{u}, {v}}} touches a removed vertex")));
        }
        let changed = if insert {
            self.graph.add_edge(u, v)?
        } else {
            self.graph.remove_edge(u, v)?
        };
        if !changed {
            let what = if insert { "already present" } else { "absent" };
            return Err(Error::InvalidUpdate(format!("edge {{{u}, {v}}} is {what}")));
        }
        self.refresh(u)?;
        self.refresh(v)
    }

    /// Deletes `v` with its edges; its neighbours' sets are rebuilt.
    pub fn remove_vertex(&mut self, v: usize) -> Result<()> {
        self.check_vertex(v)?;
        if !self.active[v] {
            return Err(Error::InvalidUpdate(format!("vertex {v} already removed")));
        }
        let nbrs = self.graph.adjacency()[v].clone();
        for &u in &nbrs {
            self.graph.remove_edge(u, v)?;
        }
        self.active[v] = false;
        self.refresh(v)?;
        for u in nbrs {
            self.refresh(u)?;
        }
        Ok(())
    }

    /// Brings back a removed vertex as an isolated one.
    pub fn add_vertex(&mut self, v: usize) -> Result<()> {
        self.check_vertex(v)?;
        if self.active[v] {
            return Err(Error::InvalidUpdate(format!("vertex {v} is present")));
        }
        self.active[v] = true;
        self.refresh(v)
    }

    pub fn query(&self) -> Option<usize> {
        self.cover.query()
    }
}
