//! Occupancy constraints through subspace codes.
//!
//! Every member code of a colour lives in a fixed subspace of dimension
//! `mu`, so a wedge of more than `mu` members of one colour vanishes. A
//! vertex with several colours carries the wedge of one member per colour.

use crate::algebra::{check_dims, vandermonde, wedge_vectors, Blade, CodeVector};
use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::kpath::{Blueprint, EdgeWeights, KPathOracle, Layout, Mode, Target, VertexCode};
use crate::ring::{Gf2m, Integers, Ring, Tag};

/// The span of `mu` independent vectors together with a rule for drawing
/// member codes from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceCode<E> {
    dims: u32,
    basis: Vec<CodeVector<E>>,
}

impl<E: Clone + PartialEq> SubspaceCode<E> {
    /// Basis of Vandermonde vectors at the given distinct positive nodes.
    pub fn vandermonde<R: Ring<Elem = E>>(ring: &R, nodes: &[u64], dims: u32) -> Result<Self> {
        check_dims(dims)?;
        if nodes.len() > dims as usize {
            return Err(Error::InvalidParameter(format!(
                "{} basis vectors do not fit in dimension {dims}",
                nodes.len()
            )));
        }
        let basis = nodes.iter().map(|&i| vandermonde(ring, i, dims)).collect::<Result<_>>()?;
        Ok(SubspaceCode { dims, basis })
    }

    pub fn from_basis(dims: u32, basis: Vec<CodeVector<E>>) -> Result<Self> {
        check_dims(dims)?;
        if let Some(b) = basis.iter().find(|b| b.dims() != dims) {
            return Err(Error::DimensionMismatch(dims, b.dims()));
        }
        Ok(SubspaceCode { dims, basis })
    }

    pub fn dims(&self) -> u32 {
        self.dims
    }

    /// Dimension of the subspace, the colour's occupancy bound.
    pub fn mu(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[CodeVector<E>] {
        &self.basis
    }

    /// `sum_{t=1}^{mu} i^t b_t`. Members at distinct nonzero indices are
    /// independent up to `mu` at a time, because their coefficient rows form
    /// a scaled Vandermonde matrix.
    pub fn member<R: Ring<Elem = E>>(&self, ring: &R, i: u64) -> Result<CodeVector<E>> {
        let x = ring.embed_index(i)?;
        let mut acc = CodeVector::new(vec![ring.zero(); self.dims as usize]);
        let mut p = x.clone();
        for b in &self.basis {
            acc = acc.add(ring, &b.scale(ring, &p));
            p = ring.mul(&p, &x);
        }
        Ok(acc)
    }

    /// A member with coefficients drawn from the ring's sampler.
    pub fn random_member<R: Ring<Elem = E>>(&self, ring: &R, seed: u64, index: u64) -> CodeVector<E> {
        let mut acc = CodeVector::new(vec![ring.zero(); self.dims as usize]);
        for (t, b) in self.basis.iter().enumerate() {
            let c = ring.sample(seed, &Tag::new("member").with(index).with(t as u64));
            acc = acc.add(ring, &b.scale(ring, &c));
        }
        acc
    }
}

impl SubspaceCode<crate::ring::Gf2mElement> {
    /// A uniformly random subspace of dimension `mu`: vectors are drawn until
    /// `mu` of them are independent.
    pub fn random(field: &Gf2m, mu: usize, dims: u32, seed: u64) -> Result<Self> {
        check_dims(dims)?;
        if mu > dims as usize {
            return Err(Error::InvalidParameter(format!("subspace of dimension {mu} in dimension {dims}")));
        }
        let mut basis: Vec<CodeVector<_>> = Vec::with_capacity(mu);
        let mut draw = 0u64;
        while basis.len() < mu {
            let v = CodeVector::new(
                (0..dims)
                    .map(|j| field.sample(seed, &Tag::new("subspace").with(draw).with(j as u64)))
                    .collect(),
            );
            draw += 1;
            let mut trial = basis.clone();
            trial.push(v);
            if !wedge_vectors(field, &trial)?.is_zero(field) {
                basis = trial;
            }
        }
        Ok(SubspaceCode { dims, basis })
    }
}

/// Multiplies a code by `z`, so that walks are graded by vertex count rather
/// than by extensor degree.
pub fn grade_by_z<E: Clone + PartialEq>(blade: Blade<E>) -> VertexCode<E> {
    VertexCode { blade, graded: true }
}

/// Appends `pad` when `blade` has odd degree. Even blades commute with
/// everything, which restores monomial identities of commutative circuits.
pub fn even_pad<E: Clone + PartialEq>(blade: &Blade<E>, pad: &CodeVector<E>) -> Blade<E> {
    if blade.degree() % 2 == 0 {
        blade.clone()
    } else {
        blade.wedge(&Blade::from_vector(pad.clone()))
    }
}

/// Two occupancy-bounded vertex subsets.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ConstraintSpec {
    pub v1: Vec<usize>,
    pub v2: Vec<usize>,
    pub mu1: usize,
    pub mu2: usize,
}

impl ConstraintSpec {
    /// Sorts and deduplicates both subsets.
    pub fn new(mut v1: Vec<usize>, mut v2: Vec<usize>, mu1: usize, mu2: usize) -> Self {
        v1.sort_unstable();
        v1.dedup();
        v2.sort_unstable();
        v2.dedup();
        ConstraintSpec { v1, v2, mu1, mu2 }
    }

    pub fn unconstrained() -> Self {
        Self::default()
    }

    /// A subset whose bound is at least `min(k, |V|)` never binds.
    fn binding(set: &[usize], mu: usize, k: usize) -> Option<(Vec<usize>, usize)> {
        let mut s = set.to_vec();
        s.sort_unstable();
        s.dedup();
        (mu < k.min(s.len())).then_some((s, mu))
    }

    /// Base dimension `k + min(k, |V1 n V2|, mu1, mu2)` over the binding
    /// subsets; codes live in twice this dimension.
    pub fn dimension(&self, k: usize) -> usize {
        let b1 = Self::binding(&self.v1, self.mu1, k);
        let b2 = Self::binding(&self.v2, self.mu2, k);
        match (b1, b2) {
            (Some((s1, m1)), Some((s2, m2))) => {
                let common = s1.iter().filter(|v| s2.binary_search(v).is_ok()).count();
                k + k.min(common).min(m1).min(m2)
            }
            _ => k,
        }
    }

    fn check(&self, n: usize) -> Result<()> {
        match self.v1.iter().chain(&self.v2).find(|&&v| v >= n) {
            Some(&v) => Err(Error::VertexOutOfRange(v, n)),
            None => Ok(()),
        }
    }
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    Ok(())
}

/// Deterministic state for: is there a walk on `k` vertex positions with at
/// least `k - 1` distinct vertices?
///
/// The coded graph holds two copies of the input. First-copy vertices carry
/// distinct lifted codes, and every second-copy vertex shares one more, so a
/// surviving walk visits the second copy at most once. Updates map to all
/// edge images.
pub fn kwalk_one_repeat_build(graph: &DirectedGraph, k: usize, strict: bool) -> Result<KPathOracle<Integers>> {
    check_k(k)?;
    let dims = 2 * k as u32;
    check_dims(dims)?;
    let ring = Integers;
    let n = graph.n();
    let shared = Blade::lifted(&ring, &vandermonde(&ring, n as u64 + 1, k as u32)?);
    let mut codes = Vec::with_capacity(2 * n);
    for v in 0..n {
        codes.push(VertexCode::plain(Blade::lifted(&ring, &vandermonde(&ring, v as u64 + 1, k as u32)?)));
    }
    codes.extend((0..n).map(|_| VertexCode::plain(shared.clone())));
    let bp = Blueprint {
        mode: Mode::Deterministic,
        k,
        dims,
        l_max: k,
        seed: 0,
        cap: 0,
        layout: Layout::TwoCopy,
        target: Target::Top,
        weights: EdgeWeights::Unit,
        strict,
        graph: graph.clone(),
        codes,
    };
    KPathOracle::build(ring, bp)
}

/// Deterministic state for: is there a `k`-path with at most `mu1` vertices
/// of `V1` and at most `mu2` of `V2`?
///
/// Bounds above `k` are clamped. Each vertex carries `z` times its lifted
/// code, so the `z^k` part of the walk sum collects exactly the `k`-vertex
/// walks. A path's term there is, on every mask of the form `I + (I shifted
/// by d)`, a squared minor of its vectors with a sign fixed by its degree,
/// so the part is nonzero exactly when some permitted path exists.
pub fn constrained_kpath_build(
    graph: &DirectedGraph,
    k: usize,
    spec: &ConstraintSpec,
    strict: bool,
) -> Result<KPathOracle<Integers>> {
    check_k(k)?;
    let n = graph.n();
    spec.check(n)?;
    let d = spec.dimension(k);
    let dims = 2 * d as u32;
    check_dims(dims)?;
    let ring = Integers;
    let b1 = ConstraintSpec::binding(&spec.v1, spec.mu1.min(k), k);
    let b2 = ConstraintSpec::binding(&spec.v2, spec.mu2.min(k), k);
    let mu1 = b1.as_ref().map_or(0, |b| b.1);
    let mu2 = b2.as_ref().map_or(0, |b| b.1);
    let nodes1: Vec<u64> = (1..=mu1 as u64).collect();
    let nodes2: Vec<u64> = (mu1 as u64 + 1..=(mu1 + mu2) as u64).collect();
    let s1 = SubspaceCode::vandermonde(&ring, &nodes1, d as u32)?;
    let s2 = SubspaceCode::vandermonde(&ring, &nodes2, d as u32)?;
    let mut next_node = (mu1 + mu2) as u64 + 1;
    let mut codes = Vec::with_capacity(n);
    for v in 0..n {
        let mut blade = Blade::scalar_one(dims);
        let mut coloured = false;
        for (b, s) in [(&b1, &s1), (&b2, &s2)] {
            if let Some((set, _)) = b {
                if let Ok(i) = set.binary_search(&v) {
                    blade = blade.wedge(&Blade::lifted(&ring, &s.member(&ring, i as u64 + 1)?));
                    coloured = true;
                }
            }
        }
        if !coloured {
            blade = Blade::lifted(&ring, &vandermonde(&ring, next_node, d as u32)?);
            next_node += 1;
        }
        codes.push(grade_by_z(blade));
    }
    let bp = Blueprint {
        mode: Mode::Deterministic,
        k,
        dims,
        l_max: k,
        seed: 0,
        cap: k,
        layout: Layout::Plain,
        target: Target::Graded(k),
        weights: EdgeWeights::Unit,
        strict,
        graph: graph.clone(),
        codes,
    };
    KPathOracle::build(ring, bp)
}
