//! Sensitivity oracle for k-path detection in directed graphs.
//!
//! A k-path is a path on `k` distinct vertices. Every vertex carries a code
//! (a blade), every edge a scalar weight, and a walk `w_1, ..., w_s` is
//! mapped to the extensor `c(w_1) y c(w_2) y ... c(w_s)`. Walks that repeat
//! a coded vertex vanish, so the top coefficient of the sum over all walks
//! certifies a k-path. Preprocessing stores the pairwise walk sums `Q`;
//! a query replays only the walks that cross an updated edge.

mod counting;
mod serialize;

pub use counting::{trial_count, CountingState, DEFAULT_COUNT_CONSTANT};
pub(crate) use counting::{factorial, lift_sign_negative};

use rayon::prelude::*;

use crate::algebra::{check_dims, vandermonde, Blade, CodeVector, Extensor, TruncatedPoly};
use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, UpdateBatch};
use crate::ring::{Gf2m, Integers, Ring, Tag, DEFAULT_FIELD_DEGREE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Random codes over GF(2^d); one-sided error.
    Randomized,
    /// Lifted Vandermonde codes over the integers; exact.
    Deterministic,
}

/// How the coded graph is derived from the input graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Layout {
    /// The input graph itself.
    Plain,
    /// Vertex `v` becomes `in = 2v` and `out = 2v + 1` joined by an internal
    /// edge; a vertex failure deletes that internal edge.
    Split,
    /// Two copies `v` and `n + v`; an input edge `(u, v)` becomes
    /// `(u, v)`, `(u, n + v)` and `(n + u, v)`.
    TwoCopy,
}

impl Layout {
    /// Whether walks may begin at coded vertex `i`. A split walk starts at
    /// an in-vertex, so every code it carries sits behind an internal edge
    /// that a failure can delete.
    pub fn is_start(self, i: usize) -> bool {
        match self {
            Layout::Split => i % 2 == 0,
            Layout::Plain | Layout::TwoCopy => true,
        }
    }
}

/// Which part of the walk sum decides the answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    /// The `e_[D]` coefficient of the constant term.
    Top,
    /// Any coefficient of the given power of `z`.
    Graded(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeWeights {
    /// Keyed pseudo-random weight per ordered pair of coded vertices.
    Prf(u64),
    /// Every edge weighs 1.
    Unit,
}

/// The code of one coded vertex: `x -> x ^ blade`, times `z` when graded.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexCode<E> {
    pub blade: Blade<E>,
    pub graded: bool,
}

impl<E: Clone + PartialEq> VertexCode<E> {
    pub fn plain(blade: Blade<E>) -> Self {
        VertexCode { blade, graded: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    /// Split vertices so that queries may fail vertices.
    pub vertex_failures: bool,
    /// Reject redundant updates instead of dropping them.
    pub strict: bool,
    /// Degree of the coefficient field in randomized mode.
    pub field_degree: u32,
    /// Overrides the longest walk (in vertices) that preprocessing tracks.
    pub walk_cap: Option<usize>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            vertex_failures: false,
            strict: true,
            field_degree: DEFAULT_FIELD_DEGREE,
            walk_cap: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QueryResult<E> {
    pub answer: bool,
    /// The deciding coefficient; `answer` is `witness != 0`.
    pub witness: E,
}

/// Walk sums between the endpoints of updated edges, after the update.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpdatedPairs<E> {
    /// Coded-graph ids of the touched vertices.
    pub vertices: Vec<usize>,
    entries: Vec<TruncatedPoly<E>>,
}

impl<E> UpdatedPairs<E> {
    /// Walk sum from `vertices[i]` to `vertices[j]`.
    pub fn entry(&self, i: usize, j: usize) -> &TruncatedPoly<E> {
        &self.entries[i * self.vertices.len() + j]
    }

    /// Walk sum between two coded-graph ids, if both were touched.
    pub fn between(&self, u: usize, v: usize) -> Option<&TruncatedPoly<E>> {
        let i = self.vertices.iter().position(|&x| x == u)?;
        let j = self.vertices.iter().position(|&x| x == v)?;
        Some(self.entry(i, j))
    }
}

/// True when `x` has a nonzero coefficient on some mask of popcount `degree`.
pub fn stratum_nonzero<R: Ring>(ring: &R, x: &Extensor<R::Elem>, degree: u32) -> bool {
    x.support(ring).any(|m| m.count_ones() == degree)
}

/// Everything needed to build a state besides the walk sums.
#[derive(Clone, Debug)]
pub(crate) struct Blueprint<E> {
    pub mode: Mode,
    pub k: usize,
    pub dims: u32,
    pub l_max: usize,
    pub seed: u64,
    pub cap: usize,
    pub layout: Layout,
    pub target: Target,
    pub weights: EdgeWeights,
    pub strict: bool,
    pub graph: DirectedGraph,
    pub codes: Vec<VertexCode<E>>,
}

/// Frozen preprocessing output. Queries never mutate it, so any number of
/// them may run concurrently.
#[derive(Clone, Debug)]
pub struct KPathOracle<R: Ring> {
    ring: R,
    bp: Blueprint<R::Elem>,
    inner: DirectedGraph,
    q: Vec<TruncatedPoly<R::Elem>>,
    s: Vec<TruncatedPoly<R::Elem>>,
    f: Vec<TruncatedPoly<R::Elem>>,
    z: TruncatedPoly<R::Elem>,
}

impl<R: Ring + PartialEq> PartialEq for KPathOracle<R> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && self.bp.mode == other.bp.mode
            && self.bp.k == other.bp.k
            && self.bp.dims == other.bp.dims
            && self.bp.l_max == other.bp.l_max
            && self.bp.seed == other.bp.seed
            && self.bp.cap == other.bp.cap
            && self.bp.layout == other.bp.layout
            && self.bp.target == other.bp.target
            && self.bp.weights == other.bp.weights
            && self.bp.strict == other.bp.strict
            && self.bp.graph == other.bp.graph
            && self.bp.codes == other.bp.codes
            && self.q == other.q
            && self.s == other.s
            && self.f == other.f
            && self.z == other.z
    }
}

pub(crate) fn inner_graph(graph: &DirectedGraph, layout: Layout) -> DirectedGraph {
    let n = graph.n();
    match layout {
        Layout::Plain => graph.clone(),
        Layout::Split => {
            let mut g = DirectedGraph::new(2 * n);
            for v in 0..n {
                g.add_edge(2 * v, 2 * v + 1).expect("in range");
            }
            for (u, v) in graph.edges() {
                g.add_edge(2 * u + 1, 2 * v).expect("in range");
            }
            g
        }
        Layout::TwoCopy => {
            let mut g = DirectedGraph::new(2 * n);
            for (u, v) in graph.edges() {
                for (a, b) in two_copy_images(n, u, v) {
                    g.add_edge(a, b).expect("in range");
                }
            }
            g
        }
    }
}

fn two_copy_images(n: usize, u: usize, v: usize) -> [(usize, usize); 3] {
    [(u, v), (u, n + v), (n + u, v)]
}

fn edge_weight<R: Ring>(ring: &R, weights: EdgeWeights, u: usize, v: usize) -> R::Elem {
    match weights {
        EdgeWeights::Prf(seed) => ring.sample(seed, &Tag::new("edge").with(u as u64).with(v as u64)),
        EdgeWeights::Unit => ring.one(),
    }
}

impl KPathOracle<Gf2m> {
    /// Random codes and edge weights over GF(2^d), keyed by `seed`.
    pub fn randomized(graph: &DirectedGraph, k: usize, seed: u64, opts: &Options) -> Result<Self> {
        check_k(k)?;
        let dims = k as u32;
        check_dims(dims)?;
        let field = Gf2m::with_capacity(opts.field_degree, 100 * k as u64)?;
        let code = |v: usize| -> Blade<_> {
            let entries = (0..k)
                .map(|t| field.sample(seed, &Tag::new("code").with(v as u64).with(t as u64)))
                .collect();
            Blade::from_vector(CodeVector::new(entries))
        };
        let bp = standard_blueprint(graph, k, dims, Mode::Randomized, seed, opts, EdgeWeights::Prf(seed), code);
        KPathOracle::build(field, bp)
    }
}

impl KPathOracle<Integers> {
    /// Lifted Vandermonde codes (vertex `v` gets node `v + 1`) and unit
    /// edge weights; distinct k-paths can never cancel.
    pub fn deterministic(graph: &DirectedGraph, k: usize, opts: &Options) -> Result<Self> {
        check_k(k)?;
        let dims = 2 * k as u32;
        check_dims(dims)?;
        let ring = Integers;
        let mut codes = Vec::with_capacity(graph.n());
        for v in 0..graph.n() {
            codes.push(Blade::lifted(&ring, &vandermonde(&ring, v as u64 + 1, k as u32)?));
        }
        let bp = standard_blueprint(graph, k, dims, Mode::Deterministic, 0, opts, EdgeWeights::Unit, |v| {
            codes[v].clone()
        });
        KPathOracle::build(ring, bp)
    }
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn standard_blueprint<E: Clone + PartialEq>(
    graph: &DirectedGraph,
    k: usize,
    dims: u32,
    mode: Mode,
    seed: u64,
    opts: &Options,
    weights: EdgeWeights,
    code: impl Fn(usize) -> Blade<E>,
) -> Blueprint<E> {
    let (layout, l_max, codes) = if opts.vertex_failures {
        let mut codes = Vec::with_capacity(2 * graph.n());
        for v in 0..graph.n() {
            codes.push(VertexCode::plain(Blade::scalar_one(dims)));
            codes.push(VertexCode::plain(code(v)));
        }
        (Layout::Split, 2 * k + 1, codes)
    } else {
        let codes = (0..graph.n()).map(|v| VertexCode::plain(code(v))).collect();
        (Layout::Plain, k, codes)
    };
    Blueprint {
        mode,
        k,
        dims,
        l_max: opts.walk_cap.unwrap_or(l_max),
        seed,
        cap: 0,
        layout,
        target: Target::Top,
        weights,
        strict: opts.strict,
        graph: graph.clone(),
        codes,
    }
}

impl<R: Ring> KPathOracle<R> {
    /// Computes the walk sums for a blueprint. Rows are independent and run
    /// in parallel.
    pub(crate) fn build(ring: R, bp: Blueprint<R::Elem>) -> Result<Self> {
        check_dims(bp.dims)?;
        let inner = inner_graph(&bp.graph, bp.layout);
        let n = inner.n();
        if bp.codes.len() != n {
            return Err(Error::InvalidParameter(format!(
                "{} vertex codes for {} coded vertices",
                bp.codes.len(),
                n
            )));
        }
        if let Some(c) = bp.codes.iter().find(|c| c.blade.dims() != bp.dims) {
            return Err(Error::DimensionMismatch(bp.dims, c.blade.dims()));
        }
        let adj: Vec<Vec<(usize, R::Elem)>> = inner
            .out_adjacency()
            .into_iter()
            .enumerate()
            .map(|(u, vs)| vs.into_iter().map(|v| (v, edge_weight(&ring, bp.weights, u, v))).collect())
            .collect();
        let zero = TruncatedPoly::zero(&ring, bp.dims, bp.cap)?;
        let one = TruncatedPoly::one(&ring, bp.dims, bp.cap)?;
        let rows: Vec<Vec<TruncatedPoly<R::Elem>>> = (0..n)
            .into_par_iter()
            .map(|i| walk_row(&ring, &bp, &adj, &zero, &one, i))
            .collect();
        let q: Vec<_> = rows.into_iter().flatten().collect();
        let mut s = vec![zero.clone(); n];
        let mut f = vec![zero.clone(); n];
        let mut z = zero;
        for i in 0..n {
            let start = bp.layout.is_start(i);
            for j in 0..n {
                let e = &q[i * n + j];
                s[i].add_assign(&ring, e);
                if start {
                    f[j].add_assign(&ring, e);
                }
            }
            if start {
                z.add_assign(&ring, &s[i]);
            }
        }
        Ok(KPathOracle { ring, bp, inner, q, s, f, z })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn mode(&self) -> Mode {
        self.bp.mode
    }

    pub fn k(&self) -> usize {
        self.bp.k
    }

    /// Number of generators of the extensor space.
    pub fn dims(&self) -> u32 {
        self.bp.dims
    }

    /// Longest walk, in vertices, that contributes.
    pub fn l_max(&self) -> usize {
        self.bp.l_max
    }

    pub fn seed(&self) -> u64 {
        self.bp.seed
    }

    pub fn layout(&self) -> Layout {
        self.bp.layout
    }

    pub fn target(&self) -> Target {
        self.bp.target
    }

    /// The input graph.
    pub fn graph(&self) -> &DirectedGraph {
        &self.bp.graph
    }

    /// The graph whose walks are summed.
    pub fn coded_graph(&self) -> &DirectedGraph {
        &self.inner
    }

    pub fn codes(&self) -> &[VertexCode<R::Elem>] {
        &self.bp.codes
    }

    /// Sum over walks from `i` to `j` (coded-graph ids).
    pub fn q(&self, i: usize, j: usize) -> &TruncatedPoly<R::Elem> {
        &self.q[i * self.inner.n() + j]
    }

    /// Sum over walks leaving `i`.
    pub fn s(&self, i: usize) -> &TruncatedPoly<R::Elem> {
        &self.s[i]
    }

    /// Sum over walks entering `j` from a start vertex.
    pub fn f(&self, j: usize) -> &TruncatedPoly<R::Elem> {
        &self.f[j]
    }

    /// Sum over all walks from a start vertex.
    pub fn z(&self) -> &TruncatedPoly<R::Elem> {
        &self.z
    }

    /// Answer for the unmodified input.
    pub fn initial(&self) -> QueryResult<R::Elem> {
        self.extract(&self.z)
    }

    /// Reads the answer off a walk sum.
    pub fn extract(&self, total: &TruncatedPoly<R::Elem>) -> QueryResult<R::Elem> {
        let witness = match self.bp.target {
            Target::Top => total.coeff(0).top().clone(),
            Target::Graded(d) => total
                .coeff(d)
                .coeffs()
                .iter()
                .find(|c| !self.ring.is_zero(c))
                .cloned()
                .unwrap_or_else(|| self.ring.zero()),
        };
        QueryResult {
            answer: !self.ring.is_zero(&witness),
            witness,
        }
    }

    pub fn query(&self, batch: &UpdateBatch) -> Result<QueryResult<R::Elem>> {
        Ok(self.extract(&self.query_total(batch)?))
    }

    /// Translates a batch on the input graph into signed edge weights on the
    /// coded graph.
    fn coded_delta(&self, batch: &UpdateBatch) -> Result<Vec<(usize, usize, R::Elem)>> {
        let nb = batch.normalize_directed(&self.bp.graph, self.bp.strict)?;
        let n = self.bp.graph.n();
        let mut ins = Vec::new();
        let mut del = Vec::new();
        match self.bp.layout {
            Layout::Plain => {
                ins.extend(nb.inserts.iter().copied());
                del.extend(nb.deletes.iter().copied());
            }
            Layout::Split => {
                ins.extend(nb.inserts.iter().map(|&(u, v)| (2 * u + 1, 2 * v)));
                del.extend(nb.deletes.iter().map(|&(u, v)| (2 * u + 1, 2 * v)));
                del.extend(nb.vertex_failures.iter().map(|&v| (2 * v, 2 * v + 1)));
            }
            Layout::TwoCopy => {
                for &(u, v) in &nb.inserts {
                    ins.extend(two_copy_images(n, u, v));
                }
                for &(u, v) in &nb.deletes {
                    del.extend(two_copy_images(n, u, v));
                }
            }
        }
        if self.bp.layout != Layout::Split && !nb.vertex_failures.is_empty() {
            return Err(Error::InvalidUpdate(
                "vertex failures need a state preprocessed with vertex splitting".into(),
            ));
        }
        let mut delta = Vec::with_capacity(ins.len() + del.len());
        for (u, v) in ins {
            delta.push((u, v, edge_weight(&self.ring, self.bp.weights, u, v)));
        }
        for (u, v) in del {
            let y = edge_weight(&self.ring, self.bp.weights, u, v);
            delta.push((u, v, self.ring.neg(&y)));
        }
        Ok(delta)
    }

    /// Sum over all walks of the updated graph.
    ///
    /// With `u_1 = S'` and `w_i = Delta u_i`, the walks that use at least
    /// one updated edge sum to `sum_i F' . w_i`, where
    /// `u_{i+1} = Q' w_i`. Only rows and columns of touched vertices are read.
    pub fn query_total(&self, batch: &UpdateBatch) -> Result<TruncatedPoly<R::Elem>> {
        let delta = self.coded_delta(batch)?;
        let mut total = self.z.clone();
        if delta.is_empty() {
            return Ok(total);
        }
        let (touched, local) = touch(&delta);
        let t = touched.len();
        let ring = &self.ring;
        let zero = TruncatedPoly::zero_like(ring, &self.z);
        let mut u: Vec<TruncatedPoly<R::Elem>> = touched.iter().map(|&b| self.s[b].clone()).collect();
        for step in 0..self.bp.l_max {
            let mut w = vec![zero.clone(); t];
            for (a, b, y) in &local {
                w[*a].add_scaled(ring, &u[*b], y);
            }
            let live: Vec<usize> = (0..t).filter(|&a| !w[a].is_zero(ring)).collect();
            if live.is_empty() {
                break;
            }
            for &a in &live {
                total.wedge_acc(ring, &self.f[touched[a]], &w[a]);
            }
            if step + 1 == self.bp.l_max {
                break;
            }
            u = (0..t)
                .map(|c| {
                    let mut acc = zero.clone();
                    for &a in &live {
                        acc.wedge_acc(ring, self.q(touched[c], touched[a]), &w[a]);
                    }
                    acc
                })
                .collect();
        }
        Ok(total)
    }

    /// Walk sums between touched vertices after the update:
    /// `Q'_new = sum_{i >= 0} Q' (Delta Q')^i`.
    pub fn query_updated_pairs(&self, batch: &UpdateBatch) -> Result<UpdatedPairs<R::Elem>> {
        let delta = self.coded_delta(batch)?;
        let (touched, local) = touch(&delta);
        let t = touched.len();
        let ring = &self.ring;
        let zero = TruncatedPoly::zero_like(ring, &self.z);
        let base: Vec<TruncatedPoly<R::Elem>> = (0..t * t)
            .map(|x| self.q(touched[x / t], touched[x % t]).clone())
            .collect();
        let mut result = base.clone();
        let mut power = base.clone();
        for _ in 0..self.bp.l_max {
            // power <- power . Delta . Q'
            let mut pd = vec![zero.clone(); t * t];
            for c in 0..t {
                for (a, b, y) in &local {
                    pd[c * t + b].add_scaled(ring, &power[c * t + a], y);
                }
            }
            let mut next = vec![zero.clone(); t * t];
            for c in 0..t {
                for b in 0..t {
                    let left = &pd[c * t + b];
                    if left.is_zero(ring) {
                        continue;
                    }
                    for e in 0..t {
                        next[c * t + e].wedge_acc(ring, left, &base[b * t + e]);
                    }
                }
            }
            if next.iter().all(|p| p.is_zero(ring)) {
                break;
            }
            for (r, p) in result.iter_mut().zip(&next) {
                r.add_assign(ring, p);
            }
            power = next;
        }
        Ok(UpdatedPairs {
            vertices: touched,
            entries: result,
        })
    }
}

/// Sorted touched vertices and the delta re-indexed into them.
fn touch<E: Clone>(delta: &[(usize, usize, E)]) -> (Vec<usize>, Vec<(usize, usize, E)>) {
    let mut touched: Vec<usize> = delta.iter().flat_map(|(u, v, _)| [*u, *v]).collect();
    touched.sort_unstable();
    touched.dedup();
    let idx = |x: usize| touched.binary_search(&x).expect("touched");
    let local = delta.iter().map(|(u, v, y)| (idx(*u), idx(*v), y.clone())).collect();
    (touched, local)
}

fn walk_row<R: Ring>(
    ring: &R,
    bp: &Blueprint<R::Elem>,
    adj: &[Vec<(usize, R::Elem)>],
    zero: &TruncatedPoly<R::Elem>,
    one: &TruncatedPoly<R::Elem>,
    i: usize,
) -> Vec<TruncatedPoly<R::Elem>> {
    let n = adj.len();
    let mut row = vec![zero.clone(); n];
    let mut cur: Vec<Option<TruncatedPoly<R::Elem>>> = vec![None; n];
    let start = one.apply_blade(ring, &bp.codes[i].blade, bp.codes[i].graded);
    if start.is_zero(ring) {
        return row;
    }
    row[i].add_assign(ring, &start);
    cur[i] = Some(start);
    for _ in 1..bp.l_max {
        let mut acc: Vec<Option<TruncatedPoly<R::Elem>>> = vec![None; n];
        for (r, c) in cur.iter().enumerate() {
            let Some(c) = c else { continue };
            for (j, y) in &adj[r] {
                acc[*j].get_or_insert_with(|| zero.clone()).add_scaled(ring, c, y);
            }
        }
        let mut any = false;
        for (j, a) in acc.into_iter().enumerate() {
            cur[j] = None;
            let Some(a) = a else { continue };
            let next = a.apply_blade(ring, &bp.codes[j].blade, bp.codes[j].graded);
            if !next.is_zero(ring) {
                row[j].add_assign(ring, &next);
                cur[j] = Some(next);
                any = true;
            }
        }
        if !any {
            break;
        }
    }
    row
}

/// Either oracle flavour behind one type, for callers that pick the mode at
/// run time.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyKPathOracle {
    Randomized(KPathOracle<Gf2m>),
    Deterministic(KPathOracle<Integers>),
}

impl AnyKPathOracle {
    pub fn preprocess(graph: &DirectedGraph, k: usize, mode: Mode, seed: u64, opts: &Options) -> Result<Self> {
        Ok(match mode {
            Mode::Randomized => AnyKPathOracle::Randomized(KPathOracle::randomized(graph, k, seed, opts)?),
            Mode::Deterministic => AnyKPathOracle::Deterministic(KPathOracle::deterministic(graph, k, opts)?),
        })
    }

    pub fn k(&self) -> usize {
        match self {
            AnyKPathOracle::Randomized(o) => o.k(),
            AnyKPathOracle::Deterministic(o) => o.k(),
        }
    }

    pub fn graph(&self) -> &DirectedGraph {
        match self {
            AnyKPathOracle::Randomized(o) => o.graph(),
            AnyKPathOracle::Deterministic(o) => o.graph(),
        }
    }

    /// Answer and the deciding coefficient rendered as text.
    pub fn initial(&self) -> (bool, String) {
        match self {
            AnyKPathOracle::Randomized(o) => {
                let r = o.initial();
                (r.answer, r.witness.to_string())
            }
            AnyKPathOracle::Deterministic(o) => {
                let r = o.initial();
                (r.answer, r.witness.to_string())
            }
        }
    }

    pub fn query(&self, batch: &UpdateBatch) -> Result<(bool, String)> {
        Ok(match self {
            AnyKPathOracle::Randomized(o) => {
                let r = o.query(batch)?;
                (r.answer, r.witness.to_string())
            }
            AnyKPathOracle::Deterministic(o) => {
                let r = o.query(batch)?;
                (r.answer, r.witness.to_string())
            }
        })
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        match self {
            AnyKPathOracle::Randomized(o) => o.to_bytes(),
            AnyKPathOracle::Deterministic(o) => o.to_bytes(),
        }
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        match crate::container::peek_mode(bytes)? {
            crate::container::MODE_RANDOMIZED => Ok(AnyKPathOracle::Randomized(KPathOracle::from_bytes(bytes)?)),
            crate::container::MODE_DETERMINISTIC => {
                Ok(AnyKPathOracle::Deterministic(KPathOracle::from_bytes(bytes)?))
            }
            m => Err(Error::Format(format!("mode byte {m} is not a directed oracle"))),
        }
    }
}

/// `r` independent randomized states; the answer is their OR.
#[derive(Clone, Debug)]
pub struct Amplified {
    states: Vec<KPathOracle<Gf2m>>,
}

impl Amplified {
    pub fn preprocess(graph: &DirectedGraph, k: usize, seed: u64, repetitions: usize, opts: &Options) -> Result<Self> {
        if repetitions == 0 {
            return Err(Error::InvalidParameter("need at least one repetition".into()));
        }
        let states = (0..repetitions as u64)
            .into_par_iter()
            .map(|r| {
                let s = crate::ring::prf_u64(seed, &Tag::new("repetition").with(r));
                KPathOracle::randomized(graph, k, s, opts)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Amplified { states })
    }

    pub fn states(&self) -> &[KPathOracle<Gf2m>] {
        &self.states
    }

    pub fn query(&self, batch: &UpdateBatch) -> Result<bool> {
        for s in &self.states {
            if s.query(batch)?.answer {
                return Ok(true);
            }
        }
        Ok(false)
    }
}
