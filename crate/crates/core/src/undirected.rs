//! Randomized sensitivity oracle for k-path detection in undirected graphs.
//!
//! Each trial splits the vertices at random into `V1` and `V2`. A `V1`
//! vertex carries a vector in the first `k1` coordinates, an edge inside
//! `V2` carries a vector in the last `k2` coordinates, and everything else
//! carries a scalar. Every vertex also contributes a factor `z`. The walk
//! sum runs over *admissible* walks, those never containing `v u v` with
//! `v` in `V2` and `u` in `V1`, and each walk is weighted by a variable of
//! its first vertex. Over characteristic 2 the `z^k e_top` coefficient is
//! nonzero (for a random evaluation) exactly when some k-path has `k1`
//! vertices in `V1` and `k2` edges inside `V2`.
//!
//! A query expands every updated arc weight as `old + delta` and sums over
//! the positions that take `delta`. The walk between two such positions is
//! an admissible walk of the original graph, subject to boundary conditions
//! at both ends that are resolved by inclusion-exclusion.

use rayon::prelude::*;

use crate::algebra::{check_dims, Blade, CodeVector, Extensor, TruncatedPoly};
use crate::container::*;
use crate::error::{Error, Result};
use crate::graph::{UndirectedGraph, UpdateBatch};
use crate::ring::{prf_u64, Gf2m, Gf2mElement, Ring, RingParams, Tag, DEFAULT_FIELD_DEGREE};

/// `(ceil(k / 2), floor((sqrt 2 - 1) / 2 * k))`.
pub fn choose_params(k: usize) -> (usize, usize) {
    let k2 = ((std::f64::consts::SQRT_2 - 1.0) / 2.0 * k as f64 + 1e-9).floor() as usize;
    (k.div_ceil(2), k2)
}

/// Trials for failure probability 0.01: `ceil(8 * 1.015^k * ln 100)`.
pub fn default_trials(k: usize) -> usize {
    (8.0 * 1.015f64.powi(k as i32) * 100f64.ln()).ceil() as usize
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UndirectedOptions {
    /// Number of random partitions; `None` picks [`default_trials`].
    pub trials: Option<usize>,
    pub strict: bool,
    pub field_degree: u32,
}

impl Default for UndirectedOptions {
    fn default() -> Self {
        UndirectedOptions {
            trials: None,
            strict: true,
            field_degree: DEFAULT_FIELD_DEGREE,
        }
    }
}

/// Codes and variables of one trial. Everything is derived from the trial
/// seed and the side assignment, so inserted edges get codes on demand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkCoding {
    field: Gf2m,
    seed: u64,
    k1: usize,
    k2: usize,
    in_v1: Vec<bool>,
    vertex_blades: Vec<Blade<Gf2mElement>>,
    vertex_vars: Vec<Gf2mElement>,
}

impl WalkCoding {
    pub fn new(field: Gf2m, seed: u64, k1: usize, k2: usize, in_v1: Vec<bool>) -> Result<Self> {
        let dims = (k1 + k2) as u32;
        check_dims(dims)?;
        field.require_size(in_v1.len() as u64 + 1)?;
        let mut vertex_blades = Vec::with_capacity(in_v1.len());
        for (v, &side) in in_v1.iter().enumerate() {
            vertex_blades.push(if side {
                let x = field.embed_index(v as u64 + 1)?;
                Blade::from_vector(powers(&field, &x, k1).pad(&field, 0, k2))
            } else {
                Blade::scalar_one(dims)
            });
        }
        let vertex_vars = (0..in_v1.len())
            .map(|v| field.sample(seed, &Tag::new("vertex-var").with(v as u64)))
            .collect();
        Ok(WalkCoding {
            field,
            seed,
            k1,
            k2,
            in_v1,
            vertex_blades,
            vertex_vars,
        })
    }

    pub fn field(&self) -> &Gf2m {
        &self.field
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn k1(&self) -> usize {
        self.k1
    }

    pub fn k2(&self) -> usize {
        self.k2
    }

    pub fn dims(&self) -> u32 {
        (self.k1 + self.k2) as u32
    }

    pub fn in_v1(&self, v: usize) -> bool {
        self.in_v1[v]
    }

    pub fn sides(&self) -> &[bool] {
        &self.in_v1
    }

    /// `y_v`, the weight of walks starting at `v`.
    pub fn vertex_var(&self, v: usize) -> &Gf2mElement {
        &self.vertex_vars[v]
    }

    /// The symmetric edge variable `y_uv`.
    pub fn edge_var(&self, u: usize, v: usize) -> Gf2mElement {
        let (a, b) = (u.min(v), u.max(v));
        self.field.sample(self.seed, &Tag::new("edge-var").with(a as u64).with(b as u64))
    }

    /// The edge's vector factor: a Vandermonde vector at a keyed random node
    /// for edges inside `V2` (zero when `k2 = 0`), none otherwise.
    fn edge_blade(&self, u: usize, v: usize) -> Blade<Gf2mElement> {
        if self.in_v1[u] || self.in_v1[v] {
            return Blade::scalar_one(self.dims());
        }
        let (a, b) = (u.min(v), u.max(v));
        let node = self.field.sample(self.seed, &Tag::new("edge-node").with(a as u64).with(b as u64));
        Blade::from_vector(powers(&self.field, &node, self.k2).pad(&self.field, self.k1, 0))
    }

    /// Vertex code without its `z`.
    pub fn vertex_code(&self, v: usize) -> Extensor<Gf2mElement> {
        self.vertex_blades[v].apply(&self.field, &Extensor::one(&self.field, self.dims()).expect("checked dims"))
    }

    /// `y_uv` times the edge's vector factor.
    pub fn edge_code(&self, u: usize, v: usize) -> Extensor<Gf2mElement> {
        let one = Extensor::one(&self.field, self.dims()).expect("checked dims");
        self.edge_blade(u, v).apply(&self.field, &one).scale(&self.field, &self.edge_var(u, v))
    }

    fn vertex_ext(&self, x: &Extensor<Gf2mElement>, v: usize) -> Extensor<Gf2mElement> {
        self.vertex_blades[v].apply(&self.field, x)
    }

    fn edge_ext(&self, x: &Extensor<Gf2mElement>, u: usize, v: usize) -> Extensor<Gf2mElement> {
        self.edge_blade(u, v).apply(&self.field, x).scale(&self.field, &self.edge_var(u, v))
    }

    /// `p * z * chi(v)`.
    fn vertex_poly(&self, p: &TruncatedPoly<Gf2mElement>, v: usize) -> TruncatedPoly<Gf2mElement> {
        p.apply_blade(&self.field, &self.vertex_blades[v], true)
    }

    /// `p * chi(uv)`.
    fn edge_poly(&self, p: &TruncatedPoly<Gf2mElement>, u: usize, v: usize) -> TruncatedPoly<Gf2mElement> {
        p.apply_blade(&self.field, &self.edge_blade(u, v), false)
            .scale(&self.field, &self.edge_var(u, v))
    }
}

fn powers(field: &Gf2m, x: &Gf2mElement, len: usize) -> CodeVector<Gf2mElement> {
    let mut entries = Vec::with_capacity(len);
    let mut p = field.one();
    for _ in 0..len {
        entries.push(p);
        p = field.mul(&p, x);
    }
    CodeVector::new(entries)
}

/// Walk sums of one trial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionState {
    coding: WalkCoding,
    q: Vec<TruncatedPoly<Gf2mElement>>,
    s: Vec<TruncatedPoly<Gf2mElement>>,
    sbold: Vec<TruncatedPoly<Gf2mElement>>,
    z: TruncatedPoly<Gf2mElement>,
}

impl PartitionState {
    /// Fills `Q` row by row. `B[a]` holds the walks from the row vertex that
    /// end with arc `a = (w, v)`; extending by `(w, v)` the walks that end at
    /// `w` would create `v w v` exactly for those ending with `(v, w)`, which
    /// are subtracted when `w` is in `V1` and `v` in `V2`.
    pub fn preprocess(graph: &UndirectedGraph, k: usize, coding: WalkCoding) -> Result<Self> {
        let n = graph.n();
        if coding.in_v1.len() != n {
            return Err(Error::InvalidParameter(format!("{} sides for {n} vertices", coding.in_v1.len())));
        }
        let arcs = Arcs::new(graph);
        let rows: Vec<Vec<TruncatedPoly<Gf2mElement>>> =
            (0..n).into_par_iter().map(|u| walk_row(&coding, &arcs, n, k, u)).collect();
        let q: Vec<_> = rows.into_iter().flatten().collect();
        Ok(Self::from_q(coding, n, k, q))
    }

    fn from_q(coding: WalkCoding, n: usize, k: usize, q: Vec<TruncatedPoly<Gf2mElement>>) -> Self {
        let field = &coding.field;
        let zero = TruncatedPoly::zero(field, coding.dims(), k).expect("checked dims");
        let mut s = vec![zero.clone(); n];
        let mut sbold = vec![zero.clone(); n];
        let mut z = zero;
        for u in 0..n {
            for v in 0..n {
                let e = &q[u * n + v];
                s[u].add_assign(field, e);
                sbold[u].add_scaled(field, e, coding.vertex_var(v));
            }
            z.add_assign(field, &sbold[u]);
        }
        PartitionState { coding, q, s, sbold, z }
    }

    pub fn coding(&self) -> &WalkCoding {
        &self.coding
    }

    fn n(&self) -> usize {
        self.s.len()
    }

    /// Admissible walks from `u` to `v`; the `z^s` coefficient collects the
    /// walks on `s` vertices.
    pub fn q(&self, u: usize, v: usize) -> &TruncatedPoly<Gf2mElement> {
        &self.q[u * self.n() + v]
    }

    pub fn s(&self, u: usize) -> &TruncatedPoly<Gf2mElement> {
        &self.s[u]
    }

    /// Walks from `u`, each weighted by the variable of its last vertex.
    pub fn sbold(&self, u: usize) -> &TruncatedPoly<Gf2mElement> {
        &self.sbold[u]
    }

    pub fn z(&self) -> &TruncatedPoly<Gf2mElement> {
        &self.z
    }

    /// The deciding coefficient `[z^k e_top]` of a walk sum.
    pub fn witness(&self, total: &TruncatedPoly<Gf2mElement>) -> Gf2mElement {
        *total.coeff(total.cap()).top()
    }

    /// Walk sum of the updated graph. `graph` is the preprocessed graph and
    /// `batch` is normalized against it.
    pub fn query_total(&self, graph: &UndirectedGraph, batch: &UpdateBatch) -> TruncatedPoly<Gf2mElement> {
        let c = &self.coding;
        let field = &c.field;
        let mut marked: Vec<(usize, usize, bool)> = Vec::new();
        for &(u, v) in &batch.inserts {
            marked.push((u, v, false));
            marked.push((v, u, false));
        }
        for &(u, v) in &batch.deletes {
            marked.push((u, v, true));
            marked.push((v, u, true));
        }
        let mut total = self.z.clone();
        if marked.is_empty() {
            return total;
        }
        let side = |v: usize| c.in_v1(v);
        // `chi(v) chi(uv) p` over an original edge, zero if absent.
        let step = |p: &TruncatedPoly<Gf2mElement>, u: usize, v: usize| -> Option<TruncatedPoly<Gf2mElement>> {
            graph.has_edge(u, v).then(|| c.vertex_poly(&c.edge_poly(p, u, v), v))
        };
        let delta = |p: &TruncatedPoly<Gf2mElement>, (s, t, removed): (usize, usize, bool)| {
            let x = c.edge_poly(p, s, t);
            if removed {
                x.neg(field)
            } else {
                x
            }
        };
        // Prefixes ending at s that may continue along (s, t): drop those
        // ending with (t, s) when s is in V1 and t in V2.
        let prefix: Vec<_> = marked
            .iter()
            .map(|&(s, t, _)| {
                let mut p = self.sbold[s].clone();
                if side(s) && !side(t) {
                    if let Some(x) = step(&self.sbold[t], t, s) {
                        p.sub_assign(field, &x);
                    }
                }
                p
            })
            .collect();
        // Suffixes starting at t after (s, t): drop those starting (t, s)
        // when t is in V1 and s in V2.
        let suffix: Vec<_> = marked
            .iter()
            .map(|&(s, t, _)| {
                let mut p = self.s[t].clone();
                if side(t) && !side(s) {
                    if let Some(x) = step(&self.s[s], s, t) {
                        p.sub_assign(field, &x);
                    }
                }
                p
            })
            .collect();
        let a = marked.len();
        let seg: Vec<TruncatedPoly<Gf2mElement>> = (0..a * a)
            .map(|x| self.segment(graph, marked[x / a], marked[x % a]))
            .collect();
        let mut cur: Vec<_> = (0..a).map(|j| delta(&suffix[j], marked[j])).collect();
        // Round r places r + 1 marked arcs; a walk on at most k vertices
        // has fewer than k arcs.
        for round in 0..total.cap() {
            let mut any = false;
            for i in 0..a {
                if !cur[i].is_zero(field) {
                    total.wedge_acc(field, &prefix[i], &cur[i]);
                    any = true;
                }
            }
            if !any || round + 1 >= total.cap() {
                break;
            }
            cur = (0..a)
                .map(|i| {
                    let mut acc = TruncatedPoly::zero_like(field, &total);
                    for j in 0..a {
                        if !cur[j].is_zero(field) {
                            acc.wedge_acc(field, &seg[i * a + j], &cur[j]);
                        }
                    }
                    delta(&acc, marked[i])
                })
                .collect();
        }
        total
    }

    /// Original admissible walks from `t1` to `s2` that may sit between the
    /// marked arcs `(s1, t1)` and `(s2, t2)`: they must not start with
    /// `(t1, s1)` when `s1 t1 s1` would be forbidden, must not end with
    /// `(t2, s2)` when `t2 s2 t2` would be, and a lone vertex must not form
    /// `s1 t1 s1` across both arcs.
    fn segment(
        &self,
        graph: &UndirectedGraph,
        (s1, t1, _): (usize, usize, bool),
        (s2, t2, _): (usize, usize, bool),
    ) -> TruncatedPoly<Gf2mElement> {
        let c = &self.coding;
        let field = &c.field;
        let side = |v: usize| c.in_v1(v);
        let mut out = self.q(t1, s2).clone();
        let head = side(t1) && !side(s1) && graph.has_edge(t1, s1);
        let tail = side(s2) && !side(t2) && graph.has_edge(t2, s2);
        // chi(t1) chi(t1 s1) . p
        let lead = |p: &TruncatedPoly<Gf2mElement>| c.vertex_poly(&c.edge_poly(p, t1, s1), t1);
        // p . chi(t2 s2) chi(s2)
        let trail = |p: &TruncatedPoly<Gf2mElement>| c.vertex_poly(&c.edge_poly(p, t2, s2), s2);
        if head {
            out.sub_assign(field, &lead(self.q(s1, s2)));
        }
        if tail {
            out.sub_assign(field, &trail(self.q(t1, t2)));
        }
        if head && tail {
            out.add_assign(field, &lead(&trail(self.q(s1, t2))));
        }
        if t1 == s2 && s1 == t2 && side(t1) && !side(s1) {
            let one = TruncatedPoly::one(field, c.dims(), out.cap()).expect("checked dims");
            out.sub_assign(field, &c.vertex_poly(&one, t1));
        }
        out
    }
}

/// Directed arcs of an undirected graph with reverse lookup.
struct Arcs {
    list: Vec<(usize, usize)>,
    rev: Vec<usize>,
    into: Vec<Vec<usize>>,
}

impl Arcs {
    fn new(graph: &UndirectedGraph) -> Self {
        let mut list: Vec<(usize, usize)> = graph.edges().flat_map(|(u, v)| [(u, v), (v, u)]).collect();
        list.sort_unstable();
        let rev = list
            .iter()
            .map(|&(u, v)| list.binary_search(&(v, u)).expect("both orientations"))
            .collect();
        let mut into = vec![Vec::new(); graph.n()];
        for (i, &(_, v)) in list.iter().enumerate() {
            into[v].push(i);
        }
        Arcs { list, rev, into }
    }
}

fn walk_row(coding: &WalkCoding, arcs: &Arcs, n: usize, k: usize, u: usize) -> Vec<TruncatedPoly<Gf2mElement>> {
    let field = &coding.field;
    let dims = coding.dims();
    let zero = Extensor::zero(field, dims).expect("checked dims");
    // terms[v][s]: walks from u to v on s vertices.
    let mut terms = vec![vec![zero.clone(); k + 1]; n];
    let mut qs: Vec<Option<Extensor<Gf2mElement>>> = vec![None; n];
    let first = coding.vertex_code(u);
    if k >= 1 && !first.is_zero(field) {
        terms[u][1] = first.clone();
        qs[u] = Some(first);
    }
    let mut b: Vec<Option<Extensor<Gf2mElement>>> = vec![None; arcs.list.len()];
    for s in 1..k {
        let mut nb: Vec<Option<Extensor<Gf2mElement>>> = vec![None; arcs.list.len()];
        for (a, &(w, v)) in arcs.list.iter().enumerate() {
            let mut base = match &qs[w] {
                Some(x) => x.clone(),
                None => zero.clone(),
            };
            if coding.in_v1(w) && !coding.in_v1(v) {
                if let Some(back) = &b[arcs.rev[a]] {
                    base.sub_assign(field, back);
                }
            }
            if base.is_zero(field) {
                continue;
            }
            let x = coding.vertex_ext(&coding.edge_ext(&base, w, v), v);
            if !x.is_zero(field) {
                nb[a] = Some(x);
            }
        }
        let mut nqs: Vec<Option<Extensor<Gf2mElement>>> = vec![None; n];
        for v in 0..n {
            let mut acc: Option<Extensor<Gf2mElement>> = None;
            for &a in &arcs.into[v] {
                if let Some(x) = &nb[a] {
                    acc.get_or_insert_with(|| zero.clone()).add_assign(field, x);
                }
            }
            if let Some(x) = acc {
                terms[v][s + 1] = x.clone();
                nqs[v] = Some(x);
            }
        }
        b = nb;
        qs = nqs;
    }
    terms
        .into_iter()
        .map(|t| TruncatedPoly::from_terms(t).expect("uniform dims"))
        .collect()
}

/// How trials pick their partition.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Partitioning {
    Random,
    /// A fixed bipartition; `true` marks the side used as `V1`.
    Bipartite(Vec<bool>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UndirectedOracle {
    k: usize,
    seed: u64,
    strict: bool,
    field: Gf2m,
    graph: UndirectedGraph,
    partitioning: Partitioning,
    /// Dense inputs skip preprocessing; see [`UndirectedOracle::preprocess`].
    dense: bool,
    trials: Vec<PartitionState>,
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    Ok(())
}

/// More than `(k - 1) n / 2` edges force a path on `k` vertices.
fn forces_path(n: usize, m: usize, k: usize) -> bool {
    2 * m > (k - 1) * n
}

impl UndirectedOracle {
    /// Random partitions keyed by `seed`. A graph with more than
    /// `(k + 1) n` edges is not preprocessed: it has a k-path, and queries
    /// that leave it too sparse to guarantee one are answered from scratch.
    pub fn preprocess(graph: &UndirectedGraph, k: usize, seed: u64, opts: &UndirectedOptions) -> Result<Self> {
        check_k(k)?;
        let trials = opts.trials.unwrap_or_else(|| default_trials(k));
        if trials == 0 {
            return Err(Error::InvalidParameter("need at least one trial".into()));
        }
        let n = graph.n();
        let field = Gf2m::with_capacity(opts.field_degree, n as u64 + 1)?;
        let (k1, k2) = choose_params(k);
        check_dims((k1 + k2) as u32)?;
        let mut oracle = UndirectedOracle {
            k,
            seed,
            strict: opts.strict,
            field: field.clone(),
            graph: graph.clone(),
            partitioning: Partitioning::Random,
            dense: graph.m() > (k + 1) * n,
            trials: Vec::new(),
        };
        if oracle.dense {
            return Ok(oracle);
        }
        oracle.trials = (0..trials as u64)
            .into_par_iter()
            .map(|t| {
                let ts = prf_u64(seed, &Tag::new("partition").with(t));
                let sides = (0..n).map(|v| prf_u64(ts, &Tag::new("side").with(v as u64)) & 1 == 1).collect();
                PartitionState::preprocess(graph, k, WalkCoding::new(field.clone(), ts, k1, k2, sides)?)
            })
            .collect::<Result<_>>()?;
        Ok(oracle)
    }

    /// One trial over the fixed partition `V1 = {v : side[v]}`, with
    /// `k1 = k / 2` and no codes on edges. Every edge, now and after any
    /// query, must cross the partition.
    pub fn bipartite(graph: &UndirectedGraph, side: Vec<bool>, k: usize, seed: u64, strict: bool) -> Result<Self> {
        check_k(k)?;
        if k % 2 == 1 {
            return Err(Error::InvalidParameter(format!("bipartite oracle needs even k, got {k}")));
        }
        let n = graph.n();
        if side.len() != n {
            return Err(Error::InvalidParameter(format!("{} sides for {n} vertices", side.len())));
        }
        if let Some((u, v)) = graph.edges().find(|&(u, v)| side[u] == side[v]) {
            return Err(Error::InvalidParameter(format!("edge {{{u}, {v}}} lies within one side")));
        }
        let field = Gf2m::with_capacity(DEFAULT_FIELD_DEGREE, n as u64 + 1)?;
        let ts = prf_u64(seed, &Tag::new("partition").with(0));
        let coding = WalkCoding::new(field.clone(), ts, k / 2, 0, side.clone())?;
        Ok(UndirectedOracle {
            k,
            seed,
            strict,
            field,
            graph: graph.clone(),
            partitioning: Partitioning::Bipartite(side),
            dense: false,
            trials: vec![PartitionState::preprocess(graph, k, coding)?],
        })
    }

    /// Builds the oracle from explicit trials, e.g. hand-picked partitions.
    pub fn from_codings(graph: &UndirectedGraph, k: usize, codings: Vec<WalkCoding>, strict: bool) -> Result<Self> {
        check_k(k)?;
        let field = codings
            .first()
            .map(|c| c.field.clone())
            .ok_or_else(|| Error::InvalidParameter("need at least one trial".into()))?;
        let trials = codings
            .into_iter()
            .map(|c| PartitionState::preprocess(graph, k, c))
            .collect::<Result<_>>()?;
        Ok(UndirectedOracle {
            k,
            seed: 0,
            strict,
            field,
            graph: graph.clone(),
            partitioning: Partitioning::Random,
            dense: false,
            trials,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn graph(&self) -> &UndirectedGraph {
        &self.graph
    }

    pub fn trials(&self) -> &[PartitionState] {
        &self.trials
    }

    /// True when preprocessing was skipped for a dense input.
    pub fn is_dense(&self) -> bool {
        self.dense
    }

    pub fn initial(&self) -> bool {
        self.dense || self.trials.iter().any(|t| !self.field.is_zero(&t.witness(t.z())))
    }

    fn normalize(&self, batch: &UpdateBatch) -> Result<UpdateBatch> {
        let nb = batch.normalize_undirected(&self.graph, self.strict)?;
        if let Partitioning::Bipartite(side) = &self.partitioning {
            if let Some(&(u, v)) = nb.inserts.iter().find(|&&(u, v)| side[u] == side[v]) {
                return Err(Error::InvalidUpdate(format!(
                    "inserted edge {{{u}, {v}}} lies within one side"
                )));
            }
        }
        Ok(nb)
    }

    /// Per-trial deciding coefficients after the update.
    pub fn query_witnesses(&self, batch: &UpdateBatch) -> Result<Vec<Gf2mElement>> {
        let nb = self.normalize(batch)?;
        Ok(self
            .trials
            .par_iter()
            .map(|t| t.witness(&t.query_total(&self.graph, &nb)))
            .collect())
    }

    pub fn query(&self, batch: &UpdateBatch) -> Result<bool> {
        if self.dense {
            let nb = self.normalize(batch)?;
            let m = self.graph.m() + nb.inserts.len() - nb.deletes.len();
            if forces_path(self.graph.n(), m, self.k) {
                return Ok(true);
            }
            let updated = self.graph.apply(&nb)?;
            let opts = UndirectedOptions {
                strict: self.strict,
                field_degree: self.field.degree(),
                ..UndirectedOptions::default()
            };
            let fresh = UndirectedOracle::preprocess(&updated, self.k, self.seed, &opts)?;
            return Ok(fresh.initial());
        }
        Ok(self.query_witnesses(batch)?.iter().any(|w| !self.field.is_zero(w)))
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        write_header(&mut out, MODE_UNDIRECTED);
        put_usize(&mut out, self.k);
        put_usize(&mut out, self.graph.n());
        put_u64(&mut out, self.seed);
        put_u8(&mut out, self.strict as u8);
        put_u8(&mut out, self.dense as u8);
        self.field.write_params(&mut out);
        match &self.partitioning {
            Partitioning::Random => put_u8(&mut out, 0),
            Partitioning::Bipartite(side) => {
                put_u8(&mut out, 1);
                out.extend(side.iter().map(|&b| b as u8));
            }
        }
        put_usize(&mut out, self.graph.m());
        for (u, v) in self.graph.edges() {
            put_usize(&mut out, u);
            put_usize(&mut out, v);
        }
        put_usize(&mut out, self.trials.len());
        for t in &self.trials {
            let c = &t.coding;
            put_u64(&mut out, c.seed);
            put_usize(&mut out, c.k1);
            put_usize(&mut out, c.k2);
            out.extend(c.in_v1.iter().map(|&b| b as u8));
            for p in &t.q {
                put_poly(&self.field, &mut out, p);
            }
        }
        out
    }

    /// `S`, `S-bold` and `Z` are recomputed from `Q`.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut input = bytes;
        let input = &mut input;
        let mode = read_header(input)?;
        if mode != MODE_UNDIRECTED {
            return Err(Error::Format(format!("mode byte {mode} is not an undirected oracle")));
        }
        let k = get_usize(input)?;
        check_k(k).map_err(|e| Error::Format(e.to_string()))?;
        if k > 64 {
            return Err(Error::Format(format!("implausible k = {k}")));
        }
        let n = get_count(input, 1)?;
        let seed = get_u64(input)?;
        let strict = get_u8(input)? != 0;
        let dense = get_u8(input)? != 0;
        let field = Gf2m::read_params(input)?;
        let read_sides = |input: &mut &[u8]| -> Result<Vec<bool>> {
            (0..n)
                .map(|_| match get_u8(input)? {
                    0 => Ok(false),
                    1 => Ok(true),
                    x => Err(Error::Format(format!("bad side byte {x}"))),
                })
                .collect()
        };
        let partitioning = match get_u8(input)? {
            0 => Partitioning::Random,
            1 => Partitioning::Bipartite(read_sides(input)?),
            x => return Err(Error::Format(format!("unknown partitioning {x}"))),
        };
        let m = get_count(input, 16)?;
        let mut graph = UndirectedGraph::new(n);
        for _ in 0..m {
            let u = get_usize(input)?;
            let v = get_usize(input)?;
            if !graph.add_edge(u, v).map_err(|e| Error::Format(e.to_string()))? {
                return Err(Error::Format("duplicate edge".into()));
            }
        }
        let count = get_count(input, 24 + n)?;
        let mut trials = Vec::with_capacity(count);
        for _ in 0..count {
            let ts = get_u64(input)?;
            let k1 = get_usize(input)?;
            let k2 = get_usize(input)?;
            if k1 + k2 > 64 {
                return Err(Error::Format(format!("implausible dimension {}", k1 + k2)));
            }
            let sides = read_sides(input)?;
            let coding = WalkCoding::new(field.clone(), ts, k1, k2, sides).map_err(|e| Error::Format(e.to_string()))?;
            let q = (0..n * n)
                .map(|_| get_poly(&field, input, coding.dims(), k))
                .collect::<Result<Vec<_>>>()?;
            trials.push(PartitionState::from_q(coding, n, k, q));
        }
        if !input.is_empty() {
            return Err(Error::Format(format!("{} trailing bytes", input.len())));
        }
        Ok(UndirectedOracle {
            k,
            seed,
            strict,
            field,
            graph,
            partitioning,
            dense,
            trials,
        })
    }
}
