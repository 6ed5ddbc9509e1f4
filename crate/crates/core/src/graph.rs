//! Graphs and update batches. Vertex ids are zero-based in the library.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DirectedGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl DirectedGraph {
    pub fn new(n: usize) -> Self {
        DirectedGraph { n, edges: BTreeSet::new() }
    }

    /// Fails on out-of-range ids and duplicate edges. Self-loops are kept.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = DirectedGraph::new(n);
        for (u, v) in edges {
            if !g.add_edge(u, v)? {
                return Err(Error::InvalidParameter(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(g)
    }

    /// Every ordered pair of distinct vertices.
    pub fn complete(n: usize) -> Self {
        let edges = (0..n)
            .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
            .collect();
        DirectedGraph { n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u, v))
    }

    fn check(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange(v, self.n))
        } else {
            Ok(())
        }
    }

    /// Returns false if the edge was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.edges.insert((u, v)))
    }

    /// Returns false if the edge was absent.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.edges.remove(&(u, v)))
    }

    /// Drops every edge incident to `v`; the id stays allocated.
    pub fn isolate(&mut self, v: usize) {
        self.edges.retain(|&(a, b)| a != v && b != v);
    }

    pub fn out_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
        }
        adj
    }

    pub fn in_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[v].push(u);
        }
        adj
    }

    /// The graph after applying a normalized batch.
    pub fn apply(&self, batch: &UpdateBatch) -> Result<DirectedGraph> {
        let mut g = self.clone();
        for &(u, v) in &batch.deletes {
            g.remove_edge(u, v)?;
        }
        for &(u, v) in &batch.inserts {
            g.add_edge(u, v)?;
        }
        for &v in &batch.vertex_failures {
            g.check(v)?;
            g.isolate(v);
        }
        Ok(g)
    }

    /// The subgraph induced by the vertices not in `gone`, renumbered in
    /// increasing order. An isolated vertex is still a one-vertex path, so
    /// this, not [`DirectedGraph::isolate`], is what a failure means for
    /// path questions.
    pub fn without(&self, gone: &[usize]) -> Result<DirectedGraph> {
        for &v in gone {
            self.check(v)?;
        }
        let keep: Vec<usize> = (0..self.n).filter(|v| !gone.contains(v)).collect();
        let id = |x: usize| keep.binary_search(&x).ok();
        let edges = self
            .edges
            .iter()
            .filter_map(|&(a, b)| Some((id(a)?, id(b)?)))
            .collect();
        Ok(DirectedGraph { n: keep.len(), edges })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UndirectedGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

fn canonical(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

impl UndirectedGraph {
    pub fn new(n: usize) -> Self {
        UndirectedGraph { n, edges: BTreeSet::new() }
    }

    /// Fails on out-of-range ids, self-loops and duplicate edges.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = UndirectedGraph::new(n);
        for (u, v) in edges {
            if !g.add_edge(u, v)? {
                return Err(Error::InvalidParameter(format!("duplicate edge {{{u}, {v}}}")));
            }
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(min, max)` pairs.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&canonical(u, v))
    }

    fn check(&self, u: usize, v: usize) -> Result<()> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange(x, self.n));
            }
        }
        if u == v {
            return Err(Error::InvalidParameter(format!("self-loop at {u}")));
        }
        Ok(())
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check(u, v)?;
        Ok(self.edges.insert(canonical(u, v)))
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check(u, v)?;
        Ok(self.edges.remove(&canonical(u, v)))
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Both orientations of every edge.
    pub fn to_directed(&self) -> DirectedGraph {
        let mut g = DirectedGraph::new(self.n);
        for &(u, v) in &self.edges {
            g.edges.insert((u, v));
            g.edges.insert((v, u));
        }
        g
    }

    pub fn apply(&self, batch: &UpdateBatch) -> Result<UndirectedGraph> {
        if !batch.vertex_failures.is_empty() {
            return Err(Error::InvalidUpdate("vertex failures are not supported for undirected graphs".into()));
        }
        let mut g = self.clone();
        for &(u, v) in &batch.deletes {
            g.remove_edge(u, v)?;
        }
        for &(u, v) in &batch.inserts {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }
}

/// Changes relative to an initial graph. Edge updates are applied before
/// vertex failures.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UpdateBatch {
    pub inserts: Vec<(usize, usize)>,
    pub deletes: Vec<(usize, usize)>,
    pub vertex_failures: Vec<usize>,
}

impl UpdateBatch {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(mut self, u: usize, v: usize) -> Self {
        self.inserts.push((u, v));
        self
    }

    pub fn delete(mut self, u: usize, v: usize) -> Self {
        self.deletes.push((u, v));
        self
    }

    pub fn fail(mut self, v: usize) -> Self {
        self.vertex_failures.push(v);
        self
    }

    /// Number of update items.
    pub fn len(&self) -> usize {
        self.inserts.len() + self.deletes.len() + self.vertex_failures.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Normalizes against a directed graph: duplicates collapse, an edge
    /// both inserted and deleted cancels out, and redundant updates
    /// (inserting a present edge, deleting an absent one) are errors when
    /// `strict` and dropped otherwise.
    pub fn normalize_directed(&self, g: &DirectedGraph, strict: bool) -> Result<UpdateBatch> {
        self.normalize_with(g.n(), strict, |u, v| Ok((u, v)), |e| g.has_edge(e.0, e.1))
    }

    /// As [`UpdateBatch::normalize_directed`], with edges canonicalized to
    /// `(min, max)`. Vertex failures are rejected.
    pub fn normalize_undirected(&self, g: &UndirectedGraph, strict: bool) -> Result<UpdateBatch> {
        if !self.vertex_failures.is_empty() {
            return Err(Error::InvalidUpdate("vertex failures are not supported for undirected graphs".into()));
        }
        self.normalize_with(
            g.n(),
            strict,
            |u, v| {
                if u == v {
                    Err(Error::InvalidUpdate(format!("self-loop at {u}")))
                } else {
                    Ok(canonical(u, v))
                }
            },
            |e| g.has_edge(e.0, e.1),
        )
    }

    fn normalize_with(
        &self,
        n: usize,
        strict: bool,
        canon: impl Fn(usize, usize) -> Result<(usize, usize)>,
        present: impl Fn((usize, usize)) -> bool,
    ) -> Result<UpdateBatch> {
        let collect = |list: &[(usize, usize)]| -> Result<BTreeSet<(usize, usize)>> {
            let mut set = BTreeSet::new();
            for &(u, v) in list {
                for x in [u, v] {
                    if x >= n {
                        return Err(Error::VertexOutOfRange(x, n));
                    }
                }
                set.insert(canon(u, v)?);
            }
            Ok(set)
        };
        let ins = collect(&self.inserts)?;
        let del = collect(&self.deletes)?;
        let mut out = UpdateBatch::new();
        for &e in ins.difference(&del) {
            if present(e) {
                if strict {
                    return Err(Error::InvalidUpdate(format!("edge {e:?} is already present")));
                }
            } else {
                out.inserts.push(e);
            }
        }
        for &e in del.difference(&ins) {
            if !present(e) {
                if strict {
                    return Err(Error::InvalidUpdate(format!("edge {e:?} is not present")));
                }
            } else {
                out.deletes.push(e);
            }
        }
        let mut failed = BTreeSet::new();
        for &v in &self.vertex_failures {
            if v >= n {
                return Err(Error::VertexOutOfRange(v, n));
            }
            failed.insert(v);
        }
        out.vertex_failures = failed.into_iter().collect();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn directed_construction() {
        let g = DirectedGraph::from_edges(3, [(0, 1), (1, 2), (2, 2)]).unwrap();
        assert_eq!(g.m(), 3);
        assert!(DirectedGraph::from_edges(3, [(0, 1), (0, 1)]).is_err());
        assert_eq!(DirectedGraph::from_edges(2, [(0, 2)]), Err(Error::VertexOutOfRange(2, 2)));
        assert_eq!(DirectedGraph::complete(4).m(), 12);
    }

    #[test]
    fn undirected_construction() {
        let g = UndirectedGraph::from_edges(3, [(1, 0), (2, 1)]).unwrap();
        assert!(g.has_edge(0, 1) && g.has_edge(1, 0));
        assert!(UndirectedGraph::from_edges(3, [(0, 1), (1, 0)]).is_err());
        assert!(UndirectedGraph::from_edges(3, [(1, 1)]).is_err());
        assert_eq!(g.to_directed().m(), 4);
    }

    #[test]
    fn normalization_cancels_and_dedupes() {
        let g = DirectedGraph::from_edges(4, [(0, 1), (1, 2)]).unwrap();
        let b = UpdateBatch::new()
            .insert(2, 3)
            .insert(2, 3)
            .insert(3, 0)
            .delete(3, 0)
            .delete(0, 1)
            .fail(1)
            .fail(1);
        let nb = b.normalize_directed(&g, true).unwrap();
        assert_eq!(nb.inserts, vec![(2, 3)]);
        assert_eq!(nb.deletes, vec![(0, 1)]);
        assert_eq!(nb.vertex_failures, vec![1]);
    }

    #[test]
    fn strictness_controls_redundant_updates() {
        let g = DirectedGraph::from_edges(3, [(0, 1)]).unwrap();
        let b = UpdateBatch::new().insert(0, 1).delete(1, 2);
        assert!(b.normalize_directed(&g, true).is_err());
        assert!(b.normalize_directed(&g, false).unwrap().is_empty());
    }

    #[test]
    fn undirected_normalization_canonicalizes() {
        let g = UndirectedGraph::from_edges(3, [(0, 1)]).unwrap();
        let b = UpdateBatch::new().insert(2, 1).delete(1, 0);
        let nb = b.normalize_undirected(&g, true).unwrap();
        assert_eq!(nb.inserts, vec![(1, 2)]);
        assert_eq!(nb.deletes, vec![(0, 1)]);
        assert!(UpdateBatch::new().fail(0).normalize_undirected(&g, true).is_err());
    }

    #[test]
    fn apply_matches_manual_edit() {
        let g = DirectedGraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let h = g.apply(&UpdateBatch::new().insert(2, 0).fail(1)).unwrap();
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(2, 0)]);
    }
}
