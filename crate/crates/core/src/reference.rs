//! Exhaustive reference solvers. No algebra, only enumeration; every entry
//! point refuses instances past a hard size guard.

use crate::constrained::ConstraintSpec;
use crate::error::{Error, Result};
use crate::algebra::{wedge, Extensor};
use crate::graph::{DirectedGraph, UndirectedGraph};
use crate::ring::Gf2mElement;
use crate::undirected::WalkCoding;

pub const MAX_GRAPH_VERTICES: usize = 14;
pub const MAX_UNIVERSE: usize = 16;
pub const MAX_SETS: usize = 64;
pub const MAX_K: usize = 8;

fn guard(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::TooLarge(what()))
    }
}

fn guard_graph(n: usize, k: usize) -> Result<()> {
    guard(n <= MAX_GRAPH_VERTICES, || format!("{n} vertices (limit {MAX_GRAPH_VERTICES})"))?;
    guard(k <= MAX_K + 4, || format!("k = {k}"))
}

/// Number of ordered sequences of `k` distinct vertices joined by edges.
pub fn bf_kpath_count(g: &DirectedGraph, k: usize) -> Result<u64> {
    guard_graph(g.n(), k)?;
    if k == 0 {
        return Ok(0);
    }
    let adj = g.out_adjacency();
    let mut visited = vec![false; g.n()];
    let mut count = 0;
    for s in 0..g.n() {
        visited[s] = true;
        count += extend_paths(&adj, &mut visited, s, k - 1, &|_| true);
        visited[s] = false;
    }
    Ok(count)
}

fn extend_paths(adj: &[Vec<usize>], visited: &mut [bool], at: usize, left: usize, allow: &dyn Fn(&[bool]) -> bool) -> u64 {
    if left == 0 {
        return allow(visited) as u64;
    }
    let mut count = 0;
    for &v in &adj[at] {
        if !visited[v] {
            visited[v] = true;
            count += extend_paths(adj, visited, v, left - 1, allow);
            visited[v] = false;
        }
    }
    count
}

pub fn bf_kpath(g: &DirectedGraph, k: usize) -> Result<bool> {
    Ok(bf_kpath_count(g, k)? > 0)
}

pub fn bf_kpath_undirected(g: &UndirectedGraph, k: usize) -> Result<bool> {
    bf_kpath(&g.to_directed(), k)
}

/// Sum of the walk extensors (codes of every vertex and edge, no `z` and no
/// start variable) over admissible walks on exactly `s` vertices from `u`
/// to `v`, enumerated one sequence at a time.
pub fn bf_admissible_walksum(
    g: &UndirectedGraph,
    coding: &WalkCoding,
    u: usize,
    v: usize,
    s: usize,
) -> Result<Extensor<Gf2mElement>> {
    guard(g.n() <= MAX_GRAPH_VERTICES, || format!("{} vertices (limit {MAX_GRAPH_VERTICES})", g.n()))?;
    guard(s <= MAX_K, || format!("walks on {s} vertices (limit {MAX_K})"))?;
    let field = coding.field();
    let mut total = Extensor::zero(field, coding.dims())?;
    if s == 0 {
        return Ok(total);
    }
    let adj = g.adjacency();
    let mut walk = vec![u];
    fn go(
        adj: &[Vec<usize>],
        coding: &WalkCoding,
        walk: &mut Vec<usize>,
        target: usize,
        s: usize,
        total: &mut Extensor<Gf2mElement>,
    ) {
        if walk.len() == s {
            if *walk.last().expect("nonempty") != target {
                return;
            }
            let admissible = walk
                .windows(3)
                .all(|w| !(w[0] == w[2] && !coding.in_v1(w[0]) && coding.in_v1(w[1])));
            if admissible {
                let field = coding.field();
                let mut x = coding.vertex_code(walk[0]);
                for pair in walk.windows(2) {
                    x = wedge(field, &x, &coding.edge_code(pair[0], pair[1])).expect("same dims");
                    x = wedge(field, &x, &coding.vertex_code(pair[1])).expect("same dims");
                }
                total.add_assign(field, &x);
            }
            return;
        }
        let at = *walk.last().expect("nonempty");
        for &b in &adj[at] {
            walk.push(b);
            go(adj, coding, walk, target, s, total);
            walk.pop();
        }
    }
    go(&adj, coding, &mut walk, v, s, &mut total);
    Ok(total)
}

/// A k-path using at most `mu1` vertices of `V1` and at most `mu2` of `V2`.
pub fn bf_constrained_kpath(g: &DirectedGraph, k: usize, spec: &ConstraintSpec) -> Result<bool> {
    guard_graph(g.n(), k)?;
    if k == 0 {
        return Ok(false);
    }
    let adj = g.out_adjacency();
    let allow = |visited: &[bool]| {
        let c1 = spec.v1.iter().filter(|&&v| visited[v]).count();
        let c2 = spec.v2.iter().filter(|&&v| visited[v]).count();
        c1 <= spec.mu1 && c2 <= spec.mu2
    };
    let mut visited = vec![false; g.n()];
    for s in 0..g.n() {
        visited[s] = true;
        let found = extend_paths(&adj, &mut visited, s, k - 1, &allow) > 0;
        visited[s] = false;
        if found {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A walk on `k` vertex positions (`k - 1` edges) visiting at least `k - 1`
/// distinct vertices.
pub fn bf_kwalk_one_repeat(g: &DirectedGraph, k: usize) -> Result<bool> {
    guard_graph(g.n(), k)?;
    if k == 0 {
        return Ok(false);
    }
    fn go(adj: &[Vec<usize>], seen: &mut [u8], at: usize, left: usize, repeats: usize) -> bool {
        if left == 0 {
            return true;
        }
        for &v in &adj[at] {
            let extra = (seen[v] > 0) as usize;
            if repeats + extra > 1 {
                continue;
            }
            seen[v] += 1;
            let found = go(adj, seen, v, left - 1, repeats + extra);
            seen[v] -= 1;
            if found {
                return true;
            }
        }
        false
    }
    let adj = g.out_adjacency();
    let mut seen = vec![0u8; g.n()];
    for s in 0..g.n() {
        seen[s] = 1;
        let found = go(&adj, &mut seen, s, k - 1, 0);
        seen[s] = 0;
        if found {
            return Ok(true);
        }
    }
    Ok(false)
}

fn set_masks(sets: &[Vec<usize>]) -> Result<Vec<u32>> {
    guard(sets.len() <= MAX_SETS, || format!("{} sets (limit {MAX_SETS})", sets.len()))?;
    sets.iter()
        .map(|s| {
            let mut m = 0u32;
            for &a in s {
                guard(a < MAX_UNIVERSE, || format!("element {a} (universe limit {MAX_UNIVERSE})"))?;
                m |= 1 << a;
            }
            Ok(m)
        })
        .collect()
}

/// One entry per subset of the elements actually used.
fn table_size(masks: &[u32]) -> usize {
    let all = masks.iter().fold(0u32, |a, &m| a | m);
    1usize << (32 - all.leading_zeros())
}

/// Unions reachable as disjoint unions of sub-collections.
fn disjoint_unions(masks: &[u32]) -> Vec<bool> {
    let mut reach = vec![false; table_size(masks)];
    reach[0] = true;
    for &s in masks {
        // descending order keeps each set used at most once
        for m in (0..reach.len()).rev() {
            if reach[m] && m as u32 & s == 0 {
                reach[m | s as usize] = true;
            }
        }
    }
    reach
}

/// Some pairwise-disjoint sub-collection covers exactly `k` elements.
pub fn bf_exact_cover(sets: &[Vec<usize>], k: usize) -> Result<bool> {
    let masks = set_masks(sets)?;
    let reach = disjoint_unions(&masks);
    Ok(reach.iter().enumerate().any(|(m, &r)| r && m.count_ones() as usize == k))
}

/// Fewest sets whose union has at least `k` elements.
pub fn bf_partial_cover_min(sets: &[Vec<usize>], k: usize) -> Result<Option<usize>> {
    let masks = set_masks(sets)?;
    if k == 0 {
        return Ok(Some(0));
    }
    let mut best = vec![usize::MAX; table_size(&masks)];
    best[0] = 0;
    // unions only grow, so increasing mask order is a valid relaxation order
    for m in 0..best.len() {
        if best[m] == usize::MAX {
            continue;
        }
        for &s in &masks {
            let nm = m | s as usize;
            if nm != m && best[m] + 1 < best[nm] {
                best[nm] = best[m] + 1;
            }
        }
    }
    Ok(best
        .iter()
        .enumerate()
        .filter(|(m, &b)| b != usize::MAX && m.count_ones() as usize >= k)
        .map(|(_, &b)| b)
        .min())
}

/// Number of `k`-element sub-collections (by position) that are pairwise
/// disjoint. Sets are expected to all have `m` elements.
pub fn bf_packing_count(sets: &[Vec<usize>], m: usize, k: usize) -> Result<u64> {
    let masks = set_masks(sets)?;
    if masks.iter().any(|s| s.count_ones() as usize != m) {
        return Err(Error::InvalidParameter(format!("every set must have {m} elements")));
    }
    fn go(masks: &[u32], from: usize, used: u32, left: usize) -> u64 {
        if left == 0 {
            return 1;
        }
        let mut c = 0;
        for i in from..masks.len() {
            if masks[i] & used == 0 {
                c += go(masks, i + 1, used | masks[i], left - 1);
            }
        }
        c
    }
    Ok(go(&masks, 0, 0, k))
}

pub fn bf_packing(sets: &[Vec<usize>], m: usize, k: usize) -> Result<bool> {
    Ok(bf_packing_count(sets, m, k)? > 0)
}

/// Fewest vertices whose closed neighbourhoods together contain at least
/// `t` vertices.
pub fn bf_tdom(g: &UndirectedGraph, t: usize) -> Result<Option<usize>> {
    let n = g.n();
    guard(n <= MAX_GRAPH_VERTICES, || format!("{n} vertices (limit {MAX_GRAPH_VERTICES})"))?;
    let adj = g.adjacency();
    let closed: Vec<u32> = (0..n)
        .map(|v| adj[v].iter().fold(1u32 << v, |m, &u| m | 1 << u))
        .collect();
    let mut best: Option<usize> = None;
    for chosen in 0u32..(1 << n) {
        let size = chosen.count_ones() as usize;
        if best.is_some_and(|b| size >= b) {
            continue;
        }
        let covered = (0..n).filter(|&v| chosen >> v & 1 == 1).fold(0u32, |m, v| m | closed[v]);
        if covered.count_ones() as usize >= t {
            best = Some(size);
        }
    }
    Ok(best)
}

/// `k` tuples that differ pairwise in every coordinate.
pub fn bf_ddim(tuples: &[Vec<usize>], d: usize, k: usize) -> Result<bool> {
    guard(tuples.len() <= MAX_SETS, || format!("{} tuples (limit {MAX_SETS})", tuples.len()))?;
    if tuples.iter().any(|t| t.len() != d) {
        return Err(Error::InvalidParameter(format!("every tuple must have {d} coordinates")));
    }
    fn go(tuples: &[Vec<usize>], from: usize, chosen: &mut Vec<usize>, left: usize) -> bool {
        if left == 0 {
            return true;
        }
        for i in from..tuples.len() {
            let clash = chosen
                .iter()
                .any(|&j| tuples[i].iter().zip(&tuples[j]).any(|(a, b)| a == b));
            if !clash {
                chosen.push(i);
                if go(tuples, i + 1, chosen, left - 1) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    Ok(go(tuples, 0, &mut Vec::new(), k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_digraph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> DirectedGraph {
        let mut g = DirectedGraph::new(n);
        for u in 0..n {
            for v in 0..n {
                if u != v && rng.gen_bool(p) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }

    fn random_sets(rng: &mut ChaCha8Rng, count: usize, universe: usize, max_size: usize) -> Vec<Vec<usize>> {
        (0..count)
            .map(|_| {
                let size = rng.gen_range(1..=max_size);
                let mut s: Vec<usize> = (0..size).map(|_| rng.gen_range(0..universe)).collect();
                s.sort_unstable();
                s.dedup();
                s
            })
            .collect()
    }

    /// Paths counted by a subset dynamic program over (visited set, end).
    fn kpath_count_dp(g: &DirectedGraph, k: usize) -> u64 {
        let n = g.n();
        let mut dp = vec![vec![0u64; n]; 1 << n];
        for v in 0..n {
            dp[1 << v][v] = 1;
        }
        for m in 1usize..(1 << n) {
            for v in 0..n {
                let c = dp[m][v];
                if c == 0 {
                    continue;
                }
                for u in 0..n {
                    if m >> u & 1 == 0 && g.has_edge(v, u) {
                        dp[m | 1 << u][u] += c;
                    }
                }
            }
        }
        (0..1usize << n)
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| dp[m].iter().sum::<u64>())
            .sum()
    }

    /// Walks enumerated as raw vertex sequences.
    fn kwalk_by_sequences(g: &DirectedGraph, k: usize) -> bool {
        let n = g.n();
        let total = n.pow(k as u32);
        (0..total).any(|mut code| {
            let mut seq = Vec::with_capacity(k);
            for _ in 0..k {
                seq.push(code % n);
                code /= n;
            }
            let walk = seq.windows(2).all(|w| g.has_edge(w[0], w[1]));
            let mut d = seq.clone();
            d.sort_unstable();
            d.dedup();
            walk && d.len() + 1 >= k
        })
    }

    /// Sub-collections enumerated by bitmask over positions.
    fn exact_cover_by_subcollections(sets: &[Vec<usize>], k: usize) -> bool {
        let masks = set_masks(sets).unwrap();
        (0u32..1 << masks.len()).any(|pick| {
            let mut used = 0u32;
            for (i, &s) in masks.iter().enumerate() {
                if pick >> i & 1 == 1 {
                    if used & s != 0 {
                        return false;
                    }
                    used |= s;
                }
            }
            used.count_ones() as usize == k
        })
    }

    fn partial_cover_by_subcollections(sets: &[Vec<usize>], k: usize) -> Option<usize> {
        let masks = set_masks(sets).unwrap();
        (0u32..1 << masks.len())
            .filter(|pick| {
                let u = (0..masks.len()).filter(|i| pick >> i & 1 == 1).fold(0, |m, i| m | masks[i]);
                u.count_ones() as usize >= k
            })
            .map(|pick| pick.count_ones() as usize)
            .min()
    }

    fn packing_count_by_subcollections(sets: &[Vec<usize>], k: usize) -> u64 {
        let masks = set_masks(sets).unwrap();
        (0u32..1 << masks.len())
            .filter(|pick| pick.count_ones() as usize == k)
            .filter(|pick| {
                let mut used = 0u32;
                for (i, &s) in masks.iter().enumerate() {
                    if pick >> i & 1 == 1 {
                        if used & s != 0 {
                            return false;
                        }
                        used |= s;
                    }
                }
                true
            })
            .count() as u64
    }

    fn tdom_recursive(g: &UndirectedGraph, t: usize) -> Option<usize> {
        let n = g.n();
        let adj = g.adjacency();
        let sets: Vec<Vec<usize>> = (0..n)
            .map(|v| {
                let mut s = adj[v].clone();
                s.push(v);
                s
            })
            .collect();
        // choose vertices in increasing size order
        for size in 0..=n {
            let mut idx: Vec<usize> = (0..size).collect();
            loop {
                let mut cover = vec![false; n];
                for &i in &idx {
                    for &x in &sets[i] {
                        cover[x] = true;
                    }
                }
                if cover.iter().filter(|&&c| c).count() >= t {
                    return Some(size);
                }
                // next combination
                let mut i = size;
                loop {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                    if idx[i] < n - size + i {
                        idx[i] += 1;
                        for j in i + 1..size {
                            idx[j] = idx[j - 1] + 1;
                        }
                        i = usize::MAX;
                        break;
                    }
                }
                if i != usize::MAX {
                    break;
                }
            }
        }
        None
    }

    fn ddim_by_subcollections(tuples: &[Vec<usize>], k: usize) -> bool {
        (0u32..1 << tuples.len()).filter(|p| p.count_ones() as usize == k).any(|pick| {
            let chosen: Vec<&Vec<usize>> = (0..tuples.len()).filter(|i| pick >> i & 1 == 1).map(|i| &tuples[i]).collect();
            chosen.iter().enumerate().all(|(i, a)| {
                chosen[i + 1..].iter().all(|b| a.iter().zip(b.iter()).all(|(x, y)| x != y))
            })
        })
    }

    #[test]
    fn spec_examples() {
        let k4 = DirectedGraph::complete(4);
        assert_eq!(bf_kpath_count(&k4, 3).unwrap(), 24);
        assert_eq!(bf_kpath_count(&DirectedGraph::new(5), 2).unwrap(), 0);
        assert!(!bf_kpath(&DirectedGraph::new(5), 2).unwrap());
        let p3 = DirectedGraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(bf_kpath_count(&p3, 3).unwrap(), 1);
        let sets = vec![vec![0, 1], vec![1, 2], vec![3]];
        assert_eq!(bf_partial_cover_min(&sets, 4).unwrap(), Some(3));
        assert!(!bf_exact_cover(&[], 1).unwrap());
        assert!(bf_kpath(&DirectedGraph::from_edges(15, []).unwrap(), 2).is_err());
    }

    #[test]
    fn graph_oracles_agree_with_second_implementations() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let n = rng.gen_range(1..=6);
            let g = random_digraph(&mut rng, n, 0.35);
            let k = rng.gen_range(1..=5);
            assert_eq!(bf_kpath_count(&g, k).unwrap(), kpath_count_dp(&g, k));
            assert_eq!(bf_kwalk_one_repeat(&g, k).unwrap(), kwalk_by_sequences(&g, k));
            let spec = ConstraintSpec::new(vec![], vec![], 0, 0);
            let unconstrained = bf_constrained_kpath(&g, k, &ConstraintSpec { mu1: k, mu2: k, ..spec }).unwrap();
            assert_eq!(unconstrained, bf_kpath(&g, k).unwrap());
        }
    }

    #[test]
    fn set_oracles_agree_with_second_implementations() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..100 {
            let count = rng.gen_range(0..=8);
            let sets = random_sets(&mut rng, count, 8, 4);
            let k = rng.gen_range(1..=6);
            assert_eq!(bf_exact_cover(&sets, k).unwrap(), exact_cover_by_subcollections(&sets, k));
            assert_eq!(bf_partial_cover_min(&sets, k).unwrap(), partial_cover_by_subcollections(&sets, k));
            let m = 2;
            let pairs: Vec<Vec<usize>> = sets.iter().filter(|s| s.len() == m).cloned().collect();
            let kk = rng.gen_range(1..=3);
            assert_eq!(bf_packing_count(&pairs, m, kk).unwrap(), packing_count_by_subcollections(&pairs, kk));
        }
    }

    #[test]
    fn tdom_and_matching_agree_with_second_implementations() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let n = rng.gen_range(1..=7);
            let mut g = UndirectedGraph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.3) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let t = rng.gen_range(1..=n + 1);
            assert_eq!(bf_tdom(&g, t).unwrap(), tdom_recursive(&g, t));
            let d = rng.gen_range(2..=3);
            let count = rng.gen_range(0..=8);
            let tuples: Vec<Vec<usize>> = (0..count).map(|_| (0..d).map(|_| rng.gen_range(0..4)).collect()).collect();
            let k = rng.gen_range(1..=3);
            assert_eq!(bf_ddim(&tuples, d, k).unwrap(), ddim_by_subcollections(&tuples, k));
        }
    }
}
