//! Text formats. Ids in files are 1-based; the library is 0-based.

use std::path::Path;

use extensor::graph::{DirectedGraph, UndirectedGraph, UpdateBatch};

use crate::Failure;

/// Nonblank lines with `#` comments stripped, paired with 1-based line
/// numbers.
pub fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| clean(l).map(|l| (i + 1, l)))
}

pub fn clean(line: &str) -> Option<&str> {
    let l = line.split('#').next().unwrap_or("").trim();
    (!l.is_empty()).then_some(l)
}

pub fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

pub fn numbers(line: usize, s: &str) -> Result<Vec<usize>, Failure> {
    s.split_whitespace()
        .map(|t| t.parse().map_err(|_| Failure::Parse(format!("line {line}: expected a number, got {t:?}"))))
        .collect()
}

/// A 1-based id turned 0-based.
pub fn vertex(line: usize, v: usize, n: usize) -> Result<usize, Failure> {
    if v == 0 || v > n {
        return Err(Failure::Parse(format!("line {line}: vertex {v} outside 1..={n}")));
    }
    Ok(v - 1)
}

/// Splits `"+ 1 2"` or `"+1 2"` into the operator and its arguments.
pub fn op(line: usize, s: &str) -> Result<(char, Vec<usize>), Failure> {
    let c = s.chars().next().expect("lines are nonblank");
    numbers(line, &s[c.len_utf8()..]).map(|args| (c, args))
}

pub enum Graph {
    Directed(DirectedGraph),
    Undirected(UndirectedGraph),
}

pub fn parse_graph(text: &str) -> Result<Graph, Failure> {
    let mut it = lines(text);
    let (hl, header) = it.next().ok_or_else(|| Failure::Parse("empty graph file".into()))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    let bad_header = || Failure::Parse(format!("line {hl}: expected \"n m directed|undirected\""));
    if parts.len() != 3 {
        return Err(bad_header());
    }
    let n: usize = parts[0].parse().map_err(|_| bad_header())?;
    let m: usize = parts[1].parse().map_err(|_| bad_header())?;
    let directed = match parts[2] {
        "directed" => true,
        "undirected" => false,
        _ => return Err(bad_header()),
    };
    let mut d = DirectedGraph::new(n);
    let mut u = UndirectedGraph::new(n);
    let mut count = 0;
    for (l, s) in it {
        let xs = numbers(l, s)?;
        if xs.len() != 2 {
            return Err(Failure::Parse(format!("line {l}: expected \"u v\"")));
        }
        let (a, b) = (vertex(l, xs[0], n)?, vertex(l, xs[1], n)?);
        let fresh = if directed {
            d.add_edge(a, b)
        } else if a == b {
            return Err(Failure::Parse(format!("line {l}: self-loop")));
        } else {
            u.add_edge(a, b)
        }
        .map_err(|e| Failure::Parse(format!("line {l}: {e}")))?;
        if !fresh {
            return Err(Failure::Parse(format!("line {l}: duplicate edge")));
        }
        count += 1;
    }
    if count != m {
        return Err(Failure::Parse(format!("header announces {m} edges, found {count}")));
    }
    Ok(if directed { Graph::Directed(d) } else { Graph::Undirected(u) })
}

pub fn parse_updates(text: &str, n: usize) -> Result<UpdateBatch, Failure> {
    let mut batch = UpdateBatch::new();
    for (l, s) in lines(text) {
        let (c, xs) = op(l, s)?;
        batch = match (c, xs.as_slice()) {
            ('+', &[a, b]) => batch.insert(vertex(l, a, n)?, vertex(l, b, n)?),
            ('-', &[a, b]) => batch.delete(vertex(l, a, n)?, vertex(l, b, n)?),
            ('x', &[a]) => batch.fail(vertex(l, a, n)?),
            _ => return Err(Failure::Parse(format!("line {l}: expected \"+ u v\", \"- u v\" or \"x u\""))),
        };
    }
    Ok(batch)
}

/// Whitespace-separated 1-based ids of the vertices on the first side.
pub fn parse_sides(text: &str, n: usize) -> Result<Vec<bool>, Failure> {
    let mut side = vec![false; n];
    for (l, s) in lines(text) {
        for v in numbers(l, s)? {
            side[vertex(l, v, n)?] = true;
        }
    }
    Ok(side)
}
