//! Simple undirected graphs, the generators used throughout the crate, and
//! the edge-list text format.
//!
//! Vertices are dense ids `0..n`. Generators fix their labeling so that
//! colorings written as matrices map onto ids without ambiguity:
//!
//! * `path(n)`: vertices `0..n` in path order.
//! * `fan(n)`, `wheel(n)`: path / cycle on `0..n`, hub is vertex `n`.
//! * `complete_multipartite(sizes)`: parts are consecutive id ranges.
//! * `cartesian_product(g, h)`: vertex `(i, j)` is `i * |V(h)| + j`.
//! * `composition_with_empty(g, a)`: vertex `(v, t)` is `v * a + t`.
//! * `hajos()`: central triangle `0, 1, 2`; outer vertex `3` on edge `01`,
//!   `4` on edge `12`, `5` on edge `02`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("{0}")]
    InvalidParameter(String),
    #[error("line {line}: malformed header `{text}` (expected `n m`)")]
    MalformedHeader { line: usize, text: String },
    #[error("line {line}: malformed edge `{text}` (expected `u v`)")]
    MalformedEdge { line: usize, text: String },
    #[error("header announces {expected} edges but {found} were given")]
    EdgeCountMismatch { expected: usize, found: usize },
    #[error("line {line}: endpoint {vertex} out of range for {n} vertices")]
    EndpointOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("missing header line")]
    MissingHeader,
}

/// An immutable simple graph. Edges are stored canonically as `(u, v)` with
/// `u < v`, sorted lexicographically.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    name: Option<String>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("name", &self.name)
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Graph {
    /// Build a graph, rejecting self-loops, duplicates and out-of-range ids.
    /// Edge orientation in the input does not matter.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for (i, (u, v)) in edges.into_iter().enumerate() {
            let line = i + 2;
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::EndpointOutOfRange { line, vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { line, vertex: u });
            }
            let e = (u.min(v), u.max(v));
            if !set.insert(e) {
                return Err(GraphError::DuplicateEdge { line, u: e.0, v: e.1 });
            }
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, edges, adj, name: None })
    }

    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new(), adj: vec![Vec::new(); n], name: None }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// `Some(d)` when every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|a| a.len() == d).then_some(d)
    }

    /// A proper 2-coloring (side per vertex) if one exists.
    pub fn bipartition(&self) -> Option<Vec<usize>> {
        let mut side = vec![usize::MAX; self.n];
        let mut stack = Vec::new();
        for s in 0..self.n {
            if side[s] != usize::MAX {
                continue;
            }
            side[s] = 0;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if side[w] == usize::MAX {
                        side[w] = 1 - side[v];
                        stack.push(w);
                    } else if side[w] == side[v] {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// The subgraph induced by `vertices` (relabelled in the given order).
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph, GraphError> {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            if v >= self.n {
                return Err(GraphError::InvalidParameter(format!("vertex {v} out of range")));
            }
            if index[v] != usize::MAX {
                return Err(GraphError::InvalidParameter(format!("vertex {v} listed twice")));
            }
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]));
        Graph::new(vertices.len(), edges)
    }

    /// Same graph with `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        if perm.len() != self.n {
            return Err(GraphError::InvalidParameter("permutation length mismatch".into()));
        }
        let g = Graph::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))?;
        Ok(match &self.name {
            Some(name) => g.with_name(name.clone()),
            None => g,
        })
    }

    pub fn summary(&self) -> String {
        format!("{} (n = {}, m = {})", self.name().unwrap_or("graph"), self.n, self.size())
    }
}

fn named(g: Result<Graph, GraphError>, name: String) -> Result<Graph, GraphError> {
    g.map(|g| g.with_name(name))
}

pub fn path(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::InvalidParameter("path needs at least 1 vertex".into()));
    }
    named(Graph::new(n, (1..n).map(|i| (i - 1, i))), format!("P{n}"))
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::InvalidParameter("cycle needs at least 3 vertices".into()));
    }
    named(Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))), format!("C{n}"))
}

/// Path on `0..n` plus hub `n` adjacent to all of it.
pub fn fan(n: usize) -> Result<Graph, GraphError> {
    let p = path(n)?;
    let edges = p.edges().iter().copied().chain((0..n).map(|i| (i, n)));
    named(Graph::new(n + 1, edges), format!("F{n}"))
}

/// Cycle on `0..n` plus hub `n`.
pub fn wheel(n: usize) -> Result<Graph, GraphError> {
    let c = cycle(n)?;
    let edges = c.edges().iter().copied().chain((0..n).map(|i| (i, n)));
    named(Graph::new(n + 1, edges), format!("W{n}"))
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::InvalidParameter("complete graph needs at least 1 vertex".into()));
    }
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    named(Graph::new(n, edges), format!("K{n}"))
}

pub fn complete_multipartite(sizes: &[usize]) -> Result<Graph, GraphError> {
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(GraphError::InvalidParameter("part sizes must be a nonempty list of positive integers".into()));
    }
    let mut part = Vec::new();
    for (p, &s) in sizes.iter().enumerate() {
        part.extend(std::iter::repeat_n(p, s));
    }
    let n = part.len();
    let part = &part;
    let edges = (0..n).flat_map(|u| (u + 1..n).filter(move |&v| part[u] != part[v]).map(move |v| (u, v)));
    let label = sizes.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    named(Graph::new(n, edges), format!("K{{{label}}}"))
}

/// `g □ h`, with `(i, j)` flattened to `i * |V(h)| + j`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<Graph, GraphError> {
    if g.order() == 0 || h.order() == 0 {
        return Err(GraphError::InvalidParameter("cartesian product of an empty graph".into()));
    }
    let nh = h.order();
    let mut edges = Vec::new();
    for &(u, v) in g.edges() {
        for j in 0..nh {
            edges.push((u * nh + j, v * nh + j));
        }
    }
    for i in 0..g.order() {
        for &(u, v) in h.edges() {
            edges.push((i * nh + u, i * nh + v));
        }
    }
    let name = format!("{}x{}", g.name().unwrap_or("G"), h.name().unwrap_or("H"));
    named(Graph::new(g.order() * nh, edges), name)
}

/// The rooks graph `K_m □ K_n`.
pub fn rooks(m: usize, n: usize) -> Result<Graph, GraphError> {
    let g = cartesian_product(&complete(m)?, &complete(n)?)?;
    Ok(g.with_name(format!("K{m}xK{n}")))
}

/// `g[a K_1]`: every vertex blown up to an independent set of size `a`,
/// `(v, t)` flattened to `v * a + t`.
pub fn composition_with_empty(g: &Graph, a: usize) -> Result<Graph, GraphError> {
    if a == 0 {
        return Err(GraphError::InvalidParameter("blow-up factor must be positive".into()));
    }
    let mut edges = Vec::with_capacity(g.size() * a * a);
    for &(u, v) in g.edges() {
        for s in 0..a {
            for t in 0..a {
                edges.push((u * a + s, v * a + t));
            }
        }
    }
    let name = format!("{}[{a}K1]", g.name().unwrap_or("G"));
    named(Graph::new(g.order() * a, edges), name)
}

/// The 6-vertex Hajós graph: a central triangle with a triangle glued on
/// each of its sides. Labeling is given in the module docs.
pub fn hajos() -> Graph {
    Graph::new(6, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 3), (1, 4), (2, 4), (0, 5), (2, 5)])
        .expect("static edge list")
        .with_name("Hajos")
}

/// Circulant graph `C_n(offsets)`: `i ~ i ± s (mod n)` for each offset.
pub fn circulant(n: usize, offsets: &[usize]) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::InvalidParameter("circulant needs at least 3 vertices".into()));
    }
    let mut set = BTreeSet::new();
    for &s in offsets {
        if s == 0 || s >= n {
            return Err(GraphError::InvalidParameter(format!("offset {s} must lie in 1..{n}")));
        }
        for i in 0..n {
            let j = (i + s) % n;
            set.insert((i.min(j), i.max(j)));
        }
    }
    let label = offsets.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    named(Graph::new(n, set), format!("C{n}({label})"))
}

/// Parse the edge-list format: header `n m`, then `m` lines `u v`.
/// Blank lines and lines starting with `#` are ignored.
pub fn read_graph(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(GraphError::MissingHeader)?;
    let fields: Vec<_> = header.split_whitespace().collect();
    let parsed: Option<Vec<usize>> = fields.iter().map(|f| f.parse().ok()).collect();
    let (n, m) = match parsed.as_deref() {
        Some(&[n, m]) => (n, m),
        _ => return Err(GraphError::MalformedHeader { line: hline, text: header.to_string() }),
    };
    let mut seen = BTreeSet::new();
    let mut edges = Vec::with_capacity(m);
    for (line, text) in lines {
        let parsed: Option<Vec<usize>> = text.split_whitespace().map(|f| f.parse().ok()).collect();
        let (u, v) = match parsed.as_deref() {
            Some(&[u, v]) => (u, v),
            _ => return Err(GraphError::MalformedEdge { line, text: text.to_string() }),
        };
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::EndpointOutOfRange { line, vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop { line, vertex: u });
        }
        let e = (u.min(v), u.max(v));
        if !seen.insert(e) {
            return Err(GraphError::DuplicateEdge { line, u: e.0, v: e.1 });
        }
        edges.push(e);
    }
    if edges.len() != m {
        return Err(GraphError::EdgeCountMismatch { expected: m, found: edges.len() });
    }
    Graph::new(n, edges)
}

/// Canonical text: header, then sorted edges `u v` with `u < v`.
pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.size());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
