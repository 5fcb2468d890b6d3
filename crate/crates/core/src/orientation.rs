//! Acyclic orientations and their exhaustive enumeration.

use std::fmt;

use thiserror::Error;

use crate::graph::Graph;
use crate::rational::Rational;

/// Edge-count cap applied when nothing else is configured.
pub const DEFAULT_EDGE_CAP: usize = 22;

/// Enumeration keys are `u64` bitmasks and reachability uses `u64` rows.
pub const MAX_EDGE_CAP: usize = 63;
pub const MAX_ACTIVE_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrientationError {
    #[error("instance too large: {edges} edges exceeds the edge cap of {cap}")]
    TooManyEdges { edges: usize, cap: usize },
    #[error("instance too large: {active} non-isolated vertices exceeds the limit of {MAX_ACTIVE_VERTICES}")]
    TooManyVertices { active: usize },
    #[error("arc {index} ({tail} -> {head}) does not match edge {edge:?}")]
    ArcMismatch { index: usize, tail: usize, head: usize, edge: (usize, usize) },
    #[error("expected {expected} arcs, found {found}")]
    ArcCount { expected: usize, found: usize },
    #[error("orientation contains a directed cycle")]
    Cyclic,
}

/// A direction for every edge of a graph, certified acyclic by a stored
/// topological order. `arcs[i]` orients `graph.edges()[i]`.
#[derive(Clone, PartialEq, Eq)]
pub struct Orientation {
    n: usize,
    arcs: Vec<(usize, usize)>,
    topological_order: Vec<usize>,
}

impl fmt::Debug for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.arcs.iter().map(|(u, v)| format!("{u}->{v}"))).finish()
    }
}

impl Orientation {
    /// Validate `arcs` against `g`'s edge list and certify acyclicity.
    pub fn from_arcs(g: &Graph, arcs: Vec<(usize, usize)>) -> Result<Self, OrientationError> {
        if arcs.len() != g.size() {
            return Err(OrientationError::ArcCount { expected: g.size(), found: arcs.len() });
        }
        for (index, (&(tail, head), &edge)) in arcs.iter().zip(g.edges()).enumerate() {
            if (tail.min(head), tail.max(head)) != edge || tail == head {
                return Err(OrientationError::ArcMismatch { index, tail, head, edge });
            }
        }
        let topological_order = topological_order(g.order(), &arcs).ok_or(OrientationError::Cyclic)?;
        Ok(Orientation { n: g.order(), arcs, topological_order })
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn topological_order(&self) -> &[usize] {
        &self.topological_order
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, _) in &self.arcs {
            d[u] += 1;
        }
        d
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(_, v) in &self.arcs {
            d[v] += 1;
        }
        d
    }

    /// `(out, in)` neighbor lists; out-neighbors are the redder side.
    pub fn neighborhoods(&self) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let mut out = vec![Vec::new(); self.n];
        let mut inn = vec![Vec::new(); self.n];
        for &(u, v) in &self.arcs {
            out[u].push(v);
            inn[v].push(u);
        }
        (out, inn)
    }

    /// `max_v min(indeg v, outdeg v)`, a lower bound on the defect of any
    /// coloring consistent with this orientation.
    pub fn degree_lower_bound(&self) -> usize {
        let (i, o) = (self.in_degrees(), self.out_degrees());
        i.iter().zip(&o).map(|(a, b)| *a.min(b)).max().unwrap_or(0)
    }

    /// Enumeration key: bit `m - 1 - i` is set when edge `i` runs from its
    /// larger to its smaller endpoint. Enumeration emits keys in increasing
    /// order. `None` above 64 edges.
    pub fn order_key(&self) -> Option<u64> {
        let m = self.arcs.len();
        if m > 64 {
            return None;
        }
        Some(self.arcs.iter().enumerate().fold(0u64, |acc, (i, &(u, v))| {
            if u > v {
                acc | (1u64 << (m - 1 - i))
            } else {
                acc
            }
        }))
    }

    /// True when the red usages respect every arc (`r(u) <= r(v)`).
    pub fn is_consistent_with(&self, red: &[Rational]) -> bool {
        self.arcs.iter().all(|&(u, v)| red[u] <= red[v])
    }
}

fn topological_order(n: usize, arcs: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; n];
    let mut out = vec![Vec::new(); n];
    for &(u, v) in arcs {
        indeg[v] += 1;
        out[u].push(v);
    }
    let mut ready: Vec<usize> = (0..n).rev().filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop() {
        order.push(v);
        for &w in out[v].iter().rev() {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready.push(w);
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// Per-vertex defect of a 2-coloring written through an orientation:
/// `|N1| r(v) + |N2| (1 - r(v)) + sum_{N2} r(w) + sum_{N1} (1 - r(w))`,
/// with `N1` the out-neighbors and `N2` the in-neighbors. Agrees with the
/// direct overlap sum whenever `red` is consistent with the orientation.
pub fn linearized_defects(o: &Orientation, red: &[Rational]) -> Vec<Rational> {
    let (out, inn) = o.neighborhoods();
    (0..o.order())
        .map(|v| {
            let r = &red[v];
            let b = Rational::one() - r;
            let mut d = Rational::from(out[v].len()) * r + Rational::from(inn[v].len()) * &b;
            for &w in &inn[v] {
                d += &red[w];
            }
            for &w in &out[v] {
                d += Rational::one() - &red[w];
            }
            d
        })
        .collect()
}

/// Depth-first enumerator of acyclic orientations with incremental cycle
/// detection via per-vertex descendant bitsets.
///
/// Edges are decided in `graph.edges()` order, forward (`u -> v` for
/// `u < v`) before reverse, so orientations come out in increasing
/// [`Orientation::order_key`].
pub struct AcyclicOrientations<'g> {
    graph: &'g Graph,
    /// Local bit index per vertex (only non-isolated vertices get one).
    local: Vec<usize>,
    /// Descendant sets, one snapshot per decided edge.
    closure: Vec<Vec<u64>>,
    reversed: Vec<bool>,
    next_choice: Vec<u8>,
    base: usize,
    depth: usize,
    done: bool,
}

fn check_caps(g: &Graph, cap: usize) -> Result<Vec<usize>, OrientationError> {
    let cap = cap.min(MAX_EDGE_CAP);
    if g.size() > cap {
        return Err(OrientationError::TooManyEdges { edges: g.size(), cap });
    }
    let mut local = vec![usize::MAX; g.order()];
    let mut active = 0;
    for (v, slot) in local.iter_mut().enumerate() {
        if g.degree(v) > 0 {
            *slot = active;
            active += 1;
        }
    }
    if active > MAX_ACTIVE_VERTICES {
        return Err(OrientationError::TooManyVertices { active });
    }
    Ok(local)
}

impl<'g> AcyclicOrientations<'g> {
    pub fn new(graph: &'g Graph, edge_cap: usize) -> Result<Self, OrientationError> {
        Self::with_prefix(graph, edge_cap, &[])
    }

    /// Only orientations whose first `prefix.len()` edges are reversed
    /// exactly as given (`true` = larger endpoint to smaller).
    pub fn with_prefix(graph: &'g Graph, edge_cap: usize, prefix: &[bool]) -> Result<Self, OrientationError> {
        let local = check_caps(graph, edge_cap)?;
        let m = graph.size();
        assert!(prefix.len() <= m, "prefix longer than the edge list");
        let active = local.iter().filter(|&&l| l != usize::MAX).count();
        let mut it = AcyclicOrientations {
            graph,
            local,
            closure: vec![vec![0u64; active]],
            reversed: Vec::with_capacity(m),
            next_choice: vec![0; m + 1],
            base: prefix.len(),
            depth: 0,
            done: false,
        };
        for &rev in prefix {
            if !it.push(rev) {
                it.done = true;
                break;
            }
        }
        Ok(it)
    }

    /// Decide the next edge; false (and no change) if it closes a cycle.
    fn push(&mut self, rev: bool) -> bool {
        let (a, b) = self.graph.edges()[self.depth];
        let (tail, head) = if rev { (b, a) } else { (a, b) };
        let (t, h) = (self.local[tail], self.local[head]);
        let desc = self.closure.last().expect("closure root");
        if desc[h] & (1u64 << t) != 0 {
            return false;
        }
        let add = desc[h] | (1u64 << h);
        let tail_bit = 1u64 << t;
        let next: Vec<u64> = desc
            .iter()
            .enumerate()
            .map(|(w, &d)| if w == t || d & tail_bit != 0 { d | add } else { d })
            .collect();
        self.closure.push(next);
        self.reversed.push(rev);
        self.depth += 1;
        true
    }

    fn pop(&mut self) {
        self.closure.pop();
        self.reversed.pop();
        self.depth -= 1;
    }

    fn current(&self) -> Orientation {
        let arcs = self
            .graph
            .edges()
            .iter()
            .zip(&self.reversed)
            .map(|(&(u, v), &rev)| if rev { (v, u) } else { (u, v) })
            .collect();
        Orientation::from_arcs(self.graph, arcs).expect("enumerator only emits acyclic orientations")
    }
}

impl Iterator for AcyclicOrientations<'_> {
    type Item = Orientation;

    fn next(&mut self) -> Option<Orientation> {
        let m = self.graph.size();
        loop {
            if self.done {
                return None;
            }
            if self.depth == m {
                let o = self.current();
                if m == self.base {
                    self.done = true;
                } else {
                    self.pop();
                }
                return Some(o);
            }
            let d = self.depth;
            match self.next_choice[d] {
                0 => {
                    self.next_choice[d] = 1;
                    self.push(false);
                }
                1 => {
                    self.next_choice[d] = 2;
                    self.push(true);
                }
                _ => {
                    self.next_choice[d] = 0;
                    if d == self.base {
                        self.done = true;
                    } else {
                        self.pop();
                    }
                }
            }
            // A successful push moved depth forward; the next choice slot of
            // the new depth is always reset on the way back up.
        }
    }
}

/// Every acyclic orientation of `g`, each exactly once.
pub fn enumerate_acyclic_orientations(g: &Graph, edge_cap: usize) -> Result<AcyclicOrientations<'_>, OrientationError> {
    AcyclicOrientations::new(g, edge_cap)
}
