#![allow(dead_code)]

use fracdef::coloring::FractionalColoring;
use fracdef::graph::{self, Graph};
use fracdef::Rational;
use proptest::prelude::*;

/// Simple graph on `2..=max_n` vertices with at most `max_edges` edges.
pub fn arb_graph(max_n: usize, max_edges: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(move |n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let cap = max_edges.min(pairs.len());
        proptest::sample::subsequence(pairs, 0..=cap).prop_map(move |edges| Graph::new(n, edges).unwrap())
    })
}

/// A row of `k` nonnegative integer weights in `0..=den`, normalized to sum
/// to exactly 1.
pub fn arb_row(k: usize, den: u32) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec(0..=den, k).prop_map(|mut w| {
        if w.iter().all(|&x| x == 0) {
            w[0] = 1;
        }
        let s: u32 = w.iter().sum();
        w.into_iter().map(|x| Rational::frac(x as i64, s as i64)).collect()
    })
}

pub fn arb_coloring(n: usize, k: usize, den: u32) -> impl Strategy<Value = FractionalColoring> {
    proptest::collection::vec(arb_row(k, den), n).prop_map(move |rows| FractionalColoring::new(k, rows).unwrap())
}

/// Graph together with a random fractional coloring of it.
pub fn arb_colored_graph(max_n: usize, max_edges: usize, k: usize, den: u32) -> impl Strategy<Value = (Graph, FractionalColoring)> {
    arb_graph(max_n, max_edges).prop_flat_map(move |g| {
        let n = g.order();
        (Just(g), arb_coloring(n, k, den))
    })
}

/// Fixed set of small graphs used by the corpus-wide checks.
pub fn small_corpus() -> Vec<Graph> {
    let mut out = vec![graph::hajos(), moser_spindle()];
    for n in 2..=5 {
        out.push(graph::complete(n).unwrap());
    }
    for n in 3..=7 {
        out.push(graph::cycle(n).unwrap());
    }
    for n in 2..=6 {
        out.push(graph::path(n).unwrap());
    }
    for n in 1..=6 {
        out.push(graph::fan(n).unwrap());
    }
    for n in 3..=5 {
        out.push(graph::wheel(n).unwrap());
    }
    out.push(graph::complete_multipartite(&[1, 2, 3]).unwrap());
    out.push(graph::complete_multipartite(&[2, 2, 2]).unwrap());
    out.push(graph::complete_multipartite(&[1, 1, 2]).unwrap());
    out.push(graph::rooks(2, 3).unwrap());
    out.push(graph::circulant(7, &[1, 2]).unwrap());
    out
}

/// The Moser spindle: two rhombi of triangles sharing a vertex, tips joined.
pub fn moser_spindle() -> Graph {
    Graph::new(7, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (0, 4), (0, 5), (4, 5), (4, 6), (5, 6), (3, 6)])
        .unwrap()
        .with_name("Moser")
}

/// Kahn's algorithm: whether the arcs contain no directed cycle.
pub fn arcs_acyclic(n: usize, arcs: &[(usize, usize)]) -> bool {
    let mut indeg = vec![0usize; n];
    let mut out = vec![Vec::new(); n];
    for &(u, v) in arcs {
        indeg[v] += 1;
        out[u].push(v);
    }
    let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = stack.pop() {
        seen += 1;
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                stack.push(w);
            }
        }
    }
    seen == n
}
