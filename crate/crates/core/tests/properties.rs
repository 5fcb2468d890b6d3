mod common;

use fracdef::coloring::evaluate;
use fracdef::exact::{min_defect_2, min_defect_monochromatic, min_total_defect, ExactOptions};
use fracdef::families;
use fracdef::graph::{self, Graph};
use fracdef::rational::snap_to_rational;
use fracdef::Rational;
use proptest::prelude::*;

fn d2(g: &Graph) -> Rational {
    min_defect_2(g, &ExactOptions::default()).unwrap().value
}

/// Best max defect over red usages in `{0, 1/6, ..., 1}`, in sixths.
fn grid_search_sixths(g: &Graph) -> i64 {
    let n = g.order();
    let mut red = vec![0i64; n];
    let mut best = i64::MAX;
    loop {
        let mut defect = vec![0i64; n];
        for &(u, v) in g.edges() {
            let o = red[u].min(red[v]) + (6 - red[u]).min(6 - red[v]);
            defect[u] += o;
            defect[v] += o;
        }
        best = best.min(defect.into_iter().max().unwrap_or(0));
        let Some(i) = red.iter().position(|&r| r < 6) else { break };
        red[i] += 1;
        red[..i].fill(0);
    }
    best
}

/// Proper coloring with `k` colors exists, by exhaustive search.
fn colorable(g: &Graph, k: usize) -> bool {
    fn go(g: &Graph, k: usize, colors: &mut Vec<usize>) -> bool {
        let v = colors.len();
        if v == g.order() {
            return true;
        }
        for c in 0..k {
            if g.neighbors(v).iter().all(|&w| w >= v || colors[w] != c) {
                colors.push(c);
                if go(g, k, colors) {
                    return true;
                }
                colors.pop();
            }
        }
        false
    }
    go(g, k, &mut Vec::new())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn zero_defect_iff_bipartite(g in common::arb_graph(9, 14)) {
        prop_assert_eq!(d2(&g).is_zero(), g.is_bipartite());
    }

    #[test]
    fn induced_subgraphs_never_need_more(g in common::arb_graph(8, 12), mask in any::<u8>()) {
        let keep: Vec<usize> = (0..g.order()).filter(|&v| mask >> v & 1 == 1).collect();
        prop_assume!(!keep.is_empty());
        let h = g.induced_subgraph(&keep).unwrap();
        prop_assert!(d2(&h) <= d2(&g));
    }

    #[test]
    fn monochromatic_optimum_bounds_fractional(g in common::arb_graph(8, 12)) {
        let mono = min_defect_monochromatic(&g, 2, &ExactOptions::default()).unwrap().value;
        prop_assert!(d2(&g) <= mono);
    }

    #[test]
    fn symmetry_cut_keeps_total_defect(g in common::arb_graph(7, 12), k in 1usize..=3) {
        let with = min_total_defect(&g, k, &ExactOptions::default()).unwrap();
        let without = min_total_defect(&g, k, &ExactOptions { symmetry_cut: false, ..ExactOptions::default() }).unwrap();
        prop_assert_eq!(&with.value, &without.value);
        prop_assert_eq!(evaluate(&g, &with.witness).unwrap().total_defect, with.value);
    }

    #[test]
    fn rational_text_round_trips(p in -1000i64..1000, q in 1i64..1000) {
        let r = Rational::frac(p, q);
        prop_assert_eq!(r.to_string().parse::<Rational>().unwrap(), r);
    }

    #[test]
    fn snapping_finds_the_closest_fraction(x in -2.0f64..2.0, d in 1u64..=24) {
        let s = snap_to_rational(x, d).unwrap();
        prop_assert!(s.denom() <= &d.into());
        let target = Rational::from_f64(x).unwrap();
        let dist = (&s - &target).abs();
        for q in 1..=d as i64 {
            let p = (x * q as f64).round() as i64;
            for cand in [p - 1, p, p + 1] {
                prop_assert!(dist <= (&Rational::frac(cand, q) - &target).abs());
            }
        }
    }

    #[test]
    fn exact_solver_matches_grid_search(g in common::arb_graph(6, 9)) {
        let exact = min_defect_2(&g, &ExactOptions::default()).unwrap();
        let grid = Rational::frac(grid_search_sixths(&g), 6);
        prop_assert!(exact.value <= grid);
        if exact.witness.rows().iter().flatten().all(|x| (Rational::integer(6) * x.clone()).is_integer()) {
            prop_assert_eq!(exact.value, grid);
        }
    }

    #[test]
    fn exact_witness_certifies(g in common::arb_graph(8, 12)) {
        let r = min_defect_2(&g, &ExactOptions::default()).unwrap();
        prop_assert_eq!(evaluate(&g, &r.witness).unwrap().max_defect, r.value);
    }

    #[test]
    fn complete_constructions_certify(n in 1usize..=12, k in 1usize..=5) {
        let a = families::formula_complete(n, k).unwrap();
        prop_assert!(a.certify().unwrap());
        let t = families::formula_total_complete(n, k).unwrap();
        prop_assert!(t.certify().unwrap());
    }

    #[test]
    fn graph_files_round_trip(g in common::arb_graph(12, 30)) {
        let back = graph::read_graph(&graph::write_graph(&g)).unwrap();
        prop_assert_eq!(back.order(), g.order());
        prop_assert_eq!(back.edges(), g.edges());
    }
}

#[test]
fn fan_plus_closing_edge_is_the_wheel() {
    for n in 3..=7 {
        let fan = graph::fan(n).unwrap();
        let closed = Graph::new(n + 1, fan.edges().iter().copied().chain([(0, n - 1)])).unwrap();
        let wheel = graph::wheel(n).unwrap();
        let mut a: Vec<_> = closed.edges().to_vec();
        let mut b: Vec<_> = wheel.edges().to_vec();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b, "n = {n}");
    }
}

#[test]
fn hajos_is_three_chromatic() {
    let g = graph::hajos();
    assert!(!colorable(&g, 2));
    assert!(colorable(&g, 3));
    assert_eq!(d2(&g), Rational::frac(4, 3));
}

#[test]
fn small_exact_values_match_grid_search() {
    for g in [graph::hajos(), graph::cycle(5).unwrap(), graph::fan(3).unwrap(), graph::wheel(3).unwrap()] {
        assert_eq!(d2(&g), Rational::frac(grid_search_sixths(&g), 6), "{}", g.summary());
    }
}

#[test]
fn family_constructions_certify() {
    let mut answers = Vec::new();
    for n in 1..=9 {
        answers.push(families::formula_fan(n).unwrap());
    }
    for n in 3..=9 {
        answers.push(families::formula_wheel(n).unwrap());
    }
    for (m, a) in [(2, 3), (3, 2), (4, 2), (3, 3)] {
        answers.push(families::formula_multipartite_equal(m, a).unwrap());
    }
    answers.push(families::formula_tripartite(1, 2, 3).unwrap());
    answers.push(families::formula_tripartite(2, 3, 5).unwrap());
    for m in 1..=9 {
        for n in 1..=9 {
            answers.push(families::rooks_bound(m, n).unwrap());
        }
    }
    for a in answers {
        assert!(a.certify().unwrap(), "{}", a.label());
    }
}

#[test]
fn formulas_agree_with_the_solver() {
    for n in 1..=7 {
        assert_eq!(families::formula_fan(n).unwrap().value, d2(&graph::fan(n).unwrap()), "fan {n}");
    }
    for n in 3..=6 {
        assert_eq!(families::formula_wheel(n).unwrap().value, d2(&graph::wheel(n).unwrap()), "wheel {n}");
    }
    let tri = families::formula_tripartite(1, 1, 3).unwrap();
    assert_eq!(tri.value, d2(&tri.graph));
}
