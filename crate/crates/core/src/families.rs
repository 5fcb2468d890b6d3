//! Closed forms for the families whose optimum is settled, together with
//! colorings that attain (or bound) them.
//!
//! Constructions use the vertex labeling of [`crate::graph`]. Every answer
//! can be checked with [`FamilyAnswer::certify`].

use thiserror::Error;

use crate::coloring::{evaluate, ColoringError, FractionalColoring};
use crate::graph::{self, Graph, GraphError};
use crate::rational::Rational;

const K3XK5: &str = include_str!("../data/k3xk5.txt");
const K3XK7: &str = include_str!("../data/k3xk7.txt");
const K3XK9: &str = include_str!("../data/k3xk9.txt");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid family parameter: {0}")]
    InvalidParameter(String),
    #[error("C{0}[2K1] is bipartite for even cycle length, so its minimum defect is 0")]
    EvenCycleComposition(usize),
    #[error("partition is not a proper {k}-coloring of the graph: {reason}")]
    BadPartition { k: usize, reason: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Measure {
    /// Maximum vertex defect, `D(G, k)`.
    MaxDefect,
    /// Total defect, `TD(G, k)`.
    TotalDefect,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    /// `value` is the optimum and `construction` attains it.
    Theorem,
    /// `value` is only an upper bound, attained by `construction`.
    UpperBoundOnly,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Theorem => "theorem",
            Status::UpperBoundOnly => "upper_bound_only",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyAnswer {
    pub family: &'static str,
    pub params: Vec<usize>,
    pub graph: Graph,
    pub k: usize,
    pub measure: Measure,
    pub value: Rational,
    pub status: Status,
    pub construction: FractionalColoring,
    pub citation: &'static str,
}

impl FamilyAnswer {
    /// `family p1 p2 ...`, the same spelling the command line accepts.
    pub fn label(&self) -> String {
        let mut s = self.family.to_string();
        for p in &self.params {
            s.push(' ');
            s.push_str(&p.to_string());
        }
        s
    }

    /// The exact measure of the construction.
    pub fn construction_value(&self) -> Result<Rational, ColoringError> {
        let report = evaluate(&self.graph, &self.construction)?;
        Ok(match self.measure {
            Measure::MaxDefect => report.max_defect,
            Measure::TotalDefect => report.total_defect,
        })
    }

    /// Whether the construction attains `value` (theorem) or stays below it.
    pub fn certify(&self) -> Result<bool, ColoringError> {
        let got = self.construction_value()?;
        Ok(match self.status {
            Status::Theorem => got == self.value,
            Status::UpperBoundOnly => got <= self.value,
        })
    }
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, FamilyError> {
    Err(FamilyError::InvalidParameter(msg.into()))
}

fn q(p: usize, d: usize) -> Rational {
    Rational::frac(p as i64, d as i64)
}

fn red_coloring(red: &[Rational]) -> Result<FractionalColoring, FamilyError> {
    Ok(FractionalColoring::from_red(red)?)
}

/// Equitable monochromatic coloring of `0..n`: vertex `v` gets `v mod k`.
fn equitable(n: usize, k: usize) -> Result<FractionalColoring, FamilyError> {
    let colors: Vec<usize> = (0..n).map(|v| v % k).collect();
    Ok(FractionalColoring::monochromatic(k, &colors)?)
}

/// `D(K_n, k) = ceil(n/k) - 1`.
pub fn formula_complete(n: usize, k: usize) -> Result<FamilyAnswer, FamilyError> {
    if n == 0 || k == 0 {
        return invalid("complete graph needs n >= 1 and k >= 1");
    }
    Ok(FamilyAnswer {
        family: "complete",
        params: vec![n, k],
        graph: graph::complete(n)?,
        k,
        measure: Measure::MaxDefect,
        value: Rational::from(n.div_ceil(k) - 1),
        status: Status::Theorem,
        construction: equitable(n, k)?,
        citation: "Proposition, complete graphs",
    })
}

/// `TD(K_n, k) = floor(n/k) (2n - k - floor(n/k) k)`.
pub fn formula_total_complete(n: usize, k: usize) -> Result<FamilyAnswer, FamilyError> {
    if n == 0 || k == 0 {
        return invalid("complete graph needs n >= 1 and k >= 1");
    }
    let (n_i, k_i) = (n as i64, k as i64);
    let f = n_i / k_i;
    Ok(FamilyAnswer {
        family: "complete-total",
        params: vec![n, k],
        graph: graph::complete(n)?,
        k,
        measure: Measure::TotalDefect,
        value: Rational::integer(f * (2 * n_i - k_i - f * k_i)),
        status: Status::Theorem,
        construction: equitable(n, k)?,
        citation: "Corollary, total defect of complete graphs",
    })
}

/// Hub red, one path vertex in three at red usage `x`, the rest blue.
fn hub_construction(len: usize, marked: &[usize], x: &Rational) -> Result<FractionalColoring, FamilyError> {
    let mut red = vec![Rational::zero(); len + 1];
    for &i in marked {
        red[i] = x.clone();
    }
    red[len] = Rational::one();
    red_coloring(&red)
}

/// `D(F_n, 2)`: 0 and 1 for `n = 1, 2`, else `2 t / (t + 1)` with `t = floor(n/3)`.
pub fn formula_fan(n: usize) -> Result<FamilyAnswer, FamilyError> {
    if n == 0 {
        return invalid("fan needs n >= 1");
    }
    let (value, construction, citation) = match n {
        1 => (Rational::zero(), hub_construction(1, &[], &Rational::zero())?, "fan F1 is K2"),
        2 => (Rational::one(), hub_construction(2, &[], &Rational::zero())?, "fan F2 is K3"),
        _ => {
            let t = n / 3;
            let x = q(2, t + 1);
            // Path vertex i is v_{i+1}; mark those with index a multiple of 3.
            let marked: Vec<usize> = (0..n).filter(|i| (i + 1) % 3 == 0).collect();
            (q(2 * t, t + 1), hub_construction(n, &marked, &x)?, "Proposition, fans")
        }
    };
    Ok(FamilyAnswer {
        family: "fan",
        params: vec![n],
        graph: graph::fan(n)?,
        k: 2,
        measure: Measure::MaxDefect,
        value,
        status: Status::Theorem,
        construction,
        citation,
    })
}

/// A minimum independent dominating set of `C_n`.
pub fn cycle_dominating_set(n: usize) -> Vec<usize> {
    let mut set: Vec<usize> = (0..n / 3).map(|i| 3 * i).collect();
    if !n.is_multiple_of(3) {
        set.push(n - 2);
    }
    set
}

/// `D(W_n, 2) = 2 t / (t + 1)` with `t = ceil(n/3)`.
pub fn formula_wheel(n: usize) -> Result<FamilyAnswer, FamilyError> {
    if n < 3 {
        return invalid("wheel needs n >= 3");
    }
    let t = n.div_ceil(3);
    let dom = cycle_dominating_set(n);
    debug_assert_eq!(dom.len(), t);
    Ok(FamilyAnswer {
        family: "wheel",
        params: vec![n],
        graph: graph::wheel(n)?,
        k: 2,
        measure: Measure::MaxDefect,
        value: q(2 * t, t + 1),
        status: Status::Theorem,
        construction: hub_construction(n, &dom, &q(2, t + 1))?,
        citation: "Proposition, wheels",
    })
}

/// `D(K_{a,...,a}, 2) = (ceil(m/2) - 1) a` for `m` parts of size `a`.
pub fn formula_multipartite_equal(m: usize, a: usize) -> Result<FamilyAnswer, FamilyError> {
    if m == 0 || a == 0 {
        return invalid("multipartite graph needs m >= 1 parts of size a >= 1");
    }
    let colors: Vec<usize> = (0..m * a).map(|v| (v / a) % 2).collect();
    Ok(FamilyAnswer {
        family: "multipartite",
        params: vec![m, a],
        graph: graph::complete_multipartite(&vec![a; m])?,
        k: 2,
        measure: Measure::MaxDefect,
        value: Rational::from((m.div_ceil(2) - 1) * a),
        status: Status::Theorem,
        construction: FractionalColoring::monochromatic(2, &colors)?,
        citation: "Proposition, equal complete multipartite graphs",
    })
}

/// `D(K_{a,b,c}, 2) = bc / (b + c - a)` for `a <= b <= c`.
pub fn formula_tripartite(a: usize, b: usize, c: usize) -> Result<FamilyAnswer, FamilyError> {
    if a == 0 || !(a <= b && b <= c) {
        return invalid(format!("tripartite needs 1 <= a <= b <= c, got ({a}, {b}, {c})"));
    }
    let s = b + c - a;
    let x = q(b - a, s);
    let mut red = vec![Rational::zero(); a];
    red.extend(std::iter::repeat_n(x, b));
    red.extend(std::iter::repeat_n(Rational::one(), c));
    Ok(FamilyAnswer {
        family: "tripartite",
        params: vec![a, b, c],
        graph: graph::complete_multipartite(&[a, b, c])?,
        k: 2,
        measure: Measure::MaxDefect,
        value: q(b * c, s),
        status: Status::Theorem,
        construction: red_coloring(&red)?,
        citation: "Proposition, complete tripartite graphs",
    })
}

/// How to color `C_m[2K_1]` at defect 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CompositionConstruction {
    /// Both copies of a vertex take its color in a defect-1 coloring of `C_m`.
    Replicated,
    /// Every pair gets one red and one blue vertex.
    SplitPairs,
}

/// `D(C_m[2K_1], 2) = 2` for odd `m`.
pub fn formula_odd_cycle_composition(
    m: usize,
    construction: CompositionConstruction,
) -> Result<FamilyAnswer, FamilyError> {
    if m < 3 {
        return invalid("cycle needs m >= 3");
    }
    if m.is_multiple_of(2) {
        return Err(FamilyError::EvenCycleComposition(m));
    }
    let colors: Vec<usize> = (0..2 * m)
        .map(|v| match construction {
            // C_m colored i mod 2: only the edge (m-1, 0) is monochromatic.
            CompositionConstruction::Replicated => (v / 2) % 2,
            CompositionConstruction::SplitPairs => v % 2,
        })
        .collect();
    Ok(FamilyAnswer {
        family: "cycle-blowup",
        params: vec![m],
        graph: graph::composition_with_empty(&graph::cycle(m)?, 2)?,
        k: 2,
        measure: Measure::MaxDefect,
        value: Rational::integer(2),
        status: Status::Theorem,
        construction: FractionalColoring::monochromatic(2, &colors)?,
        citation: "Proposition, odd cycle blow-ups",
    })
}

/// Parity coloring of `K_m □ K_n`: `(i, j)` red iff `i` and `j` have the same parity.
pub fn rooks_parity_coloring(m: usize, n: usize) -> Result<FractionalColoring, FamilyError> {
    let colors: Vec<usize> = (0..m * n).map(|v| usize::from((v / n) % 2 != (v % n) % 2)).collect();
    Ok(FractionalColoring::monochromatic(2, &colors)?)
}

/// The shipped searched coloring of `K_3 □ K_n` for `n` in {5, 7, 9}.
pub fn rooks_special_coloring(n: usize) -> Option<FractionalColoring> {
    let text = match n {
        5 => K3XK5,
        7 => K3XK7,
        9 => K3XK9,
        _ => return None,
    };
    Some(crate::coloring::read_coloring(text, Some(2)).expect("shipped coloring parses"))
}

/// Best known 2-coloring of `K_m □ K_n`.
///
/// The parity coloring gives `ceil(m/2) + ceil(n/2) - 2`, optimal when both
/// sides are even, when one side has at most two vertices, and for `(3, 3)`.
/// For `K_3 □ K_n` with `n` in {5, 7, 9} (either orientation) the shipped
/// searched colorings are better and the value is only an upper bound.
pub fn rooks_bound(m: usize, n: usize) -> Result<FamilyAnswer, FamilyError> {
    if m == 0 || n == 0 {
        return invalid("rooks graph needs m, n >= 1");
    }
    let g = graph::rooks(m, n)?;
    let special = match (m, n) {
        (3, 5 | 7 | 9) => rooks_special_coloring(n),
        (5 | 7 | 9, 3) => {
            // Shipped data is laid out for K_3 □ K_n; transpose (i, j) -> (j, i).
            rooks_special_coloring(m).map(|c| {
                let perm: Vec<usize> = (0..3 * m).map(|v| (v % m) * 3 + v / m).collect();
                c.permute_vertices(&perm)
            })
        }
        _ => None,
    };
    let (construction, status, citation) = match special {
        Some(c) => (c, Status::UpperBoundOnly, "Lemma, searched coloring of K3xKn"),
        None => {
            let settled = (m.is_multiple_of(2) && n.is_multiple_of(2)) || m <= 2 || n <= 2 || (m, n) == (3, 3);
            let status = if settled { Status::Theorem } else { Status::UpperBoundOnly };
            let citation = if settled { "Lemma, parity coloring of rooks graphs (optimal here)" } else { "Lemma, parity coloring of rooks graphs" };
            (rooks_parity_coloring(m, n)?, status, citation)
        }
    };
    let value = evaluate(&g, &construction)?.max_defect;
    Ok(FamilyAnswer {
        family: "rooks",
        params: vec![m, n],
        graph: g,
        k: 2,
        measure: Measure::MaxDefect,
        value,
        status,
        construction,
        citation,
    })
}

/// Claimed bound `D(K_3 □ K_n, 2) <= n/2 + 11/26` for odd `n >= 5`. No
/// construction backs this number; it is reported as a constant only.
pub fn rooks_three_odd_bound(n: usize) -> Result<Rational, FamilyError> {
    if n < 5 || n.is_multiple_of(2) {
        return invalid("bound applies to odd n >= 5");
    }
    Ok(&q(n, 2) + &q(11, 26))
}

/// Lower bound on `D(K_m □ K_n, 2)` from the total defect of the factors.
pub fn rooks_lower_bound(m: usize, n: usize) -> Result<Rational, FamilyError> {
    if m == 0 || n == 0 {
        return invalid("rooks graph needs m, n >= 1");
    }
    let base = &q(m + n, 2) - &Rational::integer(2);
    Ok(match (m % 2, n % 2) {
        (1, 1) => &(&base + &q(1, 2 * m)) + &q(1, 2 * n),
        (0, 1) => &base + &q(1, 2 * n),
        (1, 0) => &base + &q(1, 2 * m),
        _ => base,
    })
}

/// Bounds for the blow-up `G[a K_1]` in terms of `G`: the total defect grows
/// by at least the factor `a^2`, the max defect by at most the factor `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionBounds {
    pub td_lower_factor: Rational,
    pub d_upper: Rational,
}

pub fn expansion_bounds(a: usize, d_of_g: &Rational) -> Result<ExpansionBounds, FamilyError> {
    if a == 0 {
        return invalid("blow-up factor must be positive");
    }
    if d_of_g.is_negative() {
        return invalid("defect cannot be negative");
    }
    Ok(ExpansionBounds { td_lower_factor: Rational::from(a * a), d_upper: d_of_g * &Rational::from(a) })
}

/// The blow-up coloring: every copy of `v` takes `v`'s row.
pub fn expand_coloring(c: &FractionalColoring, a: usize) -> Result<FractionalColoring, FamilyError> {
    let rows = c.rows().iter().flat_map(|row| std::iter::repeat_n(row.clone(), a)).collect();
    Ok(FractionalColoring::new(c.colors(), rows)?)
}

/// `D(K_n □ G, k) = ceil(n/k) - 1` for a `k`-partite `G`, given a proper
/// coloring `partition` of `G` with colors `< k`.
pub fn formula_complete_product(
    n: usize,
    g: &Graph,
    k: usize,
    partition: &[usize],
) -> Result<FamilyAnswer, FamilyError> {
    if n == 0 || k == 0 {
        return invalid("need n >= 1 and k >= 1");
    }
    let bad = |reason: String| Err(FamilyError::BadPartition { k, reason });
    if partition.len() != g.order() {
        return bad(format!("{} labels for {} vertices", partition.len(), g.order()));
    }
    if let Some(&p) = partition.iter().find(|&&p| p >= k) {
        return bad(format!("label {p} out of range"));
    }
    if let Some(&(u, v)) = g.edges().iter().find(|&&(u, v)| partition[u] == partition[v]) {
        return bad(format!("edge ({u}, {v}) inside one part"));
    }
    let product = graph::cartesian_product(&graph::complete(n)?, g)?;
    let ng = g.order();
    let colors: Vec<usize> = (0..n * ng).map(|v| (v / ng + partition[v % ng]) % k).collect();
    Ok(FamilyAnswer {
        family: "complete-product",
        params: vec![n, k],
        graph: product,
        k,
        measure: Measure::MaxDefect,
        value: Rational::from(n.div_ceil(k) - 1),
        status: Status::Theorem,
        construction: FractionalColoring::monochromatic(k, &colors)?,
        citation: "Corollary, products of a complete graph with a k-partite graph",
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn certified(a: &FamilyAnswer) -> Rational {
        assert!(a.certify().unwrap(), "{} fails certification", a.label());
        a.value.clone()
    }

    #[test]
    fn complete_examples() {
        assert_eq!(certified(&formula_complete(5, 2).unwrap()), Rational::integer(2));
        assert_eq!(certified(&formula_complete(4, 4).unwrap()), Rational::zero());
        assert_eq!(certified(&formula_complete(7, 3).unwrap()), Rational::integer(2));
        assert!(formula_complete(0, 2).is_err());
    }

    #[test]
    fn total_complete_examples() {
        assert_eq!(certified(&formula_total_complete(5, 2).unwrap()), Rational::integer(8));
        assert_eq!(certified(&formula_total_complete(3, 3).unwrap()), Rational::zero());
        assert_eq!(certified(&formula_total_complete(6, 2).unwrap()), Rational::integer(12));
        assert_eq!(certified(&formula_total_complete(1, 3).unwrap()), Rational::zero());
        assert_eq!(certified(&formula_total_complete(4, 9).unwrap()), Rational::zero());
    }

    #[test]
    fn fan_examples() {
        let f3 = formula_fan(3).unwrap();
        assert_eq!(certified(&f3), Rational::one());
        assert_eq!(f3.construction.red().unwrap()[3], Rational::one());
        assert_eq!(&f3.construction.red().unwrap()[..3], &[Rational::zero(), Rational::zero(), Rational::one()]);
        assert_eq!(certified(&formula_fan(6).unwrap()), q(4, 3));
        assert_eq!(certified(&formula_fan(9).unwrap()), q(3, 2));
        assert_eq!(certified(&formula_fan(1).unwrap()), Rational::zero());
        assert_eq!(certified(&formula_fan(2).unwrap()), Rational::one());
        for n in 1..40 {
            certified(&formula_fan(n).unwrap());
        }
    }

    #[test]
    fn wheel_examples() {
        assert_eq!(certified(&formula_wheel(3).unwrap()), Rational::one());
        assert_eq!(certified(&formula_wheel(4).unwrap()), q(4, 3));
        assert_eq!(certified(&formula_wheel(7).unwrap()), q(3, 2));
        for n in 3..40 {
            let dom = cycle_dominating_set(n);
            assert_eq!(dom.len(), n.div_ceil(3));
            let c = graph::cycle(n).unwrap();
            for v in 0..n {
                let hits = dom.contains(&v) as usize + c.neighbors(v).iter().filter(|w| dom.contains(w)).count();
                assert!(hits >= 1, "n={n}: {v} undominated");
                if dom.contains(&v) {
                    assert!(c.neighbors(v).iter().all(|w| !dom.contains(w)), "n={n}: not independent");
                }
            }
            certified(&formula_wheel(n).unwrap());
        }
    }

    #[test]
    fn multipartite_examples() {
        assert_eq!(certified(&formula_multipartite_equal(3, 2).unwrap()), Rational::integer(2));
        assert_eq!(certified(&formula_multipartite_equal(4, 3).unwrap()), Rational::integer(3));
        assert_eq!(certified(&formula_multipartite_equal(2, 5).unwrap()), Rational::zero());
    }

    #[test]
    fn tripartite_examples() {
        assert_eq!(certified(&formula_tripartite(1, 1, 1).unwrap()), Rational::one());
        assert_eq!(certified(&formula_tripartite(1, 2, 3).unwrap()), q(3, 2));
        assert_eq!(certified(&formula_tripartite(2, 2, 2).unwrap()), Rational::integer(2));
        assert!(formula_tripartite(2, 1, 3).is_err());
        for a in 1..5 {
            for b in a..6 {
                for c in b..7 {
                    certified(&formula_tripartite(a, b, c).unwrap());
                }
            }
        }
    }

    #[test]
    fn odd_cycle_compositions() {
        for m in [3, 5, 7, 9] {
            for how in [CompositionConstruction::Replicated, CompositionConstruction::SplitPairs] {
                assert_eq!(certified(&formula_odd_cycle_composition(m, how).unwrap()), Rational::integer(2));
            }
        }
        assert_eq!(
            formula_odd_cycle_composition(6, CompositionConstruction::Replicated),
            Err(FamilyError::EvenCycleComposition(6))
        );
        assert!(graph::composition_with_empty(&graph::cycle(6).unwrap(), 2).unwrap().is_bipartite());
    }

    #[test]
    fn rooks_examples() {
        let r = rooks_bound(4, 6).unwrap();
        assert_eq!((certified(&r), r.status), (Rational::integer(3), Status::Theorem));
        let r = rooks_bound(3, 5).unwrap();
        assert_eq!((certified(&r), r.status), (q(38, 13), Status::UpperBoundOnly));
        assert_eq!(rooks_bound(3, 7).unwrap().value, q(42, 11));
        assert_eq!(rooks_bound(3, 9).unwrap().value, q(14, 3));
        assert_eq!(rooks_bound(5, 3).unwrap().value, q(38, 13));
        assert_eq!(rooks_bound(9, 3).unwrap().value, q(14, 3));
        assert_eq!(rooks_bound(3, 3).unwrap().status, Status::Theorem);
        assert_eq!(rooks_bound(5, 5).unwrap().status, Status::UpperBoundOnly);
        for m in 1..10 {
            for n in 1..10 {
                let r = rooks_bound(m, n).unwrap();
                certified(&r);
                if rooks_special_coloring(m.max(n)).is_none() || m.min(n) != 3 {
                    assert_eq!(r.value, Rational::from(m.div_ceil(2) + n.div_ceil(2) - 2), "({m},{n})");
                }
            }
        }
    }

    #[test]
    fn rooks_lower_bound_examples() {
        assert_eq!(rooks_lower_bound(3, 3).unwrap(), q(4, 3));
        assert_eq!(rooks_lower_bound(4, 5).unwrap(), q(13, 5));
        assert_eq!(rooks_lower_bound(5, 4).unwrap(), q(13, 5));
        assert_eq!(rooks_lower_bound(2, 2).unwrap(), Rational::zero());
    }

    #[test]
    fn lower_bound_matches_total_defect_route() {
        // TD(K_m □ K_n) >= m TD(K_n) + n TD(K_m), divided over the mn vertices.
        let td = |s: usize| Rational::from((s / 2) * (2 * s - 2 - 2 * (s / 2)));
        for m in 1..12 {
            for n in 1..12 {
                let route = &(&td(m) / &Rational::from(m)) + &(&td(n) / &Rational::from(n));
                assert_eq!(rooks_lower_bound(m, n).unwrap(), route, "({m},{n})");
            }
        }
    }

    #[test]
    fn three_odd_bound() {
        assert_eq!(rooks_three_odd_bound(5).unwrap(), q(38, 13));
        assert_eq!(rooks_three_odd_bound(7).unwrap(), q(51, 13));
        assert!(rooks_three_odd_bound(6).is_err());
    }

    #[test]
    fn expansion_examples() {
        let b = expansion_bounds(2, &Rational::one()).unwrap();
        assert_eq!((b.td_lower_factor, b.d_upper), (Rational::integer(4), Rational::integer(2)));
        let b = expansion_bounds(1, &q(4, 3)).unwrap();
        assert_eq!((b.td_lower_factor, b.d_upper), (Rational::one(), q(4, 3)));
        // K_3 blown up by 2 is K_{2,2,2}; the expanded coloring meets the bound.
        let k3 = formula_complete(3, 2).unwrap();
        let g = graph::composition_with_empty(&k3.graph, 2).unwrap();
        let c = expand_coloring(&k3.construction, 2).unwrap();
        assert_eq!(evaluate(&g, &c).unwrap().max_defect, Rational::integer(2));
    }

    #[test]
    fn complete_product() {
        let g = graph::cycle(6).unwrap();
        let part: Vec<usize> = (0..6).map(|v| v % 2).collect();
        let a = formula_complete_product(5, &g, 2, &part).unwrap();
        assert_eq!(certified(&a), Rational::integer(2));
        assert!(matches!(
            formula_complete_product(5, &g, 2, &[0, 0, 1, 0, 1, 0]),
            Err(FamilyError::BadPartition { .. })
        ));
    }
}
