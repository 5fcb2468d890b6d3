//! Fractional colorings and the defect functional.
//!
//! The defect of a vertex is the summed color overlap with its neighbors,
//! `df(v) = sum_{w in N(v)} sum_j min(f_j(v), f_j(w))`; the defect of a
//! coloring is the maximum over vertices.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::Graph;
use crate::orientation::Orientation;
use crate::rational::{Rational, RationalError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("a coloring needs at least one color")]
    NoColors,
    #[error("vertex {vertex}: expected {expected} usages, found {found}")]
    RowLength { vertex: usize, expected: usize, found: usize },
    #[error("vertex {vertex}: negative usage {value} for color {color}")]
    NegativeUsage { vertex: usize, color: usize, value: Rational },
    #[error("vertex {vertex}: row sums to {sum}, not 1")]
    RowSum { vertex: usize, sum: Rational },
    #[error("coloring has {coloring} rows but the graph has {graph} vertices")]
    DimensionMismatch { graph: usize, coloring: usize },
    #[error("operation needs a 2-coloring, found {0} colors")]
    NotTwoColors(usize),
    #[error("color {color} out of range for {k} colors")]
    ColorOutOfRange { color: usize, k: usize },
    #[error("graph has {n} vertices, fewer than the {k} colors")]
    TooFewVertices { n: usize, k: usize },
    #[error("colorings over {0} and {1} colors cannot be compared")]
    ColorCountMismatch(usize, usize),
    #[error("line {line}: {source}")]
    Parse { line: usize, source: RationalError },
    #[error("empty coloring text")]
    Empty,
}

/// Per-vertex probability vectors over `k` colors. Every row is nonnegative
/// and sums to exactly 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FractionalColoring {
    k: usize,
    rows: Vec<Vec<Rational>>,
}

impl FractionalColoring {
    pub fn new(k: usize, rows: Vec<Vec<Rational>>) -> Result<Self, ColoringError> {
        if k == 0 {
            return Err(ColoringError::NoColors);
        }
        for (vertex, row) in rows.iter().enumerate() {
            if row.len() != k {
                return Err(ColoringError::RowLength { vertex, expected: k, found: row.len() });
            }
            if let Some((color, value)) = row.iter().enumerate().find(|(_, x)| x.is_negative()) {
                return Err(ColoringError::NegativeUsage { vertex, color, value: value.clone() });
            }
            let sum: Rational = row.iter().sum();
            if !sum.is_one() {
                return Err(ColoringError::RowSum { vertex, sum });
            }
        }
        Ok(FractionalColoring { k, rows })
    }

    /// Two colors from the red usage `r(v)`; blue is `1 - r(v)`.
    pub fn from_red(red: &[Rational]) -> Result<Self, ColoringError> {
        let rows = red.iter().map(|r| vec![r.clone(), Rational::one() - r]).collect();
        Self::new(2, rows)
    }

    /// Every vertex entirely in one color.
    pub fn monochromatic(k: usize, colors: &[usize]) -> Result<Self, ColoringError> {
        if k == 0 {
            return Err(ColoringError::NoColors);
        }
        let mut rows = Vec::with_capacity(colors.len());
        for &c in colors {
            if c >= k {
                return Err(ColoringError::ColorOutOfRange { color: c, k });
            }
            rows.push(basis_row(k, c));
        }
        Ok(FractionalColoring { k, rows })
    }

    pub fn colors(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn row(&self, v: usize) -> &[Rational] {
        &self.rows[v]
    }

    pub fn usage(&self, v: usize, color: usize) -> &Rational {
        &self.rows[v][color]
    }

    /// Red usage of a 2-coloring.
    pub fn red(&self) -> Result<Vec<Rational>, ColoringError> {
        if self.k != 2 {
            return Err(ColoringError::NotTwoColors(self.k));
        }
        Ok(self.rows.iter().map(|r| r[0].clone()).collect())
    }

    /// The single color of a monochromatic vertex.
    pub fn pure_color(&self, v: usize) -> Option<usize> {
        let row = &self.rows[v];
        row.iter().position(Rational::is_one)
    }

    pub fn is_monochromatic(&self) -> bool {
        (0..self.order()).all(|v| self.pure_color(v).is_some())
    }

    /// `Σ_j min(f_j(u), f_j(v))`, the shared color mass of two vertices.
    pub fn overlap(&self, u: usize, v: usize) -> Rational {
        debug_assert_ne!(u, v, "overlap of a vertex with itself");
        self.rows[u]
            .iter()
            .zip(&self.rows[v])
            .map(|(a, b)| a.min_of(b).clone())
            .sum()
    }

    /// Same coloring with color `j` renamed to `perm[j]`.
    pub fn permute_colors(&self, perm: &[usize]) -> Result<Self, ColoringError> {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut out = vec![Rational::zero(); self.k];
                for (j, x) in row.iter().enumerate() {
                    out[perm[j]] = x.clone();
                }
                out
            })
            .collect();
        Self::new(self.k, rows)
    }

    /// Row of vertex `v` moved to `perm[v]`.
    pub fn permute_vertices(&self, perm: &[usize]) -> Self {
        let mut rows = vec![Vec::new(); self.rows.len()];
        for (v, row) in self.rows.iter().enumerate() {
            rows[perm[v]] = row.clone();
        }
        FractionalColoring { k: self.k, rows }
    }

    fn check_graph(&self, g: &Graph) -> Result<(), ColoringError> {
        if g.order() != self.order() {
            return Err(ColoringError::DimensionMismatch { graph: g.order(), coloring: self.order() });
        }
        Ok(())
    }
}

fn basis_row(k: usize, c: usize) -> Vec<Rational> {
    let mut row = vec![Rational::zero(); k];
    row[c] = Rational::one();
    row
}

/// Overlap of the endpoints `u`, `v` under `c`.
pub fn edge_overlap(c: &FractionalColoring, u: usize, v: usize) -> Rational {
    c.overlap(u, v)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefectReport {
    pub per_vertex: Vec<Rational>,
    pub max_defect: Rational,
    pub total_defect: Rational,
}

/// Exact per-vertex defects of `c` on `g`.
pub fn evaluate(g: &Graph, c: &FractionalColoring) -> Result<DefectReport, ColoringError> {
    c.check_graph(g)?;
    let mut per_vertex = vec![Rational::zero(); g.order()];
    for &(u, v) in g.edges() {
        let o = c.overlap(u, v);
        per_vertex[u] += &o;
        per_vertex[v] += o;
    }
    let max_defect = per_vertex.iter().max().cloned().unwrap_or_else(Rational::zero);
    let total_defect = per_vertex.iter().sum();
    Ok(DefectReport { per_vertex, max_defect, total_defect })
}

/// Orient every edge from less red to more red, ties by vertex id.
pub fn induced_orientation(g: &Graph, c: &FractionalColoring) -> Result<Orientation, ColoringError> {
    c.check_graph(g)?;
    let red = c.red()?;
    let arcs = g
        .edges()
        .iter()
        .map(|&(u, v)| if (&red[u], u) < (&red[v], v) { (u, v) } else { (v, u) })
        .collect();
    Ok(Orientation::from_arcs(g, arcs).expect("ordering by (r(v), v) is total"))
}

/// Repeatedly merge two colors at a non-monochromatic vertex, keeping the
/// merge with smaller total defect (ties: mass moves to the lower color).
/// The total defect never increases.
pub fn make_monochromatic_total(g: &Graph, c: &FractionalColoring) -> Result<FractionalColoring, ColoringError> {
    c.check_graph(g)?;
    let mut rows = c.rows.clone();
    let k = c.k;
    for v in 0..g.order() {
        loop {
            let support: Vec<usize> = (0..k).filter(|&j| rows[v][j].is_positive()).collect();
            if support.len() < 2 {
                break;
            }
            let (lo, hi) = (support[0], support[1]);
            let merged = |from: usize, to: usize| {
                let mut row = rows[v].clone();
                let moved = std::mem::replace(&mut row[from], Rational::zero());
                row[to] += moved;
                row
            };
            let into_lo = merged(hi, lo);
            let into_hi = merged(lo, hi);
            let total_with = |row: &[Rational]| -> Rational {
                g.neighbors(v)
                    .iter()
                    .map(|&w| row.iter().zip(&rows[w]).map(|(a, b)| a.min_of(b).clone()).sum::<Rational>())
                    .sum()
            };
            // Only v's incident overlaps change; each counts twice in the total.
            rows[v] = if total_with(&into_hi) < total_with(&into_lo) { into_hi } else { into_lo };
        }
    }
    Ok(FractionalColoring { k, rows })
}

/// For each color `j` in turn, make the not-yet-chosen vertex with the
/// largest usage of `j` (ties: lowest id) purely color `j`. No vertex's
/// defect increases.
pub fn ensure_monochromatic_representatives(g: &Graph, c: &FractionalColoring) -> Result<FractionalColoring, ColoringError> {
    c.check_graph(g)?;
    let k = c.k;
    if g.order() < k {
        return Err(ColoringError::TooFewVertices { n: g.order(), k });
    }
    let mut rows = c.rows.clone();
    let mut chosen = vec![false; g.order()];
    for j in 0..k {
        let mut best: Option<usize> = None;
        for v in (0..g.order()).filter(|&v| !chosen[v]) {
            if best.is_none_or(|b| rows[v][j] > rows[b][j]) {
                best = Some(v);
            }
        }
        let v = best.expect("order >= k leaves a candidate");
        chosen[v] = true;
        rows[v] = basis_row(k, j);
    }
    Ok(FractionalColoring { k, rows })
}

/// Parse one row of `k` rationals per vertex. With `k = None` the width of
/// the first row is used.
pub fn read_coloring(text: &str, k: Option<usize>) -> Result<FractionalColoring, ColoringError> {
    let mut rows = Vec::new();
    let mut width = k;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|tok| tok.parse::<Rational>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|source| ColoringError::Parse { line: i + 1, source })?;
        let w = *width.get_or_insert(row.len());
        if row.len() != w {
            return Err(ColoringError::RowLength { vertex: rows.len(), expected: w, found: row.len() });
        }
        rows.push(row);
    }
    let k = width.ok_or(ColoringError::Empty)?;
    FractionalColoring::new(k, rows)
}

pub fn write_coloring(c: &FractionalColoring) -> String {
    let mut out = String::new();
    for row in &c.rows {
        let line = row.iter().map(Rational::to_string).collect::<Vec<_>>().join(" ");
        writeln!(out, "{line}").expect("writing to a String");
    }
    out
}
