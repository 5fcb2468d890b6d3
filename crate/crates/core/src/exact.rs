//! Exact minimum defect.
//!
//! * [`min_defect_2`]: the fractional optimum for two colors. Any optimal
//!   2-coloring induces an acyclic orientation (less red to more red), and for
//!   a fixed orientation every `min` in the defect sum resolves, leaving a
//!   linear min-max program. Solving that program for every acyclic
//!   orientation gives the optimum. An orientation is skipped when some
//!   vertex has `min(indeg, outdeg)` at least the incumbent, since each
//!   in/out neighbor pair contributes at least 1 to that vertex.
//! * [`min_total_defect`], [`min_defect_monochromatic`]: exhaustive search
//!   over monochromatic colorings. The total-defect minimum is always
//!   attained monochromatically.

use thiserror::Error;

use crate::coloring::{evaluate, ColoringError, FractionalColoring};
use crate::graph::Graph;
use crate::lp::{solve_lp, Bounds, LinearProgram, LpError, LpResult, Relation};
use crate::orientation::{AcyclicOrientations, Orientation, OrientationError, DEFAULT_EDGE_CAP};
use crate::par::Execution;
use crate::rational::Rational;

pub const DEFAULT_COLORING_CAP: u64 = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error(transparent)]
    Orientation(#[from] OrientationError),
    #[error("instance too large: {count} colorings exceeds the coloring cap of {cap}")]
    TooManyColorings { count: String, cap: u64 },
    #[error("no coloring beats the prune threshold {0}; it lies below the optimum")]
    ThresholdBelowOptimum(Rational),
    #[error("need at least one color")]
    NoColors,
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error("certification failed: witness evaluates to {found}, solver reported {reported}")]
    Certification { reported: Rational, found: Rational },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactOptions {
    pub edge_cap: usize,
    pub coloring_cap: u64,
    pub prune: bool,
    /// Extra upper bound for pruning; must not lie below the optimum.
    pub prune_threshold: Option<Rational>,
    /// Fix vertex 0 to color 0 in monochromatic searches.
    pub symmetry_cut: bool,
    pub execution: Execution,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions {
            edge_cap: DEFAULT_EDGE_CAP,
            coloring_cap: DEFAULT_COLORING_CAP,
            prune: true,
            prune_threshold: None,
            symmetry_cut: true,
            execution: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub orientations_enumerated: u64,
    pub orientations_pruned: u64,
    pub lp_solved: u64,
    pub colorings_checked: u64,
}

impl SearchStats {
    fn merge(mut self, other: SearchStats) -> SearchStats {
        self.orientations_enumerated += other.orientations_enumerated;
        self.orientations_pruned += other.orientations_pruned;
        self.lp_solved += other.lp_solved;
        self.colorings_checked += other.colorings_checked;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult {
    pub value: Rational,
    pub witness: FractionalColoring,
    pub stats: SearchStats,
}

/// The min-max program of one orientation. Variables `0..n` are the red
/// usages, variable `n` is the objective bound `t`.
///
/// Only the arcs of the transitive reduction become `r(u) <= r(v)` rows, and
/// only sinks carry an explicit `r <= 1`; the rest is implied.
pub fn orientation_lp(g: &Graph, o: &Orientation) -> LinearProgram {
    let n = g.order();
    let mut lp = LinearProgram::new(n + 1);
    lp.objective[n] = Rational::one();
    let (out, inn) = o.neighborhoods();
    for (v, b) in lp.bounds.iter_mut().take(n).enumerate() {
        if out[v].is_empty() {
            *b = Bounds::between(Rational::zero(), Rational::one());
        }
    }
    for (u, v) in transitive_reduction(o, &out) {
        let mut row = vec![Rational::zero(); n + 1];
        row[u] = Rational::one();
        row[v] = -Rational::one();
        lp.add_constraint(row, Relation::Le, Rational::zero());
    }
    // t - (|N1| - |N2|) r(v) - sum_{N2} r(w) + sum_{N1} r(w) >= deg(v)
    for v in 0..n {
        let mut row = vec![Rational::zero(); n + 1];
        row[n] = Rational::one();
        row[v] = Rational::integer(inn[v].len() as i64 - out[v].len() as i64);
        for &w in &inn[v] {
            row[w] -= Rational::one();
        }
        for &w in &out[v] {
            row[w] += Rational::one();
        }
        lp.add_constraint(row, Relation::Ge, Rational::from(g.degree(v)));
    }
    lp
}

/// Arcs `u -> v` with no other directed `u ~> v` path.
fn transitive_reduction(o: &Orientation, out: &[Vec<usize>]) -> Vec<(usize, usize)> {
    let n = o.order();
    let words = n.div_ceil(64).max(1);
    let mut desc = vec![vec![0u64; words]; n];
    for &v in o.topological_order().iter().rev() {
        let mut acc = vec![0u64; words];
        for &w in &out[v] {
            acc[w / 64] |= 1 << (w % 64);
            for (a, d) in acc.iter_mut().zip(&desc[w]) {
                *a |= d;
            }
        }
        desc[v] = acc;
    }
    o.arcs()
        .iter()
        .copied()
        .filter(|&(u, v)| !out[u].iter().any(|&w| w != v && desc[w][v / 64] >> (v % 64) & 1 == 1))
        .collect()
}

/// Edge directions fixed per search task.
const PREFIX_BITS: usize = 6;
/// Tasks that run together against one incumbent snapshot.
const WAVE_TASKS: usize = 8;
/// Minimum task count of the monochromatic search.
const MONO_TASKS: u128 = 64;

/// Best candidate so far, ordered by `(value, rank)`; the greedy start has
/// rank 0 and an orientation has rank `order_key + 1`.
#[derive(Clone)]
struct Incumbent {
    value: Rational,
    rank: u64,
    witness: Option<FractionalColoring>,
}

impl Incumbent {
    fn beaten_by(&self, value: &Rational, rank: u64) -> bool {
        (value, rank) < (&self.value, self.rank)
    }
}

/// Exact `D(g, 2)` with an optimal witness.
///
/// Orientations are split into tasks by the directions of the first few
/// edges. Tasks run in waves; every task of a wave starts from the
/// incumbent left by the previous wave and tightens its own copy. The
/// witness is the first optimum in enumeration order (the greedy
/// monochromatic start counts as first), and value, witness and counters
/// are the same for every execution strategy and thread count.
pub fn min_defect_2(g: &Graph, opts: &ExactOptions) -> Result<ExactResult, SolverError> {
    // Validates the caps before any work.
    AcyclicOrientations::new(g, opts.edge_cap)?;

    let (greedy_value, greedy_colors) = greedy_monochromatic(g, 2);
    let greedy = FractionalColoring::monochromatic(2, &greedy_colors)?;
    let mut best = Incumbent { value: Rational::from(greedy_value), rank: 0, witness: Some(greedy) };
    if opts.prune {
        if let Some(th) = &opts.prune_threshold {
            if *th < best.value {
                best = Incumbent { value: th.clone(), rank: 0, witness: None };
            }
        }
    }

    let p = PREFIX_BITS.min(g.size());
    let prefixes: Vec<Vec<bool>> =
        (0u64..1 << p).map(|mask| (0..p).map(|i| mask >> (p - 1 - i) & 1 == 1).collect()).collect();

    let mut stats = SearchStats::default();
    for wave in prefixes.chunks(WAVE_TASKS) {
        let snapshot = &best;
        let results = opts.execution.map(wave.to_vec(), |prefix| search_task(g, opts, &prefix, snapshot.clone()));
        for r in results {
            let (local, s) = r?;
            stats = stats.merge(s);
            if best.beaten_by(&local.value, local.rank) {
                best = local;
            }
        }
    }

    let witness = best.witness.ok_or_else(|| SolverError::ThresholdBelowOptimum(best.value.clone()))?;
    certify(g, &best.value, &witness, Measure::Max)?;
    Ok(ExactResult { value: best.value, witness, stats })
}

fn search_task(
    g: &Graph,
    opts: &ExactOptions,
    prefix: &[bool],
    mut inc: Incumbent,
) -> Result<(Incumbent, SearchStats), SolverError> {
    let mut stats = SearchStats::default();
    for o in AcyclicOrientations::with_prefix(g, opts.edge_cap, prefix)? {
        stats.orientations_enumerated += 1;
        let rank = o.order_key().expect("edge cap keeps keys in u64") + 1;
        if opts.prune && !inc.beaten_by(&Rational::from(o.degree_lower_bound()), rank) {
            stats.orientations_pruned += 1;
            continue;
        }
        let lp = orientation_lp(g, &o);
        stats.lp_solved += 1;
        let sol = match solve_lp(&lp)? {
            LpResult::Optimal(sol) => sol,
            other => unreachable!("orientation programs are feasible and bounded, got {other:?}"),
        };
        if inc.beaten_by(&sol.value, rank) {
            let witness = FractionalColoring::from_red(&sol.witness[..g.order()])?;
            inc = Incumbent { value: sol.value, rank, witness: Some(witness) };
        }
    }
    Ok((inc, stats))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Measure {
    Max,
    Total,
}

fn certify(g: &Graph, value: &Rational, witness: &FractionalColoring, measure: Measure) -> Result<(), SolverError> {
    let report = evaluate(g, witness)?;
    let found = match measure {
        Measure::Max => report.max_defect,
        Measure::Total => report.total_defect,
    };
    if found != *value {
        return Err(SolverError::Certification { reported: value.clone(), found });
    }
    Ok(())
}

/// Exact `TD(g, k)` by exhaustive search over monochromatic colorings.
pub fn min_total_defect(g: &Graph, k: usize, opts: &ExactOptions) -> Result<ExactResult, SolverError> {
    mono_exact(g, k, Measure::Total, opts)
}

/// Minimum over monochromatic `k`-colorings of the maximum defect: the
/// ordinary defective-coloring optimum, an upper bound on `D(g, k)`.
pub fn min_defect_monochromatic(g: &Graph, k: usize, opts: &ExactOptions) -> Result<ExactResult, SolverError> {
    mono_exact(g, k, Measure::Max, opts)
}

fn mono_exact(g: &Graph, k: usize, measure: Measure, opts: &ExactOptions) -> Result<ExactResult, SolverError> {
    if k == 0 {
        return Err(SolverError::NoColors);
    }
    let n = g.order();
    // More colors than vertices never helps.
    let k_eff = k.min(n.max(1));
    let fixed = usize::from(opts.symmetry_cut && n > 0);
    let free = n - fixed;
    let count = (k_eff as u128).checked_pow(free as u32).unwrap_or(u128::MAX);
    if count > opts.coloring_cap as u128 {
        let count = if count == u128::MAX { format!("{k_eff}^{free}") } else { count.to_string() };
        return Err(SolverError::TooManyColorings { count, cap: opts.coloring_cap });
    }

    // Split on the leading free vertices so tasks cover consecutive ranges.
    // The split is fixed so that counters do not depend on the thread count.
    let mut split = 0;
    let mut tasks = 1u128;
    while tasks < MONO_TASKS && split < free.saturating_sub(1) {
        tasks *= k_eff as u128;
        split += 1;
    }
    let prefixes: Vec<Vec<usize>> = (0..(k_eff as u64).pow(split as u32))
        .map(|mut idx| {
            let mut digits = vec![0; split];
            for d in digits.iter_mut().rev() {
                *d = (idx % k_eff as u64) as usize;
                idx /= k_eff as u64;
            }
            digits
        })
        .collect();

    let results = opts.execution.map(prefixes, |prefix| {
        let mut colors = vec![0usize; n];
        colors[fixed..fixed + prefix.len()].copy_from_slice(&prefix);
        mono_scan(g, k_eff, measure, &mut colors, fixed + prefix.len())
    });
    let mut best: Option<(u64, Vec<usize>)> = None;
    let mut stats = SearchStats::default();
    for (value, colors, checked) in results {
        stats.colorings_checked += checked;
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, colors));
        }
    }
    let (value, colors) = best.expect("at least one task");
    let witness = FractionalColoring::monochromatic(k, &colors)?;
    let value = Rational::from(value as usize);
    certify(g, &value, &witness, measure)?;
    Ok(ExactResult { value, witness, stats })
}

/// Odometer over `colors[start..]` (last vertex fastest) with incremental
/// same-color neighbor counts. Returns the first best coloring found.
fn mono_scan(g: &Graph, k: usize, measure: Measure, colors: &mut [usize], start: usize) -> (u64, Vec<usize>, u64) {
    let n = g.order();
    let mut defect = vec![0u64; n];
    let mut total = 0u64;
    for &(u, v) in g.edges() {
        if colors[u] == colors[v] {
            defect[u] += 1;
            defect[v] += 1;
            total += 2;
        }
    }
    let score = |defect: &[u64], total: u64| match measure {
        Measure::Total => total,
        Measure::Max => defect.iter().copied().max().unwrap_or(0),
    };
    let mut best = (score(&defect, total), colors.to_vec());
    let mut checked = 1u64;
    let recolor = |colors: &mut [usize], defect: &mut [u64], total: &mut u64, v: usize, to: usize| {
        let from = colors[v];
        for &w in g.neighbors(v) {
            if colors[w] == from {
                defect[w] -= 1;
                defect[v] -= 1;
                *total -= 2;
            } else if colors[w] == to {
                defect[w] += 1;
                defect[v] += 1;
                *total += 2;
            }
        }
        colors[v] = to;
    };
    if best.0 == 0 {
        return (best.0, best.1, checked);
    }
    while let Some(p) = (start..n).rev().find(|&p| colors[p] + 1 < k) {
        for q in p + 1..n {
            recolor(colors, &mut defect, &mut total, q, 0);
        }
        let next = colors[p] + 1;
        recolor(colors, &mut defect, &mut total, p, next);
        checked += 1;
        let s = score(&defect, total);
        if s < best.0 {
            best = (s, colors.to_vec());
            if s == 0 {
                break;
            }
        }
    }
    (best.0, best.1, checked)
}

/// A good monochromatic coloring fast: greedy assignment, then recolor
/// vertices at the maximum defect while that lowers
/// `(max, vertices at max, total)`.
pub fn greedy_monochromatic(g: &Graph, k: usize) -> (usize, Vec<usize>) {
    let n = g.order();
    let mut colors = vec![0usize; n];
    if let (2, Some(side)) = (k, g.bipartition()) {
        return (0, side);
    }
    for v in 0..n {
        let mut clash = vec![0usize; k];
        for &w in g.neighbors(v).iter().filter(|&&w| w < v) {
            clash[colors[w]] += 1;
        }
        colors[v] = (0..k).min_by_key(|&c| clash[c]).unwrap_or(0);
    }
    let defects = |colors: &[usize]| -> Vec<usize> {
        (0..n).map(|v| g.neighbors(v).iter().filter(|&&w| colors[w] == colors[v]).count()).collect()
    };
    let key = |d: &[usize]| {
        let max = d.iter().copied().max().unwrap_or(0);
        (max, d.iter().filter(|&&x| x == max).count(), d.iter().sum::<usize>())
    };
    let mut current = key(&defects(&colors));
    'improve: for _ in 0..10 * n.max(1) {
        let d = defects(&colors);
        for v in (0..n).filter(|&v| d[v] == current.0) {
            let old = colors[v];
            for c in (0..k).filter(|&c| c != old) {
                colors[v] = c;
                let cand = key(&defects(&colors));
                if cand < current {
                    current = cand;
                    continue 'improve;
                }
                colors[v] = old;
            }
        }
        break;
    }
    (current.0, colors)
}
