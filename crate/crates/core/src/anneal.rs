//! Simulated annealing over fractional colorings.
//!
//! The search runs in floating point on the max-vertex defect. Each
//! restart's best coloring is snapped to small-denominator rationals,
//! projected back onto the simplex and certified with the exact evaluator;
//! only certified values leave this module.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::coloring::{evaluate, ColoringError, FractionalColoring};
use crate::graph::Graph;
use crate::par::Execution;
use crate::rational::{snap_to_rational, Rational, RationalError};

/// Number of geometric cooling steps per restart.
pub const COOLING_STEPS: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnnealError {
    #[error("invalid annealing config: {0}")]
    InvalidConfig(String),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("baseline has {found} rows / {found_k} colors, expected {expected} / {expected_k}")]
    BaselineShape { found: usize, found_k: usize, expected: usize, expected_k: usize },
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error("snapping failed: {0}")]
    Snap(#[from] RationalError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnnealConfig {
    pub k: usize,
    pub iterations: u64,
    pub restarts: usize,
    pub initial_temperature: f64,
    pub cooling_rate: f64,
    pub move_scale: f64,
    pub seed: u64,
    pub snap_max_denominator: u64,
    pub execution: Execution,
}

impl Default for AnnealConfig {
    fn default() -> Self {
        AnnealConfig {
            k: 2,
            iterations: 1_000_000,
            restarts: 10,
            initial_temperature: 1.0,
            cooling_rate: 0.9995,
            move_scale: 0.25,
            seed: 0,
            snap_max_denominator: 2520,
            execution: Execution::default(),
        }
    }
}

impl AnnealConfig {
    pub fn validate(&self) -> Result<(), AnnealError> {
        let bad = |msg: String| Err(AnnealError::InvalidConfig(msg));
        if self.k == 0 {
            return bad("k must be at least 1".into());
        }
        if self.restarts == 0 {
            return bad("restarts must be at least 1".into());
        }
        if !(self.initial_temperature.is_finite() && self.initial_temperature > 0.0) {
            return bad(format!("initial_temperature must be positive, got {}", self.initial_temperature));
        }
        if !(self.cooling_rate > 0.0 && self.cooling_rate < 1.0) {
            return bad(format!("cooling_rate must lie in (0,1), got {}", self.cooling_rate));
        }
        if !(self.move_scale > 0.0 && self.move_scale <= 1.0) {
            return bad(format!("move_scale must lie in (0,1], got {}", self.move_scale));
        }
        if self.snap_max_denominator == 0 {
            return bad("snap_max_denominator must be at least 1".into());
        }
        Ok(())
    }

    /// Moves between two cooling steps.
    fn moves_per_step(&self) -> u64 {
        (self.iterations / COOLING_STEPS).max(1)
    }
}

/// Outcome of one restart.
#[derive(Debug, Clone, PartialEq)]
pub struct RestartTrace {
    pub restart: usize,
    pub best_float_defect: f64,
    pub certified_defect: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnnealResult {
    /// Lowest float objective seen by any restart.
    pub best_float_defect: f64,
    pub snapped_coloring: FractionalColoring,
    /// Exact max defect of `snapped_coloring`.
    pub certified_defect: Rational,
    pub trace: Vec<RestartTrace>,
    /// Whether the warm-start baseline itself was kept.
    pub from_baseline: bool,
}

/// Anneal from random starts.
pub fn anneal(g: &Graph, cfg: &AnnealConfig) -> Result<AnnealResult, AnnealError> {
    run(g, cfg, None)
}

/// Anneal with restart 0 warm-started from `baseline`; the baseline itself
/// stays a candidate, so the result is never worse than it.
pub fn seeded_anneal_with_baseline(
    g: &Graph,
    cfg: &AnnealConfig,
    baseline: &FractionalColoring,
) -> Result<AnnealResult, AnnealError> {
    if baseline.order() != g.order() || baseline.colors() != cfg.k {
        return Err(AnnealError::BaselineShape {
            found: baseline.order(),
            found_k: baseline.colors(),
            expected: g.order(),
            expected_k: cfg.k,
        });
    }
    run(g, cfg, Some(baseline))
}

fn run(g: &Graph, cfg: &AnnealConfig, baseline: Option<&FractionalColoring>) -> Result<AnnealResult, AnnealError> {
    cfg.validate()?;
    if g.order() == 0 {
        return Err(AnnealError::EmptyGraph);
    }
    let start: Option<Vec<Vec<f64>>> =
        baseline.map(|b| b.rows().iter().map(|row| row.iter().map(Rational::to_f64).collect()).collect());

    let restarts: Vec<usize> = (0..cfg.restarts).collect();
    let outcomes = cfg.execution.map(restarts, |restart| {
        let init = if restart == 0 { start.clone() } else { None };
        let (best_float, rows) = search(g, cfg, restart, init);
        let coloring = snap_rows(&rows, cfg.k, cfg.snap_max_denominator)?;
        let certified = evaluate(g, &coloring)?.max_defect;
        Ok::<_, AnnealError>((best_float, coloring, certified))
    });

    let mut trace = Vec::with_capacity(cfg.restarts);
    let mut best: Option<(FractionalColoring, Rational)> = None;
    let mut from_baseline = false;
    if let Some(b) = baseline {
        best = Some((b.clone(), evaluate(g, b)?.max_defect));
        from_baseline = true;
    }
    let mut best_float = f64::INFINITY;
    for (restart, outcome) in outcomes.into_iter().enumerate() {
        let (float, coloring, certified) = outcome?;
        best_float = best_float.min(float);
        trace.push(RestartTrace { restart, best_float_defect: float, certified_defect: certified.clone() });
        if best.as_ref().is_none_or(|(_, v)| certified < *v) {
            best = Some((coloring, certified));
            from_baseline = false;
        }
    }
    let (snapped_coloring, certified_defect) = best.expect("at least one restart");
    Ok(AnnealResult { best_float_defect: best_float, snapped_coloring, certified_defect, trace, from_baseline })
}

/// Snap every entry, then push the row's rounding error into its largest
/// entry so the row sums to exactly one.
pub fn snap_rows(rows: &[Vec<f64>], k: usize, max_denominator: u64) -> Result<FractionalColoring, AnnealError> {
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let mut snapped: Vec<Rational> = row
            .iter()
            .map(|&x| snap_to_rational(x.clamp(0.0, 1.0), max_denominator))
            .collect::<Result<_, _>>()?;
        let largest = (0..snapped.len()).fold(0, |best, j| if snapped[j] > snapped[best] { j } else { best });
        let sum: Rational = snapped.iter().sum();
        let fixed = &snapped[largest] + &(Rational::one() - sum);
        if fixed.is_negative() {
            snapped = vec![Rational::zero(); snapped.len()];
            snapped[largest] = Rational::one();
        } else {
            snapped[largest] = fixed;
        }
        out.push(snapped);
    }
    Ok(FractionalColoring::new(k, out)?)
}

fn overlap(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x.min(*y)).sum()
}

fn max_of(xs: &[f64]) -> f64 {
    xs.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

fn rng_for(seed: u64, restart: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    rng
}

/// One restart. Returns the best float objective and its rows.
fn search(g: &Graph, cfg: &AnnealConfig, restart: usize, init: Option<Vec<Vec<f64>>>) -> (f64, Vec<Vec<f64>>) {
    let n = g.order();
    let k = cfg.k;
    let mut rng = rng_for(cfg.seed, restart);
    let mut rows = init.unwrap_or_else(|| {
        (0..n)
            .map(|_| {
                let raw: Vec<f64> = (0..k).map(|_| rng.gen::<f64>() + f64::MIN_POSITIVE).collect();
                let s: f64 = raw.iter().sum();
                raw.into_iter().map(|x| x / s).collect()
            })
            .collect()
    });

    let mut defect: Vec<f64> =
        (0..n).map(|v| g.neighbors(v).iter().map(|&w| overlap(&rows[v], &rows[w])).sum()).collect();
    let mut current = max_of(&defect);
    let mut best = current;
    let mut best_rows = rows.clone();
    if k == 1 || g.size() == 0 {
        return (best, best_rows);
    }

    let mut temperature = cfg.initial_temperature;
    let per_step = cfg.moves_per_step();
    let mut old_row = vec![0.0; k];
    let mut saved: Vec<(usize, f64)> = Vec::with_capacity(g.max_degree() + 1);
    for it in 0..cfg.iterations {
        if it > 0 && it % per_step == 0 {
            temperature *= cfg.cooling_rate;
        }
        let v = rng.gen_range(0..n);
        let from = rng.gen_range(0..k);
        let mut to = rng.gen_range(0..k - 1);
        if to >= from {
            to += 1;
        }
        let amount = (rng.gen::<f64>() * cfg.move_scale).min(rows[v][from]);
        let u: f64 = rng.gen();
        if amount <= 0.0 {
            continue;
        }

        old_row.copy_from_slice(&rows[v]);
        rows[v][from] -= amount;
        rows[v][to] += amount;
        saved.clear();
        saved.push((v, defect[v]));
        let mut dv = 0.0;
        for &w in g.neighbors(v) {
            let before = overlap(&old_row, &rows[w]);
            let after = overlap(&rows[v], &rows[w]);
            saved.push((w, defect[w]));
            defect[w] += after - before;
            dv += after;
        }
        defect[v] = dv;
        let candidate = max_of(&defect);
        let delta = candidate - current;
        if delta <= 0.0 || u < (-delta / temperature).exp() {
            current = candidate;
            if current < best {
                best = current;
                best_rows.clone_from(&rows);
            }
        } else {
            rows[v].copy_from_slice(&old_row);
            for &(x, d) in &saved {
                defect[x] = d;
            }
        }
    }
    (best, best_rows)
}
