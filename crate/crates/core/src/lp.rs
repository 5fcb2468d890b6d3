//! Exact two-phase simplex over [`Rational`] with Bland's anti-cycling rule.
//!
//! The instances this crate generates are tiny (a few dozen variables), so a
//! dense tableau is plenty. Every optimal answer is re-substituted into the
//! original constraints before it is returned.

use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coefficients: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// Per-variable bounds; `None` means unbounded on that side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bounds {
    pub lo: Option<Rational>,
    pub hi: Option<Rational>,
}

impl Bounds {
    pub fn nonnegative() -> Self {
        Bounds { lo: Some(Rational::zero()), hi: None }
    }

    pub fn free() -> Self {
        Bounds { lo: None, hi: None }
    }

    pub fn between(lo: Rational, hi: Rational) -> Self {
        Bounds { lo: Some(lo), hi: Some(hi) }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.lo.as_ref().is_none_or(|lo| x >= lo) && self.hi.as_ref().is_none_or(|hi| x <= hi)
    }
}

/// `minimize objective · x` subject to the constraints and bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    pub bounds: Vec<Bounds>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub value: Rational,
    pub witness: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpResult {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

impl LpResult {
    pub fn optimal(&self) -> Option<&LpSolution> {
        match self {
            LpResult::Optimal(sol) => Some(sol),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("objective has {found} coefficients, expected {expected}")]
    ObjectiveLength { expected: usize, found: usize },
    #[error("constraint {index} has {found} coefficients, expected {expected}")]
    ConstraintLength { index: usize, expected: usize, found: usize },
    #[error("expected {expected} variable bounds, found {found}")]
    BoundsLength { expected: usize, found: usize },
    #[error("variable {index} has lower bound {lo} above upper bound {hi}")]
    EmptyBounds { index: usize, lo: Rational, hi: Rational },
    #[error("optimal witness failed exact verification: {0}")]
    Verification(String),
}

impl LinearProgram {
    /// An LP with `num_vars` nonnegative variables and a zero objective.
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            objective: vec![Rational::zero(); num_vars],
            constraints: Vec::new(),
            bounds: vec![Bounds::nonnegative(); num_vars],
        }
    }

    pub fn add_constraint(&mut self, coefficients: Vec<Rational>, relation: Relation, rhs: Rational) {
        self.constraints.push(Constraint { coefficients, relation, rhs });
    }

    pub fn validate(&self) -> Result<(), LpError> {
        let n = self.num_vars;
        if self.objective.len() != n {
            return Err(LpError::ObjectiveLength { expected: n, found: self.objective.len() });
        }
        if self.bounds.len() != n {
            return Err(LpError::BoundsLength { expected: n, found: self.bounds.len() });
        }
        for (index, c) in self.constraints.iter().enumerate() {
            if c.coefficients.len() != n {
                return Err(LpError::ConstraintLength { index, expected: n, found: c.coefficients.len() });
            }
        }
        for (index, b) in self.bounds.iter().enumerate() {
            if let (Some(lo), Some(hi)) = (&b.lo, &b.hi) {
                if lo > hi {
                    return Err(LpError::EmptyBounds { index, lo: lo.clone(), hi: hi.clone() });
                }
            }
        }
        Ok(())
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        dot(&self.objective, x)
    }

    /// Exact feasibility check; returns a description of the first violation.
    pub fn check_feasible(&self, x: &[Rational]) -> Result<(), String> {
        if x.len() != self.num_vars {
            return Err(format!("point has {} entries, expected {}", x.len(), self.num_vars));
        }
        for (j, (xj, b)) in x.iter().zip(&self.bounds).enumerate() {
            if !b.contains(xj) {
                return Err(format!("variable {j} = {xj} violates its bounds"));
            }
        }
        for (i, c) in self.constraints.iter().enumerate() {
            let lhs = dot(&c.coefficients, x);
            let ok = match c.relation {
                Relation::Le => lhs <= c.rhs,
                Relation::Ge => lhs >= c.rhs,
                Relation::Eq => lhs == c.rhs,
            };
            if !ok {
                return Err(format!("constraint {i}: lhs {lhs} {:?} rhs {}", c.relation, c.rhs));
            }
        }
        Ok(())
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// How an original variable is expressed through nonnegative columns.
enum VarMap {
    /// x = shift + y
    Shifted { col: usize, shift: Rational },
    /// x = shift - y
    Mirrored { col: usize, shift: Rational },
    /// x = y+ - y-
    Split { pos: usize, neg: usize },
}

/// Sparse `(column, coefficient)` row with its relation and rhs.
type SparseRow = (Vec<(usize, Rational)>, Relation, Rational);

/// Solve `lp` exactly. Infeasible and unbounded programs are reported as
/// statuses; only malformed input is an error.
pub fn solve_lp(lp: &LinearProgram) -> Result<LpResult, LpError> {
    lp.validate()?;

    // Map original variables to nonnegative structural columns.
    let mut maps = Vec::with_capacity(lp.num_vars);
    let mut ncols = 0usize;
    let mut extra_rows: Vec<SparseRow> = Vec::new();
    for b in &lp.bounds {
        match (&b.lo, &b.hi) {
            (Some(lo), hi) => {
                let col = ncols;
                ncols += 1;
                if let Some(hi) = hi {
                    extra_rows.push((vec![(col, Rational::one())], Relation::Le, hi - lo));
                }
                maps.push(VarMap::Shifted { col, shift: lo.clone() });
            }
            (None, Some(hi)) => {
                maps.push(VarMap::Mirrored { col: ncols, shift: hi.clone() });
                ncols += 1;
            }
            (None, None) => {
                maps.push(VarMap::Split { pos: ncols, neg: ncols + 1 });
                ncols += 2;
            }
        }
    }

    // Rewrite constraints over the structural columns.
    let mut rows: Vec<(Vec<Rational>, Relation, Rational)> = Vec::new();
    for c in &lp.constraints {
        let mut coeffs = vec![Rational::zero(); ncols];
        let mut rhs = c.rhs.clone();
        for (a, m) in c.coefficients.iter().zip(&maps) {
            if a.is_zero() {
                continue;
            }
            match m {
                VarMap::Shifted { col, shift } => {
                    coeffs[*col] += a;
                    rhs -= a * shift;
                }
                VarMap::Mirrored { col, shift } => {
                    coeffs[*col] -= a;
                    rhs -= a * shift;
                }
                VarMap::Split { pos, neg } => {
                    coeffs[*pos] += a;
                    coeffs[*neg] -= a;
                }
            }
        }
        rows.push((coeffs, c.relation, rhs));
    }
    for (entries, rel, rhs) in extra_rows {
        let mut coeffs = vec![Rational::zero(); ncols];
        for (col, a) in entries {
            coeffs[col] = a;
        }
        rows.push((coeffs, rel, rhs));
    }

    let mut cost = vec![Rational::zero(); ncols];
    let mut cost_offset = Rational::zero();
    for (a, m) in lp.objective.iter().zip(&maps) {
        match m {
            VarMap::Shifted { col, shift } => {
                cost[*col] += a;
                cost_offset += a * shift;
            }
            VarMap::Mirrored { col, shift } => {
                cost[*col] -= a;
                cost_offset += a * shift;
            }
            VarMap::Split { pos, neg } => {
                cost[*pos] += a;
                cost[*neg] -= a;
            }
        }
    }

    let y = match Tableau::solve(rows, ncols, &cost) {
        Phase::Infeasible => return Ok(LpResult::Infeasible),
        Phase::Unbounded => return Ok(LpResult::Unbounded),
        Phase::Optimal(y) => y,
    };

    let witness: Vec<Rational> = maps
        .iter()
        .map(|m| match m {
            VarMap::Shifted { col, shift } => shift + &y[*col],
            VarMap::Mirrored { col, shift } => shift - &y[*col],
            VarMap::Split { pos, neg } => &y[*pos] - &y[*neg],
        })
        .collect();
    lp.check_feasible(&witness).map_err(LpError::Verification)?;
    let value = lp.objective_value(&witness);
    debug_assert_eq!(
        value,
        dot(&cost, &y) + &cost_offset,
        "objective mismatch between tableau and substitution"
    );
    Ok(LpResult::Optimal(LpSolution { value, witness }))
}

enum Phase {
    Optimal(Vec<Rational>),
    Infeasible,
    Unbounded,
}

/// Dense tableau in equality form `A y = b`, `y >= 0`, `b >= 0`.
struct Tableau {
    /// m rows of `width` coefficients followed by the rhs.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    /// First artificial column; columns at or beyond it are artificial.
    artificial_start: usize,
    width: usize,
}

impl Tableau {
    fn solve(rows: Vec<(Vec<Rational>, Relation, Rational)>, nstruct: usize, cost: &[Rational]) -> Phase {
        let m = rows.len();
        let nslack = rows.iter().filter(|(_, rel, _)| *rel != Relation::Eq).count();
        // Flip rows so every rhs is nonnegative.
        let rows: Vec<_> = rows
            .into_iter()
            .map(|(coeffs, rel, rhs)| {
                if rhs.is_negative() {
                    let flipped = match rel {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    };
                    (coeffs.into_iter().map(|a| -a).collect::<Vec<_>>(), flipped, -rhs)
                } else {
                    (coeffs, rel, rhs)
                }
            })
            .collect();
        let nart = rows.iter().filter(|(_, rel, _)| *rel != Relation::Le).count();
        let artificial_start = nstruct + nslack;
        let width = artificial_start + nart;

        let mut tab = Tableau { rows: Vec::with_capacity(m), basis: Vec::with_capacity(m), artificial_start, width };
        let mut slack = nstruct;
        let mut art = artificial_start;
        for (coeffs, rel, rhs) in rows {
            let mut row = coeffs;
            row.resize(width + 1, Rational::zero());
            row[width] = rhs;
            match rel {
                Relation::Le => {
                    row[slack] = Rational::one();
                    tab.basis.push(slack);
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -Rational::one();
                    slack += 1;
                    row[art] = Rational::one();
                    tab.basis.push(art);
                    art += 1;
                }
                Relation::Eq => {
                    row[art] = Rational::one();
                    tab.basis.push(art);
                    art += 1;
                }
            }
            tab.rows.push(row);
        }

        // Phase one: minimize the sum of artificials.
        if nart > 0 {
            let mut phase1 = vec![Rational::zero(); width];
            for c in phase1.iter_mut().skip(artificial_start) {
                *c = Rational::one();
            }
            match tab.optimize(&phase1, width) {
                Some(v) if v.is_zero() => {}
                Some(_) => return Phase::Infeasible,
                None => unreachable!("phase one is bounded below by zero"),
            }
            tab.drive_out_artificials();
        }

        let mut full_cost = cost.to_vec();
        full_cost.resize(width, Rational::zero());
        match tab.optimize(&full_cost, artificial_start) {
            None => Phase::Unbounded,
            Some(_) => {
                let mut y = vec![Rational::zero(); nstruct];
                for (r, &b) in tab.basis.iter().enumerate() {
                    if b < nstruct {
                        y[b] = tab.rows[r][width].clone();
                    }
                }
                Phase::Optimal(y)
            }
        }
    }

    /// Primal simplex with Bland's rule over columns `< allowed`. Returns the
    /// optimal objective value, or `None` when unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: usize) -> Option<Rational> {
        loop {
            let reduced = self.reduced_costs(cost);
            let Some(enter) = (0..allowed).find(|&j| reduced[j].is_negative()) else {
                return Some(self.objective(cost));
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                let a = &row[enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &row[self.width] / a;
                let better = match &leave {
                    None => true,
                    Some((lr, lratio)) => ratio < *lratio || (ratio == *lratio && self.basis[r] < self.basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            let (r, _) = leave?;
            self.pivot(r, enter);
        }
    }

    fn reduced_costs(&self, cost: &[Rational]) -> Vec<Rational> {
        let mut reduced = cost.to_vec();
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (j, a) in row[..self.width].iter().enumerate() {
                if !a.is_zero() {
                    reduced[j] -= cb * a;
                }
            }
        }
        reduced
    }

    fn objective(&self, cost: &[Rational]) -> Rational {
        self.rows
            .iter()
            .zip(&self.basis)
            .filter(|(_, &b)| !cost[b].is_zero())
            .map(|(row, &b)| &cost[b] * &row[self.width])
            .sum()
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let inv = self.rows[r][col].recip();
        if !inv.is_one() {
            for a in self.rows[r].iter_mut() {
                if !a.is_zero() {
                    *a = &*a * &inv;
                }
            }
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (a, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *a -= &factor * p;
                }
            }
        }
        self.basis[r] = col;
    }

    /// After a zero-cost phase one, pivot every basic artificial out, or drop
    /// its row when the row is redundant.
    fn drive_out_artificials(&mut self) {
        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] >= self.artificial_start {
                match (0..self.artificial_start).find(|&j| !self.rows[r][j].is_zero()) {
                    Some(j) => self.pivot(r, j),
                    None => {
                        self.rows.remove(r);
                        self.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::frac(p, d)
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::integer(x)).collect()
    }

    #[test]
    fn minmax_symmetric() {
        // minimize t s.t. t >= x, t >= 1 - x, x in [0, 1]
        let mut lp = LinearProgram::new(2);
        lp.objective = ints(&[0, 1]);
        lp.bounds[0] = Bounds::between(Rational::zero(), Rational::one());
        lp.bounds[1] = Bounds::free();
        lp.add_constraint(ints(&[-1, 1]), Relation::Ge, Rational::zero());
        lp.add_constraint(ints(&[1, 1]), Relation::Ge, Rational::one());
        let sol = solve_lp(&lp).unwrap();
        let sol = sol.optimal().unwrap();
        assert_eq!(sol.value, q(1, 2));
        assert_eq!(sol.witness, vec![q(1, 2), q(1, 2)]);
    }

    #[test]
    fn infeasible_reported() {
        let mut lp = LinearProgram::new(1);
        lp.objective = ints(&[1]);
        lp.bounds[0] = Bounds::free();
        lp.add_constraint(ints(&[1]), Relation::Ge, Rational::integer(3));
        lp.add_constraint(ints(&[1]), Relation::Le, Rational::integer(2));
        assert_eq!(solve_lp(&lp).unwrap(), LpResult::Infeasible);
    }

    #[test]
    fn unbounded_reported() {
        let mut lp = LinearProgram::new(2);
        lp.objective = ints(&[-1, 0]);
        lp.add_constraint(ints(&[1, -1]), Relation::Le, Rational::one());
        assert_eq!(solve_lp(&lp).unwrap(), LpResult::Unbounded);
    }

    #[test]
    fn equality_and_negative_rhs() {
        // minimize x + 2y s.t. x + y = 3, x - y >= -1, x <= 5, y free
        let mut lp = LinearProgram::new(2);
        lp.objective = ints(&[1, 2]);
        lp.bounds[0] = Bounds { lo: None, hi: Some(Rational::integer(5)) };
        lp.bounds[1] = Bounds::free();
        lp.add_constraint(ints(&[1, 1]), Relation::Eq, Rational::integer(3));
        lp.add_constraint(ints(&[1, -1]), Relation::Ge, Rational::integer(-1));
        let sol = solve_lp(&lp).unwrap();
        let sol = sol.optimal().unwrap();
        // y = 3 - x decreasing in x: x = 5, y = -2, value 1
        assert_eq!(sol.witness, ints(&[5, -2]));
        assert_eq!(sol.value, Rational::one());
    }

    #[test]
    fn redundant_equalities() {
        let mut lp = LinearProgram::new(2);
        lp.objective = ints(&[1, 1]);
        lp.add_constraint(ints(&[1, 1]), Relation::Eq, Rational::integer(2));
        lp.add_constraint(ints(&[2, 2]), Relation::Eq, Rational::integer(4));
        let sol = solve_lp(&lp).unwrap();
        assert_eq!(sol.optimal().unwrap().value, Rational::integer(2));
    }

    #[test]
    fn degenerate_cycling_instance_terminates() {
        // Beale's classic cycling example for Dantzig's rule.
        let mut lp = LinearProgram::new(4);
        lp.objective = vec![q(-3, 4), Rational::integer(150), q(-1, 50), Rational::integer(6)];
        lp.add_constraint(vec![q(1, 4), Rational::integer(-60), q(-1, 25), Rational::integer(9)], Relation::Le, Rational::zero());
        lp.add_constraint(vec![q(1, 2), Rational::integer(-90), q(-1, 50), Rational::integer(3)], Relation::Le, Rational::zero());
        lp.add_constraint(ints(&[0, 0, 1, 0]), Relation::Le, Rational::one());
        let sol = solve_lp(&lp).unwrap();
        assert_eq!(sol.optimal().unwrap().value, q(-1, 20));
    }

    #[test]
    fn malformed_rejected() {
        let mut lp = LinearProgram::new(2);
        lp.add_constraint(ints(&[1]), Relation::Le, Rational::one());
        assert!(matches!(solve_lp(&lp), Err(LpError::ConstraintLength { .. })));
        let mut lp = LinearProgram::new(1);
        lp.bounds[0] = Bounds::between(Rational::one(), Rational::zero());
        assert!(matches!(solve_lp(&lp), Err(LpError::EmptyBounds { .. })));
    }
}
