//! Exact rational linear programming.
//!
//! A dense two-phase tableau simplex (Dantzig's rule with a Bland fallback). Every infeasible
//! result carries a Farkas certificate in the following convention: one
//! multiplier per constraint, nonnegative for `<=` and `>=` rows (a `>=` row
//! is read as `-row . x <= -rhs`), unrestricted for `=` rows. Writing
//! `s_i = -1` for `>=` rows and `+1` otherwise, every feasible `x` satisfies
//! `c . x <= beta` with `c = sum_i y_i s_i row_i` and `beta = sum_i y_i s_i rhs_i`;
//! the certificate is valid when `min { c . x : x within the variable bounds } > beta`.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{self, Rational, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
}

impl Relation {
    fn sign(self) -> i8 {
        match self {
            Relation::Ge => -1,
            _ => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    #[serde(with = "rational::serde_str::vec")]
    pub coeffs: Vector,
    pub relation: Relation,
    #[serde(with = "rational::serde_str")]
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarBound {
    #[serde(with = "rational::serde_str::option", default)]
    pub lower: Option<Rational>,
    #[serde(with = "rational::serde_str::option", default)]
    pub upper: Option<Rational>,
}

impl VarBound {
    pub fn nonnegative() -> Self {
        VarBound {
            lower: Some(Rational::zero()),
            upper: None,
        }
    }

    pub fn free() -> Self {
        VarBound {
            lower: None,
            upper: None,
        }
    }

    fn contains(&self, x: &Rational) -> bool {
        self.lower.as_ref().is_none_or(|l| x >= l) && self.upper.as_ref().is_none_or(|u| x <= u)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Minimize,
    Maximize,
}

/// A linear program over rationals. Variables default to `x >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LpProblem {
    pub num_vars: usize,
    pub sense: Sense,
    #[serde(with = "rational::serde_str::vec")]
    pub objective: Vector,
    pub constraints: Vec<Constraint>,
    pub bounds: Vec<VarBound>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LpStatus {
    Optimal,
    Feasible,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpResult {
    pub status: LpStatus,
    pub point: Option<Vector>,
    pub objective_value: Option<Rational>,
    pub farkas: Option<Vector>,
}

impl LpResult {
    pub fn is_feasible(&self) -> bool {
        matches!(
            self.status,
            LpStatus::Optimal | LpStatus::Feasible | LpStatus::Unbounded
        )
    }
}

impl LpProblem {
    pub fn new(num_vars: usize) -> Self {
        LpProblem {
            num_vars,
            sense: Sense::Minimize,
            objective: rational::zeros(num_vars),
            constraints: Vec::new(),
            bounds: vec![VarBound::nonnegative(); num_vars],
        }
    }

    pub fn set_free(&mut self, j: usize) {
        self.bounds[j] = VarBound::free();
    }

    pub fn set_bounds(&mut self, j: usize, lower: Option<Rational>, upper: Option<Rational>) {
        self.bounds[j] = VarBound { lower, upper };
    }

    pub fn minimize(&mut self, objective: Vector) {
        assert_eq!(objective.len(), self.num_vars);
        self.sense = Sense::Minimize;
        self.objective = objective;
    }

    pub fn maximize(&mut self, objective: Vector) {
        assert_eq!(objective.len(), self.num_vars);
        self.sense = Sense::Maximize;
        self.objective = objective;
    }

    pub fn add_constraint(&mut self, coeffs: Vector, relation: Relation, rhs: Rational) {
        assert_eq!(coeffs.len(), self.num_vars, "constraint dimension mismatch");
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn add_sparse(&mut self, terms: &[(usize, Rational)], relation: Relation, rhs: Rational) {
        let mut coeffs = rational::zeros(self.num_vars);
        for (j, v) in terms {
            coeffs[*j] += v;
        }
        self.add_constraint(coeffs, relation, rhs);
    }

    /// Exact check that `x` satisfies every constraint and bound.
    pub fn check_point(&self, x: &[Rational]) -> bool {
        if x.len() != self.num_vars {
            return false;
        }
        self.bounds.iter().zip(x).all(|(b, xi)| b.contains(xi))
            && self.constraints.iter().all(|c| {
                let lhs = rational::dot(&c.coeffs, x);
                match c.relation {
                    Relation::Le => lhs <= c.rhs,
                    Relation::Eq => lhs == c.rhs,
                    Relation::Ge => lhs >= c.rhs,
                }
            })
    }

    /// Exact check of a Farkas certificate (see module docs for the convention).
    pub fn verify_farkas(&self, y: &[Rational]) -> bool {
        if y.len() != self.constraints.len() {
            return false;
        }
        if self
            .bounds
            .iter()
            .any(|b| matches!((&b.lower, &b.upper), (Some(l), Some(u)) if l > u))
        {
            return true;
        }
        let mut combo = rational::zeros(self.num_vars);
        let mut beta = Rational::zero();
        for (c, yi) in self.constraints.iter().zip(y) {
            if c.relation != Relation::Eq && yi.is_negative() {
                return false;
            }
            let s = if c.relation.sign() < 0 {
                -yi.clone()
            } else {
                yi.clone()
            };
            rational::axpy(&mut combo, &s, &c.coeffs);
            beta += &s * &c.rhs;
        }
        let mut lowest = Rational::zero();
        for (cj, b) in combo.iter().zip(&self.bounds) {
            if cj.is_positive() {
                match &b.lower {
                    Some(l) => lowest += cj * l,
                    None => return false,
                }
            } else if cj.is_negative() {
                match &b.upper {
                    Some(u) => lowest += cj * u,
                    None => return false,
                }
            }
        }
        lowest > beta
    }

    pub fn solve(&self) -> LpResult {
        let mut simplex = Simplex::build(self);
        if let Some(basis) = float_basis(&simplex) {
            if !simplex.warm_start(&basis) {
                simplex = Simplex::build(self);
            }
        }
        simplex.run(self)
    }
}

#[derive(Clone, Debug)]
enum VarMap {
    Shifted { col: usize, lower: Rational },
    Reflected { col: usize, upper: Rational },
    Split { pos: usize, neg: usize },
}

struct Simplex {
    rows: Vec<Vector>,
    basis: Vec<usize>,
    // column that formed the identity in each row at the start; needed to read duals
    initial: Vec<usize>,
    // std row -> (original constraint index, flip sign); None for bound rows
    origin: Vec<Option<(usize, bool)>>,
    ncols: usize,
    first_artificial: usize,
    var_map: Vec<VarMap>,
    cost: Vector,
    empty_box: bool,
}

impl Simplex {
    fn build(p: &LpProblem) -> Simplex {
        let mut ncols = 0;
        let mut var_map = Vec::with_capacity(p.num_vars);
        let mut empty_box = false;
        let mut bound_rows: Vec<(usize, Rational)> = Vec::new();
        for b in &p.bounds {
            let m = match (&b.lower, &b.upper) {
                (Some(l), up) => {
                    let col = ncols;
                    ncols += 1;
                    if let Some(u) = up {
                        if u < l {
                            empty_box = true;
                        }
                        bound_rows.push((col, u - l));
                    }
                    VarMap::Shifted {
                        col,
                        lower: l.clone(),
                    }
                }
                (None, Some(u)) => {
                    let col = ncols;
                    ncols += 1;
                    VarMap::Reflected {
                        col,
                        upper: u.clone(),
                    }
                }
                (None, None) => {
                    ncols += 2;
                    VarMap::Split {
                        pos: ncols - 2,
                        neg: ncols - 1,
                    }
                }
            };
            var_map.push(m);
        }
        let structural = ncols;
        let n_slack = p
            .constraints
            .iter()
            .filter(|c| c.relation != Relation::Eq)
            .count()
            + bound_rows.len();
        let mut slack_col = structural;
        let total_rows = p.constraints.len() + bound_rows.len();
        let width_wo_art = structural + n_slack;

        let mut rows: Vec<Vector> = Vec::with_capacity(total_rows);
        let mut rhs: Vector = Vec::with_capacity(total_rows);
        let mut origin = Vec::with_capacity(total_rows);
        let mut slack_of_row: Vec<Option<usize>> = Vec::with_capacity(total_rows);

        for (i, c) in p.constraints.iter().enumerate() {
            let mut row = rational::zeros(width_wo_art);
            let mut b = c.rhs.clone();
            for (j, a) in c.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                match &var_map[j] {
                    VarMap::Shifted { col, lower } => {
                        row[*col] += a;
                        b -= a * lower;
                    }
                    VarMap::Reflected { col, upper } => {
                        row[*col] -= a;
                        b -= a * upper;
                    }
                    VarMap::Split { pos, neg } => {
                        row[*pos] += a;
                        row[*neg] -= a;
                    }
                }
            }
            let slack = match c.relation {
                Relation::Le => {
                    row[slack_col] = Rational::one();
                    slack_col += 1;
                    Some(slack_col - 1)
                }
                Relation::Ge => {
                    row[slack_col] = -Rational::one();
                    slack_col += 1;
                    Some(slack_col - 1)
                }
                Relation::Eq => None,
            };
            let flip = b.is_negative();
            if flip {
                for x in row.iter_mut() {
                    *x = -x.clone();
                }
                b = -b;
            }
            rows.push(row);
            rhs.push(b);
            origin.push(Some((i, flip)));
            slack_of_row.push(slack);
        }
        for (col, width) in bound_rows {
            let mut row = rational::zeros(width_wo_art);
            row[col] = Rational::one();
            row[slack_col] = Rational::one();
            let flip = width.is_negative();
            let mut b = width;
            if flip {
                for x in row.iter_mut() {
                    *x = -x.clone();
                }
                b = -b;
            }
            rows.push(row);
            rhs.push(b);
            origin.push(None);
            slack_of_row.push(Some(slack_col));
            slack_col += 1;
        }

        // initial basis: slack with +1 coefficient where available, artificial otherwise
        let mut initial = Vec::with_capacity(total_rows);
        let mut n_art = 0;
        for (r, s) in slack_of_row.iter().enumerate() {
            match s {
                Some(sc) if rows[r][*sc].is_one() => initial.push(*sc),
                _ => {
                    initial.push(width_wo_art + n_art);
                    n_art += 1;
                }
            }
        }
        let ncols_total = width_wo_art + n_art;
        for (r, row) in rows.iter_mut().enumerate() {
            row.resize(ncols_total + 1, Rational::zero());
            if initial[r] >= width_wo_art {
                row[initial[r]] = Rational::one();
            }
            row[ncols_total] = rhs[r].clone();
        }

        let mut cost = rational::zeros(ncols_total);
        let sign = match p.sense {
            Sense::Minimize => Rational::one(),
            Sense::Maximize => -Rational::one(),
        };
        for (j, cj) in p.objective.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            let cj = &sign * cj;
            match &var_map[j] {
                VarMap::Shifted { col, .. } => cost[*col] += &cj,
                VarMap::Reflected { col, .. } => cost[*col] -= &cj,
                VarMap::Split { pos, neg } => {
                    cost[*pos] += &cj;
                    cost[*neg] -= &cj;
                }
            }
        }

        Simplex {
            basis: initial.clone(),
            rows,
            initial,
            origin,
            ncols: ncols_total,
            first_artificial: width_wo_art,
            var_map,
            cost,
            empty_box,
        }
    }

    fn reduced_costs(&self, cost: &[Rational]) -> Vector {
        let mut obj: Vector = cost.to_vec();
        obj.push(Rational::zero());
        for (r, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if !cb.is_zero() {
                let f = -cb.clone();
                rational::axpy(&mut obj, &f, &self.rows[r]);
            }
        }
        obj
    }

    fn pivot(&mut self, obj: &mut Vector, r: usize, e: usize) {
        let inv = self.rows[r][e].recip();
        if !inv.is_one() {
            for x in self.rows[r].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let nz: Vec<usize> = (0..=self.ncols)
            .filter(|&j| !self.rows[r][j].is_zero())
            .collect();
        let pivot_row = self.rows[r].clone();
        let eliminate = |row: &mut Vector| {
            if row[e].is_zero() {
                return;
            }
            let f = row[e].clone();
            for &j in &nz {
                let delta = &f * &pivot_row[j];
                row[j] -= delta;
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(obj);
        self.basis[r] = e;
    }

    /// Simplex iterations on the current objective row: Dantzig's rule, switching
    /// to Bland's rule after a run of degenerate pivots so cycling cannot occur.
    /// Returns false when unbounded.
    fn iterate(&mut self, obj: &mut Vector, allow: usize) -> bool {
        const DEGENERATE_RUN: usize = 200;
        let mut degenerate = 0;
        loop {
            let entering = if degenerate < DEGENERATE_RUN {
                (0..allow)
                    .filter(|&j| obj[j].is_negative())
                    .min_by(|&a, &b| obj[a].cmp(&obj[b]))
            } else {
                (0..allow).find(|&j| obj[j].is_negative())
            };
            let Some(e) = entering else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if !row[e].is_positive() {
                    continue;
                }
                let ratio = &row[self.ncols] / &row[e];
                let better = match &best {
                    None => true,
                    Some((br, bv)) => {
                        ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br])
                    }
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            let Some((r, ratio)) = best else {
                return false;
            };
            if ratio.is_zero() {
                degenerate += 1;
            } else {
                degenerate = 0;
            }
            self.pivot(obj, r, e);
        }
    }

    fn run(mut self, p: &LpProblem) -> LpResult {
        if self.empty_box {
            return LpResult {
                status: LpStatus::Infeasible,
                point: None,
                objective_value: None,
                farkas: Some(rational::zeros(p.constraints.len())),
            };
        }
        // phase 1
        let mut phase1_cost = rational::zeros(self.ncols);
        for c in phase1_cost.iter_mut().skip(self.first_artificial) {
            *c = Rational::one();
        }
        if self.first_artificial < self.ncols {
            let mut obj = self.reduced_costs(&phase1_cost);
            let ok = self.iterate(&mut obj, self.first_artificial);
            debug_assert!(ok, "phase 1 is bounded below");
            let value = -obj[self.ncols].clone();
            if value.is_positive() {
                let farkas = self.farkas(&obj, &phase1_cost, p);
                debug_assert!(
                    p.verify_farkas(&farkas),
                    "extracted Farkas certificate must verify"
                );
                return LpResult {
                    status: LpStatus::Infeasible,
                    point: None,
                    objective_value: None,
                    farkas: Some(farkas),
                };
            }
            self.drive_out_artificials();
        }

        let trivial_objective = p.objective.iter().all(Zero::is_zero);
        let mut status = if trivial_objective {
            LpStatus::Feasible
        } else {
            LpStatus::Optimal
        };
        if !trivial_objective {
            let cost = self.cost.clone();
            let mut obj = self.reduced_costs(&cost);
            if !self.iterate(&mut obj, self.first_artificial) {
                status = LpStatus::Unbounded;
            }
        }
        let point = self.extract(p);
        debug_assert!(
            p.check_point(&point),
            "simplex point must satisfy the problem"
        );
        let objective_value = match status {
            LpStatus::Optimal => Some(rational::dot(&p.objective, &point)),
            _ => None,
        };
        LpResult {
            status,
            point: Some(point),
            objective_value,
            farkas: None,
        }
    }

    /// Pivot the columns of `target` into the basis. Fails if a column cannot
    /// enter or the resulting basis is not primal feasible.
    fn warm_start(&mut self, target: &[usize]) -> bool {
        let mut dummy = rational::zeros(self.ncols + 1);
        for &c in target {
            if self.basis.contains(&c) {
                continue;
            }
            let row = (0..self.rows.len())
                .find(|&r| !target.contains(&self.basis[r]) && !self.rows[r][c].is_zero());
            match row {
                Some(r) => self.pivot(&mut dummy, r, c),
                None => return false,
            }
        }
        self.rows.iter().all(|row| !row[self.ncols].is_negative())
    }

    fn drive_out_artificials(&mut self) {
        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] >= self.first_artificial {
                match (0..self.first_artificial).find(|&j| !self.rows[r][j].is_zero()) {
                    Some(j) => {
                        let mut dummy = rational::zeros(self.ncols + 1);
                        self.pivot(&mut dummy, r, j);
                    }
                    None => {
                        // redundant equality row
                        self.rows.remove(r);
                        self.basis.remove(r);
                        self.initial.remove(r);
                        self.origin.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
    }

    fn farkas(&self, obj: &[Rational], phase1_cost: &[Rational], p: &LpProblem) -> Vector {
        let mut y = rational::zeros(p.constraints.len());
        for (r, origin) in self.origin.iter().enumerate() {
            let Some((i, flip)) = origin else { continue };
            let col = self.initial[r];
            let dual = &phase1_cost[col] - &obj[col];
            // u = -flip * dual in the signed convention; report s_i * u
            let u = if *flip { dual } else { -dual };
            y[*i] = if p.constraints[*i].relation.sign() < 0 {
                -u
            } else {
                u
            };
        }
        y
    }

    fn extract(&self, p: &LpProblem) -> Vector {
        let mut std = rational::zeros(self.ncols);
        for (r, &b) in self.basis.iter().enumerate() {
            std[b] = self.rows[r][self.ncols].clone();
        }
        self.var_map
            .iter()
            .take(p.num_vars)
            .map(|m| match m {
                VarMap::Shifted { col, lower } => lower + &std[*col],
                VarMap::Reflected { col, upper } => upper - &std[*col],
                VarMap::Split { pos, neg } => &std[*pos] - &std[*neg],
            })
            .collect()
    }
}

const FLOAT_TOL: f64 = 1e-9;

/// Optimal (or phase-one final) basis of the standard form computed in floating
/// point. Only used as a starting point for the exact iterations.
fn float_basis(s: &Simplex) -> Option<Vec<usize>> {
    let n = s.ncols;
    if s.rows.len() < 8 || n < 64 {
        return None;
    }
    let mut rows: Vec<Vec<f64>> = s
        .rows
        .iter()
        .map(|r| r.iter().map(rational::to_f64).collect())
        .collect();
    let mut basis = s.basis.clone();
    let reduced = |rows: &[Vec<f64>], basis: &[usize], cost: &[f64]| -> Vec<f64> {
        let mut obj: Vec<f64> = cost.to_vec();
        obj.push(0.0);
        for (r, &b) in basis.iter().enumerate() {
            let cb = cost[b];
            if cb != 0.0 {
                for (o, x) in obj.iter_mut().zip(&rows[r]) {
                    *o -= cb * x;
                }
            }
        }
        obj
    };
    let iterate = |rows: &mut Vec<Vec<f64>>,
                   basis: &mut Vec<usize>,
                   obj: &mut Vec<f64>,
                   allow: usize|
     -> bool {
        let mut degenerate = 0;
        for _ in 0..50 * (rows.len() + n) {
            let entering = if degenerate < 100 {
                (0..allow)
                    .filter(|&j| obj[j] < -FLOAT_TOL)
                    .min_by(|&a, &b| obj[a].total_cmp(&obj[b]))
            } else {
                (0..allow).find(|&j| obj[j] < -FLOAT_TOL)
            };
            let Some(e) = entering else { return true };
            let mut best: Option<(usize, f64)> = None;
            for (r, row) in rows.iter().enumerate() {
                if row[e] <= FLOAT_TOL {
                    continue;
                }
                let ratio = row[n] / row[e];
                if best.is_none_or(|(br, bv)| {
                    ratio < bv - FLOAT_TOL || (ratio <= bv + FLOAT_TOL && basis[r] < basis[br])
                }) {
                    best = Some((r, ratio));
                }
            }
            let Some((r, ratio)) = best else { return false };
            degenerate = if ratio.abs() <= FLOAT_TOL {
                degenerate + 1
            } else {
                0
            };
            let inv = 1.0 / rows[r][e];
            for x in rows[r].iter_mut() {
                *x *= inv;
            }
            let pr = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                let f = row[e];
                if i != r && f != 0.0 {
                    for (x, p) in row.iter_mut().zip(&pr) {
                        *x -= f * p;
                    }
                }
            }
            let f = obj[e];
            for (x, p) in obj.iter_mut().zip(&pr) {
                *x -= f * p;
            }
            basis[r] = e;
        }
        false
    };
    if s.first_artificial < n {
        let mut cost = vec![0.0; n];
        for c in cost.iter_mut().skip(s.first_artificial) {
            *c = 1.0;
        }
        let mut obj = reduced(&rows, &basis, &cost);
        if !iterate(&mut rows, &mut basis, &mut obj, s.first_artificial) {
            return None;
        }
        if -obj[n] > FLOAT_TOL {
            return Some(basis);
        }
    }
    let cost: Vec<f64> = s.cost.iter().map(rational::to_f64).collect();
    if cost.iter().any(|c| *c != 0.0) {
        let mut obj = reduced(&rows, &basis, &cost);
        iterate(&mut rows, &mut basis, &mut obj, s.first_artificial);
    }
    Some(basis)
}

/// Weights expressing `x` as a convex combination of `points`, if possible.
pub fn convex_combination(points: &[Vector], x: &[Rational]) -> Option<Vector> {
    let n = points.len();
    if n == 0 {
        return None;
    }
    let d = x.len();
    let mut lp = LpProblem::new(n);
    for k in 0..d {
        let row: Vector = points.iter().map(|p| p[k].clone()).collect();
        lp.add_constraint(row, Relation::Eq, x[k].clone());
    }
    lp.add_constraint(vec![Rational::one(); n], Relation::Eq, Rational::one());
    let res = lp.solve();
    if res.is_feasible() {
        res.point
    } else {
        None
    }
}

/// Weights expressing `x` as a nonnegative combination of `generators`, if possible.
pub fn conic_combination(generators: &[Vector], x: &[Rational]) -> Option<Vector> {
    let n = generators.len();
    let d = x.len();
    let mut lp = LpProblem::new(n);
    for k in 0..d {
        let row: Vector = generators.iter().map(|g| g[k].clone()).collect();
        lp.add_constraint(row, Relation::Eq, x[k].clone());
    }
    let res = lp.solve();
    if res.is_feasible() {
        res.point
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int, ints};
    use proptest::prelude::*;

    #[test]
    fn maximize_on_interval() {
        let mut lp = LpProblem::new(1);
        lp.add_constraint(ints(&[1]), Relation::Le, int(1));
        lp.add_constraint(ints(&[1]), Relation::Ge, int(0));
        lp.maximize(ints(&[1]));
        let res = lp.solve();
        assert_eq!(res.status, LpStatus::Optimal);
        assert_eq!(res.point.unwrap(), ints(&[1]));
        assert_eq!(res.objective_value.unwrap(), int(1));
    }

    #[test]
    fn contradictory_pair_gives_unit_farkas() {
        let mut lp = LpProblem::new(1);
        lp.set_free(0);
        lp.add_constraint(ints(&[1]), Relation::Ge, int(1));
        lp.add_constraint(ints(&[1]), Relation::Le, int(0));
        let res = lp.solve();
        assert_eq!(res.status, LpStatus::Infeasible);
        let y = res.farkas.unwrap();
        assert_eq!(y, ints(&[1, 1]));
        assert!(lp.verify_farkas(&y));
        assert!(!lp.verify_farkas(&ints(&[1, 0])));
        assert!(!lp.verify_farkas(&ints(&[-1, 1])));
    }

    #[test]
    fn unbounded_detected() {
        let mut lp = LpProblem::new(2);
        lp.add_constraint(ints(&[1, -1]), Relation::Le, int(1));
        lp.maximize(ints(&[1, 1]));
        assert_eq!(lp.solve().status, LpStatus::Unbounded);
    }

    #[test]
    fn bounds_and_free_variables() {
        // min x - y with -3 <= x <= 2 (free-ish), y <= 5 upper only, x + y = 1
        let mut lp = LpProblem::new(2);
        lp.set_bounds(0, Some(int(-3)), Some(int(2)));
        lp.set_bounds(1, None, Some(int(5)));
        lp.add_constraint(ints(&[1, 1]), Relation::Eq, int(1));
        lp.minimize(ints(&[1, -1]));
        let res = lp.solve();
        assert_eq!(res.status, LpStatus::Optimal);
        assert_eq!(res.point.unwrap(), ints(&[-3, 4]));
    }

    #[test]
    fn infeasible_through_bounds() {
        // x <= 1 as a bound, x >= 2 as a constraint
        let mut lp = LpProblem::new(1);
        lp.set_bounds(0, Some(int(0)), Some(int(1)));
        lp.add_constraint(ints(&[1]), Relation::Ge, int(2));
        let res = lp.solve();
        assert_eq!(res.status, LpStatus::Infeasible);
        assert!(lp.verify_farkas(res.farkas.as_ref().unwrap()));
    }

    #[test]
    fn redundant_equalities() {
        let mut lp = LpProblem::new(2);
        lp.add_constraint(ints(&[1, 1]), Relation::Eq, int(1));
        lp.add_constraint(ints(&[2, 2]), Relation::Eq, int(2));
        lp.maximize(ints(&[1, 0]));
        let res = lp.solve();
        assert_eq!(res.status, LpStatus::Optimal);
        assert_eq!(res.point.unwrap(), ints(&[1, 0]));
    }

    #[test]
    fn hull_membership() {
        let square = vec![ints(&[0, 0]), ints(&[1, 0]), ints(&[0, 1]), ints(&[1, 1])];
        assert!(convex_combination(&square, &[frac(1, 2), frac(1, 3)]).is_some());
        assert!(convex_combination(&square, &[frac(3, 2), frac(1, 3)]).is_none());
    }

    fn small_lp() -> impl Strategy<Value = LpProblem> {
        (1usize..5, 1usize..6).prop_flat_map(|(n, m)| {
            let row = proptest::collection::vec(-3i64..4, n);
            (
                proptest::collection::vec((row, 0u8..3, -4i64..5), m),
                proptest::collection::vec(
                    (prop::option::of(-2i64..1), prop::option::of(0i64..3)),
                    n,
                ),
                proptest::collection::vec(-2i64..3, n),
            )
                .prop_map(move |(rows, bounds, obj)| {
                    let mut lp = LpProblem::new(n);
                    for (r, rel, b) in rows {
                        let rel = [Relation::Le, Relation::Eq, Relation::Ge][rel as usize];
                        lp.add_constraint(ints(&r), rel, int(b));
                    }
                    for (j, (lo, hi)) in bounds.into_iter().enumerate() {
                        lp.set_bounds(j, lo.map(int), hi.map(int));
                    }
                    lp.minimize(ints(&obj));
                    lp
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]
        #[test]
        fn witnesses_always_verify(lp in small_lp()) {
            let res = lp.solve();
            match res.status {
                LpStatus::Infeasible => prop_assert!(lp.verify_farkas(res.farkas.as_ref().unwrap())),
                _ => prop_assert!(lp.check_point(res.point.as_ref().unwrap())),
            }
        }

        #[test]
        fn optimum_beats_vertex_samples(lp in small_lp(), probe in proptest::collection::vec(-2i64..3, 5)) {
            let res = lp.solve();
            if res.status == LpStatus::Optimal {
                let x: Vector = probe.iter().take(lp.num_vars).map(|&v| int(v)).chain(std::iter::repeat(int(0))).take(lp.num_vars).collect();
                if lp.check_point(&x) {
                    prop_assert!(res.objective_value.unwrap() <= rational::dot(&lp.objective, &x));
                }
            }
        }
    }
}
