//! Dense two-phase primal simplex over exact rationals with Bland's rule.
//!
//! Solves `max c·x` subject to rows `a·x {<=,>=,=} b` and `x >= 0`. At an
//! optimum the solver also returns dual multipliers, so every answer carries
//! its own optimality certificate (see [`LpSolution::certify`]).

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub terms: Vec<(usize, Rational)>,
    pub rel: Relation,
    pub rhs: Rational,
}

#[derive(Debug, Clone, Default)]
pub struct LinearProgram {
    num_vars: usize,
    objective: Vec<(usize, Rational)>,
    constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub status: LpStatus,
    pub value: Rational,
    pub primal: Vec<Rational>,
    /// One multiplier per constraint, in insertion order.
    pub duals: Vec<Rational>,
    pub pivots: usize,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            ..Default::default()
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn add_var(&mut self) -> usize {
        self.num_vars += 1;
        self.num_vars - 1
    }

    pub fn set_objective(&mut self, terms: Vec<(usize, Rational)>) {
        self.objective = merge_terms(terms);
    }

    pub fn add_constraint(&mut self, terms: Vec<(usize, Rational)>, rel: Relation, rhs: Rational) {
        let terms = merge_terms(terms);
        debug_assert!(terms.iter().all(|(j, _)| *j < self.num_vars));
        self.constraints.push(Constraint { terms, rel, rhs });
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        self.objective
            .iter()
            .fold(rational::zero(), |acc, (j, c)| acc + c * &x[*j])
    }

    pub fn solve(&self) -> LpSolution {
        Tableau::build(self).run(self)
    }
}

fn merge_terms(mut terms: Vec<(usize, Rational)>) -> Vec<(usize, Rational)> {
    terms.sort_by_key(|(j, _)| *j);
    let mut out: Vec<(usize, Rational)> = Vec::with_capacity(terms.len());
    for (j, c) in terms {
        match out.last_mut() {
            Some((lj, lc)) if *lj == j => *lc += c,
            _ => out.push((j, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

fn lhs(terms: &[(usize, Rational)], x: &[Rational]) -> Rational {
    terms.iter().fold(rational::zero(), |acc, (j, c)| acc + c * &x[*j])
}

impl LpSolution {
    /// Re-checks the answer from scratch: primal feasibility, dual sign
    /// conditions, dual feasibility `A^T y >= c`, and `b·y = c·x`.
    pub fn certify(&self, lp: &LinearProgram) -> Result<(), String> {
        if self.status != LpStatus::Optimal {
            return Ok(());
        }
        let x = &self.primal;
        if x.len() != lp.num_vars || self.duals.len() != lp.constraints.len() {
            return Err("certificate has wrong shape".into());
        }
        if x.iter().any(|v| v.is_negative()) {
            return Err("negative primal entry".into());
        }
        let mut aty = vec![rational::zero(); lp.num_vars];
        let mut by = rational::zero();
        for (i, (c, y)) in lp.constraints.iter().zip(&self.duals).enumerate() {
            let v = lhs(&c.terms, x);
            let ok = match c.rel {
                Relation::Le => v <= c.rhs && !y.is_negative(),
                Relation::Ge => v >= c.rhs && !y.is_positive(),
                Relation::Eq => v == c.rhs,
            };
            if !ok {
                return Err(format!("row {i} violates primal or dual sign condition"));
            }
            for (j, a) in &c.terms {
                aty[*j] += a * y;
            }
            by += &c.rhs * y;
        }
        let mut cvec = vec![rational::zero(); lp.num_vars];
        for (j, c) in &lp.objective {
            cvec[*j] = c.clone();
        }
        if aty.iter().zip(&cvec).any(|(a, c)| a < c) {
            return Err("dual infeasible: A^T y < c".into());
        }
        let cx = lp.objective_value(x);
        if cx != self.value || by != self.value {
            return Err(format!(
                "duality gap: c·x = {}, b·y = {}, reported {}",
                rational::format(&cx),
                rational::format(&by),
                rational::format(&self.value)
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum ColKind {
    Structural,
    Slack,
    Artificial,
}

struct Tableau {
    /// `rows[i]` has `ncols + 1` entries, the last being the right-hand side.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    kind: Vec<ColKind>,
    /// Column carrying `+e_i` for row `i`, used to read duals.
    unit_col: Vec<usize>,
    /// `-1` where the row was negated to make its rhs nonnegative.
    flipped: Vec<bool>,
    ncols: usize,
    pivots: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Tableau {
        let m = lp.constraints.len();
        let n = lp.num_vars;
        let mut kind = vec![ColKind::Structural; n];
        let mut plan = Vec::with_capacity(m);
        for c in &lp.constraints {
            let flip = c.rhs.is_negative();
            let rel = match (c.rel, flip) {
                (Relation::Le, true) => Relation::Ge,
                (Relation::Ge, true) => Relation::Le,
                (r, _) => r,
            };
            let (slack, art) = match rel {
                Relation::Le => {
                    kind.push(ColKind::Slack);
                    (Some(kind.len() - 1), None)
                }
                Relation::Ge => {
                    kind.push(ColKind::Slack);
                    kind.push(ColKind::Artificial);
                    (Some(kind.len() - 2), Some(kind.len() - 1))
                }
                Relation::Eq => {
                    kind.push(ColKind::Artificial);
                    (None, Some(kind.len() - 1))
                }
            };
            plan.push((flip, rel, slack, art));
        }
        let ncols = kind.len();
        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut unit_col = Vec::with_capacity(m);
        let mut flipped = Vec::with_capacity(m);
        for (c, &(flip, rel, slack, art)) in lp.constraints.iter().zip(&plan) {
            let mut row = vec![rational::zero(); ncols + 1];
            for (j, a) in &c.terms {
                row[*j] = if flip { -a } else { a.clone() };
            }
            row[ncols] = if flip { -&c.rhs } else { c.rhs.clone() };
            match rel {
                Relation::Le => {
                    let s = slack.unwrap();
                    row[s] = rational::one();
                    basis.push(s);
                    unit_col.push(s);
                }
                Relation::Ge => {
                    row[slack.unwrap()] = -rational::one();
                    let a = art.unwrap();
                    row[a] = rational::one();
                    basis.push(a);
                    unit_col.push(a);
                }
                Relation::Eq => {
                    let a = art.unwrap();
                    row[a] = rational::one();
                    basis.push(a);
                    unit_col.push(a);
                }
            }
            rows.push(row);
            flipped.push(flip);
        }
        Tableau {
            rows,
            basis,
            kind,
            unit_col,
            flipped,
            ncols,
            pivots: 0,
        }
    }

    /// Reduced profits `c_j - c_B B^-1 A_j` plus the current objective value
    /// in the last slot.
    fn reduced(&self, cost: &[Rational]) -> Vec<Rational> {
        let mut d: Vec<Rational> = cost.to_vec();
        d.push(rational::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (dj, a) in d.iter_mut().zip(row) {
                if !a.is_zero() {
                    *dj -= cb * a;
                }
            }
        }
        // the last entry now holds -(objective value)
        d
    }

    fn pivot(&mut self, r: usize, col: usize, d: &mut [Rational]) {
        self.pivots += 1;
        let p = self.rows[r][col].clone();
        if !p.is_one_ish() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v /= &p;
                }
            }
        }
        let nz: Vec<usize> = (0..=self.ncols).filter(|&j| !self.rows[r][j].is_zero()).collect();
        let prow = std::mem::take(&mut self.rows[r]);
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for &j in &nz {
                row[j] -= &f * &prow[j];
            }
        }
        if !d[col].is_zero() {
            let f = d[col].clone();
            for &j in &nz {
                d[j] -= &f * &prow[j];
            }
        }
        self.rows[r] = prow;
        self.basis[r] = col;
    }

    /// Bland's rule iterations; `allowed` filters entering columns.
    /// Returns false on unboundedness.
    fn optimize(&mut self, d: &mut [Rational], allowed: impl Fn(ColKind) -> bool) -> bool {
        loop {
            let Some(col) = (0..self.ncols).find(|&j| allowed(self.kind[j]) && d[j].is_positive()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                let a = &row[col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &row[self.ncols] / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((r, _)) = best else {
                return false;
            };
            self.pivot(r, col, d);
        }
    }

    fn run(mut self, lp: &LinearProgram) -> LpSolution {
        let n = lp.num_vars;
        let m = self.rows.len();

        if self.kind.contains(&ColKind::Artificial) {
            let cost1: Vec<Rational> = self
                .kind
                .iter()
                .map(|k| {
                    if *k == ColKind::Artificial {
                        -rational::one()
                    } else {
                        rational::zero()
                    }
                })
                .collect();
            let mut d = self.reduced(&cost1);
            self.optimize(&mut d, |_| true);
            if d[self.ncols].is_positive() {
                // objective -(sum of artificials) stayed below zero
                return LpSolution {
                    status: LpStatus::Infeasible,
                    value: rational::zero(),
                    primal: Vec::new(),
                    duals: Vec::new(),
                    pivots: self.pivots,
                };
            }
            // drive zero-level artificials out of the basis where possible
            for r in 0..m {
                if self.kind[self.basis[r]] != ColKind::Artificial {
                    continue;
                }
                if let Some(col) =
                    (0..self.ncols).find(|&j| self.kind[j] != ColKind::Artificial && !self.rows[r][j].is_zero())
                {
                    self.pivot(r, col, &mut d);
                }
            }
        }

        let mut cost = vec![rational::zero(); self.ncols];
        for (j, c) in &lp.objective {
            cost[*j] = c.clone();
        }
        let mut d = self.reduced(&cost);
        if !self.optimize(&mut d, |k| k != ColKind::Artificial) {
            return LpSolution {
                status: LpStatus::Unbounded,
                value: rational::zero(),
                primal: Vec::new(),
                duals: Vec::new(),
                pivots: self.pivots,
            };
        }

        let mut primal = vec![rational::zero(); n];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if b < n {
                primal[b] = row[self.ncols].clone();
            }
        }
        let duals = (0..m)
            .map(|i| {
                let y = -&d[self.unit_col[i]];
                if self.flipped[i] {
                    -y
                } else {
                    y
                }
            })
            .collect();
        LpSolution {
            status: LpStatus::Optimal,
            value: -&d[self.ncols],
            primal,
            duals,
            pivots: self.pivots,
        }
    }
}

trait OneIsh {
    fn is_one_ish(&self) -> bool;
}

impl OneIsh for Rational {
    fn is_one_ish(&self) -> bool {
        self.numer() == self.denom()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn t(v: &[(usize, i64)]) -> Vec<(usize, Rational)> {
        v.iter().map(|&(j, c)| (j, int(c))).collect()
    }

    fn solve_checked(lp: &LinearProgram) -> LpSolution {
        let s = lp.solve();
        s.certify(lp).unwrap();
        s
    }

    #[test]
    fn textbook_max() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> 36 at (2, 6)
        let mut lp = LinearProgram::new(2);
        lp.set_objective(t(&[(0, 3), (1, 5)]));
        lp.add_constraint(t(&[(0, 1)]), Relation::Le, int(4));
        lp.add_constraint(t(&[(1, 2)]), Relation::Le, int(12));
        lp.add_constraint(t(&[(0, 3), (1, 2)]), Relation::Le, int(18));
        let s = solve_checked(&lp);
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.value, int(36));
        assert_eq!(s.primal, vec![int(2), int(6)]);
        assert_eq!(s.duals, vec![int(0), ratio(3, 2), int(1)]);
    }

    #[test]
    fn equality_and_ge_rows() {
        // max x + y, x + y = 3/2, x >= 1, y <= 1
        let mut lp = LinearProgram::new(2);
        lp.set_objective(t(&[(0, 1), (1, 1)]));
        lp.add_constraint(t(&[(0, 1), (1, 1)]), Relation::Eq, ratio(3, 2));
        lp.add_constraint(t(&[(0, 1)]), Relation::Ge, int(1));
        lp.add_constraint(t(&[(1, 1)]), Relation::Le, int(1));
        let s = solve_checked(&lp);
        assert_eq!(s.value, ratio(3, 2));
        // min version through negation
        let mut lp2 = lp.clone();
        lp2.set_objective(t(&[(0, -1)]));
        let s2 = solve_checked(&lp2);
        assert_eq!(s2.value, int(-1));
    }

    #[test]
    fn negative_rhs_rows() {
        // -x <= -2 means x >= 2; max -x -> -2
        let mut lp = LinearProgram::new(1);
        lp.set_objective(t(&[(0, -1)]));
        lp.add_constraint(t(&[(0, -1)]), Relation::Le, int(-2));
        let s = solve_checked(&lp);
        assert_eq!(s.value, int(-2));
        assert_eq!(s.duals, vec![int(1)]);
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(1);
        lp.add_constraint(t(&[(0, 1)]), Relation::Le, int(1));
        lp.add_constraint(t(&[(0, 1)]), Relation::Ge, int(2));
        assert_eq!(lp.solve().status, LpStatus::Infeasible);

        let mut lp = LinearProgram::new(2);
        lp.set_objective(t(&[(0, 1)]));
        lp.add_constraint(t(&[(0, 1), (1, -1)]), Relation::Le, int(1));
        assert_eq!(lp.solve().status, LpStatus::Unbounded);
    }

    #[test]
    fn empty_system_zero_objective() {
        let lp = LinearProgram::new(3);
        let s = solve_checked(&lp);
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.value, int(0));
        assert_eq!(s.primal, vec![int(0); 3]);
    }

    #[test]
    fn redundant_equalities() {
        // x + y = 1 twice; artificial stays basic at zero in a dependent row
        let mut lp = LinearProgram::new(2);
        lp.set_objective(t(&[(0, 2), (1, 1)]));
        lp.add_constraint(t(&[(0, 1), (1, 1)]), Relation::Eq, int(1));
        lp.add_constraint(t(&[(0, 2), (1, 2)]), Relation::Eq, int(2));
        let s = solve_checked(&lp);
        assert_eq!(s.value, int(2));
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's example cycles under the textbook rule; Bland terminates.
        let mut lp = LinearProgram::new(4);
        lp.set_objective(vec![(0, ratio(3, 4)), (1, int(-150)), (2, ratio(1, 50)), (3, int(-6))]);
        lp.add_constraint(
            vec![(0, ratio(1, 4)), (1, int(-60)), (2, ratio(-1, 25)), (3, int(9))],
            Relation::Le,
            int(0),
        );
        lp.add_constraint(
            vec![(0, ratio(1, 2)), (1, int(-90)), (2, ratio(-1, 50)), (3, int(3))],
            Relation::Le,
            int(0),
        );
        lp.add_constraint(t(&[(2, 1)]), Relation::Le, int(1));
        let s = solve_checked(&lp);
        assert_eq!(s.value, ratio(1, 20));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            /// Random bounded LPs: strong duality certificate always checks, and
            /// the optimum dominates every feasible grid point.
            #[test]
            fn strong_duality_on_random_boxes(
                a in proptest::collection::vec(-3i64..=4, 9),
                b in proptest::collection::vec(0i64..=6, 3),
                c in proptest::collection::vec(-2i64..=3, 3),
            ) {
                let mut lp = LinearProgram::new(3);
                lp.set_objective((0..3).map(|j| (j, int(c[j]))).collect());
                for i in 0..3 {
                    lp.add_constraint((0..3).map(|j| (j, int(a[3 * i + j]))).collect(), Relation::Le, int(b[i]));
                }
                for j in 0..3 {
                    lp.add_constraint(vec![(j, int(1))], Relation::Le, int(2));
                }
                let s = lp.solve();
                prop_assert_eq!(s.status, LpStatus::Optimal);
                s.certify(&lp).map_err(TestCaseError::fail)?;
                for x0 in 0..=2 { for x1 in 0..=2 { for x2 in 0..=2 {
                    let x = [x0, x1, x2];
                    let feas = (0..3).all(|i| (0..3).map(|j| a[3*i+j] * x[j]).sum::<i64>() <= b[i]);
                    if feas {
                        let v: i64 = (0..3).map(|j| c[j] * x[j]).sum();
                        prop_assert!(int(v) <= s.value);
                    }
                }}}
            }
        }
    }
}
