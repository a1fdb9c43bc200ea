//! H- and V-representations of stable set relaxations and the exact LP
//! machinery that answers optimization, validity and facet questions on them.

mod hull;
pub mod lp;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bits, enumerate_maximal_cliques, Graph, NodeSet};
use crate::rational::{self, serde_q, serde_qvec, Rational};

pub use hull::{convex_hull_facets, is_facet, rank_of, DEFAULT_HULL_BOUND};
use lp::{LinearProgram, LpSolution, LpStatus, Relation};

/// Where an inequality came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowLabel {
    Clique,
    Edge,
    Rank,
    OneInterval,
    Antiweb,
    Joined,
    Nonneg,
    Facet,
    Other,
}

/// `coeffs · x <= rhs` over coordinates `0..coeffs.len()`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinearInequality {
    #[serde(with = "serde_qvec")]
    pub coeffs: Vec<Rational>,
    #[serde(with = "serde_q")]
    pub rhs: Rational,
    pub label: RowLabel,
}

impl LinearInequality {
    pub fn new(coeffs: Vec<Rational>, rhs: Rational, label: RowLabel) -> Self {
        LinearInequality { coeffs, rhs, label }
    }

    /// `x(S) <= rhs` for a set of coordinates.
    pub fn set_sum(dim: usize, coords: impl IntoIterator<Item = usize>, rhs: Rational, label: RowLabel) -> Self {
        let mut coeffs = vec![rational::zero(); dim];
        for j in coords {
            coeffs[j] = rational::one();
        }
        LinearInequality { coeffs, rhs, label }
    }

    pub fn nonneg(dim: usize, j: usize) -> Self {
        let mut coeffs = vec![rational::zero(); dim];
        coeffs[j] = -rational::one();
        LinearInequality {
            coeffs,
            rhs: rational::zero(),
            label: RowLabel::Nonneg,
        }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    /// Single `-x_j <= 0` row.
    pub fn nonneg_coord(&self) -> Option<usize> {
        if !self.rhs.is_zero() {
            return None;
        }
        let mut nz = self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero());
        match (nz.next(), nz.next()) {
            (Some((j, c)), None) if c.is_negative() => Some(j),
            _ => None,
        }
    }

    pub fn lhs(&self, x: &[Rational]) -> Rational {
        rational::dot(&self.coeffs, x)
    }

    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        self.lhs(x) <= self.rhs
    }

    /// Scaled to coprime integers (direction preserved).
    pub fn canonical(&self) -> (Vec<num_bigint::BigInt>, num_bigint::BigInt) {
        let mut all = self.coeffs.clone();
        all.push(self.rhs.clone());
        let mut ints = rational::clear_denominators(&all);
        let rhs = ints.pop().unwrap();
        (ints, rhs)
    }

    pub fn same_row(&self, other: &LinearInequality) -> bool {
        self.canonical() == other.canonical()
    }

    pub fn support(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, _)| j)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HPolytope {
    pub dim: usize,
    pub rows: Vec<LinearInequality>,
}

impl HPolytope {
    /// Adds any missing `x_j >= 0` rows so the polyhedron lives in the orthant.
    pub fn new(dim: usize, rows: Vec<LinearInequality>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.dim() != dim) {
            return Err(Error::Dimension {
                expected: dim,
                actual: r.dim(),
            });
        }
        let mut have = vec![false; dim];
        for r in &rows {
            if let Some(j) = r.nonneg_coord() {
                have[j] = true;
            }
        }
        let mut rows = rows;
        for (j, ok) in have.into_iter().enumerate() {
            if !ok {
                rows.push(LinearInequality::nonneg(dim, j));
            }
        }
        Ok(HPolytope { dim, rows })
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        x.len() == self.dim && self.rows.iter().all(|r| r.satisfied_by(x))
    }

    /// Rows other than plain nonnegativity.
    pub fn constraint_rows(&self) -> impl Iterator<Item = &LinearInequality> {
        self.rows.iter().filter(|r| r.nonneg_coord().is_none())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VPolytope {
    pub dim: usize,
    #[serde(with = "points_serde")]
    pub points: Vec<Vec<Rational>>,
}

mod points_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(p: &[Vec<Rational>], s: S) -> std::result::Result<S::Ok, S::Error> {
        p.iter()
            .map(|v| v.iter().map(rational::format).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Vec<Rational>>, D::Error> {
        let raw = Vec::<Vec<String>>::deserialize(d)?;
        raw.iter()
            .map(|v| {
                v.iter()
                    .map(|q| rational::parse(q).map_err(serde::de::Error::custom))
                    .collect()
            })
            .collect()
    }
}

impl VPolytope {
    pub fn max(&self, objective: &[Rational]) -> Option<Rational> {
        self.points.iter().map(|p| rational::dot(objective, p)).max()
    }
}

/// Clique relaxation: nonnegativity plus one row per maximal clique.
pub fn qstab(g: &Graph) -> HPolytope {
    let n = g.n();
    let mut rows: Vec<LinearInequality> = (0..n).map(|j| LinearInequality::nonneg(n, j)).collect();
    for q in enumerate_maximal_cliques(g) {
        let coords = bits(g.mask_of(&q).expect("clique of g"));
        rows.push(LinearInequality::set_sum(n, coords, rational::one(), RowLabel::Clique));
    }
    HPolytope { dim: n, rows }
}

/// Edge relaxation: nonnegativity plus `x_i + x_j <= 1` per edge.
pub fn frac(g: &Graph) -> HPolytope {
    let n = g.n();
    let mut rows: Vec<LinearInequality> = (0..n).map(|j| LinearInequality::nonneg(n, j)).collect();
    for i in 0..n {
        for j in bits(g.adj_mask(i) >> i >> 1) {
            rows.push(LinearInequality::set_sum(
                n,
                [i, i + 1 + j],
                rational::one(),
                RowLabel::Edge,
            ));
        }
    }
    HPolytope { dim: n, rows }
}

pub const DEFAULT_STAB_BOUND: usize = 30;

/// Incidence vectors of every stable set of `g`.
pub fn stab(g: &Graph) -> Result<VPolytope> {
    stab_bounded(g, DEFAULT_STAB_BOUND)
}

pub fn stab_bounded(g: &Graph, bound: usize) -> Result<VPolytope> {
    if g.n() > bound {
        return Err(Error::BoundExceeded {
            what: "stable set enumeration",
            actual: g.n(),
            limit: bound,
        });
    }
    let n = g.n();
    let points = crate::graph::stable_set_masks(g)
        .into_iter()
        .map(|m| {
            (0..n)
                .map(|j| {
                    if m >> j & 1 == 1 {
                        rational::one()
                    } else {
                        rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    Ok(VPolytope { dim: n, points })
}

pub fn incidence_vector(g: &Graph, set: &NodeSet) -> Result<Vec<Rational>> {
    let m = g.mask_of(set)?;
    Ok((0..g.n())
        .map(|j| {
            if m >> j & 1 == 1 {
                rational::one()
            } else {
                rational::zero()
            }
        })
        .collect())
}

/// Result of maximizing over an H-polytope, possibly with some coordinates
/// fixed to 0/1.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LpResult {
    pub status: LpStatus,
    #[serde(with = "serde_q")]
    pub value: Rational,
    /// Optimal point in the full coordinate space (empty unless optimal).
    #[serde(with = "serde_qvec")]
    pub primal: Vec<Rational>,
    /// One multiplier per row of the polytope (empty unless optimal).
    #[serde(with = "serde_qvec")]
    pub duals: Vec<Rational>,
}

impl LpResult {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }

    /// Checks primal feasibility, `duals >= 0`, `A^T y >= c` on free
    /// coordinates, and `b·y + c_fixed = value` independently of the solver.
    pub fn certify(
        &self,
        h: &HPolytope,
        objective: &[Rational],
        fixed: &[Option<bool>],
    ) -> std::result::Result<(), String> {
        if !self.is_optimal() {
            return Ok(());
        }
        if !h.contains(&self.primal) {
            return Err("primal point outside the polytope".into());
        }
        for (j, f) in fixed.iter().enumerate() {
            if let Some(b) = f {
                let want = if *b { rational::one() } else { rational::zero() };
                if self.primal[j] != want {
                    return Err(format!("coordinate {j} not at its fixed value"));
                }
            }
        }
        if rational::dot(objective, &self.primal) != self.value {
            return Err("objective mismatch".into());
        }
        if self.duals.iter().any(|y| y.is_negative()) {
            return Err("negative dual".into());
        }
        let mut aty = vec![rational::zero(); h.dim];
        let mut bound = rational::zero();
        for (r, y) in h.rows.iter().zip(&self.duals) {
            if y.is_zero() {
                continue;
            }
            let mut rhs = r.rhs.clone();
            for (j, a) in r.coeffs.iter().enumerate() {
                match fixed.get(j).copied().flatten() {
                    Some(true) => rhs -= a,
                    Some(false) => {}
                    None => aty[j] += a * y,
                }
            }
            bound += rhs * y;
        }
        for j in 0..h.dim {
            match fixed.get(j).copied().flatten() {
                Some(true) => bound += &objective[j],
                Some(false) => {}
                None => {
                    if aty[j] < objective[j] {
                        return Err(format!("dual infeasible at coordinate {j}"));
                    }
                }
            }
        }
        if bound != self.value {
            return Err(format!(
                "dual bound {} differs from value {}",
                rational::format(&bound),
                rational::format(&self.value)
            ));
        }
        Ok(())
    }
}

pub fn lp_max(h: &HPolytope, objective: &[Rational]) -> Result<LpResult> {
    lp_max_fixed(h, objective, &vec![None; h.dim])
}

/// Maximize over `h ∩ {x_j = z_j for fixed j}`, substituting the fixed
/// coordinates out before solving.
pub fn lp_max_fixed(h: &HPolytope, objective: &[Rational], fixed: &[Option<bool>]) -> Result<LpResult> {
    if objective.len() != h.dim {
        return Err(Error::Dimension {
            expected: h.dim,
            actual: objective.len(),
        });
    }
    if fixed.len() != h.dim {
        return Err(Error::Dimension {
            expected: h.dim,
            actual: fixed.len(),
        });
    }
    let free: Vec<usize> = (0..h.dim).filter(|&j| fixed[j].is_none()).collect();
    let mut var_of = vec![usize::MAX; h.dim];
    for (v, &j) in free.iter().enumerate() {
        var_of[j] = v;
    }
    let mut base_value = rational::zero();
    for j in 0..h.dim {
        if fixed[j] == Some(true) {
            base_value += &objective[j];
        }
    }

    let mut lp = LinearProgram::new(free.len());
    lp.set_objective(free.iter().map(|&j| (var_of[j], objective[j].clone())).collect());
    // map LP row -> polytope row; nonnegativity rows are variable bounds
    let mut row_of = Vec::new();
    for (ri, r) in h.rows.iter().enumerate() {
        if r.nonneg_coord().is_some() {
            continue;
        }
        let mut rhs = r.rhs.clone();
        let mut terms = Vec::new();
        for (j, a) in r.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            match fixed[j] {
                Some(true) => rhs -= a,
                Some(false) => {}
                None => terms.push((var_of[j], a.clone())),
            }
        }
        if terms.is_empty() {
            if rhs.is_negative() {
                return Ok(infeasible());
            }
            continue;
        }
        lp.add_constraint(terms, Relation::Le, rhs);
        row_of.push(ri);
    }
    let sol = lp.solve();
    debug_assert!(sol.certify(&lp).is_ok(), "{:?}", sol.certify(&lp));
    lift_solution(h, objective, fixed, &free, &row_of, sol, base_value)
}

fn infeasible() -> LpResult {
    LpResult {
        status: LpStatus::Infeasible,
        value: rational::zero(),
        primal: Vec::new(),
        duals: Vec::new(),
    }
}

fn lift_solution(
    h: &HPolytope,
    objective: &[Rational],
    fixed: &[Option<bool>],
    free: &[usize],
    row_of: &[usize],
    sol: LpSolution,
    base_value: Rational,
) -> Result<LpResult> {
    match sol.status {
        LpStatus::Infeasible => return Ok(infeasible()),
        LpStatus::Unbounded => return Err(Error::Unbounded),
        LpStatus::Optimal => {}
    }
    let mut x: Vec<Rational> = fixed
        .iter()
        .map(|f| {
            if *f == Some(true) {
                rational::one()
            } else {
                rational::zero()
            }
        })
        .collect();
    for (v, &j) in free.iter().enumerate() {
        x[j] = sol.primal[v].clone();
    }
    let mut duals = vec![rational::zero(); h.rows.len()];
    for (li, &ri) in row_of.iter().enumerate() {
        duals[ri] = sol.duals[li].clone();
    }
    // nonnegativity multipliers absorb the slack of A^T y >= c
    let mut aty = vec![rational::zero(); h.dim];
    for (r, y) in h.rows.iter().zip(&duals) {
        if !y.is_zero() {
            for (j, a) in r.coeffs.iter().enumerate() {
                aty[j] += a * y;
            }
        }
    }
    for (ri, r) in h.rows.iter().enumerate() {
        if let Some(j) = r.nonneg_coord() {
            if fixed[j].is_none() && duals[ri].is_zero() {
                let gap = &aty[j] - &objective[j];
                if gap.is_positive() {
                    duals[ri] = gap / -&r.coeffs[j];
                    aty[j] = objective[j].clone();
                }
            }
        }
    }
    Ok(LpResult {
        status: LpStatus::Optimal,
        value: sol.value + base_value,
        primal: x,
        duals,
    })
}

/// Validity of `ineq` on `h`; the optimizer is returned as witness when invalid.
/// An empty `h` makes every inequality valid.
pub fn is_valid(ineq: &LinearInequality, h: &HPolytope) -> Result<(bool, Option<Vec<Rational>>)> {
    let r = lp_max(h, &ineq.coeffs)?;
    if !r.is_optimal() || r.value <= ineq.rhs {
        Ok((true, None))
    } else {
        Ok((false, Some(r.primal)))
    }
}

/// Is every row of `b` implied by system `a` (over the orthant)?
pub fn implies_all(a: &HPolytope, b: &[LinearInequality]) -> Result<Option<LinearInequality>> {
    for row in b {
        if !is_valid(row, a)?.0 {
            return Ok(Some(row.clone()));
        }
    }
    Ok(None)
}

/// Same feasible set by mutual LP implication.
pub fn same_feasible_set(a: &HPolytope, b: &HPolytope) -> Result<bool> {
    Ok(implies_all(a, &b.rows)?.is_none() && implies_all(b, &a.rows)?.is_none())
}

/// Drops rows implied by the remaining ones, scanning from the end.
pub fn remove_redundant(h: &HPolytope) -> Result<HPolytope> {
    let mut rows = h.rows.clone();
    let mut i = rows.len();
    while i > 0 {
        i -= 1;
        if rows[i].nonneg_coord().is_some() {
            continue;
        }
        let row = rows.remove(i);
        let rest = HPolytope::new(h.dim, rows.clone())?;
        if !is_valid(&row, &rest)?.0 {
            rows.insert(i, row);
        }
    }
    HPolytope::new(h.dim, rows)
}

#[cfg(test)]
pub(crate) fn ones(dim: usize) -> Vec<Rational> {
    vec![rational::one(); dim]
}
