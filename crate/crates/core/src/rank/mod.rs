//! Disjunctive and N-ranks of graphs and of single inequalities.

mod suites;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::{
    bits, full_mask, is_perfect, verify_obstruction, witness_within, Graph, Mask, NodeSet, Obstruction,
};
use crate::liftproject::{
    disjunctive_valid, n_operator_valid, relaxation_equals_facets_under, LiftCertificate, LiftConfig,
};
use crate::polyhedra::{
    convex_hull_facets, is_valid, qstab, stab_bounded, HPolytope, LinearInequality, VPolytope, DEFAULT_HULL_BOUND,
};
use crate::rational::serde_qvec;
use crate::rational::Rational;

pub use suites::*;

#[derive(Debug, Clone)]
pub struct EngineConfig {
    pub lift: LiftConfig,
    pub hull_bound: usize,
    /// Keep a violating point for every `F` one size below the rank.
    pub exhaustive_lower_bound: bool,
    pub budget: Budget,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            lift: LiftConfig::default(),
            hull_bound: DEFAULT_HULL_BOUND,
            exhaustive_lower_bound: true,
            budget: Budget::unlimited(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRankResult {
    pub rank: usize,
    pub deletion_set: NodeSet,
    /// `g - deletion_set` has no odd hole and no odd antihole.
    pub residual_perfect: bool,
    /// Obstructions found during the search. No set of `rank - 1` nodes meets
    /// all of them (together with their rotations when `rotation_closed`).
    pub lower_bound_witnesses: Vec<Obstruction>,
    pub rotation_closed: bool,
}

fn rotate(mask: Mask, n: usize, by: usize) -> Mask {
    if by == 0 {
        return mask;
    }
    let all = full_mask(n);
    ((mask << by) | (mask >> (n - by))) & all
}

/// Smallest set meeting every mask in `pool`, searched by iterative deepening
/// from `from` upwards. Sibling branches exclude earlier choices.
fn min_hitting_set(pool: &[Mask], from: usize, limit: usize, budget: &Budget) -> Result<Option<Mask>> {
    fn go(pool: &[Mask], chosen: Mask, forbidden: Mask, left: usize, budget: &Budget) -> Result<Option<Mask>> {
        let Some(&open) = pool
            .iter()
            .filter(|&&m| m & chosen == 0)
            .min_by_key(|&&m| (m & !forbidden).count_ones())
        else {
            return Ok(Some(chosen));
        };
        if left == 0 {
            return Ok(None);
        }
        budget.check()?;
        let mut forbidden = forbidden;
        for v in bits(open & !forbidden) {
            if let Some(h) = go(pool, chosen | 1 << v, forbidden, left - 1, budget)? {
                return Ok(Some(h));
            }
            forbidden |= 1 << v;
        }
        Ok(None)
    }
    for size in from..=limit {
        if let Some(h) = go(pool, 0, 0, size, budget)? {
            return Ok(Some(h));
        }
    }
    Ok(None)
}

/// Minimum number of nodes whose deletion leaves a perfect graph, by an
/// implicit hitting set over discovered odd holes and antiholes. For
/// circulant graphs every discovered obstruction is added with all its
/// rotations.
pub fn disjunctive_rank_graph(g: &Graph, cfg: &EngineConfig) -> Result<GraphRankResult> {
    let n = g.n();
    let cyclic = g.cyclic_order().is_some();
    let mut pool: Vec<Mask> = Vec::new();
    let mut found: Vec<Obstruction> = Vec::new();
    let mut lower = 0;
    loop {
        cfg.budget.check().map_err(|_| Error::Incomplete {
            what: "graph rank search",
            lower,
            upper: None,
        })?;
        let h = min_hitting_set(&pool, lower, n, &cfg.budget)
            .map_err(|_| Error::Incomplete {
                what: "graph rank search",
                lower,
                upper: None,
            })?
            .ok_or_else(|| Error::Inconsistent("no hitting set within the node set".into()))?;
        lower = h.count_ones() as usize;
        let witness = witness_within(g, g.all_mask() & !h, &cfg.budget).map_err(|_| Error::Incomplete {
            what: "graph rank search",
            lower,
            upper: None,
        })?;
        let Some((kind, m)) = witness else {
            let deletion_set = g.set_of(h);
            let residual_perfect = is_perfect(&g.delete_nodes(&deletion_set)?);
            return Ok(GraphRankResult {
                rank: lower,
                deletion_set,
                residual_perfect,
                lower_bound_witnesses: found,
                rotation_closed: cyclic,
            });
        };
        found.push(Obstruction {
            kind,
            nodes: g.set_of(m),
        });
        if cyclic {
            for by in 0..n {
                let r = rotate(m, n, by);
                if !pool.contains(&r) {
                    pool.push(r);
                }
            }
        } else {
            pool.push(m);
        }
    }
}

/// Independent re-check of a graph rank result: the deletion set leaves a
/// perfect graph, every witness is a genuine obstruction, and no subset of
/// `rank - 1` nodes meets all witnesses (checked by brute force).
pub fn recheck_graph_rank(g: &Graph, r: &GraphRankResult) -> Result<bool> {
    if r.deletion_set.len() != r.rank || !is_perfect(&g.delete_nodes(&r.deletion_set)?) {
        return Ok(false);
    }
    if !r.lower_bound_witnesses.iter().all(|o| verify_obstruction(g, o)) {
        return Ok(false);
    }
    if r.rank == 0 {
        return Ok(true);
    }
    let n = g.n();
    let mut pool = Vec::new();
    for o in &r.lower_bound_witnesses {
        let m = g.mask_of(&o.nodes)?;
        if r.rotation_closed {
            pool.extend((0..n).map(|by| rotate(m, n, by)));
        } else {
            pool.push(m);
        }
    }
    let mut hit = false;
    for_each_subset(n, r.rank - 1, &mut |s| {
        if pool.iter().all(|&m| m & s != 0) {
            hit = true;
        }
    });
    Ok(!hit)
}

fn for_each_subset(n: usize, size: usize, f: &mut impl FnMut(Mask)) {
    fn go(start: usize, n: usize, left: usize, cur: Mask, f: &mut impl FnMut(Mask)) {
        if left == 0 {
            f(cur);
            return;
        }
        for v in start..n {
            if n - v < left {
                break;
            }
            go(v + 1, n, left - 1, cur | 1 << v, f);
        }
    }
    go(0, n, size, 0, f);
}

/// All `size`-subsets of `1..=n` as node sets, in lexicographic order; with
/// `anchor`, only those containing node 1.
pub fn subsets(n: usize, size: usize, anchor: bool) -> Vec<NodeSet> {
    let mut out = Vec::new();
    if anchor && size > 0 {
        for_each_subset(n - 1, size - 1, &mut |m| {
            let mut v = vec![1];
            v.extend(bits(m).map(|i| i + 2));
            out.push(NodeSet::new(v));
        });
    } else {
        for_each_subset(n, size, &mut |m| {
            out.push(NodeSet::new(bits(m).map(|i| i + 1).collect()))
        });
    }
    out
}

/// Smallest `|F|` with `P_F(qstab(g)) = stab(g)`, by exhaustive search over
/// `F` against every facet of the hull of stable sets.
pub fn disjunctive_rank_graph_polyhedral(g: &Graph, cfg: &EngineConfig) -> Result<(usize, NodeSet)> {
    let n = g.n();
    if n > cfg.hull_bound {
        return Err(Error::BoundExceeded {
            what: "hull dimension",
            actual: n,
            limit: cfg.hull_bound,
        });
    }
    let g1 = g.relabeled();
    let facets = convex_hull_facets(&stab_bounded(&g1, cfg.hull_bound)?, cfg.hull_bound, &cfg.budget)?;
    let h = qstab(&g1);
    for size in 0..=n {
        cfg.budget.check()?;
        let found = subsets(n, size, false)
            .into_par_iter()
            .map(|f| relaxation_equals_facets_under(&h, &facets, &f, &cfg.lift).map(|(ok, _)| (ok, f)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .find(|(ok, _)| *ok);
        if let Some((_, f)) = found {
            let labels = f.iter().map(|i| g.labels()[i - 1]).collect();
            return Ok((size, NodeSet::new(labels)));
        }
    }
    Err(Error::Inconsistent("P_V(qstab) differs from stab".into()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub f: NodeSet,
    #[serde(with = "serde_qvec")]
    pub point: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeSummary {
    pub size: usize,
    pub probed: usize,
    pub valid: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IneqRankResult {
    pub rank: usize,
    pub witness_f: NodeSet,
    pub certificate: LiftCertificate,
    /// Violating points for the probed sets one size below the rank.
    pub violating_points: Vec<Violation>,
    pub probes: Vec<ProbeSummary>,
    pub cyclic_symmetry: bool,
}

/// Smallest `|F|` for which `ineq` is valid on `P_F(h)`. With
/// `cyclic_symmetry`, `h` and `ineq` must be invariant under `i -> i+1` and
/// only sets containing node 1 are probed. When `integer_hull` is given the
/// row is first checked against it.
pub fn disjunctive_rank_inequality(
    ineq: &LinearInequality,
    h: &HPolytope,
    cyclic_symmetry: bool,
    integer_hull: Option<&VPolytope>,
    cfg: &EngineConfig,
) -> Result<IneqRankResult> {
    let n = h.dim;
    if let Some(v) = integer_hull {
        if let Some(p) = v.points.iter().find(|p| !ineq.satisfied_by(p)) {
            return Err(Error::NotValid {
                reached: format!("integer point reaches {}", crate::rational::format(&ineq.lhs(p))),
            });
        }
    }
    if cyclic_symmetry && ineq.coeffs.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::Hypothesis(
            "cyclic symmetry declared for a non-invariant row".into(),
        ));
    }
    let mut probes = Vec::new();
    let mut previous: Vec<Violation> = Vec::new();
    let limit = n.min(cfg.lift.piece_cap);
    for size in 0..=limit {
        cfg.budget.check().map_err(|_| Error::Incomplete {
            what: "inequality rank search",
            lower: size,
            upper: None,
        })?;
        let fs = subsets(n, size, cyclic_symmetry);
        let verdicts = fs
            .par_iter()
            .map(|f| disjunctive_valid(ineq, h, f, &cfg.lift))
            .collect::<Result<Vec<_>>>()?;
        let valid = verdicts.iter().filter(|v| v.holds).count();
        probes.push(ProbeSummary {
            size,
            probed: fs.len(),
            valid,
        });
        if let Some(i) = verdicts.iter().position(|v| v.holds) {
            return Ok(IneqRankResult {
                rank: size,
                witness_f: fs[i].clone(),
                certificate: verdicts[i].certificate.clone(),
                violating_points: previous,
                probes,
                cyclic_symmetry,
            });
        }
        previous = if cfg.exhaustive_lower_bound {
            fs.into_iter()
                .zip(verdicts)
                .map(|(f, v)| Violation {
                    f,
                    point: v.certificate.point.unwrap_or_default(),
                })
                .collect()
        } else {
            Vec::new()
        };
    }
    Err(Error::Incomplete {
        what: "inequality rank search",
        lower: limit + 1,
        upper: None,
    })
}

/// Every `F` of the given size leaves a point of `P_F(h)` violating `ineq`;
/// returns the violations, or the first `F` that validates the row.
pub fn violations_at_size(
    ineq: &LinearInequality,
    h: &HPolytope,
    size: usize,
    cfg: &EngineConfig,
) -> Result<std::result::Result<Vec<Violation>, NodeSet>> {
    let fs = subsets(h.dim, size, false);
    let verdicts = fs
        .par_iter()
        .map(|f| disjunctive_valid(ineq, h, f, &cfg.lift))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for (f, v) in fs.into_iter().zip(verdicts) {
        if v.holds {
            return Ok(Err(f));
        }
        out.push(Violation {
            f,
            point: v.certificate.point.unwrap_or_default(),
        });
    }
    Ok(Ok(out))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NRankResult {
    /// Smallest depth at which the row is valid, if within `rmax`.
    pub rank: Option<usize>,
    /// One certificate per probed depth `>= 1`.
    pub certificates: Vec<LiftCertificate>,
}

/// Smallest `r <= rmax` with `ineq` valid for `N^r(h)`; `0` when the row is
/// already valid for `h`.
pub fn n_rank_inequality_upto(
    ineq: &LinearInequality,
    h: &HPolytope,
    rmax: usize,
    cfg: &EngineConfig,
) -> Result<NRankResult> {
    if rmax > cfg.lift.depth_cap {
        return Err(Error::BoundExceeded {
            what: "N-operator depth",
            actual: rmax,
            limit: cfg.lift.depth_cap,
        });
    }
    let mut certificates = Vec::new();
    if is_valid(ineq, h)?.0 {
        return Ok(NRankResult {
            rank: Some(0),
            certificates,
        });
    }
    for r in 1..=rmax {
        cfg.budget.check()?;
        let v = n_operator_valid(ineq, h, r, &cfg.lift)?;
        let holds = v.holds;
        certificates.push(v.certificate);
        if holds {
            return Ok(NRankResult {
                rank: Some(r),
                certificates,
            });
        }
    }
    Ok(NRankResult {
        rank: None,
        certificates,
    })
}

/// Closed form for `r_d(W(n,k))`: `n - 2(k+1)` up to `n = 3k+2`, then `k`;
/// for `k = 1`, 0 on even and 1 on odd cycles.
pub fn web_rank_formula(n: usize, k: usize) -> usize {
    if k == 1 {
        return n % 2;
    }
    (n - 2 * (k + 1)).min(k)
}
