//! Named inequality families: rank, clique, 1-interval (for `W(n,2)`),
//! antiweb and joined inequalities.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{alpha, alpha_induced, antiweb, Family, Graph, JoinPart, NodeSet, WebId};
use crate::polyhedra::{qstab, LinearInequality, RowLabel};
use crate::rational::{self, Rational};

fn set_row(g: &Graph, set: &NodeSet, rhs: Rational, label: RowLabel) -> Result<LinearInequality> {
    let coords = set.iter().map(|v| g.index_of(v)).collect::<Result<Vec<_>>>()?;
    Ok(LinearInequality::set_sum(g.n(), coords, rhs, label))
}

/// `x(V) <= α(g)`.
pub fn rank_constraint(g: &Graph) -> LinearInequality {
    LinearInequality::set_sum(g.n(), 0..g.n(), rational::int(alpha(g) as i64), RowLabel::Rank)
}

/// Partition of `1..=n` into circular blocks `I_1, J_1, ..., I_t, J_t` with
/// `|J_j| = 1`, `|I_j| = 3 k_j + 1` and `t >= 3` odd.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OneIntervalSet {
    pub n: usize,
    pub intervals: Vec<NodeSet>,
    pub singletons: Vec<usize>,
    pub k: Vec<usize>,
}

impl OneIntervalSet {
    pub fn t(&self) -> usize {
        self.intervals.len()
    }

    /// `T = I_1 ∪ ... ∪ I_t`.
    pub fn support(&self) -> NodeSet {
        NodeSet::new(self.intervals.iter().flat_map(|i| i.iter()).collect())
    }

    /// `α(T) = Σ k_j + (t - 1) / 2`.
    pub fn alpha_formula(&self) -> usize {
        self.k.iter().sum::<usize>() + (self.t() - 1) / 2
    }

    /// Blocks are consecutive, in order, cover `1..=n` once, and have the
    /// required sizes.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Hypothesis(format!("1-interval set: {m}")));
        let t = self.t();
        if t < 3 || t.is_multiple_of(2) || self.singletons.len() != t || self.k.len() != t {
            return bad("need t >= 3 odd with matching singletons");
        }
        let mut circular = Vec::new();
        for j in 0..t {
            if self.intervals[j].len() != 3 * self.k[j] + 1 {
                return bad("|I_j| must be 3k_j + 1");
            }
            circular.extend(circular_interval(&self.intervals[j], self.n));
            circular.push(self.singletons[j]);
        }
        if circular.len() != self.n {
            return bad("blocks must cover every node once");
        }
        let start = circular[0];
        let expected: Vec<usize> = (0..self.n).map(|d| (start - 1 + d) % self.n + 1).collect();
        if circular != expected {
            return bad("blocks must be circularly consecutive");
        }
        Ok(())
    }
}

/// Nodes of a circular interval in walking order.
fn circular_interval(i: &NodeSet, n: usize) -> Vec<usize> {
    let v = i.as_slice();
    // a wrapping interval has a gap inside its sorted order
    match v.windows(2).position(|w| w[1] != w[0] + 1) {
        Some(p) if v[0] == 1 && *v.last().unwrap() == n => {
            let mut out = v[p + 1..].to_vec();
            out.extend_from_slice(&v[..=p]);
            out
        }
        _ => v.to_vec(),
    }
}

/// All ordered compositions `(k_1..k_t)` with `3 Σ k_j + 2t = n`.
fn compositions(total: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if parts == 1 {
        cur.push(total);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    for first in 0..=total {
        cur.push(first);
        compositions(total - first, parts - 1, cur, out);
        cur.pop();
    }
}

/// Every 1-interval configuration on `W(n,2)`, all rotations included.
/// With `dedup_by_support`, configurations sharing the same `T` are
/// collapsed to the first one found.
pub fn enumerate_one_interval_sets(n: usize, dedup_by_support: bool) -> Vec<OneIntervalSet> {
    let mut found = BTreeSet::new();
    let mut t = 3;
    while 2 * t <= n {
        if (n - 2 * t).is_multiple_of(3) {
            let mut comps = Vec::new();
            compositions((n - 2 * t) / 3, t, &mut Vec::new(), &mut comps);
            for k in comps {
                for start in 1..=n {
                    let mut pos = start - 1;
                    let mut intervals = Vec::new();
                    let mut singletons = Vec::new();
                    for &kj in &k {
                        let len = 3 * kj + 1;
                        intervals.push(NodeSet::new((0..len).map(|d| (pos + d) % n + 1).collect()));
                        pos += len;
                        singletons.push(pos % n + 1);
                        pos += 1;
                    }
                    found.insert(OneIntervalSet {
                        n,
                        intervals,
                        singletons,
                        k: k.clone(),
                    });
                }
            }
        }
        t += 2;
    }
    // the same partition arises from each of its t starting blocks
    let mut seen_blocks = BTreeSet::new();
    let mut seen_support = BTreeSet::new();
    let mut out = Vec::new();
    for s in found {
        let mut blocks: Vec<NodeSet> = s.intervals.clone();
        blocks.sort();
        if !seen_blocks.insert(blocks) {
            continue;
        }
        if dedup_by_support && !seen_support.insert(s.support()) {
            continue;
        }
        out.push(s);
    }
    out
}

/// `x(T) <= α(T)` on `W(n,2)`. The right-hand side from the closed formula
/// must agree with the enumerated stability number of `T`.
pub fn one_interval_inequality(w: WebId, s: &OneIntervalSet) -> Result<LinearInequality> {
    if w.k != 2 {
        return Err(Error::Hypothesis(format!(
            "1-interval inequalities need k = 2, got {w}"
        )));
    }
    if s.n != w.n {
        return Err(Error::Dimension {
            expected: w.n,
            actual: s.n,
        });
    }
    s.validate()?;
    let g = crate::graph::web(w.n, 2)?;
    let t = s.support();
    let formula = s.alpha_formula();
    let counted = alpha_induced(&g, &t)?;
    if formula != counted {
        return Err(Error::Inconsistent(format!(
            "alpha({t}) is {counted} but the closed form gives {formula}"
        )));
    }
    set_row(&g, &t, rational::int(formula as i64), RowLabel::OneInterval)
}

/// Nonnegativity, clique rows, the rank row when `3 ∤ n`, and every
/// 1-interval row (one per distinct `T`).
pub fn stab_description_w2(n: usize) -> Result<Vec<LinearInequality>> {
    let w = WebId::new(n, 2)?;
    let g = crate::graph::web(n, 2)?;
    let mut rows = qstab(&g).rows;
    if !n.is_multiple_of(3) {
        rows.push(rank_constraint(&g));
    }
    for s in enumerate_one_interval_sets(n, true) {
        rows.push(one_interval_inequality(w, &s)?);
    }
    Ok(rows)
}

/// `x(V(A)) <= k` together with whether `A(n,k)` is prime.
pub fn antiweb_constraint(n: usize, k: usize) -> Result<(LinearInequality, bool)> {
    let a = antiweb(n, k)?;
    let row = LinearInequality::set_sum(n, 0..a.n(), rational::int(k as i64), RowLabel::Antiweb);
    Ok((row, n.gcd(&k) == 1))
}

/// Blocks of a complete join inside a host graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JoinBlocks {
    pub blocks: Vec<JoinPart>,
}

impl JoinBlocks {
    pub fn from_host(g: &Graph) -> Result<Self> {
        match g.family() {
            Family::Join { blocks } => Ok(JoinBlocks { blocks: blocks.clone() }),
            _ => Ok(JoinBlocks {
                blocks: vec![JoinPart {
                    family: Box::new(g.family().clone()),
                    nodes: NodeSet::new(g.labels().to_vec()),
                }],
            }),
        }
    }

    /// Blocks are disjoint and every cross-block pair is adjacent.
    pub fn verify(&self, host: &Graph) -> Result<()> {
        for (i, a) in self.blocks.iter().enumerate() {
            host.mask_of(&a.nodes)?;
            for b in &self.blocks[i + 1..] {
                if !a.nodes.is_disjoint(&b.nodes) {
                    return Err(Error::Hypothesis(format!(
                        "join blocks {} and {} overlap",
                        a.nodes, b.nodes
                    )));
                }
                for u in a.nodes.iter() {
                    for v in b.nodes.iter() {
                        if !host.has_edge(u, v) {
                            return Err(Error::Hypothesis(format!(
                                "join blocks not complete: {u} and {v} non-adjacent"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// `Σ_i x(V(A_i)) / α(A_i) <= 1` over the blocks of a complete join.
pub fn joined_inequality(host: &Graph, blocks: &JoinBlocks) -> Result<LinearInequality> {
    blocks.verify(host)?;
    let mut coeffs = vec![rational::zero(); host.n()];
    for b in &blocks.blocks {
        let a = alpha_induced(host, &b.nodes)?;
        let c = Rational::new(1.into(), (a as i64).into());
        for v in b.nodes.iter() {
            coeffs[host.index_of(v)?] = c.clone();
        }
    }
    Ok(LinearInequality::new(coeffs, rational::one(), RowLabel::Joined))
}

/// Row `x(block) <= rhs` restricted to one block of a host.
pub fn block_row(host: &Graph, block: &NodeSet, rhs: usize, label: RowLabel) -> Result<LinearInequality> {
    set_row(host, block, rational::int(rhs as i64), label)
}
