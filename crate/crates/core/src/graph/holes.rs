use serde::{Deserialize, Serialize};

use super::{bits, Graph, Mask, NodeSet};
use crate::budget::Budget;
use crate::error::Result;

/// A minimally imperfect induced subgraph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Obstruction {
    pub kind: ObstructionKind,
    pub nodes: NodeSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObstructionKind {
    OddHole,
    OddAntihole,
}

/// Odd hole of length `>= min_len` inside `within`, as a node mask.
///
/// Grows chordless paths `p0 p1 ... pm` whose nodes all exceed `p0`; a node
/// adjacent to both `pm` and `p0` but to no interior node closes a hole.
pub(crate) fn odd_hole_mask(adj: &[Mask], within: Mask, min_len: usize, budget: &Budget) -> Result<Option<Mask>> {
    let min_len = min_len.max(5);
    let mut steps = 0u32;

    #[allow(clippy::too_many_arguments)]
    fn extend(
        adj: &[Mask],
        allowed: Mask,
        p0: usize,
        last: usize,
        len: usize,
        path: Mask,
        blocked: Mask,
        min_len: usize,
        steps: &mut u32,
        budget: &Budget,
    ) -> Result<Option<Mask>> {
        *steps += 1;
        if *steps & 0xfff == 0 {
            budget.check()?;
        }
        let cand = adj[last] & allowed & !blocked & !path;
        for u in bits(cand) {
            if adj[p0] >> u & 1 == 1 {
                let cycle_len = len + 1;
                if cycle_len >= min_len && cycle_len % 2 == 1 {
                    return Ok(Some(path | 1 << u));
                }
                continue;
            }
            // `last` turns interior: nothing later may touch it
            let nb = blocked | 1 << last | adj[last];
            if let Some(h) = extend(adj, allowed, p0, u, len + 1, path | 1 << u, nb, min_len, steps, budget)? {
                return Ok(Some(h));
            }
        }
        Ok(None)
    }

    for p0 in bits(within) {
        let allowed = within & !((1u64 << p0) | ((1u64 << p0) - 1));
        // interior nodes so far: none; p1 ranges over neighbours of p0 above it
        for p1 in bits(adj[p0] & allowed) {
            // nodes adjacent to p0 may only appear as the closing node, which
            // is handled inside `extend`; p1's own neighbourhood is blocked
            // once p1 becomes interior.
            if let Some(h) = extend(
                adj,
                allowed & !(1 << p1),
                p0,
                p1,
                2,
                1 << p0 | 1 << p1,
                0,
                min_len,
                &mut steps,
                budget,
            )? {
                return Ok(Some(h));
            }
        }
    }
    Ok(None)
}

pub fn find_induced_odd_hole(g: &Graph, min_len: usize) -> Option<NodeSet> {
    odd_hole_mask(g.adj_masks(), g.all_mask(), min_len, &Budget::unlimited())
        .expect("unlimited budget")
        .map(|m| g.set_of(m))
}

/// Odd hole in `g` or in its complement (an odd antihole of `g`).
pub fn find_imperfection_witness(g: &Graph) -> Option<Obstruction> {
    witness_within(g, g.all_mask(), &Budget::unlimited())
        .expect("unlimited budget")
        .map(|(kind, m)| Obstruction {
            kind,
            nodes: g.set_of(m),
        })
}

pub(crate) fn witness_within(g: &Graph, within: Mask, budget: &Budget) -> Result<Option<(ObstructionKind, Mask)>> {
    if let Some(m) = odd_hole_mask(g.adj_masks(), within, 5, budget)? {
        return Ok(Some((ObstructionKind::OddHole, m)));
    }
    let comp = g.complement();
    // the 5-hole is self-complementary and already covered above
    Ok(odd_hole_mask(comp.adj_masks(), within, 7, budget)?.map(|m| (ObstructionKind::OddAntihole, m)))
}

pub fn is_perfect(g: &Graph) -> bool {
    find_imperfection_witness(g).is_none()
}

/// `set` induces a chordless cycle of odd length `>= 5` in `g`.
pub fn verify_odd_hole(g: &Graph, set: &NodeSet) -> bool {
    let Ok(m) = g.mask_of(set) else {
        return false;
    };
    let len = m.count_ones() as usize;
    if len < 5 || len.is_multiple_of(2) {
        return false;
    }
    if !bits(m).all(|i| (g.adj_mask(i) & m).count_ones() == 2) {
        return false;
    }
    // 2-regular: connected means a single cycle
    let start = m.trailing_zeros() as usize;
    let mut seen: Mask = 1 << start;
    let mut frontier: Mask = 1 << start;
    while frontier != 0 {
        let mut next = 0;
        for i in bits(frontier) {
            next |= g.adj_mask(i) & m;
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen == m
}

pub fn verify_obstruction(g: &Graph, o: &Obstruction) -> bool {
    match o.kind {
        ObstructionKind::OddHole => verify_odd_hole(g, &o.nodes),
        ObstructionKind::OddAntihole => verify_odd_hole(&g.complement(), &o.nodes),
    }
}
