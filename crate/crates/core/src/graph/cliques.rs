use super::{bits, Graph, Mask, NodeSet};

/// All maximal cliques (Bron–Kerbosch with Tomita pivoting), sorted.
pub fn enumerate_maximal_cliques(g: &Graph) -> Vec<NodeSet> {
    let mut out = Vec::new();
    maximal_clique_masks(g.adj_masks(), g.all_mask(), &mut |m| out.push(g.set_of(m)));
    out.sort();
    out
}

pub(crate) fn maximal_clique_masks(adj: &[Mask], all: Mask, emit: &mut impl FnMut(Mask)) {
    fn expand(adj: &[Mask], r: Mask, p: Mask, x: Mask, emit: &mut impl FnMut(Mask)) {
        if p == 0 {
            if x == 0 {
                emit(r);
            }
            return;
        }
        let pivot = bits(p | x).max_by_key(|&u| (adj[u] & p).count_ones()).unwrap();
        let mut p = p;
        let mut x = x;
        for v in bits(p & !adj[pivot]) {
            expand(adj, r | 1 << v, p & adj[v], x & adj[v], emit);
            p &= !(1 << v);
            x |= 1 << v;
        }
    }
    if all == 0 {
        // the empty graph has the empty set as its only clique; no rows result
        return;
    }
    expand(adj, 0, all, 0, emit);
}

pub fn omega(g: &Graph) -> usize {
    max_clique_mask(g.adj_masks(), g.all_mask()).count_ones() as usize
}

/// Maximum clique inside `cand` by simple branch and bound.
pub(crate) fn max_clique_mask(adj: &[Mask], cand: Mask) -> Mask {
    fn go(adj: &[Mask], r: Mask, p: Mask, best: &mut Mask) {
        if p == 0 {
            if r.count_ones() > best.count_ones() {
                *best = r;
            }
            return;
        }
        if r.count_ones() + p.count_ones() <= best.count_ones() {
            return;
        }
        let v = p.trailing_zeros() as usize;
        go(adj, r | 1 << v, p & adj[v], best);
        go(adj, r, p & !(1 << v), best);
    }
    let mut best = 0;
    go(adj, 0, cand, &mut best);
    best
}

/// Maximum stable set inside `cand`.
pub(crate) fn max_stable_mask(adj: &[Mask], cand: Mask) -> Mask {
    fn go(adj: &[Mask], r: Mask, p: Mask, best: &mut Mask) {
        if p == 0 {
            if r.count_ones() > best.count_ones() {
                *best = r;
            }
            return;
        }
        if r.count_ones() + p.count_ones() <= best.count_ones() {
            return;
        }
        let v = p.trailing_zeros() as usize;
        go(adj, r | 1 << v, p & !adj[v] & !(1 << v), best);
        go(adj, r, p & !(1 << v), best);
    }
    let mut best = 0;
    go(adj, 0, cand, &mut best);
    best
}

/// Every stable set, the empty set included, in lexicographic mask order.
pub fn enumerate_stable_sets(g: &Graph) -> Vec<NodeSet> {
    stable_set_masks(g).into_iter().map(|m| g.set_of(m)).collect()
}

pub(crate) fn stable_set_masks(g: &Graph) -> Vec<Mask> {
    fn go(adj: &[Mask], r: Mask, p: Mask, out: &mut Vec<Mask>) {
        out.push(r);
        for v in bits(p) {
            // only extend with larger indices to avoid duplicates
            let higher = p & !((1u64 << v) | ((1u64 << v) - 1));
            go(adj, r | 1 << v, higher & !adj[v], out);
        }
    }
    let mut out = Vec::new();
    go(g.adj_masks(), 0, g.all_mask(), &mut out);
    out.sort_unstable();
    out
}

pub fn alpha(g: &Graph) -> usize {
    max_stable_mask(g.adj_masks(), g.all_mask()).count_ones() as usize
}

pub fn max_stable_set(g: &Graph) -> NodeSet {
    g.set_of(max_stable_mask(g.adj_masks(), g.all_mask()))
}

/// Stability number of the subgraph induced by `t`.
pub fn alpha_induced(g: &Graph, t: &NodeSet) -> crate::Result<usize> {
    let m = g.mask_of(t)?;
    Ok(max_stable_mask(g.adj_masks(), m).count_ones() as usize)
}
