//! Simple undirected graphs on at most 64 nodes, stored as adjacency bitmasks.
//!
//! Nodes carry 1-based labels that survive deletion, so a certificate computed
//! on `G - F` still names positions of the original web.

mod claim;
mod cliques;
mod holes;
mod io;
mod subweb;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use claim::{construct_odd_hole_avoiding, HoleConstruction, RecipeCase};
pub(crate) use cliques::stable_set_masks;
pub use cliques::{alpha, alpha_induced, enumerate_maximal_cliques, enumerate_stable_sets, max_stable_set, omega};
pub(crate) use holes::witness_within;
pub use holes::{
    find_imperfection_witness, find_induced_odd_hole, is_perfect, verify_obstruction, verify_odd_hole, Obstruction,
    ObstructionKind,
};
pub use io::{parse_family, GraphJson};
pub use subweb::{is_subweb, WebId};

pub const MAX_NODES: usize = 64;

/// Bitmask over internal node indices `0..n`.
pub type Mask = u64;

pub(crate) fn bits(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

pub(crate) fn full_mask(n: usize) -> Mask {
    if n == 64 {
        !0
    } else {
        (1u64 << n) - 1
    }
}

/// Sorted, duplicate-free list of node labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeSet(Vec<usize>);

impl NodeSet {
    pub fn new(mut labels: Vec<usize>) -> Self {
        labels.sort_unstable();
        labels.dedup();
        NodeSet(labels)
    }

    pub fn empty() -> Self {
        NodeSet(Vec::new())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, label: usize) -> bool {
        self.0.binary_search(&label).is_ok()
    }

    pub fn is_disjoint(&self, other: &NodeSet) -> bool {
        self.0.iter().all(|v| !other.contains(*v))
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }
}

impl From<Vec<usize>> for NodeSet {
    fn from(v: Vec<usize>) -> Self {
        NodeSet::new(v)
    }
}

impl<const N: usize> From<[usize; N]> for NodeSet {
    fn from(v: [usize; N]) -> Self {
        NodeSet::new(v.to_vec())
    }
}

impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Where a graph came from. Circulant families admit rotational symmetry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Family {
    Web { n: usize, k: usize },
    Antiweb { n: usize, k: usize },
    Complete { n: usize },
    Join { blocks: Vec<JoinPart> },
    Other,
}

/// One block of a complete join: its family and its labels in the host.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JoinPart {
    pub family: Box<Family>,
    pub nodes: NodeSet,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<usize>,
    adj: Vec<Mask>,
    family: Family,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("family", &self.family)
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    /// Graph on labels `1..=n` with the given edges (labels, 1-based).
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            if u == 0 || u > n {
                return Err(Error::UnknownNode(u));
            }
            if v == 0 || v > n {
                return Err(Error::UnknownNode(v));
            }
            if u != v {
                g.adj[u - 1] |= 1 << (v - 1);
                g.adj[v - 1] |= 1 << (u - 1);
            }
        }
        Ok(g)
    }

    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_NODES {
            return Err(Error::GraphTooLarge { n, max: MAX_NODES });
        }
        Ok(Graph {
            labels: (1..=n).collect(),
            adj: vec![0; n],
            family: Family::Other,
        })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        let all = full_mask(n);
        for (i, row) in g.adj.iter_mut().enumerate() {
            *row = all & !(1 << i);
        }
        g.family = Family::Complete { n };
        Ok(g)
    }

    /// Hole on `n >= 3` nodes (`1-2-...-n-1`).
    pub fn cycle(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..=n).map(|i| (i, i % n + 1)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn with_family(mut self, family: Family) -> Self {
        self.family = family;
        self
    }

    /// Rotation order when the graph is a circulant on `1..=n` with untouched labels.
    pub fn cyclic_order(&self) -> Option<usize> {
        match self.family {
            Family::Web { n, .. } | Family::Antiweb { n, .. } | Family::Complete { n }
                if self.labels.iter().copied().eq(1..=n) =>
            {
                Some(n)
            }
            _ => None,
        }
    }

    pub(crate) fn adj_mask(&self, i: usize) -> Mask {
        self.adj[i]
    }

    pub(crate) fn adj_masks(&self) -> &[Mask] {
        &self.adj
    }

    pub fn all_mask(&self) -> Mask {
        full_mask(self.n())
    }

    /// Internal index of a label.
    pub fn index_of(&self, label: usize) -> Result<usize> {
        self.labels.binary_search(&label).map_err(|_| Error::UnknownNode(label))
    }

    pub fn mask_of(&self, set: &NodeSet) -> Result<Mask> {
        set.iter().try_fold(0, |m, l| Ok(m | (1 << self.index_of(l)?)))
    }

    pub fn set_of(&self, mask: Mask) -> NodeSet {
        NodeSet(bits(mask).map(|i| self.labels[i]).collect())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        match (self.index_of(u), self.index_of(v)) {
            (Ok(i), Ok(j)) => self.adj[i] >> j & 1 == 1,
            _ => false,
        }
    }

    pub fn degree(&self, label: usize) -> Result<usize> {
        Ok(self.adj[self.index_of(label)?].count_ones() as usize)
    }

    /// Edges as label pairs `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n() {
            for j in bits(self.adj[i] >> i >> 1) {
                out.push((self.labels[i], self.labels[i + 1 + j]));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn complement(&self) -> Graph {
        let all = self.all_mask();
        let adj = self.adj.iter().enumerate().map(|(i, m)| !m & all & !(1 << i)).collect();
        let family = match &self.family {
            Family::Web { n, k } if self.cyclic_order().is_some() => Family::Antiweb { n: *n, k: k + 1 },
            Family::Antiweb { n, k } if self.cyclic_order().is_some() => Family::Web { n: *n, k: k - 1 },
            _ => Family::Other,
        };
        Graph {
            labels: self.labels.clone(),
            adj,
            family,
        }
    }

    /// Subgraph induced on the internal indices in `keep`, labels preserved.
    pub fn induced(&self, keep: Mask) -> Graph {
        let idx: Vec<usize> = bits(keep & self.all_mask()).collect();
        let adj = idx
            .iter()
            .map(|&i| {
                idx.iter()
                    .enumerate()
                    .filter(|(_, &j)| self.adj[i] >> j & 1 == 1)
                    .fold(0, |m, (p, _)| m | 1 << p)
            })
            .collect();
        Graph {
            labels: idx.iter().map(|&i| self.labels[i]).collect(),
            adj,
            family: Family::Other,
        }
    }

    pub fn delete_nodes(&self, f: &NodeSet) -> Result<Graph> {
        let m = self.mask_of(f)?;
        if m == 0 {
            return Ok(self.clone());
        }
        Ok(self.induced(self.all_mask() & !m))
    }

    /// Graph on `1..=n` with the same edges, dropping label history.
    pub fn relabeled(&self) -> Graph {
        Graph {
            labels: (1..=self.n()).collect(),
            adj: self.adj.clone(),
            family: self.family.clone(),
        }
    }

    /// Disjoint union of `self` and `other` with `other`'s labels shifted above `self`'s.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n1 = self.n();
        let n = n1 + other.n();
        if n > MAX_NODES {
            return Err(Error::GraphTooLarge { n, max: MAX_NODES });
        }
        let adj = self
            .adj
            .iter()
            .copied()
            .chain(other.adj.iter().map(|m| m << n1))
            .collect();
        Ok(Graph {
            labels: (1..=n).collect(),
            adj,
            family: Family::Other,
        })
    }

    /// Stable sets are exactly the cliques of the complement; used by checks.
    pub fn is_stable(&self, set: &NodeSet) -> Result<bool> {
        let m = self.mask_of(set)?;
        Ok(bits(m).all(|i| self.adj[i] & m == 0))
    }

    pub fn is_clique(&self, set: &NodeSet) -> Result<bool> {
        let m = self.mask_of(set)?;
        Ok(bits(m).all(|i| (self.adj[i] | 1 << i) & m == m))
    }
}

/// Circular distance on `1..=n`.
pub fn circular_distance(i: usize, j: usize, n: usize) -> usize {
    let d = i.abs_diff(j) % n;
    d.min(n - d)
}

/// Normalizes any integer to a label in `1..=n`.
pub fn wrap(i: i64, n: usize) -> usize {
    (i - 1).rem_euclid(n as i64) as usize + 1
}

pub fn web(n: usize, k: usize) -> Result<Graph> {
    if k < 1 || n < 2 * (k + 1) {
        return Err(Error::NotAWeb { n, k });
    }
    circulant(n, k).map(|g| g.with_family(Family::Web { n, k }))
}

pub fn antiweb(n: usize, k: usize) -> Result<Graph> {
    if k < 2 || n < 2 * k {
        return Err(Error::NotAnAntiweb { n, k });
    }
    let g = circulant(n, k - 1)?.complement();
    Ok(g.with_family(Family::Antiweb { n, k }))
}

fn circulant(n: usize, k: usize) -> Result<Graph> {
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let d = circular_distance(i, j, n);
            if (1..=k).contains(&d) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

pub fn complement(g: &Graph) -> Graph {
    g.complement()
}

pub fn delete_nodes(g: &Graph, f: &NodeSet) -> Result<Graph> {
    g.delete_nodes(f)
}

/// Complete join `g1 ∨ g2`: `g2`'s labels are shifted above `g1`'s, the two
/// blocks are recorded in the family tag (nested joins are flattened).
pub fn complete_join(g1: &Graph, g2: &Graph) -> Result<Graph> {
    let n1 = g1.n();
    let u = g1.relabeled().disjoint_union(&g2.relabeled())?;
    let all = u.all_mask();
    let left = full_mask(n1);
    let adj = u
        .adj
        .iter()
        .enumerate()
        .map(|(i, m)| if i < n1 { m | (all & !left) } else { m | left })
        .collect();

    let mut blocks = Vec::new();
    for (g, offset) in [(g1, 0), (g2, n1)] {
        match &g.family {
            Family::Join { blocks: inner } => {
                for b in inner {
                    blocks.push(JoinPart {
                        family: b.family.clone(),
                        nodes: NodeSet::new(b.nodes.iter().map(|v| v + offset).collect()),
                    });
                }
            }
            fam => blocks.push(JoinPart {
                family: Box::new(fam.clone()),
                nodes: NodeSet::new((offset + 1..=offset + g.n()).collect()),
            }),
        }
    }
    Ok(Graph {
        labels: u.labels,
        adj,
        family: Family::Join { blocks },
    })
}

/// Label-respecting equality up to a rotation `i -> i + shift` or a
/// multiplier map `i -> m*i` (both mod n) of the circulant labels.
pub fn circulant_isomorphic(a: &Graph, b: &Graph) -> bool {
    let n = a.n();
    if n != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    let ea = a.relabeled();
    let eb = b.relabeled();
    for mult in 1..n.max(2) {
        if num_integer::gcd(mult, n) != 1 {
            continue;
        }
        for shift in 0..n {
            let map = |v: usize| wrap((mult * (v - 1) + shift) as i64 + 1, n);
            if ea.edges().iter().all(|&(u, v)| eb.has_edge(map(u), map(v))) {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c5_is_web_5_1() {
        let g = web(5, 1).unwrap();
        assert_eq!(g.edges(), vec![(1, 2), (1, 5), (2, 3), (3, 4), (4, 5)]);
    }

    #[test]
    fn web_8_2_degrees() {
        let g = web(8, 2).unwrap();
        for v in 1..=8 {
            assert_eq!(g.degree(v).unwrap(), 4);
        }
        assert_eq!(g.edge_count(), 16);
    }

    #[test]
    fn web_6_2_complement_is_matching() {
        let c = web(6, 2).unwrap().complement();
        assert_eq!(c.edges(), vec![(1, 4), (2, 5), (3, 6)]);
    }

    #[test]
    fn web_bound_is_enforced() {
        let e = web(5, 2).unwrap_err();
        assert_eq!(e, Error::NotAWeb { n: 5, k: 2 });
        assert!(e.to_string().contains("2(k+1) = 6"));
        assert!(web(4, 0).is_err());
        assert!(antiweb(5, 3).is_err());
        assert!(antiweb(4, 1).is_err());
    }

    #[test]
    fn antiweb_5_2_is_c5() {
        let a = antiweb(5, 2).unwrap();
        assert_eq!(a.edge_count(), 5);
        assert!(circulant_isomorphic(&a, &web(5, 1).unwrap()));
    }

    #[test]
    fn antiweb_7_2_is_complement_of_c7() {
        let a = antiweb(7, 2).unwrap();
        assert_eq!(a.complement().edges(), Graph::cycle(7).unwrap().edges());
        assert_eq!(a.edge_count(), 21 - 7);
    }

    #[test]
    fn complement_involution_and_family() {
        let w = web(8, 2).unwrap();
        let cc = w.complement().complement();
        assert_eq!(cc.edges(), w.edges());
        assert_eq!(w.complement().family(), &Family::Antiweb { n: 8, k: 3 });
        assert_eq!(cc.family(), &Family::Web { n: 8, k: 2 });
    }

    #[test]
    fn c5_self_complementary_by_doubling() {
        let c = web(5, 1).unwrap();
        assert!(circulant_isomorphic(&c, &c.complement()));
        // doubling map i -> 2i sends edges at distance 1 to distance 2
        let comp = c.complement();
        for (u, v) in c.edges() {
            assert!(comp.has_edge(wrap(2 * u as i64 - 1, 5), wrap(2 * v as i64 - 1, 5)));
        }
    }

    #[test]
    fn complement_of_k4_is_edgeless() {
        let c = Graph::complete(4).unwrap().complement();
        assert_eq!(c.edge_count(), 0);
        assert_eq!(c.n(), 4);
    }

    #[test]
    fn delete_keeps_labels() {
        let g = web(8, 2).unwrap();
        let h = g.delete_nodes(&NodeSet::from([1, 2])).unwrap();
        assert_eq!(h.labels(), &[3, 4, 5, 6, 7, 8]);
        assert!(h.has_edge(3, 5));
        assert!(!h.has_edge(3, 6));
        assert!(!h.has_edge(8, 3));
        assert!(h.has_edge(7, 8));
        assert_eq!(g.delete_nodes(&NodeSet::empty()).unwrap(), g);
        assert_eq!(g.delete_nodes(&NodeSet::from([9])).unwrap_err(), Error::UnknownNode(9));
    }

    #[test]
    fn join_degrees_and_blocks() {
        let c5 = web(5, 1).unwrap();
        let j = complete_join(&c5, &c5).unwrap();
        assert_eq!(j.n(), 10);
        for v in 1..=10 {
            assert_eq!(j.degree(v).unwrap(), 7);
        }
        match j.family() {
            Family::Join { blocks } => {
                assert_eq!(blocks.len(), 2);
                assert_eq!(blocks[1].nodes, NodeSet::new((6..=10).collect()));
            }
            f => panic!("unexpected family {f:?}"),
        }
    }

    #[test]
    fn join_with_k1_adds_universal_node() {
        let c5 = web(5, 1).unwrap();
        let j = complete_join(&Graph::complete(1).unwrap(), &c5).unwrap();
        assert_eq!(j.degree(1).unwrap(), 5);
        let rest = j.delete_nodes(&NodeSet::from([1])).unwrap().relabeled();
        assert_eq!(rest.edges(), c5.edges());
    }

    #[test]
    fn join_complement_is_disjoint_union_of_complements() {
        let a = web(6, 2).unwrap();
        let b = antiweb(7, 2).unwrap();
        let j = complete_join(&a, &b).unwrap();
        let u = a.complement().disjoint_union(&b.complement()).unwrap();
        assert_eq!(j.complement().edges(), u.edges());
    }

    #[test]
    fn wrap_and_distance() {
        assert_eq!(wrap(0, 5), 5);
        assert_eq!(wrap(6, 5), 1);
        assert_eq!(wrap(-1, 5), 4);
        assert_eq!(circular_distance(1, 8, 8), 1);
        assert_eq!(circular_distance(2, 6, 8), 4);
    }
}
