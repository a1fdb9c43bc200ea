//! DIMACS and JSON graph formats plus the `W:n:k` / `A:n:k` family strings.

use serde::{Deserialize, Serialize};

use super::{antiweb, complete_join, web, Family, Graph};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family_tag: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
}

impl Graph {
    /// Family string such as `W:8:2`, or `graph:<n>` for other graphs.
    pub fn tag(&self) -> String {
        family_tag(self.family()).unwrap_or_else(|| format!("graph:{}", self.n()))
    }

    pub fn to_json(&self) -> GraphJson {
        let g = self.relabeled();
        GraphJson {
            n: g.n(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            family_tag: family_tag(self.family()),
            family: match self.family() {
                Family::Other => None,
                f => Some(f.clone()),
            },
        }
    }

    pub fn from_json(j: &GraphJson) -> Result<Graph> {
        let edges: Vec<_> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        let g = Graph::from_edges(j.n, &edges)?;
        Ok(match &j.family {
            Some(f) => g.with_family(f.clone()),
            None => g,
        })
    }

    pub fn to_dimacs(&self) -> String {
        let g = self.relabeled();
        let mut out = String::new();
        if let Some(tag) = family_tag(self.family()) {
            out.push_str(&format!("c {tag}\n"));
        }
        out.push_str(&format!("p edge {} {}\n", g.n(), g.edge_count()));
        for (u, v) in g.edges() {
            out.push_str(&format!("e {u} {v}\n"));
        }
        out
    }

    pub fn from_dimacs(text: &str) -> Result<Graph> {
        let mut n = None;
        let mut edges = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let mut tok = line.split_whitespace();
            let bad = || Error::Parse(format!("DIMACS line {}: {line:?}", lineno + 1));
            match tok.next() {
                None | Some("c") => {}
                Some("p") => {
                    let _fmt = tok.next().ok_or_else(bad)?;
                    n = Some(tok.next().and_then(|x| x.parse().ok()).ok_or_else(bad)?);
                }
                Some("e") => {
                    let u = tok.next().and_then(|x| x.parse().ok()).ok_or_else(bad)?;
                    let v = tok.next().and_then(|x| x.parse().ok()).ok_or_else(bad)?;
                    edges.push((u, v));
                }
                Some(_) => return Err(bad()),
            }
        }
        let n = n.ok_or_else(|| Error::Parse("DIMACS: missing p line".into()))?;
        Graph::from_edges(n, &edges)
    }
}

pub(crate) fn family_tag(f: &Family) -> Option<String> {
    match f {
        Family::Web { n, k } => Some(format!("W:{n}:{k}")),
        Family::Antiweb { n, k } => Some(format!("A:{n}:{k}")),
        Family::Complete { n } => Some(format!("K:{n}")),
        Family::Join { blocks } => {
            let parts: Option<Vec<String>> = blocks.iter().map(|b| family_tag(&b.family)).collect();
            parts.map(|p| format!("join:{}", p.join(",")))
        }
        Family::Other => None,
    }
}

/// Builds a graph from `W:n:k`, `A:n:k`, `K:n`, `C:n` (hole) or
/// `join:<spec>,<spec>,...`.
pub fn parse_family(spec: &str) -> Result<Graph> {
    let spec = spec.trim();
    if let Some(rest) = spec.strip_prefix("join:") {
        let mut parts = rest.split(',').map(parse_family);
        let first = parts.next().ok_or_else(|| Error::Parse("empty join".into()))??;
        return parts.try_fold(first, |acc, g| complete_join(&acc, &g?));
    }
    let bad = || Error::Parse(format!("unrecognised graph spec {spec:?}"));
    let fields: Vec<&str> = spec.split(':').collect();
    let num = |i: usize| -> Result<usize> { fields.get(i).and_then(|x| x.trim().parse().ok()).ok_or_else(bad) };
    match (fields.first().copied(), fields.len()) {
        (Some("W"), 3) => web(num(1)?, num(2)?),
        (Some("A"), 3) => antiweb(num(1)?, num(2)?),
        (Some("K"), 2) => Graph::complete(num(1)?),
        (Some("C"), 2) => {
            let n = num(1)?;
            if n < 4 {
                return Err(bad());
            }
            web(n, 1)
        }
        _ => Err(bad()),
    }
}
