use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters of a web `W(n, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WebId {
    pub n: usize,
    pub k: usize,
}

impl WebId {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if k < 1 || n < 2 * (k + 1) {
            return Err(Error::NotAWeb { n, k });
        }
        Ok(WebId { n, k })
    }
}

impl fmt::Display for WebId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W:{}:{}", self.n, self.k)
    }
}

impl FromStr for WebId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected W:n:k, got {s:?}"));
        let mut it = s.split(':');
        if it.next() != Some("W") {
            return Err(bad());
        }
        let n = it.next().and_then(|x| x.parse().ok()).ok_or_else(bad)?;
        let k = it.next().and_then(|x| x.parse().ok()).ok_or_else(bad)?;
        if it.next().is_some() {
            return Err(bad());
        }
        WebId::new(n, k)
    }
}

/// Trotter's subweb criterion: `n k'/k <= n' <= n (k'+1)/(k+1)`,
/// cross-multiplied so that it is exact in integers.
pub fn is_subweb(inner: WebId, outer: WebId) -> bool {
    let (n, k) = (outer.n as u128, outer.k as u128);
    let (n2, k2) = (inner.n as u128, inner.k as u128);
    n * k2 <= n2 * k && n2 * (k + 1) <= (k2 + 1) * n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{bits, web, Graph, Mask};

    fn w(n: usize, k: usize) -> WebId {
        WebId::new(n, k).unwrap()
    }

    #[test]
    fn paper_instances() {
        assert!(is_subweb(w(17, 2), w(25, 3)));
        assert!(is_subweb(w(9, 2), w(9, 2)));
        // k=4, s=3, r=2: n = s(k+1)+r = 17, t = ceil(k(1+r)/(r+s)) = 3,
        // k' = k - t = 1, n' = (s-1)(k'+1)+k' = 5
        let (k, s, r) = (4usize, 3usize, 2usize);
        let t = (k * (1 + r)).div_ceil(r + s);
        let k2 = k - t;
        let n2 = (s - 1) * (k2 + 1) + k2;
        assert_eq!((t, k2, n2), (3, 1, 5));
        assert!(is_subweb(w(n2, k2), w(s * (k + 1) + r, k)));
    }

    #[test]
    fn parse_web_id() {
        assert_eq!("W:8:2".parse::<WebId>().unwrap(), w(8, 2));
        assert!("W:5:2".parse::<WebId>().is_err());
        assert!("A:8:2".parse::<WebId>().is_err());
        assert_eq!(w(8, 2).to_string(), "W:8:2");
    }

    /// Induced-subgraph isomorphism by backtracking, no circulant structure used.
    fn embeds_induced(pattern: &Graph, host: &Graph) -> bool {
        fn go(p: &Graph, h: &Graph, map: &mut Vec<usize>, used: Mask) -> bool {
            let i = map.len();
            if i == p.n() {
                return true;
            }
            for c in bits(h.all_mask() & !used) {
                let ok = (0..i).all(|j| (p.adj_masks()[i] >> j & 1) == (h.adj_masks()[c] >> map[j] & 1));
                if ok {
                    map.push(c);
                    if go(p, h, map, used | 1 << c) {
                        return true;
                    }
                    map.pop();
                }
            }
            false
        }
        // pin pattern node 0 to host node 0: both are vertex-transitive
        let mut map = vec![0];
        go(pattern, host, &mut map, 1)
    }

    #[test]
    fn criterion_matches_induced_subgraph_search() {
        for n in 4..=12 {
            for k in 1..=(n - 2) / 2 {
                let outer = w(n, k);
                let host = web(n, k).unwrap();
                for n2 in 4..=n {
                    for k2 in 1..=(n2 - 2) / 2 {
                        let inner = w(n2, k2);
                        let pattern = web(n2, k2).unwrap();
                        assert_eq!(
                            is_subweb(inner, outer),
                            embeds_induced(&pattern, &host),
                            "{inner} in {outer}"
                        );
                    }
                }
            }
        }
    }
}
