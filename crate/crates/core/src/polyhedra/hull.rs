//! Facets of the convex hull of a finite point set by double description.
//!
//! An inequality `a·x <= b` is stored as the homogeneous vector
//! `h = (b, -a)`, valid on `p` iff `h·(1, p) >= 0`. The facets are the extreme
//! rays of the cone cut out by the homogenized points.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{LinearInequality, RowLabel, VPolytope};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

pub const DEFAULT_HULL_BOUND: usize = 12;

type Ray = Vec<i128>;

struct Bitset(Vec<u64>);

impl Bitset {
    fn new(len: usize) -> Self {
        Bitset(vec![0; len.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bitset) -> Bitset {
        Bitset(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
    fn subset_of(&self, o: &Bitset) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
}

fn overflow() -> Error {
    Error::BoundExceeded {
        what: "hull coefficient size (bits)",
        actual: 128,
        limit: 127,
    }
}

fn dot(h: &[i128], p: &[i128]) -> Result<i128> {
    h.iter().zip(p).try_fold(0i128, |acc, (a, b)| {
        a.checked_mul(*b).and_then(|v| acc.checked_add(v)).ok_or_else(overflow)
    })
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn normalize(mut r: Ray) -> Ray {
    let g = r.iter().fold(0, |g, &x| gcd(g, x));
    if g > 1 {
        r.iter_mut().for_each(|x| *x /= g);
    }
    r
}

fn to_i128(v: &BigInt) -> Result<i128> {
    v.to_i128().ok_or_else(overflow)
}

/// Homogenized point `(1, p)` scaled to integers.
fn homogenize(p: &[Rational]) -> Result<Vec<i128>> {
    let mut v = vec![rational::one()];
    v.extend(p.iter().cloned());
    rational::clear_denominators(&v).iter().map(to_i128).collect()
}

/// Exact rank of a rational matrix (rows are vectors).
pub fn rank_of(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = &m[i][c] / &pivot;
                for j in c..cols {
                    let d = &f * &m[rank][j];
                    m[i][j] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Indices of a maximal affinely independent subset, greedily in order.
fn independent_basis(hp: &[Vec<i128>]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (i, p) in hp.iter().enumerate() {
        rows.push(p.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect());
        if rank_of(&rows) == rows.len() {
            chosen.push(i);
        } else {
            rows.pop();
        }
        if rows.len() == p.len() {
            break;
        }
    }
    chosen
}

/// Columns of the inverse of a square integer matrix, scaled to integers.
fn inverse_columns(m: &[Vec<i128>]) -> Result<Vec<Ray>> {
    let d = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational> = row.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect();
            r.extend((0..d).map(|j| if i == j { rational::one() } else { rational::zero() }));
            r
        })
        .collect();
    for c in 0..d {
        let p = (c..d)
            .find(|&i| !a[i][c].is_zero())
            .ok_or_else(|| Error::Inconsistent("singular hull basis".into()))?;
        a.swap(c, p);
        let pivot = a[c][c].clone();
        a[c].iter_mut().for_each(|x| *x /= &pivot);
        for i in 0..d {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..2 * d {
                    let v = &f * &a[c][j];
                    a[i][j] -= v;
                }
            }
        }
    }
    (0..d)
        .map(|j| {
            let col: Vec<Rational> = (0..d).map(|i| a[i][d + j].clone()).collect();
            rational::clear_denominators(&col).iter().map(to_i128).collect()
        })
        .collect()
}

fn ray_to_inequality(r: &Ray) -> LinearInequality {
    let coeffs: Vec<Rational> = r[1..]
        .iter()
        .map(|&x| Rational::from_integer(BigInt::from(-x)))
        .collect();
    let ineq = LinearInequality::new(coeffs, Rational::from_integer(BigInt::from(r[0])), RowLabel::Facet);
    match ineq.nonneg_coord() {
        Some(_) => LinearInequality {
            label: RowLabel::Nonneg,
            ..ineq
        },
        None => ineq,
    }
}

/// Facet-defining inequalities of `conv(points)`, in coprime integer form and
/// sorted. The polytope must be full-dimensional.
pub fn convex_hull_facets(v: &VPolytope, bound: usize, budget: &Budget) -> Result<Vec<LinearInequality>> {
    if v.dim > bound {
        return Err(Error::BoundExceeded {
            what: "hull dimension",
            actual: v.dim,
            limit: bound,
        });
    }
    let d = v.dim + 1;
    let hp: Vec<Vec<i128>> = v.points.iter().map(|p| homogenize(p)).collect::<Result<_>>()?;
    let basis = independent_basis(&hp);
    if basis.len() < d {
        return Err(Error::Hypothesis(format!(
            "point set spans affine dimension {} < {}",
            basis.len().saturating_sub(1),
            v.dim
        )));
    }
    let rows: Vec<Vec<i128>> = basis.iter().map(|&i| hp[i].clone()).collect();
    let mut rays: Vec<Ray> = inverse_columns(&rows)?.into_iter().map(normalize).collect();

    let mut order: Vec<usize> = basis.clone();
    order.extend((0..hp.len()).filter(|i| !basis.contains(i)));
    // zero sets are indexed by position in `order`
    let npts = order.len();
    let mut zeros: Vec<Bitset> = Vec::new();
    for r in &rays {
        let mut z = Bitset::new(npts);
        for (pos, &pi) in order.iter().enumerate().take(d) {
            if dot(r, &hp[pi])? == 0 {
                z.set(pos);
            }
        }
        zeros.push(z);
    }

    for (pos, &pi) in order.iter().enumerate().skip(d) {
        budget.check()?;
        let p = &hp[pi];
        let vals: Vec<i128> = rays.iter().map(|r| dot(r, p)).collect::<Result<_>>()?;
        let (mut pos_i, mut neg_i, mut zero_i) = (Vec::new(), Vec::new(), Vec::new());
        for (i, &val) in vals.iter().enumerate() {
            match val.signum() {
                1 => pos_i.push(i),
                -1 => neg_i.push(i),
                _ => zero_i.push(i),
            }
        }
        if neg_i.is_empty() {
            for &i in &zero_i {
                zeros[i].set(pos);
            }
            continue;
        }
        let mut new_rays = Vec::new();
        let mut new_zeros = Vec::new();
        for &a in &pos_i {
            for &b in &neg_i {
                let common = zeros[a].and(&zeros[b]);
                if (common.count() as usize) + 2 < d {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .filter(|&c| c != a && c != b)
                    .all(|c| !common.subset_of(&zeros[c]));
                if !adjacent {
                    continue;
                }
                let (va, vb) = (vals[a], -vals[b]);
                let r: Ray = rays[a]
                    .iter()
                    .zip(&rays[b])
                    .map(|(&x, &y)| {
                        vb.checked_mul(x)
                            .zip(va.checked_mul(y))
                            .and_then(|(u, w)| u.checked_add(w))
                            .ok_or_else(overflow)
                    })
                    .collect::<Result<_>>()?;
                let mut z = common;
                z.set(pos);
                new_rays.push(normalize(r));
                new_zeros.push(z);
            }
        }
        let mut kept_rays = Vec::new();
        let mut kept_zeros = Vec::new();
        for (i, (r, mut z)) in rays.into_iter().zip(zeros).enumerate() {
            match vals[i].signum() {
                -1 => continue,
                0 => z.set(pos),
                _ => {}
            }
            kept_rays.push(r);
            kept_zeros.push(z);
        }
        kept_rays.extend(new_rays);
        kept_zeros.extend(new_zeros);
        rays = kept_rays;
        zeros = kept_zeros;
    }

    let mut out: Vec<(Ray, LinearInequality)> = rays.iter().map(|r| (r.clone(), ray_to_inequality(r))).collect();
    out.sort_by(|a, b| {
        let key = |r: &Ray| (r[1..].iter().map(|x| -x).collect::<Vec<_>>(), r[0]);
        key(&a.0).cmp(&key(&b.0))
    });
    out.dedup_by(|a, b| a.0 == b.0);
    Ok(out.into_iter().map(|(_, i)| i).collect())
}

/// Is `ineq` facet-defining for `conv(points)`? Errors with `NotValid` when
/// some point violates it.
pub fn is_facet(ineq: &LinearInequality, v: &VPolytope) -> Result<bool> {
    if ineq.dim() != v.dim {
        return Err(Error::Dimension {
            expected: v.dim,
            actual: ineq.dim(),
        });
    }
    let mut tight = Vec::new();
    for p in &v.points {
        let lhs = ineq.lhs(p);
        if lhs > ineq.rhs {
            return Err(Error::NotValid {
                reached: format!(
                    "point {:?} gives {} > {}",
                    p.iter().map(rational::format).collect::<Vec<_>>(),
                    rational::format(&lhs),
                    rational::format(&ineq.rhs)
                ),
            });
        }
        if lhs == ineq.rhs {
            let mut h = vec![Rational::one()];
            h.extend(p.iter().cloned());
            tight.push(h);
        }
    }
    let all: Vec<Vec<Rational>> = v
        .points
        .iter()
        .map(|p| {
            let mut h = vec![Rational::one()];
            h.extend(p.iter().cloned());
            h
        })
        .collect();
    let full = rank_of(&all);
    let nontrivial = ineq.coeffs.iter().any(|c| !c.is_zero()) || ineq.rhs.is_negative();
    Ok(nontrivial && rank_of(&tight) + 1 == full)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{web, Graph};
    use crate::polyhedra::{ones, qstab, stab};
    use crate::rational::int;

    fn facets(g: &Graph) -> Vec<LinearInequality> {
        convex_hull_facets(&stab(g).unwrap(), DEFAULT_HULL_BOUND, &Budget::unlimited()).unwrap()
    }

    #[test]
    fn triangle_hull() {
        let f = facets(&Graph::complete(3).unwrap());
        assert_eq!(f.len(), 4);
        assert!(f
            .iter()
            .any(|r| r.label == RowLabel::Facet && r.coeffs == ones(3) && r.rhs == int(1)));
    }

    #[test]
    fn c5_hull_adds_rank_row() {
        let f = facets(&web(5, 1).unwrap());
        // 5 nonneg + 5 edges + x(V) <= 2
        assert_eq!(f.len(), 11);
        assert!(f.iter().any(|r| r.coeffs == ones(5) && r.rhs == int(2)));
    }

    #[test]
    fn perfect_graph_hull_is_qstab() {
        // W(6,2) is perfect: hull equals the clique relaxation
        let g = web(6, 2).unwrap();
        let f = facets(&g);
        let q = qstab(&g);
        assert_eq!(f.len(), q.rows.len());
        for r in &q.rows {
            assert!(f.iter().any(|x| x.same_row(r)));
        }
    }

    #[test]
    fn w82_hull_has_rank_row() {
        let g = web(8, 2).unwrap();
        let f = facets(&g);
        assert!(f.iter().any(|r| r.coeffs == ones(8) && r.rhs == int(2)));
        let v = stab(&g).unwrap();
        for r in &f {
            assert!(is_facet(r, &v).unwrap());
        }
    }

    #[test]
    fn hull_matches_every_facet_check() {
        // every hull row is a facet; every stable point satisfies all rows
        for (n, k) in [(7, 2), (9, 2), (8, 1)] {
            let g = web(n, k).unwrap();
            let v = stab(&g).unwrap();
            let f = facets(&g);
            for r in &f {
                assert!(is_facet(r, &v).unwrap());
            }
            for p in &v.points {
                assert!(f.iter().all(|r| r.satisfied_by(p)));
            }
        }
    }

    #[test]
    fn facet_checks() {
        let g = web(5, 1).unwrap();
        let v = stab(&g).unwrap();
        let rank = LinearInequality::new(ones(5), int(2), RowLabel::Rank);
        assert!(is_facet(&rank, &v).unwrap());
        let loose = LinearInequality::new(ones(5), int(3), RowLabel::Rank);
        assert!(!is_facet(&loose, &v).unwrap());
        let bad = LinearInequality::new(ones(5), int(1), RowLabel::Rank);
        assert!(matches!(is_facet(&bad, &v), Err(Error::NotValid { .. })));
    }

    #[test]
    fn bound_and_dimension_errors() {
        let g = web(13, 2).unwrap();
        let v = stab(&g).unwrap();
        assert!(matches!(
            convex_hull_facets(&v, 12, &Budget::unlimited()),
            Err(Error::BoundExceeded { .. })
        ));
        let flat = VPolytope {
            dim: 2,
            points: vec![vec![int(0), int(0)], vec![int(1), int(1)]],
        };
        assert!(matches!(
            convex_hull_facets(&flat, 12, &Budget::unlimited()),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn rank_of_matrix() {
        assert_eq!(rank_of(&[vec![int(1), int(2)], vec![int(2), int(4)]]), 1);
        assert_eq!(rank_of(&[vec![int(1), int(0)], vec![int(0), int(4)]]), 2);
        assert_eq!(rank_of(&[]), 0);
    }
}
