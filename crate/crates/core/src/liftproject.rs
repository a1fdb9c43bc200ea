//! The disjunctive operator `P_F` and the Lovász–Schrijver operator `N`.
//!
//! Coordinates of an `HPolytope` are addressed by 1-based node labels: node
//! `j` is coordinate `j - 1`, matching graphs whose labels are `1..=n`.
//!
//! Validity over `P_F(K) = conv(∪_z K ∩ {x_F = z})` is decided piece by piece;
//! membership uses the extended formulation with one scaled copy of `K` per
//! piece. `N^r(K)` is optimized as a single LP over nested symmetric matrices.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeSet};
use crate::polyhedra::lp::{LinearProgram, LpStatus, Relation};
use crate::polyhedra::{
    convex_hull_facets, lp_max_fixed, stab_bounded, HPolytope, LinearInequality, DEFAULT_HULL_BOUND,
};
use crate::rational::{self, serde_opt_qvec, serde_q, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftConfig {
    /// Largest `|F|`; a query solves up to `2^|F|` LPs.
    pub piece_cap: usize,
    /// Largest `r` for `N^r`.
    pub depth_cap: usize,
    /// Largest tableau (rows × columns) an `N` lift may build.
    pub max_lift_cells: usize,
}

impl Default for LiftConfig {
    fn default() -> Self {
        LiftConfig {
            piece_cap: 12,
            depth_cap: 2,
            max_lift_cells: 40_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    ValidityProof,
    ViolatingPoint,
    Membership,
    NonMembership,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceResult {
    pub z: Vec<u8>,
    pub status: LpStatus,
    #[serde(
        with = "crate::rational::serde_opt_q",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub value: Option<Rational>,
}

/// Symmetric lift matrix with the nested matrices certifying its column
/// memberships (`2n` children, columns `Ye_i` then `Y(e_0 - e_i)`, when the
/// depth is at least two).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftMatrix {
    #[serde(with = "matrix_serde")]
    pub y: Vec<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<LiftMatrix>,
}

mod matrix_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &[Vec<Rational>], s: S) -> std::result::Result<S::Ok, S::Error> {
        m.iter()
            .map(|row| row.iter().map(rational::format).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Vec<Rational>>, D::Error> {
        Vec::<Vec<String>>::deserialize(d)?
            .iter()
            .map(|row| {
                row.iter()
                    .map(|q| rational::parse(q).map_err(serde::de::Error::custom))
                    .collect()
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftCertificate {
    pub kind: CertificateKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<NodeSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pieces: Vec<PieceResult>,
    #[serde(with = "serde_opt_qvec", default, skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<Rational>>,
    /// Convex multipliers of a membership certificate, one per piece.
    #[serde(with = "serde_opt_qvec", default, skip_serializing_if = "Option::is_none")]
    pub multipliers: Option<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub piece_points: Vec<PiecePoint>,
    #[serde(rename = "Y", default, skip_serializing_if = "Option::is_none")]
    pub y: Option<LiftMatrix>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiecePoint {
    pub z: Vec<u8>,
    #[serde(with = "crate::rational::serde_qvec")]
    pub point: Vec<Rational>,
}

impl LiftCertificate {
    fn new(kind: CertificateKind) -> Self {
        LiftCertificate {
            kind,
            f: None,
            depth: None,
            pieces: Vec::new(),
            point: None,
            multipliers: None,
            piece_points: Vec::new(),
            y: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub holds: bool,
    pub certificate: LiftCertificate,
}

pub(crate) fn coords_of(f: &NodeSet, dim: usize) -> Result<Vec<usize>> {
    f.iter()
        .map(|v| {
            if v >= 1 && v <= dim {
                Ok(v - 1)
            } else {
                Err(Error::UnknownNode(v))
            }
        })
        .collect()
}

fn check_pieces(f: &NodeSet, cfg: &LiftConfig) -> Result<()> {
    if f.len() > cfg.piece_cap {
        return Err(Error::BoundExceeded {
            what: "disjunction size |F|",
            actual: f.len(),
            limit: cfg.piece_cap,
        });
    }
    Ok(())
}

/// All `z ∈ {0,1}^|F|` in lexicographic order.
fn assignments(len: usize) -> impl Iterator<Item = Vec<u8>> {
    (0u64..1 << len).map(move |m| (0..len).map(|i| (m >> (len - 1 - i) & 1) as u8).collect())
}

fn fixing(dim: usize, coords: &[usize], z: &[u8]) -> Vec<Option<bool>> {
    let mut fixed = vec![None; dim];
    for (&c, &b) in coords.iter().zip(z) {
        fixed[c] = Some(b == 1);
    }
    fixed
}

/// Is `ineq` valid for `P_F(h)`? Pieces are scanned lexicographically and the
/// scan stops at the first violated piece, whose optimizer is the witness.
pub fn disjunctive_valid(ineq: &LinearInequality, h: &HPolytope, f: &NodeSet, cfg: &LiftConfig) -> Result<Verdict> {
    check_pieces(f, cfg)?;
    if ineq.dim() != h.dim {
        return Err(Error::Dimension {
            expected: h.dim,
            actual: ineq.dim(),
        });
    }
    let coords = coords_of(f, h.dim)?;
    let mut cert = LiftCertificate::new(CertificateKind::ValidityProof);
    cert.f = Some(f.clone());
    for z in assignments(coords.len()) {
        let fixed = fixing(h.dim, &coords, &z);
        let r = lp_max_fixed(h, &ineq.coeffs, &fixed)?;
        let violated = r.is_optimal() && r.value > ineq.rhs;
        cert.pieces.push(PieceResult {
            z,
            status: r.status,
            value: r.is_optimal().then(|| r.value.clone()),
        });
        if violated {
            cert.kind = CertificateKind::ViolatingPoint;
            cert.point = Some(r.primal);
            return Ok(Verdict {
                holds: false,
                certificate: cert,
            });
        }
    }
    Ok(Verdict {
        holds: true,
        certificate: cert,
    })
}

/// Maximum of `objective` over `P_F(h)`: the largest piece optimum.
pub fn disjunctive_max(
    objective: &[Rational],
    h: &HPolytope,
    f: &NodeSet,
    cfg: &LiftConfig,
) -> Result<Option<Rational>> {
    check_pieces(f, cfg)?;
    let coords = coords_of(f, h.dim)?;
    let mut best: Option<Rational> = None;
    for z in assignments(coords.len()) {
        let r = lp_max_fixed(h, objective, &fixing(h.dim, &coords, &z))?;
        if r.is_optimal() && best.as_ref().is_none_or(|b| r.value > *b) {
            best = Some(r.value);
        }
    }
    Ok(best)
}

/// Independent check of a violating-point certificate for `P_F`: the point
/// lies in `h` with its `F` coordinates at the recorded 0/1 values and
/// violates `ineq`.
pub fn recheck_disjunctive_violation(ineq: &LinearInequality, h: &HPolytope, cert: &LiftCertificate) -> Result<bool> {
    let (Some(point), Some(f), Some(last)) = (&cert.point, &cert.f, cert.pieces.last()) else {
        return Ok(false);
    };
    let coords = coords_of(f, h.dim)?;
    let on_piece = coords
        .iter()
        .zip(&last.z)
        .all(|(&c, &b)| point[c] == if b == 1 { rational::one() } else { rational::zero() });
    Ok(on_piece && h.contains(point) && !ineq.satisfied_by(point))
}

/// Is `x ∈ P_F(h)`? Decided by the extended formulation
/// `x = Σ_z y_z`, `Σ_z λ_z = 1`, `y_z ∈ λ_z·(h ∩ {x_F = z})`.
pub fn disjunctive_member(x: &[Rational], h: &HPolytope, f: &NodeSet, cfg: &LiftConfig) -> Result<Verdict> {
    check_pieces(f, cfg)?;
    if x.len() != h.dim {
        return Err(Error::Dimension {
            expected: h.dim,
            actual: x.len(),
        });
    }
    let n = h.dim;
    let coords = coords_of(f, n)?;
    let zs: Vec<Vec<u8>> = assignments(coords.len()).collect();
    let block = n + 1;
    let mut lp = LinearProgram::new(zs.len() * block);
    let lam = |p: usize| p * block + n;
    let var = |p: usize, j: usize| p * block + j;
    for (p, z) in zs.iter().enumerate() {
        for r in h.constraint_rows() {
            let mut terms: Vec<(usize, Rational)> = r
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, a)| !a.is_zero())
                .map(|(j, a)| (var(p, j), a.clone()))
                .collect();
            if !r.rhs.is_zero() {
                terms.push((lam(p), -r.rhs.clone()));
            }
            lp.add_constraint(terms, Relation::Le, rational::zero());
        }
        for (&c, &b) in coords.iter().zip(z) {
            let mut terms = vec![(var(p, c), rational::one())];
            if b == 1 {
                terms.push((lam(p), -rational::one()));
            }
            lp.add_constraint(terms, Relation::Eq, rational::zero());
        }
    }
    lp.add_constraint(
        (0..zs.len()).map(|p| (lam(p), rational::one())).collect(),
        Relation::Eq,
        rational::one(),
    );
    for (j, xj) in x.iter().enumerate() {
        lp.add_constraint(
            (0..zs.len()).map(|p| (var(p, j), rational::one())).collect(),
            Relation::Eq,
            xj.clone(),
        );
    }
    let sol = lp.solve();
    let mut cert = LiftCertificate::new(CertificateKind::NonMembership);
    cert.f = Some(f.clone());
    cert.point = Some(x.to_vec());
    if sol.status != LpStatus::Optimal {
        return Ok(Verdict {
            holds: false,
            certificate: cert,
        });
    }
    cert.kind = CertificateKind::Membership;
    let mut mult = Vec::new();
    for (p, z) in zs.iter().enumerate() {
        let l = sol.primal[lam(p)].clone();
        if l.is_positive() {
            let point = (0..n).map(|j| &sol.primal[var(p, j)] / &l).collect();
            cert.piece_points.push(PiecePoint { z: z.clone(), point });
        }
        mult.push(l);
    }
    cert.multipliers = Some(mult);
    if !recheck_membership(x, h, &coords, &cert) {
        return Err(Error::Inconsistent("membership certificate failed to re-verify".into()));
    }
    Ok(Verdict {
        holds: true,
        certificate: cert,
    })
}

fn recheck_membership(x: &[Rational], h: &HPolytope, coords: &[usize], cert: &LiftCertificate) -> bool {
    let Some(mult) = &cert.multipliers else {
        return false;
    };
    let positive: Vec<&Rational> = mult.iter().filter(|m| m.is_positive()).collect();
    if mult.iter().any(|m| m.is_negative()) || rational::sum(mult.iter()) != rational::one() {
        return false;
    }
    if positive.len() != cert.piece_points.len() {
        return false;
    }
    let mut combo = vec![rational::zero(); x.len()];
    for (pp, l) in cert.piece_points.iter().zip(positive) {
        if !h.contains(&pp.point) {
            return false;
        }
        let on_piece = coords
            .iter()
            .zip(&pp.z)
            .all(|(&c, &b)| pp.point[c] == if b == 1 { rational::one() } else { rational::zero() });
        if !on_piece {
            return false;
        }
        for (acc, v) in combo.iter_mut().zip(&pp.point) {
            *acc += v * l;
        }
    }
    combo == x
}

pub fn recheck_membership_certificate(x: &[Rational], h: &HPolytope, cert: &LiftCertificate) -> Result<bool> {
    let coords = match &cert.f {
        Some(f) => coords_of(f, h.dim)?,
        None => return Ok(false),
    };
    Ok(recheck_membership(x, h, &coords, cert))
}

/// Linear expression over LP variables plus a constant.
#[derive(Debug, Clone, Default)]
struct Expr {
    terms: Vec<(usize, Rational)>,
    constant: Rational,
}

impl Expr {
    fn var(v: usize) -> Expr {
        Expr {
            terms: vec![(v, rational::one())],
            constant: rational::zero(),
        }
    }
    fn constant(c: Rational) -> Expr {
        Expr {
            terms: Vec::new(),
            constant: c,
        }
    }
    fn minus(&self, other: &Expr) -> Expr {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().map(|(v, c)| (*v, -c)));
        Expr {
            terms,
            constant: &self.constant - &other.constant,
        }
    }
    fn scaled_add(&mut self, other: &Expr, s: &Rational) {
        self.terms.extend(other.terms.iter().map(|(v, c)| (*v, c * s)));
        self.constant += &other.constant * s;
    }
    fn is_single_var(&self) -> bool {
        self.constant.is_zero() && self.terms.len() == 1 && self.terms[0].1.is_one()
    }
    fn value(&self, x: &[Rational]) -> Rational {
        self.terms
            .iter()
            .fold(self.constant.clone(), |acc, (v, c)| acc + c * &x[*v])
    }
}

/// Symbolic lift: the top-level or nested matrix as expressions.
struct SymMatrix {
    entries: Vec<Vec<Expr>>,
    children: Vec<SymMatrix>,
}

struct NBuilder<'a> {
    h: &'a HPolytope,
    rows: Vec<&'a LinearInequality>,
    lp: LinearProgram,
}

impl NBuilder<'_> {
    /// Constrains `(v_0, v)` to `cone(N^depth(h))`, returning the nested
    /// matrix when `depth >= 1`.
    fn cone(&mut self, v: &[Expr], depth: usize) -> Option<SymMatrix> {
        let n = self.h.dim;
        if depth == 0 {
            for e in v {
                if !e.is_single_var() {
                    self.add_ge0(e);
                }
            }
            for r in self.rows.clone() {
                // a·v − b·v_0 <= 0
                let mut e = Expr::default();
                for (j, a) in r.coeffs.iter().enumerate() {
                    if !a.is_zero() {
                        e.scaled_add(&v[j + 1], a);
                    }
                }
                if !r.rhs.is_zero() {
                    e.scaled_add(&v[0], &-r.rhs.clone());
                }
                self.add_le0(&e);
            }
            return None;
        }
        let mut y: Vec<Vec<Expr>> = vec![vec![Expr::default(); n + 1]; n + 1];
        for i in 0..=n {
            y[0][i] = v[i].clone();
            y[i][0] = v[i].clone();
            y[i][i] = v[i].clone();
        }
        for i in 1..=n {
            for j in i + 1..=n {
                let var = self.lp.add_var();
                y[i][j] = Expr::var(var);
                y[j][i] = Expr::var(var);
            }
        }
        let mut children = Vec::new();
        let col = |i: usize| -> Vec<Expr> { (0..=n).map(|r| y[r][i].clone()).collect() };
        for i in 1..=n {
            let c = col(i);
            if let Some(m) = self.cone(&c, depth - 1) {
                children.push(m);
            }
        }
        for i in 1..=n {
            let c0 = col(0);
            let ci = col(i);
            let diff: Vec<Expr> = c0.iter().zip(&ci).map(|(a, b)| a.minus(b)).collect();
            if let Some(m) = self.cone(&diff, depth - 1) {
                children.push(m);
            }
        }
        Some(SymMatrix { entries: y, children })
    }

    fn add_ge0(&mut self, e: &Expr) {
        self.lp
            .add_constraint(e.terms.clone(), Relation::Ge, -e.constant.clone());
    }

    fn add_le0(&mut self, e: &Expr) {
        self.lp
            .add_constraint(e.terms.clone(), Relation::Le, -e.constant.clone());
    }
}

fn evaluate(m: &SymMatrix, x: &[Rational]) -> LiftMatrix {
    LiftMatrix {
        y: m.entries
            .iter()
            .map(|row| row.iter().map(|e| e.value(x)).collect())
            .collect(),
        children: m.children.iter().map(|c| evaluate(c, x)).collect(),
    }
}

/// Rows × columns of the `N^r` LP for `h`, counted before building it.
fn lift_cells(h: &HPolytope, depth: usize) -> usize {
    let n = h.dim;
    let rows_per_cone = h.constraint_rows().count() + n + 1;
    let mut cones = 1usize;
    let mut vars = n;
    for _ in 0..depth {
        vars = vars.saturating_add(cones.saturating_mul(n * (n - 1) / 2));
        cones = cones.saturating_mul(2 * n);
    }
    let rows = cones.saturating_mul(rows_per_cone);
    rows.saturating_mul(rows.saturating_add(vars))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NResult {
    pub status: LpStatus,
    #[serde(with = "serde_q")]
    pub value: Rational,
    #[serde(with = "crate::rational::serde_qvec")]
    pub point: Vec<Rational>,
    #[serde(rename = "Y")]
    pub y: Option<LiftMatrix>,
}

/// Exact maximum of `objective` over `N^r(h)`.
pub fn n_operator_max(objective: &[Rational], h: &HPolytope, depth: usize, cfg: &LiftConfig) -> Result<NResult> {
    if depth > cfg.depth_cap {
        return Err(Error::BoundExceeded {
            what: "N-operator depth",
            actual: depth,
            limit: cfg.depth_cap,
        });
    }
    if objective.len() != h.dim {
        return Err(Error::Dimension {
            expected: h.dim,
            actual: objective.len(),
        });
    }
    let cells = lift_cells(h, depth);
    if cells > cfg.max_lift_cells {
        return Err(Error::BoundExceeded {
            what: "N-lift tableau cells",
            actual: cells,
            limit: cfg.max_lift_cells,
        });
    }
    let n = h.dim;
    let mut b = NBuilder {
        h,
        rows: h.constraint_rows().collect(),
        lp: LinearProgram::new(n),
    };
    let mut v = vec![Expr::constant(rational::one())];
    v.extend((0..n).map(Expr::var));
    let sym = b.cone(&v, depth);
    let mut lp = b.lp;
    lp.set_objective(
        objective
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (j, c.clone()))
            .collect(),
    );
    let sol = lp.solve();
    match sol.status {
        LpStatus::Unbounded => return Err(Error::Unbounded),
        LpStatus::Infeasible => {
            return Ok(NResult {
                status: LpStatus::Infeasible,
                value: rational::zero(),
                point: Vec::new(),
                y: None,
            })
        }
        LpStatus::Optimal => {}
    }
    debug_assert!(sol.certify(&lp).is_ok());
    let point: Vec<Rational> = sol.primal[..n].to_vec();
    let y = sym.map(|s| evaluate(&s, &sol.primal));
    if let Some(y) = &y {
        let mut top = vec![rational::one()];
        top.extend(point.iter().cloned());
        if !verify_lift(h, y, &top, depth) {
            return Err(Error::Inconsistent("N-lift certificate failed to re-verify".into()));
        }
    } else if !h.contains(&point) {
        return Err(Error::Inconsistent("N^0 optimizer outside the polytope".into()));
    }
    Ok(NResult {
        status: LpStatus::Optimal,
        value: sol.value,
        point,
        y,
    })
}

fn in_cone(h: &HPolytope, v: &[Rational]) -> bool {
    if v.iter().any(|x| x.is_negative()) {
        return false;
    }
    h.rows.iter().all(|r| r.lhs(&v[1..]) <= &r.rhs * &v[0])
}

/// Checks that `m` certifies `v ∈ cone(N^depth(h))` by direct evaluation:
/// symmetry, `Ye_0 = diag(Y) = v`, and recursive column memberships.
pub fn verify_lift(h: &HPolytope, m: &LiftMatrix, v: &[Rational], depth: usize) -> bool {
    if depth == 0 {
        return in_cone(h, v);
    }
    let n = h.dim;
    let y = &m.y;
    if y.len() != n + 1 || y.iter().any(|r| r.len() != n + 1) {
        return false;
    }
    for i in 0..=n {
        if y[0][i] != v[i] || y[i][i] != v[i] {
            return false;
        }
        for j in 0..i {
            if y[i][j] != y[j][i] {
                return false;
            }
        }
    }
    let col = |i: usize| -> Vec<Rational> { (0..=n).map(|r| y[r][i].clone()).collect() };
    let mut cols = Vec::new();
    for i in 1..=n {
        cols.push(col(i));
    }
    for i in 1..=n {
        cols.push(col(0).iter().zip(col(i)).map(|(a, b)| a - b).collect());
    }
    if depth == 1 {
        return cols.iter().all(|c| in_cone(h, c));
    }
    m.children.len() == cols.len()
        && cols
            .iter()
            .zip(&m.children)
            .all(|(c, child)| verify_lift(h, child, c, depth - 1))
}

/// Is `ineq` valid for `N^r(h)`? A failing answer carries the optimizer and
/// its lift.
pub fn n_operator_valid(ineq: &LinearInequality, h: &HPolytope, depth: usize, cfg: &LiftConfig) -> Result<Verdict> {
    let r = n_operator_max(&ineq.coeffs, h, depth, cfg)?;
    let holds = r.status != LpStatus::Optimal || r.value <= ineq.rhs;
    let mut cert = LiftCertificate::new(if holds {
        CertificateKind::ValidityProof
    } else {
        CertificateKind::ViolatingPoint
    });
    cert.depth = Some(depth);
    cert.pieces.push(PieceResult {
        z: Vec::new(),
        status: r.status,
        value: (r.status == LpStatus::Optimal).then(|| r.value.clone()),
    });
    if !holds {
        cert.point = Some(r.point);
        cert.y = r.y;
    }
    Ok(Verdict {
        holds,
        certificate: cert,
    })
}

/// Independent check of an `N` violating-point certificate.
pub fn recheck_n_violation(ineq: &LinearInequality, h: &HPolytope, cert: &LiftCertificate) -> bool {
    let (Some(point), Some(depth)) = (&cert.point, cert.depth) else {
        return false;
    };
    let mut top = vec![rational::one()];
    top.extend(point.iter().cloned());
    let lifted = match (&cert.y, depth) {
        (_, 0) => in_cone(h, &top),
        (Some(y), d) => verify_lift(h, y, &top, d),
        (None, _) => false,
    };
    lifted && !ineq.satisfied_by(point)
}

/// Does `P_F(h)` equal `stab(g)`? Since `stab ⊆ P_F` always, this holds iff
/// every facet of the hull of stable sets is valid for `P_F(h)`. The first
/// failing facet is returned.
pub fn relaxation_equals_stab_under(
    h: &HPolytope,
    g: &Graph,
    f: &NodeSet,
    cfg: &LiftConfig,
) -> Result<(bool, Option<LinearInequality>)> {
    let facets = convex_hull_facets(
        &stab_bounded(g, DEFAULT_HULL_BOUND)?,
        DEFAULT_HULL_BOUND,
        &Budget::unlimited(),
    )?;
    relaxation_equals_facets_under(h, &facets, f, cfg)
}

pub fn relaxation_equals_facets_under(
    h: &HPolytope,
    facets: &[LinearInequality],
    f: &NodeSet,
    cfg: &LiftConfig,
) -> Result<(bool, Option<LinearInequality>)> {
    for row in facets {
        if row.nonneg_coord().is_some() {
            continue;
        }
        if !disjunctive_valid(row, h, f, cfg)?.holds {
            return Ok((false, Some(row.clone())));
        }
    }
    Ok((true, None))
}
