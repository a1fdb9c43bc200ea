//! Verification suites: each runs a family of exact rank computations and
//! compares them with closed forms or with each other.

use std::fmt::Write as _;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    disjunctive_rank_graph, disjunctive_rank_graph_polyhedral, disjunctive_rank_inequality, n_rank_inequality_upto,
    subsets, violations_at_size, web_rank_formula, EngineConfig,
};
use crate::error::{Error, Result};
use crate::graph::{
    alpha_induced, antiweb, construct_odd_hole_avoiding, omega, verify_odd_hole, web, Family, Graph, NodeSet, WebId,
};
use crate::inequalities::{
    antiweb_constraint, enumerate_one_interval_sets, joined_inequality, one_interval_inequality, rank_constraint,
    stab_description_w2, JoinBlocks,
};
use crate::liftproject::{disjunctive_max, disjunctive_member, disjunctive_valid, n_operator_max, recheck_n_violation};
use crate::polyhedra::{
    convex_hull_facets, is_facet, lp_max, qstab, same_feasible_set, stab, stab_bounded, HPolytope, LinearInequality,
    RowLabel,
};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Computed and reported without asserting anything.
    Info,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub check: String,
    pub subject: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub computed: Option<String>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<serde_json::Value>,
}

impl ReportEntry {
    fn compare(check: &str, subject: impl Into<String>, expected: impl ToString, computed: impl ToString) -> Self {
        let (e, c) = (expected.to_string(), computed.to_string());
        ReportEntry {
            check: check.into(),
            subject: subject.into(),
            status: if e == c { Status::Pass } else { Status::Fail },
            expected: Some(e),
            computed: Some(c),
            certificate: None,
        }
    }

    fn truth(check: &str, subject: impl Into<String>, ok: bool) -> Self {
        ReportEntry {
            check: check.into(),
            subject: subject.into(),
            expected: None,
            computed: None,
            status: if ok { Status::Pass } else { Status::Fail },
            certificate: None,
        }
    }

    fn info(check: &str, subject: impl Into<String>, computed: impl ToString) -> Self {
        ReportEntry {
            check: check.into(),
            subject: subject.into(),
            expected: None,
            computed: Some(computed.to_string()),
            status: Status::Info,
            certificate: None,
        }
    }

    fn with_cert<T: Serialize>(mut self, cert: &T) -> Self {
        self.certificate = serde_json::to_value(cert).ok();
        self
    }

    /// Keep certificates only on failures to keep passing reports small.
    fn with_cert_on_fail<T: Serialize>(self, cert: &T) -> Self {
        if self.status == Status::Fail {
            self.with_cert(cert)
        } else {
            self
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub entries: Vec<ReportEntry>,
}

impl Report {
    pub fn new(suite: &str) -> Self {
        Report {
            suite: suite.into(),
            entries: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportEntry> {
        self.entries.iter().filter(|e| e.status == Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.entries.iter().filter(|e| e.status == status).count()
    }

    pub fn extend(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }

    fn push(&mut self, e: ReportEntry) {
        self.entries.push(e);
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let w_check = self.entries.iter().map(|e| e.check.len()).max().unwrap_or(5).max(5);
        let w_subj = self.entries.iter().map(|e| e.subject.len()).max().unwrap_or(7).max(7);
        let _ = writeln!(out, "suite: {}", self.suite);
        let _ = writeln!(
            out,
            "{:<6} {:<w_check$} {:<w_subj$} {:>10} {:>10}",
            "status", "check", "subject", "expected", "computed"
        );
        for e in &self.entries {
            let status = match e.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Info => "info",
            };
            let _ = writeln!(
                out,
                "{:<6} {:<w_check$} {:<w_subj$} {:>10} {:>10}",
                status,
                e.check,
                e.subject,
                e.expected.as_deref().unwrap_or("-"),
                e.computed.as_deref().unwrap_or("-"),
            );
        }
        let _ = writeln!(
            out,
            "{} pass, {} fail, {} info",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Info)
        );
        out
    }
}

/// `r_d(W(n,k))` against its closed form and, optionally, against the rank
/// of the complement `A(n,k+1)`.
pub fn verify_web_formulas(ks: &[usize], max_n: usize, complements: bool, cfg: &EngineConfig) -> Result<Report> {
    let cases: Vec<(usize, usize)> = ks
        .iter()
        .flat_map(|&k| (2 * (k + 1)..=max_n).map(move |n| (n, k)))
        .collect();
    let entries = cases
        .par_iter()
        .map(|&(n, k)| -> Result<Vec<ReportEntry>> {
            let g = web(n, k)?;
            let r = disjunctive_rank_graph(&g, cfg)?;
            let mut out = vec![
                ReportEntry::compare("web-rank", format!("W:{n}:{k}"), web_rank_formula(n, k), r.rank).with_cert(&r),
            ];
            if complements {
                let a = antiweb(n, k + 1)?;
                let ra = disjunctive_rank_graph(&a, cfg)?;
                out.push(
                    ReportEntry::compare("complement-rank", format!("A:{n}:{}", k + 1), r.rank, ra.rank).with_cert(&ra),
                );
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Report {
        suite: "web-formulas".into(),
        entries: entries.into_iter().flatten().collect(),
    })
}

/// For every `F` with `|F| = k-1` the explicit construction yields a
/// verified odd hole of `W(n,k) - F`.
pub fn verify_odd_hole_claim(ks: &[usize], max_n: usize) -> Result<Report> {
    let mut report = Report::new("odd-hole-claim");
    for &k in ks {
        for n in 3 * k + 2..=max_n {
            let w = WebId::new(n, k)?;
            let g = web(n, k)?;
            let (mut ok, mut total, mut fallback) = (true, 0, 0);
            let mut failed = None;
            for f in subsets(n, k - 1, false) {
                total += 1;
                match construct_odd_hole_avoiding(w, &f) {
                    Ok(h) => {
                        fallback += usize::from(h.case.is_fallback());
                        if !(h.nodes.is_disjoint(&f) && verify_odd_hole(&g, &h.nodes)) {
                            ok = false;
                            failed.get_or_insert(f);
                        }
                    }
                    Err(_) => {
                        ok = false;
                        failed.get_or_insert(f);
                    }
                }
            }
            let mut e = ReportEntry::truth("odd-hole-avoiding", format!("W:{n}:{k}"), ok);
            e.computed = Some(format!("{}/{total} recipe", total - fallback));
            if let Some(f) = failed {
                e = e.with_cert(&f);
            }
            report.push(e);
        }
    }
    Ok(report)
}

/// Combinatorial and polyhedral graph ranks agree.
pub fn verify_rank_routes(graphs: &[(String, Graph)], cfg: &EngineConfig) -> Result<Report> {
    let entries = graphs
        .par_iter()
        .map(|(name, g)| -> Result<ReportEntry> {
            let c = disjunctive_rank_graph(g, cfg)?;
            let (p, f) = disjunctive_rank_graph_polyhedral(g, cfg)?;
            Ok(ReportEntry::compare("rank-routes", name.clone(), c.rank, p).with_cert(&(c, f)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Report {
        suite: "rank-routes".into(),
        entries,
    })
}

/// Webs, antiwebs and small joins with at most `max_n` nodes.
pub fn small_catalog(max_n: usize) -> Result<Vec<(String, Graph)>> {
    let mut out = Vec::new();
    for n in 4..=max_n {
        for k in 1..=(n - 2) / 2 {
            out.push((format!("W:{n}:{k}"), web(n, k)?));
        }
        for k in 2..=n / 2 {
            out.push((format!("A:{n}:{k}"), antiweb(n, k)?));
        }
    }
    let joins = [
        "join:C:5,K:1",
        "join:C:5,K:2",
        "join:C:5,K:3",
        "join:A:7:2,K:1",
        "join:C:7,K:1",
        "join:W:6:2,K:2",
        "join:K:2,K:3",
        "join:A:6:2,K:2",
    ];
    for spec in joins {
        let g = crate::graph::parse_family(spec)?;
        if g.n() <= max_n {
            out.push((spec.to_string(), g));
        }
    }
    Ok(out)
}

/// `count` seeded random graphs on 4 to `max_n` nodes, edge density 1/2.
pub fn random_graphs(count: usize, max_n: usize, seed: u64) -> Result<Vec<(String, Graph)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for i in 0..count {
        let n = rng.gen_range(4..=max_n);
        let mut edges = Vec::new();
        for u in 1..=n {
            for v in u + 1..=n {
                if rng.gen_bool(0.5) {
                    edges.push((u, v));
                }
            }
        }
        out.push((format!("random-{i}"), Graph::from_edges(n, &edges)?));
    }
    Ok(out)
}

fn prime_antiweb_params(n: usize, k: usize) -> Result<(usize, usize)> {
    antiweb(n, k)?;
    if n.gcd(&k) != 1 {
        return Err(Error::Hypothesis(format!("A({n},{k}) is not prime")));
    }
    let omega = n / k;
    Ok((omega, n - omega * k))
}

/// The three checks on the antiweb row of a prime antiweb: the explicit `F`
/// validates it, every `|T| = β-1` leaves the point `1/ω` off `T` violating
/// it inside `P_T`, and the minimal-`F` search returns `n - ωk`.
pub fn verify_rdfar(n: usize, k: usize, sample: Option<(usize, u64)>, cfg: &EngineConfig) -> Result<Report> {
    let (omega, beta) = prime_antiweb_params(n, k)?;
    let a = antiweb(n, k)?;
    if omega != crate::graph::omega(&a) {
        return Err(Error::Inconsistent(format!(
            "clique number of A({n},{k}) is not {omega}"
        )));
    }
    let h = qstab(&a);
    let (row, _) = antiweb_constraint(n, k)?;
    let subject = format!("A:{n}:{k}");
    let mut report = Report::new("rdfar");

    let f = NodeSet::new((omega * k + 1..=omega * k + beta).collect());
    let v = disjunctive_valid(&row, &h, &f, &cfg.lift)?;
    report.push(ReportEntry::truth("explicit-F-valid", &subject, v.holds).with_cert_on_fail(&v.certificate));

    let mut ts = subsets(n, beta - 1, false);
    if let Some((count, seed)) = sample {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        while ts.len() > count {
            let i = rng.gen_range(0..ts.len());
            ts.remove(i);
        }
    }
    let bad: Vec<NodeSet> = ts
        .par_iter()
        .map(|t| -> Result<Option<NodeSet>> {
            let x: Vec<Rational> = (1..=n)
                .map(|i| {
                    if t.contains(i) {
                        rational::zero()
                    } else {
                        Rational::new(1.into(), (omega as i64).into())
                    }
                })
                .collect();
            let violates = row.lhs(&x) == rational::int(k as i64) + Rational::new(1.into(), (omega as i64).into());
            let member = disjunctive_member(&x, &h, t, &cfg.lift)?.holds;
            Ok((!(violates && member)).then(|| t.clone()))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let mut e = ReportEntry::truth("lower-bound-points", &subject, bad.is_empty());
    e.computed = Some(format!("{} sets T", ts.len()));
    report.push(e.with_cert_on_fail(&bad));

    let r = disjunctive_rank_inequality(&row, &h, true, None, cfg)?;
    report.push(ReportEntry::compare("minimal-F", &subject, beta, r.rank).with_cert_on_fail(&r));
    Ok(report)
}

pub fn prime_antiwebs(max_n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for n in 4..=max_n {
        for k in 2..=n / 2 {
            if n.gcd(&k) == 1 {
                out.push((n, k));
            }
        }
    }
    out
}

pub fn verify_rdfar_all(max_n: usize, cfg: &EngineConfig) -> Result<Report> {
    let reports = prime_antiwebs(max_n)
        .par_iter()
        .map(|&(n, k)| verify_rdfar(n, k, None, cfg))
        .collect::<Result<Vec<_>>>()?;
    let mut report = Report::new("rdfar");
    for r in reports {
        report.extend(r);
    }
    Ok(report)
}

/// The assembled description of `stab(W(n,2))` has the hull's feasible set,
/// and the closed form for `α(T)` holds on every 1-interval set.
pub fn verify_w2_description(ns: &[usize], cfg: &EngineConfig) -> Result<Report> {
    let entries = ns
        .par_iter()
        .map(|&n| -> Result<Vec<ReportEntry>> {
            let g = web(n, 2)?;
            let rows = stab_description_w2(n)?;
            let facets = convex_hull_facets(&stab_bounded(&g, cfg.hull_bound)?, cfg.hull_bound, &cfg.budget)?;
            let same = same_feasible_set(&HPolytope::new(n, rows.clone())?, &HPolytope::new(n, facets.clone())?)?;
            let mut e = ReportEntry::truth("description-equals-hull", format!("W:{n}:2"), same);
            e.computed = Some(format!("{} rows / {} facets", rows.len(), facets.len()));
            let sets = enumerate_one_interval_sets(n, false);
            let w = WebId::new(n, 2)?;
            let mut mismatches = Vec::new();
            for s in &sets {
                let counted = alpha_induced(&g, &s.support())?;
                if counted != s.alpha_formula() || one_interval_inequality(w, s).is_err() {
                    mismatches.push(s.clone());
                }
            }
            let mut a = ReportEntry::truth("alpha-formula", format!("W:{n}:2"), mismatches.is_empty());
            a.computed = Some(format!("{} sets", sets.len()));
            Ok(vec![e, a.with_cert_on_fail(&mismatches)])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Report {
        suite: "w2-description".into(),
        entries: entries.into_iter().flatten().collect(),
    })
}

/// Rank row of `W(3s+ℓ, 2)` has disjunctive rank `ℓ`; 1-interval facets on
/// the given `n` have disjunctive rank 1 and are valid for `N(qstab)`.
pub fn verify_w2_row_ranks(pairs: &[(usize, usize)], interval_ns: &[usize], cfg: &EngineConfig) -> Result<Report> {
    let mut report = Report::new("w2-row-ranks");
    let rank_entries = pairs
        .par_iter()
        .map(|&(s, l)| -> Result<ReportEntry> {
            let n = 3 * s + l;
            let g = web(n, 2)?;
            let r = disjunctive_rank_inequality(&rank_constraint(&g), &qstab(&g), true, Some(&stab(&g)?), cfg)?;
            Ok(ReportEntry::compare("rank-row-rank", format!("W:{n}:2"), l, r.rank).with_cert_on_fail(&r))
        })
        .collect::<Result<Vec<_>>>()?;
    report.entries.extend(rank_entries);

    for &n in interval_ns {
        let g = web(n, 2)?;
        let h = qstab(&g);
        let v = stab(&g)?;
        let w = WebId::new(n, 2)?;
        let rows: Vec<LinearInequality> = enumerate_one_interval_sets(n, true)
            .iter()
            .map(|s| one_interval_inequality(w, s))
            .collect::<Result<_>>()?;
        let entries = rows
            .par_iter()
            .map(|row| -> Result<Vec<ReportEntry>> {
                let support: Vec<usize> = row.support().iter().map(|j| j + 1).collect();
                let subject = format!("W:{n}:2 T={}", NodeSet::new(support));
                if !is_facet(row, &v)? {
                    return Ok(vec![ReportEntry::info("one-interval-not-facet", subject, "skipped")]);
                }
                let r = disjunctive_rank_inequality(row, &h, false, None, cfg)?;
                let nr = n_rank_inequality_upto(row, &h, 1, cfg)?;
                Ok(vec![
                    ReportEntry::compare("one-interval-rank", subject.clone(), 1, r.rank).with_cert_on_fail(&r),
                    ReportEntry::compare("one-interval-N-depth", subject, "1", fmt_opt(nr.rank)).with_cert_on_fail(&nr),
                ])
            })
            .collect::<Result<Vec<_>>>()?;
        report.entries.extend(entries.into_iter().flatten());
    }
    Ok(report)
}

fn fmt_opt(r: Option<usize>) -> String {
    r.map_or_else(|| "none".into(), |v| v.to_string())
}

/// N-operator checks on `W(n,2)`: the rank row of `W(8,2)` survives one
/// N step with a re-verified lift, the rank rows of `W(9,2)` and `W(10,2)`
/// do not, N-rank never exceeds disjunctive rank, and the perfect boundary
/// case `W(6,2)` is reported.
pub fn verify_n_operator_k2(cfg: &EngineConfig) -> Result<Report> {
    let mut report = Report::new("n-operator");
    let g8 = web(8, 2)?;
    let h8 = qstab(&g8);
    let row8 = rank_constraint(&g8);
    let m = n_operator_max(&row8.coeffs, &h8, 1, &cfg.lift)?;
    let mut e = ReportEntry::truth("N-max-exceeds-alpha", "W:8:2", m.value > rational::int(2));
    e.computed = Some(rational::format(&m.value));
    report.push(e);
    let v = crate::liftproject::n_operator_valid(&row8, &h8, 1, &cfg.lift)?;
    report.push(ReportEntry::truth(
        "N-violation-certificate",
        "W:8:2",
        !v.holds && recheck_n_violation(&row8, &h8, &v.certificate),
    ));

    for n in [9, 10] {
        let g = web(n, 2)?;
        let h = qstab(&g);
        let row = rank_constraint(&g);
        let nr = n_rank_inequality_upto(&row, &h, 1, cfg)?;
        let d = disjunctive_rank_inequality(&row, &h, true, None, cfg)?;
        report.push(ReportEntry::truth(
            "rank-row-N-valid-depth-1",
            format!("W:{n}:2"),
            nr.rank.is_some(),
        ));
        report.push(ReportEntry::truth(
            "N-rank-at-most-disjunctive",
            format!("W:{n}:2"),
            nr.rank.is_some_and(|r| r <= d.rank),
        ));
    }
    let g6 = web(6, 2)?;
    let nr6 = n_rank_inequality_upto(&rank_constraint(&g6), &qstab(&g6), 1, cfg)?;
    report.push(ReportEntry::info(
        "rank-row-N-rank-boundary",
        "W:6:2",
        fmt_opt(nr6.rank),
    ));
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SandwichValues {
    #[serde(with = "crate::rational::serde_qvec")]
    pub objective: Vec<Rational>,
    #[serde(with = "crate::rational::serde_q")]
    pub stab: Rational,
    #[serde(with = "crate::rational::serde_q")]
    pub n1: Rational,
    #[serde(with = "crate::rational::serde_q")]
    pub min_pj: Rational,
    #[serde(with = "crate::rational::serde_q")]
    pub qstab: Rational,
}

impl SandwichValues {
    pub fn monotone(&self) -> bool {
        self.stab <= self.n1 && self.n1 <= self.min_pj && self.min_pj <= self.qstab
    }
}

pub fn sandwich(g: &Graph, objective: &[Rational], cfg: &EngineConfig) -> Result<SandwichValues> {
    let h = qstab(g);
    let s = stab(g)?.max(objective).unwrap_or_default();
    let n1 = n_operator_max(objective, &h, 1, &cfg.lift)?.value;
    let mut min_pj: Option<Rational> = None;
    for j in 1..=g.n() {
        let v = disjunctive_max(objective, &h, &NodeSet::from([j]), &cfg.lift)?
            .ok_or_else(|| Error::Inconsistent("empty piece union".into()))?;
        if min_pj.as_ref().is_none_or(|m| v < *m) {
            min_pj = Some(v);
        }
    }
    Ok(SandwichValues {
        objective: objective.to_vec(),
        stab: s,
        n1,
        min_pj: min_pj.unwrap_or_default(),
        qstab: lp_max(&h, objective)?.value,
    })
}

/// Webs on at most `max_n` nodes.
pub fn webs_upto(max_n: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 4..=max_n {
        for k in 1..=(n - 2) / 2 {
            out.push(web(n, k)?);
        }
    }
    Ok(out)
}

/// `max stab <= max N(qstab) <= min_j max P_j(qstab) <= max qstab` on seeded
/// random integer objectives.
pub fn verify_sandwich(max_n: usize, objectives: usize, seed: u64, cfg: &EngineConfig) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut jobs = Vec::new();
    for g in webs_upto(max_n)? {
        for i in 0..objectives {
            let obj: Vec<Rational> = (0..g.n()).map(|_| rational::int(rng.gen_range(-3..=9))).collect();
            jobs.push((g.clone(), i, obj));
        }
    }
    let entries = jobs
        .par_iter()
        .map(|(g, i, obj)| -> Result<ReportEntry> {
            let v = sandwich(g, obj, cfg)?;
            let mut e = ReportEntry::truth("sandwich", format!("{} #{i}", g.tag()), v.monotone());
            e.computed = Some([&v.stab, &v.n1, &v.min_pj, &v.qstab].map(rational::format).join(" <= "));
            Ok(e.with_cert_on_fail(&v))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Report {
        suite: "sandwich".into(),
        entries,
    })
}

pub fn verify_operators(max_n: usize, objectives: usize, seed: u64, cfg: &EngineConfig) -> Result<Report> {
    let mut report = verify_sandwich(max_n, objectives, seed, cfg)?;
    report.extend(verify_n_operator_k2(cfg)?);
    report.suite = "operators".into();
    Ok(report)
}

/// Rank bounds on a complete join: the joined row needs at least the sum of
/// the block rows' ranks, no smaller `F` validates it, and the host's graph
/// rank dominates it. Prime antiweb blocks also give `n_i - ω_i k_i`.
pub fn verify_join_bound(host: &Graph, cfg: &EngineConfig) -> Result<Report> {
    let host = host.relabeled().with_family(host.family().clone());
    let blocks = JoinBlocks::from_host(&host)?;
    let name = host.tag();
    let mut report = Report::new("join");
    let h = qstab(&host);
    let joined = joined_inequality(&host, &blocks)?;

    let mut block_sum = 0;
    let mut antiweb_sum = 0;
    for b in &blocks.blocks {
        let sub = host.induced(host.mask_of(&b.nodes)?).relabeled();
        let row = LinearInequality::set_sum(
            sub.n(),
            0..sub.n(),
            rational::int(crate::graph::alpha(&sub) as i64),
            RowLabel::Rank,
        );
        let r = disjunctive_rank_inequality(&row, &qstab(&sub), false, None, cfg)?;
        report.push(ReportEntry::info(
            "block-row-rank",
            format!("{name} block {}", b.nodes),
            r.rank,
        ));
        block_sum += r.rank;
        if let Family::Antiweb { n, k } = *b.family {
            if n.gcd(&k) == 1 {
                antiweb_sum += n - omega(&sub) * k;
            }
        }
    }

    let r = disjunctive_rank_inequality(&joined, &h, false, Some(&stab(&host)?), cfg)?;
    report.push(ReportEntry::truth("joined-row-at-least-block-sum", &name, r.rank >= block_sum).with_cert_on_fail(&r));
    if block_sum > 0 {
        let below = violations_at_size(&joined, &h, block_sum - 1, cfg)?;
        let mut e = ReportEntry::truth("no-smaller-F", &name, below.is_ok());
        e.computed = Some(match &below {
            Ok(v) => format!("{} sets violated", v.len()),
            Err(f) => format!("valid under {f}"),
        });
        report.push(e);
    }
    let mut e = ReportEntry::info("joined-row-rank", &name, r.rank);
    e.expected = Some(block_sum.to_string());
    report.push(e);

    let gr = disjunctive_rank_graph(&host, cfg)?;
    report.push(ReportEntry::truth("graph-rank-at-least-row-rank", &name, gr.rank >= r.rank).with_cert_on_fail(&gr));
    report.push(ReportEntry::truth(
        "graph-rank-at-least-antiweb-sum",
        &name,
        gr.rank >= antiweb_sum,
    ));
    report.push(ReportEntry::info("graph-rank", &name, gr.rank));
    Ok(report)
}

/// Suite names accepted by [`run_suite`].
pub const SUITES: [&str; 5] = ["web-formulas", "rdfar", "w2", "join", "operators"];

#[derive(Debug, Clone)]
pub struct SuiteBounds {
    pub max_n: Option<usize>,
    pub ks: Option<Vec<usize>>,
    pub ns: Option<Vec<usize>>,
    pub objectives: usize,
    pub seed: u64,
    pub graph: Option<Graph>,
}

impl Default for SuiteBounds {
    fn default() -> Self {
        SuiteBounds {
            max_n: None,
            ks: None,
            ns: None,
            objectives: 20,
            seed: 0,
            graph: None,
        }
    }
}

/// Runs a named suite with small default bounds.
pub fn run_suite(name: &str, b: &SuiteBounds, cfg: &EngineConfig) -> Result<Report> {
    let mut report = match name {
        "web-formulas" => {
            let ks = b.ks.clone().unwrap_or_else(|| vec![2, 3]);
            let max_n = b.max_n.unwrap_or(12);
            let mut r = verify_web_formulas(&ks, max_n, true, cfg)?;
            let claim_ks: Vec<usize> = ks.iter().copied().filter(|&k| k >= 2).collect();
            r.extend(verify_odd_hole_claim(&claim_ks, max_n)?);
            r
        }
        "rdfar" => verify_rdfar_all(b.max_n.unwrap_or(9), cfg)?,
        "w2" => {
            let ns = b.ns.clone().unwrap_or_else(|| (6..=b.max_n.unwrap_or(10)).collect());
            let mut r = verify_w2_description(&ns, cfg)?;
            let pairs: Vec<(usize, usize)> = [2, 3]
                .iter()
                .flat_map(|&s| (0..3).map(move |l| (s, l)))
                .filter(|&(s, l)| ns.contains(&(3 * s + l)))
                .collect();
            let interval_ns: Vec<usize> = ns.iter().copied().filter(|n| [9, 10].contains(n)).collect();
            r.extend(verify_w2_row_ranks(&pairs, &interval_ns, cfg)?);
            r
        }
        "join" => {
            let g = match &b.graph {
                Some(g) => g.clone(),
                None => crate::graph::parse_family("join:C:5,C:5")?,
            };
            verify_join_bound(&g, cfg)?
        }
        "operators" => verify_operators(b.max_n.unwrap_or(7), b.objectives, b.seed, cfg)?,
        other => {
            return Err(Error::Parse(format!(
                "unknown suite {other:?}; expected one of {SUITES:?}"
            )))
        }
    };
    report.suite = name.into();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn web_formulas_small() {
        let r = verify_web_formulas(&[2], 10, true, &EngineConfig::default()).unwrap();
        assert!(r.passed(), "{}", r.to_table());
        assert_eq!(r.entries.len(), 10);
    }

    #[test]
    fn rdfar_small() {
        for (n, k) in [(7, 3), (8, 3), (7, 2)] {
            let r = verify_rdfar(n, k, None, &EngineConfig::default()).unwrap();
            assert!(r.passed(), "{}", r.to_table());
        }
        assert!(matches!(
            verify_rdfar(8, 2, None, &EngineConfig::default()),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn join_c5_c5() {
        let g = crate::graph::parse_family("join:C:5,C:5").unwrap();
        let r = verify_join_bound(&g, &EngineConfig::default()).unwrap();
        assert!(r.passed(), "{}", r.to_table());
        let rank = r.entries.iter().find(|e| e.check == "joined-row-rank").unwrap();
        assert_eq!(rank.computed.as_deref(), Some("2"));
    }

    #[test]
    fn join_k3_c5() {
        let g = crate::graph::parse_family("join:K:3,C:5").unwrap();
        let r = verify_join_bound(&g, &EngineConfig::default()).unwrap();
        assert!(r.passed(), "{}", r.to_table());
        let rank = r.entries.iter().find(|e| e.check == "joined-row-rank").unwrap();
        assert_eq!(rank.computed.as_deref(), Some("1"));
    }

    #[test]
    fn sandwich_small() {
        let r = verify_sandwich(6, 3, 1, &EngineConfig::default()).unwrap();
        assert!(r.passed(), "{}", r.to_table());
    }

    #[test]
    fn report_table_and_json() {
        let mut r = Report::new("demo");
        r.push(ReportEntry::compare("x", "W:8:2", 2, 2));
        r.push(ReportEntry::compare("y", "W:8:2", 2, 3));
        assert!(!r.passed());
        assert!(r.to_table().contains("FAIL"));
        let back: Report = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn unknown_suite() {
        assert!(matches!(
            run_suite("nope", &SuiteBounds::default(), &EngineConfig::default()),
            Err(Error::Parse(_))
        ));
    }
}
