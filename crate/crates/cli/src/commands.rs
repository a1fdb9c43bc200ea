use std::fmt::{self, Write as _};
use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use stabrank::graph::{
    enumerate_maximal_cliques, parse_family, Family as GraphFamily, Graph, GraphJson, NodeSet, WebId,
};
use stabrank::inequalities::{
    antiweb_constraint, enumerate_one_interval_sets, joined_inequality, one_interval_inequality, rank_constraint,
    JoinBlocks,
};
use stabrank::liftproject::{disjunctive_max, n_operator_max};
use stabrank::polyhedra::{
    convex_hull_facets, frac, lp_max, qstab, stab_bounded, HPolytope, LinearInequality, RowLabel, DEFAULT_STAB_BOUND,
};
use stabrank::rank::{
    disjunctive_rank_graph, disjunctive_rank_graph_polyhedral, disjunctive_rank_inequality, n_rank_inequality_upto,
    run_suite, SuiteBounds, SUITES,
};
use stabrank::rational::{self, Rational};

use crate::recheck::{Bundle, RowRank};
use crate::{Family, Format, LpOperator, Operator, Relaxation, RunConfig};

/// What a command prints: JSON for machines, a table for people.
pub struct Output {
    pub json: Value,
    pub table: String,
    /// False when an asserted check failed (exit code 1).
    pub passed: bool,
}

impl Output {
    fn new(json: Value, table: String) -> Self {
        Output {
            json,
            table,
            passed: true,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("JSON values always serialize");
                s.push('\n');
                s
            }
            Format::Table if self.table.ends_with('\n') => self.table.clone(),
            Format::Table => format!("{}\n", self.table),
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Core(stabrank::Error),
    Input(String),
    Io(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Input(m) | CliError::Io(m) => write!(f, "{m}"),
        }
    }
}

impl From<stabrank::Error> for CliError {
    fn from(e: stabrank::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_resource_limit() => 2,
            CliError::Core(stabrank::Error::Inconsistent(_) | stabrank::Error::Unbounded) => 1,
            _ => 3,
        }
    }

    /// Bounds known when a search was cut short.
    pub fn partial(&self) -> Option<Output> {
        let CliError::Core(stabrank::Error::Incomplete { what, lower, upper }) = self else {
            return None;
        };
        let mut table = format!("{what} incomplete: rank >= {lower}");
        if let Some(u) = upper {
            let _ = write!(table, ", rank <= {u}");
        }
        Some(Output {
            json: json!({ "status": "incomplete", "what": what, "lower": lower, "upper": upper }),
            table,
            passed: false,
        })
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// A family spec, or a path to a `.json` or DIMACS graph file.
pub fn load_graph(spec: &str) -> CliResult<Graph> {
    let path = Path::new(spec);
    if !path.is_file() {
        return Ok(parse_family(spec)?);
    }
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{spec}: {e}")))?;
    if path.extension().is_some_and(|x| x == "json") {
        let j: GraphJson = serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{spec}: {e}")))?;
        Ok(Graph::from_json(&j)?)
    } else {
        Ok(Graph::from_dimacs(&text)?)
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
    text.push('\n');
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn parse_list(s: &str) -> CliResult<Vec<usize>> {
    if let Some((a, b)) = s.split_once("..") {
        let bad = || CliError::Input(format!("bad range {s:?}"));
        let lo: usize = a.trim().parse().map_err(|_| bad())?;
        let hi: usize = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        return Ok((lo..=hi).collect());
    }
    s.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| CliError::Input(format!("bad number {x:?} in {s:?}")))
        })
        .collect()
}

fn parse_objective(s: Option<&str>, n: usize) -> CliResult<Vec<Rational>> {
    let Some(s) = s else {
        return Ok(vec![rational::one(); n]);
    };
    let c = s
        .split(',')
        .map(|x| rational::parse(x.trim()))
        .collect::<stabrank::Result<Vec<_>>>()?;
    if c.len() != n {
        return Err(CliError::Input(format!(
            "objective has {} entries, graph has {n} nodes",
            c.len()
        )));
    }
    Ok(c)
}

fn qvec(v: &[Rational]) -> Vec<String> {
    v.iter().map(rational::format).collect()
}

/// `2 x1 + x3 <= 1` from a row in integer form.
fn render_row(row: &LinearInequality) -> String {
    let (coeffs, rhs) = row.canonical();
    let mut terms = Vec::new();
    for (j, c) in coeffs.iter().enumerate() {
        let c = c.to_string();
        match c.as_str() {
            "0" => {}
            "1" => terms.push(format!("x{}", j + 1)),
            "-1" => terms.push(format!("-x{}", j + 1)),
            _ => terms.push(format!("{c} x{}", j + 1)),
        }
    }
    if terms.is_empty() {
        terms.push("0".into());
    }
    format!("{} <= {rhs}", terms.join(" + ").replace("+ -", "- "))
}

pub fn generate(_run: &RunConfig, spec: &str, out: Option<&Path>) -> CliResult<Output> {
    let g = load_graph(spec)?;
    let j = g.to_json();
    if let Some(prefix) = out {
        let base = prefix.display().to_string();
        write_json(Path::new(&format!("{base}.json")), &j)?;
        fs::write(format!("{base}.dimacs"), g.to_dimacs()).map_err(|e| CliError::Io(format!("{base}.dimacs: {e}")))?;
    }
    Ok(Output::new(
        serde_json::to_value(&j).expect("graph JSON serializes"),
        g.to_dimacs(),
    ))
}

pub fn rank_graph(
    run: &RunConfig,
    spec: &str,
    operator: Operator,
    polyhedral: bool,
    certificate: Option<&Path>,
) -> CliResult<Output> {
    if operator == Operator::N {
        return Err(CliError::Input(
            "graph N-ranks are not computed; use `rank ineq <family> <graph> n --rmax R` per row".into(),
        ));
    }
    let g = load_graph(spec)?;
    let cfg = run.engine();
    let mut table = format!("graph      {}\noperator   disjunctive\n", g.tag());
    let bundle = if polyhedral {
        let (rank, deletion_set) = disjunctive_rank_graph_polyhedral(&g, &cfg)?;
        let _ = write!(table, "rank       {rank}\nsmallest F {deletion_set}\n");
        Bundle::PolyhedralGraphRank {
            graph: g.to_json(),
            rank,
            deletion_set,
        }
    } else {
        let r = disjunctive_rank_graph(&g, &cfg)?;
        let _ = write!(
            table,
            "rank       {}\ndeletion   {}\nwitnesses  {}\n",
            r.rank,
            r.deletion_set,
            r.lower_bound_witnesses.len()
        );
        Bundle::GraphRank {
            graph: g.to_json(),
            result: r,
        }
    };
    if let Some(p) = certificate {
        write_json(p, &bundle)?;
    }
    Ok(Output::new(
        serde_json::to_value(&bundle).expect("bundle serializes"),
        table,
    ))
}

fn coords(g: &Graph, set: &NodeSet) -> CliResult<Vec<usize>> {
    Ok(set.iter().map(|v| g.index_of(v)).collect::<stabrank::Result<_>>()?)
}

/// Named rows of an inequality family on `g`.
fn family_rows(g: &Graph, family: Family) -> CliResult<Vec<(String, LinearInequality)>> {
    let n = g.n();
    Ok(match family {
        Family::Rank => vec![("rank".into(), rank_constraint(g))],
        Family::Cliques => {
            let mut cliques = enumerate_maximal_cliques(g);
            cliques.sort();
            cliques
                .into_iter()
                .map(|q| {
                    let row = LinearInequality::set_sum(n, coords(g, &q)?, rational::one(), RowLabel::Clique);
                    Ok((format!("clique {q}"), row))
                })
                .collect::<CliResult<_>>()?
        }
        Family::OneInterval => {
            let GraphFamily::Web { n: wn, k: 2 } = *g.family() else {
                return Err(CliError::Input("one-interval rows are defined on W:n:2".into()));
            };
            let w = WebId::new(wn, 2)?;
            enumerate_one_interval_sets(wn, true)
                .iter()
                .map(|s| {
                    Ok((
                        format!("one-interval T={}", s.support()),
                        one_interval_inequality(w, s)?,
                    ))
                })
                .collect::<CliResult<_>>()?
        }
        Family::Antiweb => {
            let GraphFamily::Antiweb { n: an, k } = *g.family() else {
                return Err(CliError::Input("antiweb rows need an A:n:k graph".into()));
            };
            vec![(format!("antiweb A:{an}:{k}"), antiweb_constraint(an, k)?.0)]
        }
        Family::Joined => {
            let blocks = JoinBlocks::from_host(g)?;
            vec![("joined".into(), joined_inequality(g, &blocks)?)]
        }
    })
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::Rank => "rank",
        Family::Cliques => "cliques",
        Family::OneInterval => "one-interval",
        Family::Antiweb => "antiweb",
        Family::Joined => "joined",
    }
}

pub fn rank_ineq(
    run: &RunConfig,
    family: Family,
    spec: &str,
    operator: Operator,
    rmax: usize,
    index: Option<usize>,
    certificate: Option<&Path>,
) -> CliResult<Output> {
    let g = load_graph(spec)?;
    let cfg = run.engine();
    let h = qstab(&g);
    let mut rows = family_rows(&g, family)?;
    if let Some(i) = index {
        if i >= rows.len() {
            return Err(CliError::Input(format!(
                "row index {i} out of range: family has {} rows",
                rows.len()
            )));
        }
        rows = vec![rows.swap_remove(i)];
    }
    let hull = stab_bounded(&g, DEFAULT_STAB_BOUND).ok();
    let mut out = Vec::new();
    let mut table = format!(
        "graph    {}\nfamily   {}\noperator {}\n",
        g.tag(),
        family_name(family),
        match operator {
            Operator::Disjunctive => "disjunctive".to_string(),
            Operator::N => format!("N (rmax {rmax})"),
        }
    );
    for (name, row) in rows {
        let mut rr = RowRank {
            name,
            row,
            disjunctive: None,
            n: None,
        };
        let shown = match operator {
            Operator::Disjunctive => {
                let cyclic = g.cyclic_order().is_some() && rr.row.coeffs.windows(2).all(|w| w[0] == w[1]);
                let r = disjunctive_rank_inequality(&rr.row, &h, cyclic, hull.as_ref(), &cfg)?;
                let s = format!("{} (F = {})", r.rank, r.witness_f);
                rr.disjunctive = Some(r);
                s
            }
            Operator::N => {
                let r = n_rank_inequality_upto(&rr.row, &h, rmax, &cfg)?;
                let s = match r.rank {
                    Some(k) => k.to_string(),
                    None => format!("> {rmax}"),
                };
                rr.n = Some(r);
                s
            }
        };
        let _ = writeln!(table, "{}: rank {shown}\n    {}", rr.name, render_row(&rr.row));
        out.push(rr);
    }
    let bundle = Bundle::InequalityRank {
        graph: g.to_json(),
        rows: out,
    };
    if let Some(p) = certificate {
        write_json(p, &bundle)?;
    }
    Ok(Output::new(
        serde_json::to_value(&bundle).expect("bundle serializes"),
        table,
    ))
}

pub struct VerifyArgs {
    pub max_n: Option<usize>,
    pub ks: Option<String>,
    pub ns: Option<String>,
    pub objectives: usize,
    pub graph: Option<String>,
}

pub fn verify(run: &RunConfig, suite: &str, args: VerifyArgs, certificate: Option<&Path>) -> CliResult<Output> {
    if !SUITES.contains(&suite) {
        return Err(CliError::Input(format!(
            "unknown suite {suite:?}; expected one of {}",
            SUITES.join(", ")
        )));
    }
    let bounds = SuiteBounds {
        max_n: args.max_n,
        ks: args.ks.as_deref().map(parse_list).transpose()?,
        ns: args.ns.as_deref().map(parse_list).transpose()?,
        objectives: args.objectives,
        seed: run.seed,
        graph: args.graph.as_deref().map(load_graph).transpose()?,
    };
    let report = run_suite(suite, &bounds, &run.engine())?;
    if let Some(p) = certificate {
        write_json(p, &report)?;
    }
    let mut table = report.to_table();
    let failed = report.failures().count();
    let _ = writeln!(
        table,
        "{} checks, {failed} failed: {}",
        report.entries.len(),
        if failed == 0 { "PASS" } else { "FAIL" }
    );
    Ok(Output {
        json: serde_json::to_value(&report).expect("report serializes"),
        table,
        passed: report.passed(),
    })
}

fn row_kind(g: &Graph, row: &LinearInequality) -> &'static str {
    if row.nonneg_coord().is_some() {
        return "nonneg";
    }
    let (coeffs, rhs) = row.canonical();
    let one = rhs.to_string() == "1";
    let support: Vec<usize> = row.support();
    let unit = support.iter().all(|&j| coeffs[j] == coeffs[support[0]]);
    if unit && one && support.len() > 1 {
        let set = NodeSet::new(support.iter().map(|&j| g.labels()[j]).collect());
        if g.is_clique(&set).unwrap_or(false) {
            return "clique";
        }
    }
    if unit && support.len() == g.n() {
        return "rank";
    }
    "other"
}

pub fn hull(run: &RunConfig, spec: &str) -> CliResult<Output> {
    let g = load_graph(spec)?;
    let cfg = run.engine();
    let v = stab_bounded(&g, DEFAULT_STAB_BOUND)?;
    let facets = convex_hull_facets(&v, run.hull_bound, &cfg.budget)?;
    let mut table = format!("graph {}: {} facets\n", g.tag(), facets.len());
    let rows: Vec<Value> = facets
        .iter()
        .map(|f| {
            let (coeffs, rhs) = f.canonical();
            let kind = row_kind(&g, f);
            let _ = writeln!(table, "{:<8} {}", kind, render_row(f));
            json!({
                "coeffs": coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "rhs": rhs.to_string(),
                "kind": kind,
            })
        })
        .collect();
    Ok(Output::new(
        json!({ "graph": g.tag(), "dim": g.n(), "stable_sets": v.points.len(), "facets": rows }),
        table,
    ))
}

pub fn lp(
    run: &RunConfig,
    spec: &str,
    relaxation: Relaxation,
    operator: LpOperator,
    objective: Option<&str>,
    f: Option<&str>,
    depth: usize,
) -> CliResult<Output> {
    let g = load_graph(spec)?;
    let cfg = run.engine();
    let (h, rel): (HPolytope, &str) = match relaxation {
        Relaxation::Qstab => (qstab(&g), "qstab"),
        Relaxation::Frac => (frac(&g), "frac"),
    };
    let obj = parse_objective(objective, g.n())?;
    let mut table = format!("graph      {}\nrelaxation {rel}\n", g.tag());
    let json = match operator {
        LpOperator::Plain => {
            let r = lp_max(&h, &obj)?;
            r.certify(&h, &obj, &vec![None; h.dim])
                .map_err(|e| stabrank::Error::Inconsistent(format!("LP certificate rejected: {e}")))?;
            let _ = write!(
                table,
                "value      {}\npoint      ({})\n",
                rational::format(&r.value),
                qvec(&r.primal).join(", ")
            );
            json!({
                "graph": g.tag(),
                "relaxation": rel,
                "operator": "plain",
                "objective": qvec(&obj),
                "result": r,
            })
        }
        LpOperator::Disjunctive => {
            let f = f.ok_or_else(|| CliError::Input("--f is required for the disjunctive operator".into()))?;
            let f = NodeSet::new(parse_list(f)?);
            let value = disjunctive_max(&obj, &h, &f, &cfg.lift)?;
            let shown = value.as_ref().map(rational::format);
            let _ = write!(
                table,
                "operator   P_F, F = {f}\nvalue      {}\n",
                shown.as_deref().unwrap_or("infeasible")
            );
            json!({
                "graph": g.tag(),
                "relaxation": rel,
                "operator": "disjunctive",
                "f": f,
                "objective": qvec(&obj),
                "value": shown,
            })
        }
        LpOperator::N => {
            let r = n_operator_max(&obj, &h, depth, &cfg.lift)?;
            let _ = write!(
                table,
                "operator   N^{depth}\nvalue      {}\npoint      ({})\n",
                rational::format(&r.value),
                qvec(&r.point).join(", ")
            );
            json!({
                "graph": g.tag(),
                "relaxation": rel,
                "operator": "n",
                "depth": depth,
                "objective": qvec(&obj),
                "result": r,
            })
        }
    };
    Ok(Output::new(json, table))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists_and_ranges() {
        assert_eq!(parse_list("6..9").unwrap(), vec![6, 7, 8, 9]);
        assert_eq!(parse_list("6..=7").unwrap(), vec![6, 7]);
        assert_eq!(parse_list("2, 3").unwrap(), vec![2, 3]);
        assert!(parse_list("a..3").is_err());
    }

    #[test]
    fn objective_length_checked() {
        assert_eq!(parse_objective(Some("1,1/2,-3"), 3).unwrap()[1], rational::ratio(1, 2));
        assert!(parse_objective(Some("1,2"), 3).is_err());
        assert_eq!(parse_objective(None, 2).unwrap().len(), 2);
    }

    #[test]
    fn rows_render_in_integer_form() {
        let row = LinearInequality::set_sum(4, [0, 2], rational::ratio(1, 2), RowLabel::Other);
        assert_eq!(render_row(&row), "2 x1 + 2 x3 <= 1");
    }

    #[test]
    fn family_rows_by_graph() {
        let w = parse_family("W:9:2").unwrap();
        assert_eq!(family_rows(&w, Family::Cliques).unwrap().len(), 9);
        assert!(!family_rows(&w, Family::OneInterval).unwrap().is_empty());
        assert!(family_rows(&w, Family::Antiweb).is_err());
        let a = parse_family("A:7:2").unwrap();
        assert_eq!(family_rows(&a, Family::Antiweb).unwrap()[0].1.rhs, rational::int(2));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Core(stabrank::Error::Timeout).exit_code(), 2);
        assert_eq!(CliError::Core(stabrank::Error::Parse("x".into())).exit_code(), 3);
        assert_eq!(CliError::Core(stabrank::Error::Inconsistent("x".into())).exit_code(), 1);
        assert_eq!(CliError::Input("x".into()).exit_code(), 3);
    }
}
