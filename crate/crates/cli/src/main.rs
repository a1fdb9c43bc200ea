mod commands;
mod recheck;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use stabrank::budget::Budget;
use stabrank::liftproject::LiftConfig;
use stabrank::rank::EngineConfig;

/// Exact disjunctive and N-operator ranks for stable set relaxations of
/// webs, antiwebs and their joins.
#[derive(Parser, Debug)]
#[command(name = "stabrank", version)]
struct Cli {
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Largest dimension for convex hull computations.
    #[arg(long, global = true, default_value_t = 12, value_parser = positive)]
    pub hull_bound: usize,
    /// Largest |F| for the disjunctive operator.
    #[arg(long, global = true, default_value_t = 12, value_parser = positive)]
    pub piece_cap: usize,
    /// Largest depth for the N operator.
    #[arg(long, global = true, default_value_t = 2, value_parser = positive)]
    pub depth_cap: usize,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true, value_parser = positive)]
    pub workers: Option<usize>,
    /// Wall-clock budget in seconds.
    #[arg(long, global = true, value_parser = positive)]
    pub time_budget: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for sampled modes.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

impl RunConfig {
    pub fn engine(&self) -> EngineConfig {
        EngineConfig {
            lift: LiftConfig {
                piece_cap: self.piece_cap,
                depth_cap: self.depth_cap,
                ..LiftConfig::default()
            },
            hull_bound: self.hull_bound,
            budget: match self.time_budget {
                Some(s) => Budget::with_timeout(Duration::from_secs(s as u64)),
                None => Budget::unlimited(),
            },
            ..EngineConfig::default()
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a graph from a family spec and emit it as JSON or DIMACS.
    Generate {
        /// W:n:k, A:n:k, C:n, K:n or join:<spec>,<spec>,...
        spec: String,
        /// Also write <PREFIX>.dimacs and <PREFIX>.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Disjunctive or N rank of a graph or of an inequality.
    Rank {
        #[command(subcommand)]
        target: RankTarget,
    },
    /// Run a verification suite: web-formulas, rdfar, w2, join or operators.
    Verify {
        suite: String,
        #[arg(long)]
        max_n: Option<usize>,
        /// Comma-separated web parameters k.
        #[arg(long)]
        ks: Option<String>,
        /// Node counts, as a list `6,7,9` or a range `6..10` (inclusive).
        #[arg(long = "n", alias = "ns")]
        ns: Option<String>,
        /// Random objectives per graph for the operators suite.
        #[arg(long, default_value_t = 20)]
        objectives: usize,
        /// Host graph for the join suite.
        #[arg(long)]
        graph: Option<String>,
        /// Write the full report to this file.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Re-verify a rank result or report through independent checks.
    Recheck { file: PathBuf },
    /// Facets of the stable set polytope.
    Hull { spec: String },
    /// Maximize a linear objective over a relaxation or a lift of it.
    Lp {
        spec: String,
        #[arg(long, value_enum, default_value_t = Relaxation::Qstab)]
        relaxation: Relaxation,
        #[arg(long, value_enum, default_value_t = LpOperator::Plain)]
        operator: LpOperator,
        /// Comma-separated rationals, one per node; all ones when omitted.
        #[arg(long, allow_hyphen_values = true)]
        objective: Option<String>,
        /// Disjunction nodes for the disjunctive operator, e.g. `1,4`.
        #[arg(long)]
        f: Option<String>,
        /// Depth of the N operator.
        #[arg(long, default_value_t = 1)]
        depth: usize,
    },
}

#[derive(Subcommand, Debug)]
enum RankTarget {
    /// Smallest number of nodes whose deletion leaves a perfect graph.
    Graph {
        spec: String,
        #[arg(value_enum, ignore_case = true, default_value_t = Operator::Disjunctive)]
        operator: Operator,
        /// Polyhedral route: smallest F with P_F(qstab) equal to the hull.
        #[arg(long)]
        polyhedral: bool,
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Rank of each row of an inequality family.
    Ineq {
        #[arg(value_enum)]
        family: Family,
        spec: String,
        #[arg(value_enum, ignore_case = true, default_value_t = Operator::Disjunctive)]
        operator: Operator,
        /// Deepest N lift to try.
        #[arg(long, default_value_t = 1)]
        rmax: usize,
        /// Only the row with this 0-based index within the family.
        #[arg(long)]
        index: Option<usize>,
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operator {
    #[value(alias = "d")]
    Disjunctive,
    N,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    #[value(alias = "rank-constraint")]
    Rank,
    #[value(alias = "clique")]
    Cliques,
    OneInterval,
    Antiweb,
    Joined,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relaxation {
    Qstab,
    Frac,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpOperator {
    Plain,
    Disjunctive,
    N,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    if let Some(w) = cli.run.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(w).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    }
    let run = &cli.run;
    let result = match cli.command {
        Command::Generate { spec, out } => commands::generate(run, &spec, out.as_deref()),
        Command::Rank { target } => match target {
            RankTarget::Graph {
                spec,
                operator,
                polyhedral,
                certificate,
            } => commands::rank_graph(run, &spec, operator, polyhedral, certificate.as_deref()),
            RankTarget::Ineq {
                family,
                spec,
                operator,
                rmax,
                index,
                certificate,
            } => commands::rank_ineq(run, family, &spec, operator, rmax, index, certificate.as_deref()),
        },
        Command::Verify {
            suite,
            max_n,
            ks,
            ns,
            objectives,
            graph,
            certificate,
        } => commands::verify(
            run,
            &suite,
            commands::VerifyArgs {
                max_n,
                ks,
                ns,
                objectives,
                graph,
            },
            certificate.as_deref(),
        ),
        Command::Recheck { file } => recheck::run(run, &file),
        Command::Hull { spec } => commands::hull(run, &spec),
        Command::Lp {
            spec,
            relaxation,
            operator,
            objective,
            f,
            depth,
        } => commands::lp(
            run,
            &spec,
            relaxation,
            operator,
            objective.as_deref(),
            f.as_deref(),
            depth,
        ),
    };
    match result {
        Ok(out) => {
            print!("{}", out.render(run.format));
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(e) => {
            if let Some(partial) = e.partial() {
                print!("{}", partial.render(run.format));
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
