use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use functidim::constructions::{
    resolving_complete_constant, resolving_complete_general, resolving_cycle_constant, resolving_cycle_general,
    resolving_cycle_permutation, resolving_path_identity, ConstructionResult,
};
use functidim::functigraph::build_two_clique_bridge;
use functidim::graph::generators::{
    complement, complete, complete_bipartite, cycle, disjoint_union, join, path, spider, star, wheel,
};
use functidim::harness::{verify_theorem, SweepConfig, SweepMode, TheoremId};
use functidim::resolver::{metric_dimension_exact, Budget, DimensionResult, DEFAULT_NODE_BUDGET};
use functidim::{build_functigraph, Error, Graph, Result, VertexFunction};

const BUDGET_ENV: &str = "FUNCTIDIM_BUDGET";

#[derive(Parser)]
#[command(name = "functidim", version, about = "Metric dimension of functigraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a graph from a named family.
    Gen {
        /// path, cycle, complete, wheel, complete_bipartite, star, spider,
        /// two_clique (numeric parameters) or join, union, complement (graph files).
        family: String,
        params: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exact metric dimension of a graph file.
    Dim {
        graph: PathBuf,
        #[command(flatten)]
        budget: BudgetArg,
        #[arg(long)]
        json: bool,
    },
    /// Build C(G, f) from a graph file and a function literal or file.
    Functi {
        graph: PathBuf,
        /// 1-based images such as `1,2,2`, or a path to a function file.
        function: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build and check an explicit resolving set.
    Construct {
        id: ConstructId,
        /// Base order for `path_identity`, a function literal or file otherwise.
        param: String,
    },
    /// Sweep a theorem over a parameter range.
    Verify {
        theorem: String,
        /// Inclusive range such as `3..8`.
        #[arg(long)]
        range: Option<String>,
        #[arg(long, conflicts_with = "sample")]
        exhaustive: bool,
        /// Random instances per parameter value.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        budget: BudgetArg,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Args)]
struct BudgetArg {
    /// Solver node budget (also read from FUNCTIDIM_BUDGET).
    #[arg(long)]
    budget: Option<u64>,
}

impl BudgetArg {
    fn resolve(&self) -> Result<Budget> {
        if let Some(n) = self.budget {
            return Ok(Budget::nodes(n));
        }
        match std::env::var(BUDGET_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map(Budget::nodes)
                .map_err(|_| Error::Input(format!("{BUDGET_ENV}={v:?} is not a node count"))),
            Err(_) => Ok(Budget::nodes(DEFAULT_NODE_BUDGET)),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum ConstructId {
    PathIdentity,
    CompleteConstant,
    CompleteGeneral,
    CyclePermutation,
    CycleConstant,
    CycleGeneral,
}

fn read_graph(path: &Path) -> Result<Graph> {
    Graph::parse(&fs::read_to_string(path)?)
}

fn read_function(arg: &str) -> Result<VertexFunction> {
    let path = Path::new(arg);
    if path.is_file() {
        VertexFunction::parse_file(&fs::read_to_string(path)?)
    } else {
        VertexFunction::parse_literal(arg)
    }
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn numbers(family: &str, params: &[String], count: usize) -> Result<Vec<usize>> {
    if params.len() != count {
        return Err(Error::Input(format!("{family} takes {count} numeric parameter(s)")));
    }
    params
        .iter()
        .map(|p| p.parse().map_err(|_| Error::Input(format!("{p:?} is not a non-negative integer"))))
        .collect()
}

fn generate(family: &str, params: &[String]) -> Result<Graph> {
    let files = |count: usize| -> Result<Vec<Graph>> {
        if params.len() != count {
            return Err(Error::Input(format!("{family} takes {count} graph file(s)")));
        }
        params.iter().map(|p| read_graph(Path::new(p))).collect()
    };
    match family {
        "path" => path(numbers(family, params, 1)?[0]),
        "cycle" => cycle(numbers(family, params, 1)?[0]),
        "complete" => complete(numbers(family, params, 1)?[0]),
        "wheel" => wheel(numbers(family, params, 1)?[0]),
        "star" => star(numbers(family, params, 1)?[0]),
        "complete_bipartite" => {
            let p = numbers(family, params, 2)?;
            complete_bipartite(p[0], p[1])
        }
        "spider" => {
            let p = numbers(family, params, 2)?;
            spider(p[0], p[1])
        }
        "two_clique" => {
            let p = numbers(family, params, 2)?;
            build_two_clique_bridge(p[0], p[1])
        }
        "join" => {
            let g = files(2)?;
            join(&g[0], &g[1])
        }
        "union" => {
            let g = files(2)?;
            disjoint_union(&g[0], &g[1])
        }
        "complement" => complement(&files(1)?[0]),
        other => Err(Error::Input(format!("unknown family {other:?}"))),
    }
}

#[derive(Serialize)]
struct DimOutput<'a> {
    order: usize,
    size: usize,
    dimension: usize,
    witness: &'a [usize],
    nodes: u64,
}

#[derive(Serialize)]
struct ConstructOutput<'a> {
    construction: &'a ConstructionResult,
    verified: bool,
}

fn parse_range(text: &str) -> Result<(usize, usize)> {
    let bad = || Error::Input(format!("range {text:?} should look like 3..8"));
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

/// Runs one command; `Ok(false)` means it completed but found a failure.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Gen { family, params, output } => {
            emit(&generate(&family, &params)?.to_text(), output.as_deref())?;
            Ok(true)
        }
        Command::Dim { graph, budget, json } => {
            let g = read_graph(&graph)?;
            let DimensionResult { dimension, witness, stats, .. } = metric_dimension_exact(&g, budget.resolve()?)?;
            if json {
                let out = DimOutput {
                    order: g.order(),
                    size: g.size(),
                    dimension,
                    witness: &witness,
                    nodes: stats.nodes,
                };
                println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
            } else {
                println!("dimension {dimension}");
                println!("witness {witness:?}");
            }
            Ok(true)
        }
        Command::Functi { graph, function, output } => {
            let g = read_graph(&graph)?;
            let f = read_function(&function)?;
            emit(&build_functigraph(&g, &f)?.graph().to_text(), output.as_deref())?;
            Ok(true)
        }
        Command::Construct { id, param } => {
            let (c, composed) = match id {
                ConstructId::PathIdentity => {
                    let n = numbers("path_identity", &[param], 1)?[0];
                    let c = resolving_path_identity(n)?;
                    let composed = build_functigraph(&path(n)?, &VertexFunction::identity(n))?;
                    (c, composed)
                }
                _ => {
                    let f = read_function(&param)?;
                    let n = f.domain_order();
                    let (c, base) = match id {
                        ConstructId::CompleteConstant => (resolving_complete_constant(&f)?, complete(n)?),
                        ConstructId::CompleteGeneral => (resolving_complete_general(&f)?, complete(n)?),
                        ConstructId::CyclePermutation => (resolving_cycle_permutation(&f)?, cycle(n)?),
                        ConstructId::CycleConstant => (resolving_cycle_constant(&f)?, cycle(n)?),
                        ConstructId::CycleGeneral => (resolving_cycle_general(&f)?, cycle(n)?),
                        ConstructId::PathIdentity => unreachable!(),
                    };
                    (c, build_functigraph(&base, &f)?)
                }
            };
            let verified = c.verify(composed.graph())?;
            let out = ConstructOutput {
                construction: &c,
                verified,
            };
            println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
            Ok(verified)
        }
        Command::Verify {
            theorem,
            range,
            exhaustive,
            sample,
            seed,
            budget,
            json,
            csv,
        } => {
            let id: TheoremId = theorem.parse()?;
            let (lo, hi) = match range {
                Some(r) => parse_range(&r)?,
                None => id.default_range(),
            };
            let mode = match (exhaustive, sample) {
                (true, _) => SweepMode::Exhaustive,
                (false, Some(count)) => SweepMode::Sample { count, seed },
                (false, None) => SweepMode::Default,
            };
            let config = SweepConfig::range(lo, hi).with_mode(mode).with_budget(budget.resolve()?);
            let report = verify_theorem(id, config)?;
            if json {
                println!("{}", report.to_json());
            } else if csv {
                print!("{}", report.to_csv()?);
            } else {
                print!("{}", report.to_table());
                eprintln!("elapsed {:.2?}", report.elapsed);
            }
            Ok(!report.has_failures())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
