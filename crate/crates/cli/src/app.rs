//! Argument parsing and subcommand dispatch.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use sierpdom_core::codec::{self, Format};
use sierpdom_core::constructions::{build_3k1_set, build_3k2_set, build_claim2_set, check_hk};
use sierpdom_core::search::{sierpinski_gamma_both, SearchError};
use sierpdom_core::solver::{self, Constraints, DEFAULT_CAP};
use sierpdom_core::{DominationInstance, Graph, Mode, SearchConfig, SierpinskiProduct, Strategy};

use crate::harness::{self, CheckId, Params, RunConfig, Verdict};
use crate::input::{parse_function, parse_graph, parse_list, parse_range, UsageError};
use crate::report::{self, OutputFormat};

pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "sierpdom",
    version,
    about = "Domination in Sierpinski products of graphs"
)]
pub struct Cli {
    /// Largest graph order handed to the solver.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    /// Solver calls allowed per search (strategy default when omitted).
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Worker threads (0: one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Output format: json, csv or markdown.
    #[arg(long, global = true, default_value = "json")]
    pub format: String,
    /// Output file (a directory for run-all). A bare format name is
    /// accepted as a synonym for --format.
    #[arg(long, global = true)]
    pub out: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Min,
    Max,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Auto,
    Exhaustive,
    OrbitReduced,
    DistanceSequence,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Strategy {
        match s {
            StrategyArg::Auto => Strategy::Auto,
            StrategyArg::Exhaustive => Strategy::Exhaustive,
            StrategyArg::OrbitReduced => Strategy::OrbitReduced,
            StrategyArg::DistanceSequence => Strategy::DistanceSequence,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Claim2,
    #[value(name = "3k1")]
    ThreeK1,
    #[value(name = "3k2")]
    ThreeK2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Dot,
    Graph6,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimum dominating set of a graph, or of a product when --h and --f are given.
    Gamma {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: Option<String>,
        #[arg(long)]
        f: Option<String>,
        /// JSON file with forced_in, pre_dominated and deleted lists.
        #[arg(long)]
        constraints: Option<PathBuf>,
        /// Use the exhaustive subset oracle instead of branch and bound.
        #[arg(long)]
        brute: bool,
    },
    /// Build G x_f H and print it.
    Product {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        #[arg(long)]
        f: String,
        #[arg(long, value_enum, default_value = "dot")]
        emit: GraphFormat,
    },
    /// Minimum and/or maximum domination number over all functions f.
    Search {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        #[arg(long, value_enum, default_value = "both")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "auto")]
        strategy: StrategyArg,
    },
    /// Build and validate one of the explicit dominating sets.
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Fiber for claim2 (default cycle:3k+1).
        #[arg(long)]
        h: Option<String>,
        /// Function for claim2 (default constant:1).
        #[arg(long)]
        f: Option<String>,
        /// Write the plan JSON to this file.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Test membership in the class H_k.
    CheckHk {
        #[arg(long)]
        h: String,
        #[arg(long)]
        k: usize,
    },
    /// Run one theorem check.
    Verify {
        id: String,
        #[arg(long)]
        n: Option<String>,
        #[arg(long)]
        k: Option<String>,
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        pairs: Option<usize>,
        #[arg(long)]
        functions: Option<usize>,
    },
    /// Tabulate main-1 or main-2 over (n, k, p).
    Table {
        id: String,
        #[arg(long)]
        n: Option<String>,
        #[arg(long)]
        k: Option<String>,
        #[arg(long)]
        p: Option<String>,
    },
    /// Run every check with its default ranges.
    RunAll,
}

struct Output {
    format: OutputFormat,
    path: Option<PathBuf>,
}

impl Output {
    fn from_cli(cli: &Cli) -> Result<Output, UsageError> {
        let mut format: OutputFormat = cli.format.parse()?;
        let mut path = None;
        if let Some(out) = &cli.out {
            match out.parse::<OutputFormat>() {
                Ok(f) => format = f,
                Err(_) => path = Some(PathBuf::from(out)),
            }
        }
        Ok(Output { format, path })
    }

    fn emit(&self, text: &str) -> Result<(), UsageError> {
        match &self.path {
            Some(p) => write_file(p, text),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), UsageError> {
    std::fs::write(path, text).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn params_for(
    id: CheckId,
    n: &Option<String>,
    k: &Option<String>,
    p: &Option<String>,
    pairs: Option<usize>,
    functions: Option<usize>,
) -> Result<Params, UsageError> {
    let mut params = Params::default_for(id);
    if let Some(n) = n {
        params.n = parse_range(n)?;
    }
    if let Some(k) = k {
        params.k = parse_range(k)?;
    }
    if let Some(p) = p {
        params.p = parse_list(p)?;
        if params.p.iter().any(|&p| p > 2) {
            return Err(UsageError("p must be 0, 1 or 2".into()));
        }
    }
    if let Some(v) = pairs {
        params.pairs = v;
    }
    if let Some(v) = functions {
        params.functions = v;
    }
    let cycles_needed = !matches!(id, CheckId::Elementary | CheckId::Prop1Hk);
    if cycles_needed && params.n.0 < 3 {
        return Err(UsageError("n must be at least 3".into()));
    }
    if params.k.0 == 0 {
        return Err(UsageError("k must be at least 1".into()));
    }
    if id == CheckId::Elementary && params.n.0 == 0 {
        return Err(UsageError("graph orders must be at least 1".into()));
    }
    Ok(params)
}

#[derive(Serialize)]
struct PartialSearch {
    partial: bool,
    budget: u64,
    candidates_needed: u64,
    best_min: Option<sierpdom_core::search::SearchOutcomeJson>,
    best_max: Option<sierpdom_core::search::SearchOutcomeJson>,
}

fn run(cli: Cli) -> Result<i32, UsageError> {
    let out = Output::from_cli(&cli)?;
    let cfg = RunConfig {
        cap: cli.cap,
        budget: cli.budget,
        workers: cli.workers,
        seed: cli.seed,
    };
    if cli.cap == 0 {
        return Err(UsageError("--cap must be positive".into()));
    }
    match &cli.command {
        Command::Gamma {
            g,
            h,
            f,
            constraints,
            brute,
        } => {
            let base = parse_graph(g)?;
            let graph = match (h, f) {
                (Some(h), Some(f)) => {
                    let h = parse_graph(h)?;
                    let f = parse_function(f, base.order())?;
                    SierpinskiProduct::new(&base, &h, &f)
                        .map_err(|e| UsageError(e.to_string()))?
                        .into_graph()
                }
                (None, None) => base,
                _ => return Err(UsageError("--h and --f go together".into())),
            };
            let c = match constraints {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
                    serde_json::from_str::<Constraints>(&text)
                        .map_err(|e| UsageError(format!("{}: {e}", path.display())))?
                }
                None => Constraints::default(),
            };
            let inst = DominationInstance::with_constraints(graph, c);
            if *brute {
                match solver::brute_force_solve(&inst, cli.cap) {
                    Ok(v) => out.emit(&report::json(&serde_json::json!({ "gamma": v })))?,
                    Err(e) => {
                        eprintln!("error: {e}");
                        return Ok(1);
                    }
                }
                return Ok(0);
            }
            match solver::solve_with_cap(&inst, cli.cap) {
                Ok(cert) => {
                    let j = cert.to_json();
                    let witness: Vec<String> = j.witness.iter().map(|v| v.to_string()).collect();
                    let text = match out.format {
                        OutputFormat::Json => report::json(&j),
                        OutputFormat::Csv => format!(
                            "gamma,witness,nodes_explored,millis\n{},{},{},{}\n",
                            j.gamma,
                            witness.join(" "),
                            j.nodes_explored,
                            j.millis
                        ),
                        OutputFormat::Markdown => format!(
                            "| gamma | witness | nodes |\n|---|---|---|\n| {} | {} | {} |\n",
                            j.gamma,
                            witness.join(", "),
                            j.nodes_explored
                        ),
                    };
                    out.emit(&text)?;
                    Ok(0)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    Ok(1)
                }
            }
        }
        Command::Product { g, h, f, emit } => {
            let g = parse_graph(g)?;
            let h = parse_graph(h)?;
            let f = parse_function(f, g.order())?;
            let p = SierpinskiProduct::new(&g, &h, &f).map_err(|e| UsageError(e.to_string()))?;
            let text = match emit {
                GraphFormat::Dot => p.to_dot(),
                GraphFormat::Graph6 => format!("{}\n", codec::encode(p.graph(), Format::Graph6)),
                GraphFormat::Json => {
                    format!("{}\n", codec::encode(p.graph(), Format::EdgeListJson))
                }
            };
            out.emit(&text)?;
            Ok(0)
        }
        Command::Search {
            g,
            h,
            mode,
            strategy,
        } => {
            let g = parse_graph(g)?;
            let h = parse_graph(h)?;
            let scfg = SearchConfig {
                strategy: (*strategy).into(),
                budget: cli.budget,
                workers: cli.workers,
                cap: cli.cap,
            };
            let wanted =
                |m: Mode| *mode == ModeArg::Both || (m == Mode::Min) == (*mode == ModeArg::Min);
            match sierpinski_gamma_both(&g, &h, &scfg) {
                Ok((lo, hi)) => {
                    let outcomes: Vec<_> = [lo, hi]
                        .into_iter()
                        .filter(|o| wanted(o.mode))
                        .map(|o| o.to_json())
                        .collect();
                    let text = match out.format {
                        OutputFormat::Json if outcomes.len() == 1 => report::json(&outcomes[0]),
                        OutputFormat::Json => report::json(&outcomes),
                        _ => {
                            let mut s = String::from("mode,value,witness_f,strategy,candidates\n");
                            for o in &outcomes {
                                let f: Vec<String> =
                                    o.witness_f.iter().map(|v| v.to_string()).collect();
                                s.push_str(&format!(
                                    "{},{},{},{},{}\n",
                                    serde_json::to_value(o.mode).unwrap().as_str().unwrap(),
                                    o.value,
                                    f.join(" "),
                                    o.strategy.name(),
                                    o.candidates
                                ));
                            }
                            s
                        }
                    };
                    out.emit(&text)?;
                    Ok(0)
                }
                Err(SearchError::Budget(b)) => {
                    let partial = PartialSearch {
                        partial: true,
                        budget: b.budget,
                        candidates_needed: b.total,
                        best_min: b
                            .partial_min
                            .filter(|o| wanted(o.mode))
                            .map(|o| o.to_json()),
                        best_max: b
                            .partial_max
                            .filter(|o| wanted(o.mode))
                            .map(|o| o.to_json()),
                    };
                    out.emit(&report::json(&partial))?;
                    eprintln!("search stopped by budget: values are bounds, not exact");
                    Ok(Verdict::Partial.exit_code())
                }
                Err(SearchError::Core(e)) => Err(UsageError(e.to_string())),
            }
        }
        Command::Construct {
            family,
            n,
            k,
            h,
            f,
            emit,
        } => {
            let built = match family {
                Family::ThreeK1 => build_3k1_set(*n, *k),
                Family::ThreeK2 => build_3k2_set(*n, *k),
                Family::Claim2 => {
                    let g = Graph::cycle(*n).map_err(|e| UsageError(e.to_string()))?;
                    let hs = h.clone().unwrap_or_else(|| format!("cycle:{}", 3 * k + 1));
                    let h = parse_graph(&hs)?;
                    let f = parse_function(f.as_deref().unwrap_or("constant:1"), *n)?;
                    build_claim2_set(&g, &h, *k, &f)
                }
            };
            match built {
                Ok(plan) => {
                    let m = match family {
                        Family::ThreeK1 => 3 * k + 1,
                        Family::ThreeK2 => 3 * k + 2,
                        Family::Claim2 => parse_graph(
                            &h.clone().unwrap_or_else(|| format!("cycle:{}", 3 * k + 1)),
                        )?
                        .order(),
                    };
                    let text = plan.to_json(m) + "\n";
                    match emit {
                        Some(path) => write_file(path, &text)?,
                        None => out.emit(&text)?,
                    }
                    Ok(0)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    Ok(Verdict::Fail.exit_code())
                }
            }
        }
        Command::CheckHk { h, k } => {
            let graph = parse_graph(h)?;
            let report = check_hk(&graph, *k).map_err(|e| UsageError(e.to_string()))?;
            out.emit(&report::json(&report))?;
            Ok(0)
        }
        Command::Verify {
            id,
            n,
            k,
            p,
            pairs,
            functions,
        } => {
            let id: CheckId = id.parse()?;
            let params = params_for(id, n, k, p, *pairs, *functions)?;
            let check = harness::verify(id, &params, &cfg);
            out.emit(&report::render_check(&check, out.format))?;
            if let Some(cmd) = &check.reproduce {
                eprintln!("{id} failed; reproduce with: {cmd}");
            }
            Ok(check.verdict.exit_code())
        }
        Command::Table { id, n, k, p } => {
            let id: CheckId = id.parse()?;
            let params = params_for(id, n, k, p, None, None)?;
            let table = harness::table(id, &params, &cfg)?;
            out.emit(&report::render_table(&table, out.format))?;
            Ok(table.verdict.exit_code())
        }
        Command::RunAll => {
            let summary = harness::run_all(&cfg);
            match &out.path {
                Some(dir) => {
                    std::fs::create_dir_all(dir)
                        .map_err(|e| UsageError(format!("{}: {e}", dir.display())))?;
                    write_file(&dir.join("summary.json"), &report::json(&summary))?;
                    write_file(&dir.join("summary.md"), &report::summary_markdown(&summary))?;
                    println!(
                        "{}: {} pass, {} fail, {} partial; reports in {}",
                        summary.verdict,
                        summary.passed,
                        summary.failed,
                        summary.partial,
                        dir.display()
                    );
                }
                None => print!("{}", report::render_summary(&summary, out.format)),
            }
            for c in summary.checks.iter().filter(|c| c.reproduce.is_some()) {
                eprintln!(
                    "{} failed; reproduce with: {}",
                    c.id,
                    c.reproduce.as_deref().unwrap_or("")
                );
            }
            Ok(summary.verdict.exit_code())
        }
    }
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
