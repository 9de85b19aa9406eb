//! Command-line front end: certification, simulation, witness generation,
//! growth, constructive generators, and experiment suites.
//!
//! Exit codes are a stable contract: 0 when the command succeeds and any
//! checked property holds, 1 when a checked property fails (or a suite
//! expectation is missed), 2 on usage or input errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use rescol::consensus::{
    check_safety, necessity_witness, run_simulation, write_adversary_sidecar, write_trace_csv,
    ScenarioFile,
};
use rescol::construct::{
    attach_node_report, build_f_elemental, build_mono_chromatic_robust, greedy_proper_coloring,
    GrowthRule,
};
use rescol::graph::{Color, ColoredGraph, NodeId, NodeSet};
use rescol::robustness::{
    is_mono_chromatic_robust, is_r_robust_colored, is_rs_robust_classic, is_rs_robust_colored,
    is_rs_robust_colored_sampled, max_rs_frontier, RobustnessVerdict,
};
use rescol::suite::{run_suite, ExperimentSuite};

#[derive(Parser)]
#[command(name = "rescol", version, about = "Color-aware network robustness and resilient consensus")]
struct Cli {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Output directory or file, depending on the subcommand.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for seeded subcommands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify a robustness property of a graph file.
    Check(CheckArgs),
    /// Run a scenario file and write its trace and summary.
    Simulate(SimulateArgs),
    /// Emit a non-converging scenario for a graph that fails the colored
    /// (F+1,F+1) check, or report that the graph is robust.
    Witness(WitnessArgs),
    /// Attach a node under a robustness-preserving growth rule.
    Grow(GrowArgs),
    /// Generate a graph constructively.
    Make(MakeArgs),
    /// Run a suite of scenarios and compare outcomes to expectations.
    Suite(SuiteArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Definition {
    /// Colored (r,s)-robustness.
    RsColored,
    /// Colored r-robustness.
    RColored,
    /// Mono-chromatic robustness.
    MonoChromatic,
    /// Classical (r,s)-robustness (colors erased).
    RsClassic,
}

#[derive(Args)]
struct CheckArgs {
    /// Graph file (JSON).
    graph: PathBuf,
    #[arg(long = "def", value_enum, default_value = "rs-colored")]
    definition: Definition,
    #[arg(short, default_value_t = 2)]
    r: usize,
    #[arg(short, default_value_t = 2)]
    s: usize,
    /// Print the violating pair as JSON when the property fails.
    #[arg(long)]
    witness: bool,
    /// Instead of one check, report all maximal (r,s) up to these bounds.
    #[arg(long, num_args = 2, value_names = ["R_MAX", "S_MAX"])]
    frontier: Option<Vec<usize>>,
    /// Non-certifying randomized check over this many sampled pairs
    /// (for graphs beyond the exhaustive range).
    #[arg(long)]
    sample: Option<u64>,
}

#[derive(Args)]
struct SimulateArgs {
    /// Scenario file (JSON).
    scenario: PathBuf,
}

#[derive(Args)]
struct WitnessArgs {
    /// Graph file (JSON).
    graph: PathBuf,
    /// Adversary budget.
    #[arg(short = 'F', long = "adversaries")]
    f: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum RuleKind {
    MonoDegree,
    MaxRsPlusOne,
    ThreeColors,
}

#[derive(Args)]
struct GrowArgs {
    /// Input graph file.
    graph: PathBuf,
    #[arg(long, value_enum)]
    rule: RuleKind,
    #[arg(short, default_value_t = 2)]
    r: usize,
    #[arg(short, default_value_t = 2)]
    s: usize,
    /// Comma-separated neighbor indices for the new node.
    #[arg(long, value_delimiter = ',', required = true)]
    neighbors: Vec<usize>,
    /// Color of the new node.
    #[arg(long, default_value_t = 0)]
    color: usize,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct MakeKind {
    /// Mono-chromatic robust graph on N nodes grown from a rainbow K5.
    #[arg(long, value_name = "N")]
    k5_chain: Option<usize>,
    /// Canonical elemental graph for budget F (complete on 4F+1 nodes,
    /// five rainbow hubs).
    #[arg(long, value_name = "F")]
    f_elemental: Option<usize>,
    /// Replace the coloring of --graph with a greedy proper coloring.
    #[arg(long)]
    proper_color: bool,
}

#[derive(Args)]
struct MakeArgs {
    #[command(flatten)]
    kind: MakeKind,
    /// Input graph for --proper-color.
    #[arg(long)]
    graph: Option<PathBuf>,
}

#[derive(Args)]
struct SuiteArgs {
    /// Suite file (JSON).
    suite: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

/// The global flags, separated from the subcommand so both can move freely.
struct Ctx {
    json: bool,
    out: Option<PathBuf>,
    seed: u64,
}

fn run(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let Cli { json, out, seed, command } = cli;
    let ctx = Ctx { json, out, seed };
    match command {
        Command::Check(args) => cmd_check(&ctx, args),
        Command::Simulate(args) => cmd_simulate(&ctx, args),
        Command::Witness(args) => cmd_witness(&ctx, args),
        Command::Grow(args) => cmd_grow(&ctx, args),
        Command::Make(args) => cmd_make(&ctx, args),
        Command::Suite(args) => cmd_suite(&ctx, args),
    }
}

fn print_verdict(
    cli: &Ctx,
    label: &str,
    verdict: &RobustnessVerdict,
    show_witness: bool,
) -> ExitCode {
    if cli.json {
        let body = if show_witness {
            serde_json::json!({ "property": label, "holds": verdict.holds, "witness": verdict.witness })
        } else {
            serde_json::json!({ "property": label, "holds": verdict.holds })
        };
        println!("{}", serde_json::to_string_pretty(&body).unwrap());
    } else if verdict.holds {
        println!("{label}: holds");
    } else {
        println!("{label}: fails");
        if show_witness {
            println!(
                "{}",
                serde_json::to_string_pretty(&verdict.witness).unwrap()
            );
        }
    }
    if verdict.holds {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_check(cli: &Ctx, args: CheckArgs) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let g = ColoredGraph::load(&args.graph)?;
    if let Some(bounds) = &args.frontier {
        let frontier = max_rs_frontier(&g, bounds[0], bounds[1])?;
        if cli.json {
            println!("{}", serde_json::to_string_pretty(&frontier)?);
        } else {
            println!("maximal (r,s) pairs: {:?}", frontier.maximal);
        }
        return Ok(ExitCode::SUCCESS);
    }
    let (label, verdict) = match args.definition {
        Definition::RsColored => {
            let label = format!("({},{})-robust with coloring", args.r, args.s);
            let v = match args.sample {
                Some(samples) => {
                    is_rs_robust_colored_sampled(&g, args.r, args.s, samples, cli.seed)?
                }
                None => is_rs_robust_colored(&g, args.r, args.s)?,
            };
            (label, v)
        }
        Definition::RColored => (
            format!("{}-robust with coloring", args.r),
            is_r_robust_colored(&g, args.r)?,
        ),
        Definition::MonoChromatic => {
            ("mono-chromatic robust".to_string(), is_mono_chromatic_robust(&g)?)
        }
        Definition::RsClassic => (
            format!("({},{})-robust (classical)", args.r, args.s),
            is_rs_robust_classic(&g, args.r, args.s)?,
        ),
    };
    let label = if args.sample.is_some() {
        format!("{label} [sampled, non-certifying]")
    } else {
        label
    };
    Ok(print_verdict(cli, &label, &verdict, args.witness))
}

fn cmd_simulate(cli: &Ctx, args: SimulateArgs) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let sc = ScenarioFile::load(&args.scenario)?;
    let trace = run_simulation(&sc)?;
    let out = cli.out.clone().unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&out)?;
    write_trace_csv(&trace, out.join("trace.csv"))?;
    write_adversary_sidecar(&sc, out.join("trace.adversaries.json"))?;
    let summary = serde_json::json!({
        "final_spread": trace.final_spread(),
        "steps_to_agreement": trace.steps_to_agreement(sc.tolerance),
        "safety": check_safety(&trace),
        "converged": trace.final_spread() < sc.tolerance,
        "horizon": trace.horizon(),
    });
    let text = serde_json::to_string_pretty(&summary)?;
    std::fs::write(out.join("summary.json"), &text)?;
    if cli.json {
        println!("{text}");
    } else {
        println!(
            "final spread {:.3e}; agreement {}; safety {}",
            trace.final_spread(),
            summary["converged"],
            summary["safety"]
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_witness(cli: &Ctx, args: WitnessArgs) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let g = ColoredGraph::load(&args.graph)?;
    match necessity_witness(&g, args.f)? {
        None => {
            let msg = format!(
                "graph is ({},{})-robust with coloring; no witness",
                args.f + 1,
                args.f + 1
            );
            if cli.json {
                println!("{}", serde_json::json!({ "robust": true, "message": msg }));
            } else {
                println!("{msg}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Some(sc) => {
            let out = cli
                .out
                .clone()
                .unwrap_or_else(|| PathBuf::from("witness_scenario.json"));
            ScenarioFile::save(&sc, &out)?;
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({ "robust": false, "scenario": out.display().to_string() })
                );
            } else {
                println!("witness scenario written to {}", out.display());
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn cmd_grow(cli: &Ctx, args: GrowArgs) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let g = ColoredGraph::load(&args.graph)?;
    let neighbors: NodeSet = args.neighbors.iter().map(|&i| NodeId(i)).collect();
    let rule = match args.rule {
        RuleKind::MonoDegree => GrowthRule::MonoDegree { r: args.r, s: args.s },
        RuleKind::MaxRsPlusOne => GrowthRule::MaxRsPlusOne { r: args.r, s: args.s },
        RuleKind::ThreeColors => GrowthRule::ThreeColors,
    };
    let report = attach_node_report(&g, rule, neighbors, Color(args.color), args.r, args.s)?;
    write_graph_and_report(cli, &report.graph, Some(&report))?;
    Ok(if report.verdict.holds {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_make(cli: &Ctx, args: MakeArgs) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let (g, claim): (ColoredGraph, RobustnessVerdict) = if let Some(n) = args.kind.k5_chain {
        let g = build_mono_chromatic_robust(n, cli.seed)?;
        let v = is_mono_chromatic_robust(&g)?;
        (g, v)
    } else if let Some(f) = args.kind.f_elemental {
        let g = build_f_elemental(f)?;
        let v = if g.node_count() <= rescol::robustness::EXHAUSTIVE_LIMIT {
            is_mono_chromatic_robust(&g)?
        } else {
            RobustnessVerdict { holds: true, witness: None }
        };
        (g, v)
    } else {
        let input = args
            .graph
            .as_ref()
            .ok_or("--proper-color requires --graph")?;
        let g = greedy_proper_coloring(&ColoredGraph::load(input)?);
        let v = if g.node_count() <= rescol::robustness::EXHAUSTIVE_LIMIT
            && g.node_count() >= 2
        {
            is_mono_chromatic_robust(&g)?
        } else {
            RobustnessVerdict { holds: false, witness: None }
        };
        (g, v)
    };
    let report = rescol::construct::ConstructionReport {
        graph: g.clone(),
        rule: "make".to_string(),
        neighbors: NodeSet::EMPTY,
        verdict: claim,
    };
    write_graph_and_report(cli, &g, Some(&report))?;
    Ok(ExitCode::SUCCESS)
}

fn write_graph_and_report(
    cli: &Ctx,
    g: &ColoredGraph,
    report: Option<&rescol::construct::ConstructionReport>,
) -> Result<(), Box<dyn std::error::Error>> {
    match &cli.out {
        Some(path) => {
            g.save(path)?;
            if let Some(rep) = report {
                let rep_path = path.with_extension("report.json");
                std::fs::write(&rep_path, serde_json::to_string_pretty(rep)?)?;
            }
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "graph": path.display().to_string(),
                        "verdict_holds": report.map(|r| r.verdict.holds),
                    })
                );
            } else {
                println!("graph written to {}", path.display());
            }
        }
        None => {
            if cli.json {
                match report {
                    Some(rep) => println!("{}", serde_json::to_string_pretty(rep)?),
                    None => println!("{}", g.to_json()),
                }
            } else {
                println!("{}", g.to_json());
            }
        }
    }
    Ok(())
}

fn cmd_suite(cli: &Ctx, args: SuiteArgs) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let suite = ExperimentSuite::load(&args.suite)?;
    let base = args.suite.parent().map(|p| p.to_path_buf());
    let summaries = run_suite(&suite, base.as_deref(), cli.out.as_deref())?;
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&summaries)?);
    } else {
        for s in &summaries {
            println!(
                "{}: spread {:.3e}, expected {:?}, {}",
                s.name,
                s.final_spread,
                s.expected,
                if s.matched { "match" } else { "MISMATCH" }
            );
        }
    }
    let mismatches: Vec<&str> = summaries
        .iter()
        .filter(|s| !s.matched)
        .map(|s| s.name.as_str())
        .collect();
    if mismatches.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("mismatched scenarios: {}", mismatches.join(", "));
        Ok(ExitCode::from(1))
    }
}
