//! Command-line front end. [`run`] is the whole program minus process I/O.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::agent::{AgentConfig, Simulator, TieRule, TraversalTrace};
use crate::bne::{self, BiasDistribution, BneError, FanBneSolution};
use crate::graph::{
    fan_path, make_deviation_spine, make_fan, make_named_instance, FanSpec, NamedInstance, PathRecord, TaskGraph,
};
use crate::oracle::{self, Suite};
use crate::pure_eq::{self, PureEqError};
use crate::rational::{parse_rational, render, Rational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_EMPTY: i32 = 3;
pub const EXIT_VERIFY_FAILED: i32 = 4;

/// What a command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CliOutput {
    fn ok(stdout: String) -> Self {
        CliOutput { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(code: i32, stderr: impl Into<String>) -> Self {
        CliOutput { code, stdout: String::new(), stderr: stderr.into() }
    }
}

#[derive(Debug, Parser)]
#[command(name = "biasgraph", version, about = "Races between present-biased agents on task graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a graph file and print it in canonical form.
    Validate(GraphArg),
    /// Print a generated graph.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Trace a naive agent from source to sink.
    Simulate {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, value_parser = rational)]
        bias: Rational,
        /// Opponent's committed path (comma-separated names, or P0..Pn on fans).
        #[arg(long)]
        opponent: Option<String>,
        #[arg(long, value_parser = rational, default_value = "0")]
        reward: Rational,
        #[arg(long, value_enum, default_value_t = TieArg::Split)]
        tie_rule: TieArg,
    },
    /// Biased cost over optimal cost, without competition.
    CostRatio {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, value_parser = rational)]
        bias: Rational,
    },
    /// Whether both agents on a path is an equilibrium.
    NeCheck {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        path: String,
        #[arg(long, value_parser = rational)]
        reward: Rational,
        #[arg(long, value_parser = rational)]
        bias: Rational,
    },
    /// All rewards that make a path an equilibrium, and the smallest.
    MinReward {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        path: String,
        #[arg(long, value_parser = rational)]
        bias: Rational,
    },
    /// Equilibria between unbiased agents.
    UnbiasedEq {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, value_parser = rational)]
        reward: Rational,
        #[arg(long, value_enum, default_value_t = TieArg::Split)]
        tie_rule: TieArg,
    },
    /// Cutoff equilibrium on the fan under bias uncertainty.
    BneFan {
        #[command(flatten)]
        fan: FanArgs,
        #[command(flatten)]
        dist: DistArgs,
        #[arg(long)]
        r: f64,
    },
    /// Same with several opponents; give the total prize or the per-agent share.
    BneFanMulti {
        #[command(flatten)]
        fan: FanArgs,
        #[command(flatten)]
        dist: DistArgs,
        /// Number of opponents.
        #[arg(long)]
        m: u32,
        #[arg(long, conflicts_with = "per_agent_s", required_unless_present = "per_agent_s")]
        r: Option<f64>,
        /// Prize divided by the number of agents, `r/(m+1)`.
        #[arg(long)]
        per_agent_s: Option<f64>,
    },
    /// Two-agent solutions over an evenly spaced range of rewards.
    BneSweep {
        #[command(flatten)]
        fan: FanArgs,
        #[command(flatten)]
        dist: DistArgs,
        #[arg(long, default_value_t = 0.0)]
        r_min: f64,
        #[arg(long, default_value_t = 20.0)]
        r_max: f64,
        #[arg(long, default_value_t = 41)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Cross-check the analyses against brute force on random instances.
    Verify {
        #[arg(long, value_parser = ["alg1", "prop1", "thm1", "thm2", "bne"])]
        suite: String,
        #[arg(long, default_value_t = 50)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
struct GraphArg {
    /// Graph JSON file.
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Debug, Subcommand)]
enum Family {
    /// s -> t at cost 1, plus a free chain v1..vn where vi -> t costs c^i.
    Fan(FanArgs),
    /// Small procrastination example: biased cost 21 against optimal 6.
    Fig1,
    /// Instance whose equilibrium rewards form a bounded interval.
    Fig7a,
    /// Instance where the cheap path fails for small rewards.
    Fig7b,
    /// Three-exit fan with exit costs c, c2, c3 (need 1 < c < c^2 < c2 < c2^2 < c3).
    Mod3fan {
        #[arg(long, value_parser = rational)]
        c: Rational,
        #[arg(long, value_parser = rational)]
        c2: Rational,
        #[arg(long, value_parser = rational)]
        c3: Rational,
    },
    /// Unit-cost spine with costly detours.
    Spine {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Args)]
struct FanArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_parser = rational)]
    c: Rational,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DistKind {
    EqualRevenue,
    Exponential,
    Uniform,
}

#[derive(Debug, Args)]
struct DistArgs {
    #[arg(long, value_enum)]
    dist: DistKind,
    /// Support lower end for the shifted families; defaults to the fan's c.
    #[arg(long)]
    shift: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    rate: f64,
    #[arg(long)]
    lo: Option<f64>,
    #[arg(long)]
    hi: Option<f64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TieArg {
    Split,
    BothFull,
    Nothing,
}

impl From<TieArg> for TieRule {
    fn from(t: TieArg) -> Self {
        match t {
            TieArg::Split => TieRule::Split,
            TieArg::BothFull => TieRule::BothFull,
            TieArg::Nothing => TieRule::Nothing,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Pretty JSON with sorted keys.
fn emit<T: Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("output serializes");
    serde_json::to_string_pretty(&value).expect("values print") + "\n"
}

type Cmd = Result<CliOutput, CliOutput>;

fn invalid(e: impl std::fmt::Display) -> CliOutput {
    CliOutput::fail(EXIT_INVALID, format!("error: {e}\n"))
}

fn load(arg: &GraphArg) -> Result<(TaskGraph, Vec<String>), CliOutput> {
    let text = std::fs::read_to_string(&arg.graph).map_err(|e| invalid(format!("{}: {e}", arg.graph.display())))?;
    let validated = TaskGraph::from_json(&text).map_err(invalid)?;
    Ok((validated.graph, validated.pruned))
}

fn parse_path(graph: &TaskGraph, text: &str) -> Result<PathRecord, CliOutput> {
    let shorthand = text
        .strip_prefix('P')
        .and_then(|i| i.parse::<usize>().ok())
        .filter(|_| !text.contains(','));
    let path = match shorthand {
        Some(i) => fan_path(graph, i),
        None => {
            let names: Vec<&str> = text.split(',').map(str::trim).collect();
            graph.path_by_names(&names)
        }
    };
    let path = path.map_err(invalid)?;
    if path.first() != graph.source() || path.last() != graph.sink() {
        return Err(invalid(format!("{text} does not run from source to sink")));
    }
    Ok(path)
}

fn trace_json(graph: &TaskGraph, trace: &TraversalTrace) -> Value {
    json!({
        "path": graph.path_names(&trace.path),
        "cost": render(trace.path.cost()),
        "steps": trace.steps,
    })
}

fn pure_eq_failure(e: PureEqError) -> CliOutput {
    match e {
        PureEqError::EmptyFeasibleSet | PureEqError::NoDominantPath => CliOutput::fail(EXIT_EMPTY, format!("{e}\n")),
        other => invalid(other),
    }
}

fn dist(args: &DistArgs, spec: &FanSpec) -> Result<BiasDistribution, CliOutput> {
    let shift = args.shift.unwrap_or_else(|| spec.c_f64());
    match args.dist {
        DistKind::EqualRevenue => BiasDistribution::shifted_equal_revenue(shift),
        DistKind::Exponential => BiasDistribution::shifted_exponential(shift, args.rate),
        DistKind::Uniform => match (args.lo, args.hi) {
            (Some(lo), Some(hi)) => BiasDistribution::uniform(lo, hi),
            _ => return Err(invalid("uniform needs --lo and --hi")),
        },
    }
    .map_err(invalid)
}

fn fan_spec(args: &FanArgs) -> Result<FanSpec, CliOutput> {
    FanSpec::new(args.n, args.c.clone()).map_err(invalid)
}

/// Solutions print either way; a trivial fixed point exits 3.
fn bne_output(result: Result<FanBneSolution, BneError>) -> Cmd {
    match result {
        Ok(s) => Ok(CliOutput::ok(emit(&s))),
        Err(BneError::NoNontrivialFixedPoint(s)) => Ok(CliOutput {
            code: EXIT_EMPTY,
            stdout: emit(&*s),
            stderr: "only the trivial fixed point p = 0 exists\n".into(),
        }),
        Err(e) => Err(invalid(e)),
    }
}

fn dispatch(command: Command) -> Cmd {
    match command {
        Command::Validate(arg) => {
            let (graph, pruned) = load(&arg)?;
            let stderr = if pruned.is_empty() {
                String::new()
            } else {
                format!("pruned vertices off every source-sink path: {}\n", pruned.join(", "))
            };
            Ok(CliOutput { code: EXIT_OK, stdout: emit(&graph.to_raw()), stderr })
        }
        Command::Gen { family } => {
            let graph = match family {
                Family::Fan(args) => make_fan(&fan_spec(&args)?),
                Family::Fig1 => make_named_instance(&NamedInstance::Fig1).map_err(invalid)?,
                Family::Fig7a => make_named_instance(&NamedInstance::Fig7a).map_err(invalid)?,
                Family::Fig7b => make_named_instance(&NamedInstance::Fig7b).map_err(invalid)?,
                Family::Mod3fan { c, c2, c3 } => {
                    make_named_instance(&NamedInstance::ModifiedThreeFan { c, c2, c3 }).map_err(invalid)?
                }
                Family::Spine { n } => make_deviation_spine(n).map_err(invalid)?,
            };
            Ok(CliOutput::ok(emit(&graph.to_raw())))
        }
        Command::Simulate { graph, bias, opponent, reward, tie_rule } => {
            let (g, _) = load(&graph)?;
            let config = AgentConfig::new(bias).map_err(invalid)?.with_tie_rule(tie_rule.into());
            let opponent = opponent.map(|p| parse_path(&g, &p)).transpose()?;
            let trace = Simulator::new(&g).traverse(&config, opponent.as_ref(), &reward).map_err(invalid)?;
            Ok(CliOutput::ok(emit(&trace_json(&g, &trace))))
        }
        Command::CostRatio { graph, bias } => {
            let (g, _) = load(&graph)?;
            let config = AgentConfig::new(bias).map_err(invalid)?;
            let sim = Simulator::new(&g);
            let trace = sim.traverse(&config, None, &Rational::default()).map_err(invalid)?;
            let ratio = sim.cost_ratio(&config).map_err(|e| CliOutput::fail(EXIT_EMPTY, format!("{e}\n")))?;
            let optimal = sim.hops().cheapest(g.source(), crate::graph::HopBound::Unbounded).cloned();
            Ok(CliOutput::ok(emit(&json!({
                "path": g.path_names(&trace.path),
                "biased_cost": render(trace.path.cost()),
                "optimal_cost": optimal.as_ref().map(render),
                "ratio": render(&ratio),
            }))))
        }
        Command::NeCheck { graph, path, reward, bias } => {
            let (g, _) = load(&graph)?;
            let q = parse_path(&g, &path)?;
            let result = pure_eq::check_symmetric_ne(&g, &q, &reward, &bias).map_err(pure_eq_failure)?;
            let witness = result.witness.map(|w| {
                json!({
                    "left_at": g.name(w.at),
                    "step": w.step,
                    "trace": trace_json(&g, &w.trace),
                })
            });
            Ok(CliOutput::ok(emit(&json!({
                "path": g.path_names(&q),
                "reward": render(&reward),
                "bias": render(&bias),
                "is_equilibrium": result.is_equilibrium,
                "witness": witness,
            }))))
        }
        Command::MinReward { graph, path, bias } => {
            let (g, _) = load(&graph)?;
            let q = parse_path(&g, &path)?;
            let result = pure_eq::feasible_rewards(&g, &q, &bias).map_err(pure_eq_failure)?;
            let body = emit(&json!({
                "path": g.path_names(&q),
                "bias": render(&bias),
                "feasible": result.set.intervals(),
                "minimum": result.minimum().map(render),
            }));
            let code = if result.set.is_empty() { EXIT_EMPTY } else { EXIT_OK };
            Ok(CliOutput { code, stdout: body, stderr: String::new() })
        }
        Command::UnbiasedEq { graph, reward, tie_rule } => {
            let (g, _) = load(&graph)?;
            let report = pure_eq::classify_unbiased(&g, &reward, tie_rule.into());
            let rungs = report.ladder.paths();
            let names = |i: usize| g.path_names(&rungs[i]);
            let ladder: Vec<Value> = rungs
                .iter()
                .map(|p| json!({"path": g.path_names(p), "length": p.len(), "cost": render(p.cost())}))
                .collect();
            let body = emit(&json!({
                "reward": render(&reward),
                "tie_rule": format!("{tie_rule:?}").to_lowercase(),
                "ladder": ladder,
                "symmetric": report.symmetric.iter().map(|&i| names(i)).collect::<Vec<_>>(),
                "asymmetric": report.asymmetric.map(|(i, j)| vec![names(i), names(j)]),
            }));
            let none = report.symmetric.is_empty() && report.asymmetric.is_none();
            Ok(CliOutput { code: if none { EXIT_EMPTY } else { EXIT_OK }, stdout: body, stderr: String::new() })
        }
        Command::BneFan { fan, dist: d, r } => {
            let spec = fan_spec(&fan)?;
            let dist = dist(&d, &spec)?;
            bne_output(bne::solve_fan_bne(&spec, &dist, r))
        }
        Command::BneFanMulti { fan, dist: d, m, r, per_agent_s } => {
            let spec = fan_spec(&fan)?;
            let dist = dist(&d, &spec)?;
            let r = r.unwrap_or_else(|| per_agent_s.expect("clap enforces one of r, s") * (m as f64 + 1.0));
            bne_output(bne::solve_fan_bne_multi(&spec, &dist, r, m))
        }
        Command::BneSweep { fan, dist: d, r_min, r_max, steps, format } => {
            let spec = fan_spec(&fan)?;
            let dist = dist(&d, &spec)?;
            #[allow(clippy::neg_cmp_op_on_partial_ord)]
            if steps < 2 || !(r_min <= r_max) {
                return Err(invalid("need --steps >= 2 and --r-min <= --r-max"));
            }
            let rewards: Vec<f64> = (0..steps)
                .map(|i| r_min + (r_max - r_min) * i as f64 / (steps - 1) as f64)
                .collect();
            let rows = bne::sweep_fan_bne(&spec, &dist, &rewards).map_err(invalid)?;
            let body = match format {
                Format::Json => emit(&rows),
                Format::Csv => {
                    let mut out = String::from("r,p,valid,cost_ratio\n");
                    for row in &rows {
                        out += &format!(
                            "{},{},{},{}\n",
                            bne::sig12(row.r),
                            bne::sig12(row.p),
                            row.valid,
                            bne::sig12(row.cost_ratio)
                        );
                    }
                    out
                }
            };
            Ok(CliOutput::ok(body))
        }
        Command::Verify { suite, cases, seed } => {
            let suite = Suite::from_name(&suite).expect("clap restricts suite names");
            let report = oracle::run_suite(suite, cases, seed);
            let code = if report.passed { EXIT_OK } else { EXIT_VERIFY_FAILED };
            Ok(CliOutput { code, stdout: emit(&report), stderr: String::new() })
        }
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => CliOutput::ok(text),
                _ => CliOutput::fail(EXIT_INVALID, text),
            };
        }
    };
    match dispatch(cli.command) {
        Ok(out) | Err(out) => out,
    }
}
