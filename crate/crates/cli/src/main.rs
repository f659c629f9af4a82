//! Command-line front end for the cluster-growth toolkit: graph
//! manipulation, protocol simulation, analytic cost evaluation,
//! rule-verification sweeps, and figure-data export.
//!
//! Exit codes: 0 success, 1 verification sweep found a rule mismatch,
//! 2 parse or domain error, 3 structural precondition violation.
//! Every run with identical arguments (including `--seed`) produces
//! byte-identical primary output, regardless of `--threads`.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use starweave::analytics::{
    arms_required, chain_cost, comparison_table, critical_length, expected_splice_length,
    hex_cost, lattice_cost, lattice_time_from_log, pair_success, prior_scheme_time,
    recursion_closed_form, small_chain_cost, SweepRow, SweepSpec,
};
use starweave::graph::{build_armed_chain, reduce_chain_to_star};
use starweave::protocol::{run_ensemble, LayoutSpec, SimTrace};
use starweave::stabilizer::verify_sweep;
use starweave::{
    Basis, Boundary, Error, Graph, ProtocolParams, Result, SimTask, XRuleVariant,
};

/// Fully parsed invocation: subcommand, flags, paths, seed, trial count,
/// and output format. Identical `RunSpec`s produce byte-identical output.
#[derive(Debug, Parser)]
#[command(
    name = "starweave",
    version,
    about = "Simulate and analyze cluster-state growth from probabilistic entangling gates"
)]
struct RunSpec {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Apply one single-qubit Pauli measurement to a graph JSON document.
    Measure(MeasureArgs),
    /// Construct an armed chain or star unit and emit its graph JSON.
    Build(BuildArgs),
    /// Run a Monte Carlo ensemble of a protocol stage.
    Simulate(SimulateArgs),
    /// Evaluate one closed-form cost expression.
    Analytic(AnalyticArgs),
    /// Export a scheme-comparison table as CSV.
    Sweep(SweepArgs),
    /// Check the measurement rewrite rules against the stabilizer oracle.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct MeasureArgs {
    /// Input graph JSON path (stdin when omitted).
    #[arg(long = "in", value_name = "PATH")]
    input: Option<PathBuf>,
    /// Measurement basis.
    #[arg(long, value_enum)]
    basis: BasisArg,
    /// Vertex to measure.
    #[arg(long)]
    qubit: u32,
    /// Special neighbor for the X rule (defaults to the smallest neighbor).
    #[arg(long)]
    special: Option<u32>,
    /// Output path (stdout when omitted).
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BuildArgs {
    /// What to construct.
    #[arg(value_enum)]
    kind: BuildKind,
    /// Number of arms n_l (>= 1).
    #[arg(long)]
    arms: u64,
    /// Output path (stdout when omitted).
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BuildKind {
    /// 2 n_l main-chain qubits, each with a two-qubit arm.
    ArmedChain,
    /// One center with n_l two-qubit arms (reduced armed chain).
    Star,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    /// Protocol stage to simulate.
    #[arg(value_enum)]
    task: TaskKind,
    /// Success probability of one entangling attempt.
    #[arg(long)]
    p: f64,
    /// Duration of one attempt (the time unit).
    #[arg(long = "t-a", default_value_t = 1.0)]
    t_a: f64,
    /// Number of independent trials.
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    /// Master seed; trial i runs on stream (seed, i).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Abort a trial beyond this many attempts (flagged, not an error).
    #[arg(long)]
    attempt_cap: Option<u64>,
    /// Target main-chain length (chain).
    #[arg(long)]
    n: Option<u64>,
    /// Arms per star (star).
    #[arg(long)]
    arms: Option<u64>,
    /// Input chain length for one splice (splice).
    #[arg(long)]
    n0: Option<u64>,
    /// Doubling level; produces a 2^(level+1)-qubit chain (small-chain).
    #[arg(long)]
    level: Option<u32>,
    /// Connection attempts for one bond (pair-connect).
    #[arg(long)]
    attempts_per_pair: Option<u64>,
    /// Lattice rows (lattice, hex).
    #[arg(long)]
    rows: Option<u32>,
    /// Lattice columns (lattice, hex).
    #[arg(long)]
    cols: Option<u32>,
    /// Lattice boundary conditions (lattice, hex).
    #[arg(long, value_enum, default_value_t = BoundaryArg::Open)]
    boundary: BoundaryArg,
    /// Assembly failure budget epsilon (lattice, hex).
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    /// Use exactly this arm count instead of the calibrated one
    /// (lattice, hex; must be a positive multiple of the site degree).
    #[arg(long)]
    arms_override: Option<u64>,
    /// Track full topology and write the first successful trial's final
    /// graph JSON to this path.
    #[arg(long, value_name = "PATH")]
    graph_out: Option<PathBuf>,
    /// Primary output: ensemble stats JSON or per-trial trace CSV.
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Worker threads for the ensemble (default: rayon's choice).
    #[arg(long)]
    threads: Option<usize>,
    /// Primary output path (stdout when omitted).
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TaskKind {
    /// Grow an n-qubit chain by restart doubling plus splicing.
    Chain,
    /// Build a star unit (costed as the 2 n_l armed chain).
    Star,
    /// Assemble a square lattice from star units.
    Lattice,
    /// Assemble a hexagonal (brick-wall) lattice from star units.
    Hex,
    /// Splice two bare chains of length n0 once.
    Splice,
    /// Build one 2^(level+1)-qubit chain with restarts only.
    SmallChain,
    /// Attempt one lattice bond with a fixed attempt budget.
    PairConnect,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BoundaryArg {
    Open,
    Toroidal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct AnalyticArgs {
    /// Formula to evaluate.
    #[arg(value_enum)]
    formula: FormulaKind,
    /// Success probability of one entangling attempt.
    #[arg(long)]
    p: f64,
    /// Duration of one attempt (the time unit).
    #[arg(long = "t-a", default_value_t = 1.0)]
    t_a: f64,
    /// Chain length (small-chain, chain).
    #[arg(long)]
    n: Option<u64>,
    /// Starting chain length (splice-length) or recursion base length
    /// (recursion).
    #[arg(long)]
    n0: Option<u64>,
    /// Recursion depth r (recursion).
    #[arg(long)]
    levels: Option<u32>,
    /// Base time T_0 (recursion; default t_a / p).
    #[arg(long)]
    t0: Option<f64>,
    /// Base attempts M_0 (recursion; default 1 / p).
    #[arg(long)]
    m0: Option<f64>,
    /// Lattice site count N (arms, lattice, hex, prior).
    #[arg(long)]
    sites: Option<u64>,
    /// Assembly failure budget epsilon.
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    /// Log term ln(2N/epsilon) given directly (lattice, prior).
    #[arg(long)]
    lnterm: Option<f64>,
    /// Site degree (arms; 4 square, 3 hexagonal).
    #[arg(long, default_value_t = 4)]
    degree: u32,
    /// Explicit bond count overriding the degree-based one (arms).
    #[arg(long)]
    pairs: Option<f64>,
    /// Connection attempts for one bond (pair-success).
    #[arg(long)]
    attempts: Option<u64>,
    /// Output path (stdout when omitted).
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormulaKind {
    /// Critical chain length n_c = 4 (1 - p) / p.
    CriticalLength,
    /// Expected merged length of one splice (exact and asymptotic).
    SpliceLength,
    /// Closed-form doubling recursion values T_r, M_r (and n_r with --n0).
    Recursion,
    /// Power-law cost of a 2^k-qubit chain built with restarts only.
    SmallChain,
    /// Asymptotic time and attempts for an n-qubit chain.
    Chain,
    /// Calibrated arms per star for a target assembly success.
    Arms,
    /// Per-bond success probability 1 - (1 - p)^attempts.
    PairSuccess,
    /// Square-lattice assembly totals.
    Lattice,
    /// Hexagonal-lattice assembly totals.
    Hex,
    /// Sequential-baseline time (third term t_a/p ln(2N/eps) instead of t_a).
    Prior,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Which table to export.
    #[arg(value_enum)]
    table: SweepKind,
    /// Fixed p for a custom log-term sweep.
    #[arg(long)]
    p: Option<f64>,
    /// Custom log-term axis: minimum.
    #[arg(long)]
    l_min: Option<f64>,
    /// Custom log-term axis: maximum.
    #[arg(long)]
    l_max: Option<f64>,
    /// Custom log-term axis: step.
    #[arg(long)]
    l_step: Option<f64>,
    /// Fixed log term for a custom p sweep.
    #[arg(long)]
    lnterm: Option<f64>,
    /// Custom p axis: minimum.
    #[arg(long)]
    p_min: Option<f64>,
    /// Custom p axis: maximum.
    #[arg(long)]
    p_max: Option<f64>,
    /// Custom p axis: step.
    #[arg(long)]
    p_step: Option<f64>,
    /// Output path (stdout when omitted).
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SweepKind {
    /// Log term 5..=50 at p = 0.25.
    Figure3a,
    /// p = 0.01..=0.50 at log term 30.
    Figure3b,
    /// Axis from the --p/--l-* or --lnterm/--p-* flags.
    Custom,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Largest vertex count to sweep (exhaustive over connected graphs).
    #[arg(long, default_value_t = 6)]
    max_vertices: u32,
    /// Draw measurement outcomes from this seed instead of forcing +1.
    #[arg(long)]
    seed: Option<u64>,
    /// X-rule interpretation; existing-edges is the known-bad control.
    #[arg(long, value_enum, default_value_t = XRuleArg::Standard)]
    x_rule: XRuleArg,
    /// Worker threads for the sweep (default: rayon's choice).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum XRuleArg {
    /// Complete pair sets (the validated reading).
    Standard,
    /// Toggle only pre-existing edges (negative control; fails on a 3-path).
    ExistingEdges,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BasisArg {
    X,
    Y,
    Z,
}

impl From<BasisArg> for Basis {
    fn from(b: BasisArg) -> Basis {
        match b {
            BasisArg::X => Basis::X,
            BasisArg::Y => Basis::Y,
            BasisArg::Z => Basis::Z,
        }
    }
}

impl From<BoundaryArg> for Boundary {
    fn from(b: BoundaryArg) -> Boundary {
        match b {
            BoundaryArg::Open => Boundary::Open,
            BoundaryArg::Toroidal => Boundary::Toroidal,
        }
    }
}

fn main() -> ExitCode {
    let spec = match RunSpec::try_parse() {
        Ok(spec) => spec,
        Err(e) => {
            // Help and version print to stdout and exit 0; genuine parse
            // errors follow the documented exit-2 contract.
            let code = if e.exit_code() == 0 { 0 } else { 2 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(spec) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

fn run(spec: RunSpec) -> Result<u8> {
    match spec.command {
        Command::Measure(args) => cmd_measure(args),
        Command::Build(args) => cmd_build(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Analytic(args) => cmd_analytic(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

// ---------------------------------------------------------------------------
// measure / build

fn cmd_measure(args: MeasureArgs) -> Result<u8> {
    let text = read_input(args.input.as_deref())?;
    let mut g = Graph::from_json(&text)?;
    match args.basis.into() {
        Basis::X => g.measure_x(args.qubit, args.special)?,
        Basis::Y => {
            reject_special(args.special, "y")?;
            g.measure_y(args.qubit)?;
        }
        Basis::Z => {
            reject_special(args.special, "z")?;
            g.measure_z(args.qubit)?;
        }
    }
    write_output(args.out.as_deref(), &g.to_json())?;
    Ok(0)
}

fn reject_special(special: Option<u32>, basis: &str) -> Result<()> {
    match special {
        None => Ok(()),
        Some(s) => Err(Error::Precondition(format!(
            "--special {s} only applies to the x rule, not {basis}"
        ))),
    }
}

fn cmd_build(args: BuildArgs) -> Result<u8> {
    let chain = build_armed_chain(args.arms)?;
    let g = match args.kind {
        BuildKind::ArmedChain => chain,
        BuildKind::Star => reduce_chain_to_star(&chain)?,
    };
    write_output(args.out.as_deref(), &g.to_json())?;
    Ok(0)
}

// ---------------------------------------------------------------------------
// simulate

fn cmd_simulate(args: SimulateArgs) -> Result<u8> {
    let task = build_task(&args)?;
    let params = ProtocolParams {
        t_a: args.t_a,
        epsilon: args.epsilon,
        master_seed: args.seed,
        attempt_cap: args.attempt_cap,
        full_graph: args.graph_out.is_some(),
        ..ProtocolParams::new(args.p)
    };
    let (stats, traces) = run_in_pool(args.threads, || {
        run_ensemble(&task, &params, args.trials)
    })??;
    if let Some(path) = &args.graph_out {
        let graph = traces
            .iter()
            .find(|t| t.succeeded)
            .and_then(|t| t.final_graph.as_ref())
            .ok_or_else(|| {
                Error::Precondition(
                    "no successful trial produced a final graph to write".to_string(),
                )
            })?;
        write_output(Some(path), &graph.to_json())?;
    }
    let body = match args.format {
        // Serialized directly (not via Value) so the documented field
        // order task, trials, success_rate, ... survives.
        FormatArg::Json => {
            let mut s = serde_json::to_string_pretty(&stats).expect("stats serialize");
            s.push('\n');
            s
        }
        FormatArg::Csv => traces_csv(&traces),
    };
    write_output(args.out.as_deref(), &body)?;
    Ok(0)
}

fn build_task(args: &SimulateArgs) -> Result<SimTask> {
    let need = |v: Option<u64>, flag: &str| {
        v.ok_or_else(|| Error::Domain(format!("this task requires {flag}")))
    };
    Ok(match args.task {
        TaskKind::Chain => SimTask::Chain { n: need(args.n, "--n")? },
        TaskKind::Star => SimTask::Star { n_l: need(args.arms, "--arms")? },
        TaskKind::Splice => SimTask::Splice { n0: need(args.n0, "--n0")? },
        TaskKind::SmallChain => SimTask::SmallChain {
            level: args
                .level
                .ok_or_else(|| Error::Domain("this task requires --level".to_string()))?,
        },
        TaskKind::PairConnect => SimTask::PairConnect {
            attempts_per_pair: need(args.attempts_per_pair, "--attempts-per-pair")?,
        },
        TaskKind::Lattice | TaskKind::Hex => {
            let rows = args
                .rows
                .ok_or_else(|| Error::Domain("this task requires --rows".to_string()))?;
            let cols = args
                .cols
                .ok_or_else(|| Error::Domain("this task requires --cols".to_string()))?;
            let boundary = args.boundary.into();
            let layout = match args.task {
                TaskKind::Lattice => LayoutSpec::square(rows, cols, boundary),
                _ => LayoutSpec::hexagonal(rows, cols, boundary),
            };
            SimTask::Assemble { layout, arms_override: args.arms_override }
        }
    })
}

/// Per-trial trace CSV: one row per charged stage plus a `total` row.
/// Stage rows leave `length`/`success` empty; the total row carries them.
fn traces_csv(traces: &[SimTrace]) -> String {
    let mut out = String::from("trial,stage,attempts,time_units,length,success\n");
    for (i, t) in traces.iter().enumerate() {
        for s in &t.stages {
            out.push_str(&format!(
                "{i},{},{},{},,\n",
                s.stage.as_str(),
                s.attempts,
                fmt_sig(s.time)
            ));
        }
        let length = t.length.map(|l| l.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "{i},total,{},{},{length},{}\n",
            t.attempts,
            fmt_sig(t.time),
            t.succeeded
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// analytic

fn cmd_analytic(args: AnalyticArgs) -> Result<u8> {
    let p = args.p;
    let t_a = args.t_a;
    let need_u64 = |v: Option<u64>, flag: &str| {
        v.ok_or_else(|| Error::Domain(format!("this formula requires {flag}")))
    };
    let body = match args.formula {
        FormulaKind::CriticalLength => pretty_json(&serde_json::json!({
            "formula": "critical-length",
            "inputs": { "p": p },
            "value": critical_length(p)?,
        })),
        FormulaKind::SpliceLength => {
            let n0 = need_u64(args.n0, "--n0")?;
            let s = expected_splice_length(n0, p)?;
            pretty_json(&serde_json::json!({
                "formula": "splice-length",
                "inputs": { "n0": n0, "p": p },
                "exact": s.exact,
                "asymptotic": s.asymptotic,
            }))
        }
        FormulaKind::Recursion => {
            let levels = args
                .levels
                .ok_or_else(|| Error::Domain("this formula requires --levels".to_string()))?;
            let t0 = args.t0.unwrap_or(t_a / p);
            let m0 = args.m0.unwrap_or(1.0 / p);
            let (time, attempts) = recursion_closed_form(levels, p, t0, m0, t_a)?;
            let length = match args.n0 {
                None => serde_json::Value::Null,
                Some(n0) => {
                    let nc = critical_length(p)?;
                    let pow = (1u64 << levels.min(63)) as f64;
                    ((n0 as f64 - nc) * pow + nc).into()
                }
            };
            pretty_json(&serde_json::json!({
                "formula": "doubling-recursion",
                "inputs": { "levels": levels, "p": p, "t0": t0, "m0": m0, "t_a": t_a },
                "time": time,
                "attempts": attempts,
                "length": length,
            }))
        }
        FormulaKind::SmallChain => {
            let n = need_u64(args.n, "--n")?;
            report_json(&small_chain_cost(n, p, t_a)?)
        }
        FormulaKind::Chain => {
            let n = need_u64(args.n, "--n")?;
            report_json(&chain_cost(n, p, t_a)?)
        }
        FormulaKind::Arms => {
            let pairs = match args.pairs {
                Some(pairs) => pairs,
                None => {
                    let sites = need_u64(args.sites, "--sites (or --pairs)")? as f64;
                    match args.degree {
                        4 => 2.0 * sites,
                        3 => 1.5 * sites,
                        d => {
                            return Err(Error::Domain(format!(
                                "no default bond count for degree {d}; pass --pairs"
                            )))
                        }
                    }
                }
            };
            let plan = arms_required(pairs, args.epsilon, p, args.degree)?;
            let mut v = serde_json::to_value(&plan).expect("plan serialize");
            v["formula"] = "arms-required".into();
            v["inputs"] = serde_json::json!({
                "pairs": pairs, "epsilon": args.epsilon, "p": p, "degree": args.degree,
            });
            pretty_json(&v)
        }
        FormulaKind::PairSuccess => {
            let attempts = need_u64(args.attempts, "--attempts")?;
            pretty_json(&serde_json::json!({
                "formula": "pair-success",
                "inputs": { "p": p, "attempts": attempts },
                "value": pair_success(p, attempts)?,
            }))
        }
        FormulaKind::Lattice => match (args.lnterm, args.sites) {
            (Some(l), _) => report_json(&lattice_time_from_log(l, p, t_a)?),
            (None, Some(sites)) => report_json(&lattice_cost(sites, args.epsilon, p, t_a)?),
            (None, None) => {
                return Err(Error::Domain(
                    "this formula requires --sites or --lnterm".to_string(),
                ))
            }
        },
        FormulaKind::Hex => {
            let sites = need_u64(args.sites, "--sites")?;
            report_json(&hex_cost(sites, args.epsilon, p, t_a)?)
        }
        FormulaKind::Prior => {
            let log_term = match (args.lnterm, args.sites) {
                (Some(l), _) => l,
                (None, Some(sites)) => (2.0 * sites as f64 / args.epsilon).ln(),
                (None, None) => {
                    return Err(Error::Domain(
                        "this formula requires --sites or --lnterm".to_string(),
                    ))
                }
            };
            report_json(&prior_scheme_time(log_term, p, t_a)?)
        }
    };
    write_output(args.out.as_deref(), &body)?;
    Ok(0)
}

/// Serialize a typed report preserving its declared field order.
fn report_json<T: serde::Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serialize");
    s.push('\n');
    s
}

// ---------------------------------------------------------------------------
// sweep

fn cmd_sweep(args: SweepArgs) -> Result<u8> {
    let spec = match args.table {
        SweepKind::Figure3a => SweepSpec::LogRange {
            p: 0.25,
            l_min: 5.0,
            l_max: 50.0,
            l_step: 1.0,
        },
        SweepKind::Figure3b => SweepSpec::PRange {
            log_term: 30.0,
            p_min: 0.01,
            p_max: 0.50,
            p_step: 0.01,
        },
        SweepKind::Custom => custom_sweep(&args)?,
    };
    let rows = comparison_table(&spec)?;
    write_output(args.out.as_deref(), &sweep_csv(&rows))?;
    Ok(0)
}

fn custom_sweep(args: &SweepArgs) -> Result<SweepSpec> {
    match (args.p, args.lnterm) {
        (Some(p), None) => Ok(SweepSpec::LogRange {
            p,
            l_min: args.l_min.unwrap_or(5.0),
            l_max: args.l_max.unwrap_or(50.0),
            l_step: args.l_step.unwrap_or(1.0),
        }),
        (None, Some(log_term)) => Ok(SweepSpec::PRange {
            log_term,
            p_min: args.p_min.unwrap_or(0.01),
            p_max: args.p_max.unwrap_or(0.50),
            p_step: args.p_step.unwrap_or(0.01),
        }),
        _ => Err(Error::Domain(
            "custom sweeps fix exactly one of --p (log-term axis) or --lnterm (p axis)"
                .to_string(),
        )),
    }
}

fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("x,T1,T2,ratio,term1,term2,term3\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            fmt_sig(r.x),
            fmt_sig(r.t1),
            fmt_sig(r.t2),
            fmt_sig(r.ratio),
            fmt_sig(r.term1),
            fmt_sig(r.term2),
            fmt_sig(r.term3),
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// verify

fn cmd_verify(args: VerifyArgs) -> Result<u8> {
    let variant = match args.x_rule {
        XRuleArg::Standard => XRuleVariant::CompletePairSets,
        XRuleArg::ExistingEdges => XRuleVariant::ExistingEdges,
    };
    let report = run_in_pool(args.threads, || {
        verify_sweep(args.max_vertices, args.seed, variant)
    })??;
    let mut out = String::new();
    out.push_str(&format!(
        "rule variant: {}\noutcome sampling: {}\n",
        report.rule_variant, report.outcome_sampling
    ));
    out.push_str(&format!(
        "connected graphs by vertex count: {:?}\n",
        report.connected_graphs
    ));
    out.push_str(&format!("graphs checked: {}\n", report.graphs_checked));
    out.push_str(&format!("cases checked: {}\n", report.cases_checked));
    out.push_str(&format!("cases passed: {}\n", report.cases_passed));
    out.push_str(&format!("cases failed: {}\n", report.cases_failed));
    if let Some(ce) = &report.first_counterexample {
        out.push_str("first counterexample:\n");
        out.push_str(&pretty_json(
            &serde_json::to_value(ce).expect("counterexample serialize"),
        ));
    }
    write_output(None, &out)?;
    Ok(if report.all_passed() { 0 } else { 1 })
}

// ---------------------------------------------------------------------------
// plumbing

fn read_input(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) => fs::read_to_string(p)
            .map_err(|e| Error::Schema(format!("cannot read {}: {e}", p.display()))),
        None => {
            let mut buf = String::new();
            io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Error::Schema(format!("cannot read stdin: {e}")))?;
            Ok(buf)
        }
    }
}

fn write_output(path: Option<&Path>, body: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, body)
            .map_err(|e| Error::Schema(format!("cannot write {}: {e}", p.display()))),
        None => {
            io::stdout()
                .write_all(body.as_bytes())
                .map_err(|e| Error::Schema(format!("cannot write stdout: {e}")))?;
            Ok(())
        }
    }
}

fn pretty_json(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON serialize");
    s.push('\n');
    s
}

/// Run `f` on a dedicated pool of `threads` workers, or inline on the
/// global pool. Results are thread-count-independent by construction.
fn run_in_pool<T: Send>(
    threads: Option<usize>,
    f: impl FnOnce() -> T + Send,
) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Domain(format!("cannot build thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Fixed 10-significant-digit decimal formatting (no locale, `.` separator):
/// the byte-determinism contract for every CSV number.
fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0.000000000".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (9 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}
