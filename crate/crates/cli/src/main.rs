//! Benchmark CLI: replay edit sequences, verify invariants, or run the
//! brute-force oracle on small inputs.

use clap::{Args, Parser, Subcommand, ValueEnum};
use dynis_core::dynamic::{run_sequence, Config, DynamicState, Mode};
use dynis_core::io::{
    assign_random_weights, format_weight, parse_metis, parse_sequence, static_to_sequence,
    EditSequence, EventKind, RunReport,
};
use dynis_core::oracle::{brute_force_mwis, verify_maximal};
use dynis_core::{DynamicGraph, GreedyVariant};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

#[derive(Parser)]
#[command(name = "dynis", about = "Dynamic maximal independent set benchmark harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Replay an edit sequence and report solution quality and timing.
    Run(RunArgs),
    /// Replay a sequence while auditing independence, maximality and
    /// bookkeeping invariants.
    Verify(VerifyArgs),
    /// Exact brute-force optimum of the final graph (small inputs).
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Static METIS graph, replayed as an insertion-only sequence.
    Metis,
    /// Edit-sequence text format (`n <count>` header, `i u v`/`d u v`).
    Seq,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    /// Greedy baseline: evict the lighter endpoint.
    Greedy,
    /// Greedy baseline: evict the endpoint minimizing w(v)/w(N(v)).
    Deggreedy,
    /// Neighborhood exploration, fast preset (nu_max=200, rare updates).
    OneFast,
    /// Neighborhood exploration, strong preset (nu_max=2500).
    OneStrong,
    /// Neighborhood exploration with custom --d/--numax/--delta/--rare-x.
    OneCustom,
}

#[derive(Args)]
struct InputArgs {
    /// Input file.
    #[arg(long)]
    input: PathBuf,
    /// Input format; inferred from the extension when omitted
    /// (.graph/.metis -> metis, .seq -> seq).
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Draw random integer vertex weights in [1,100] (weighted mode).
    #[arg(long)]
    weighted: bool,
    /// Seed for the weight assignment.
    #[arg(long, default_value_t = 1)]
    weight_seed: u64,
}

#[derive(Args)]
struct AlgoArgs {
    #[arg(long, value_enum, default_value = "one-strong")]
    algo: Algo,
    /// BFS depth (one-custom only).
    #[arg(long)]
    d: Option<u32>,
    /// Subproblem size cap (one-custom only).
    #[arg(long)]
    numax: Option<usize>,
    /// Pinch factor (one-custom only).
    #[arg(long)]
    delta: Option<f64>,
    /// Rare-update period; enables rare updates (one-custom only).
    #[arg(long)]
    rare_x: Option<u64>,
    /// Solver time limit per subproblem, in seconds.
    #[arg(long)]
    tlimit: Option<f64>,
    /// RNG seed for tie-breaking.
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    algo: AlgoArgs,
    /// Write one CSV row per applied update.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Print every trace row to stdout.
    #[arg(long)]
    trace: bool,
    /// Run this many consecutive seeds (seed, seed+1, ...).
    #[arg(long, default_value_t = 1)]
    repeat: u64,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    algo: AlgoArgs,
    /// Audit invariants every this many applied updates.
    #[arg(long, default_value_t = 1)]
    every: u64,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    input: InputArgs,
}

struct Instance {
    name: String,
    weights: Vec<f64>,
    seq: EditSequence,
}

fn infer_format(path: &Path, explicit: Option<Format>) -> Result<Format, String> {
    if let Some(f) = explicit {
        return Ok(f);
    }
    match path.extension().and_then(|e| e.to_str()) {
        Some("graph") | Some("metis") => Ok(Format::Metis),
        Some("seq") => Ok(Format::Seq),
        _ => Err(format!(
            "cannot infer format of `{}`; pass --format",
            path.display()
        )),
    }
}

fn load(input: &InputArgs) -> Result<Instance, String> {
    let format = infer_format(&input.input, input.format)?;
    let name = input
        .input
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| input.input.display().to_string());
    let (n, mut weights, seq) = match format {
        Format::Metis => {
            let g = parse_metis(&input.input).map_err(|e| e.to_string())?;
            if g.dropped > 0 {
                eprintln!("warning: dropped {} obsolete METIS entries", g.dropped);
            }
            let seq = static_to_sequence(&g);
            (g.n, g.weights, seq)
        }
        Format::Seq => {
            let seq = parse_sequence(&input.input).map_err(|e| e.to_string())?;
            (seq.n, vec![1.0; seq.n], seq)
        }
    };
    if input.weighted {
        weights = assign_random_weights(n, input.weight_seed, 1, 100);
    }
    Ok(Instance { name, weights, seq })
}

fn build_config(args: &AlgoArgs, weighted: bool) -> Result<Config, String> {
    let custom = args.algo == Algo::OneCustom;
    if !custom && (args.d.is_some() || args.numax.is_some() || args.delta.is_some() || args.rare_x.is_some()) {
        return Err("--d/--numax/--delta/--rare-x require --algo one-custom".into());
    }
    let mut cfg = match args.algo {
        Algo::Greedy => Config::greedy_only(GreedyVariant::Greedy),
        Algo::Deggreedy => Config::greedy_only(GreedyVariant::DegGreedy),
        Algo::OneFast => Config::fast(),
        Algo::OneStrong | Algo::OneCustom => Config::strong(),
    };
    if custom {
        if let Some(d) = args.d {
            cfg.depth = d;
        }
        if let Some(numax) = args.numax {
            if numax == 0 {
                return Err("--numax must be at least 1".into());
            }
            cfg.max_subproblem = numax;
        }
        if let Some(delta) = args.delta {
            if delta.is_nan() || delta <= 1.0 {
                return Err("--delta must be greater than 1".into());
            }
            cfg.pinch_factor = delta;
        }
        if let Some(x) = args.rare_x {
            if x == 0 {
                return Err("--rare-x must be at least 1".into());
            }
            cfg.rare_enabled = true;
            cfg.rare_period = x;
        }
    }
    if let Some(t) = args.tlimit {
        if t.is_nan() || t <= 0.0 {
            return Err("--tlimit must be positive".into());
        }
        cfg.solver_time_limit = Duration::from_secs_f64(t);
    }
    cfg.seed = args.seed;
    cfg.mode = if weighted { Mode::Weighted } else { Mode::Cardinality };
    Ok(cfg)
}

fn algo_name(a: Algo) -> &'static str {
    match a {
        Algo::Greedy => "greedy",
        Algo::Deggreedy => "deggreedy",
        Algo::OneFast => "one-fast",
        Algo::OneStrong => "one-strong",
        Algo::OneCustom => "one-custom",
    }
}

fn cmd_run(args: &RunArgs) -> Result<(), String> {
    if args.repeat == 0 {
        return Err("--repeat must be at least 1".into());
    }
    if args.repeat > 1 && args.csv.is_some() {
        return Err("--csv conflicts with --repeat > 1".into());
    }
    let inst = load(&args.input)?;
    let mut weights_sum = 0.0;
    let mut cards_sum = 0.0;
    for k in 0..args.repeat {
        let mut cfg = build_config(&args.algo, args.input.weighted)?;
        cfg.seed = args.algo.seed + k;
        let seed = cfg.seed;
        let g = DynamicGraph::new(inst.weights.clone()).map_err(|e| e.to_string())?;
        let res = run_sequence(g, &inst.seq, cfg).map_err(|e| e.to_string())?;
        let report = RunReport::new(&inst.name, algo_name(args.algo.algo), seed, res.stats);
        if args.trace {
            print!("{}", report.csv());
        }
        if let Some(path) = &args.csv {
            std::fs::write(path, report.csv()).map_err(|e| e.to_string())?;
        }
        let sol = res.state.solution();
        weights_sum += sol.weight();
        cards_sum += sol.cardinality() as f64;
        println!(
            "instance={} algo={} seed={} final_weight={} final_cardinality={} \
             updates={} obsolete={} total_update_time={:.3?} mean_update_time={:?}",
            report.instance,
            report.algo,
            seed,
            format_weight(sol.weight()),
            sol.cardinality(),
            report.rows.len(),
            res.state.obsolete_count(),
            report.total_update_time,
            report.mean_update_time(),
        );
    }
    if args.repeat > 1 {
        let k = args.repeat as f64;
        println!(
            "seeds={} mean_final_weight={:.2} mean_final_cardinality={:.2}",
            args.repeat,
            weights_sum / k,
            cards_sum / k
        );
    }
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), String> {
    if args.every == 0 {
        return Err("--every must be at least 1".into());
    }
    let inst = load(&args.input)?;
    let cfg = build_config(&args.algo, args.input.weighted)?;
    let g = DynamicGraph::new(inst.weights.clone()).map_err(|e| e.to_string())?;
    let mut state = DynamicState::new(g, cfg);
    let mut applied = 0u64;
    let mut audits = 0u64;
    for (index, ev) in inst.seq.events.iter().enumerate() {
        let row = match ev.kind {
            EventKind::Insert => state.handle_insertion(ev.u, ev.v),
            EventKind::Delete => state.handle_deletion(ev.u, ev.v),
        }
        .map_err(|e| format!("event {index}: {e}"))?;
        if row.is_none() {
            continue;
        }
        applied += 1;
        if applied.is_multiple_of(args.every) {
            audits += 1;
            if !state.solution().audit(state.graph()) {
                return Err(format!("bookkeeping audit failed after event {index}"));
            }
            if !verify_maximal(state.graph(), &state.solution().vertices()) {
                return Err(format!("solution not maximal after event {index}"));
            }
        }
    }
    if !state.graph().audit() {
        return Err("final graph adjacency audit failed".into());
    }
    println!(
        "verified instance={} updates={} audits={} final_weight={} final_cardinality={}",
        inst.name,
        applied,
        audits,
        format_weight(state.solution().weight()),
        state.solution().cardinality()
    );
    Ok(())
}

fn cmd_oracle(args: &OracleArgs) -> Result<(), String> {
    let inst = load(&args.input)?;
    let mut g = DynamicGraph::new(inst.weights.clone()).map_err(|e| e.to_string())?;
    for ev in &inst.seq.events {
        match ev.kind {
            EventKind::Insert => g.insert_edge(ev.u, ev.v),
            EventKind::Delete => g.delete_edge(ev.u, ev.v),
        }
        .map_err(|e| e.to_string())?;
    }
    let (set, weight) = brute_force_mwis(&g).map_err(|e| e.to_string())?;
    println!(
        "instance={} optimum_weight={} optimum_cardinality={} set={:?}",
        inst.name,
        format_weight(weight),
        set.len(),
        set
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Oracle(args) => cmd_oracle(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
