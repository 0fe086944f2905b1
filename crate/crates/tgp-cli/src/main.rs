//! Experiment harness around the `tgp` library.
//!
//! `tgp run` executes a batch of independent runs and writes records plus
//! an effort report; `tgp report` recomputes the report from persisted
//! records; `tgp sweep` walks the benchmark ladder and summarizes it.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use tgp::{derive_run_seed, EffortReport, GateSet, ParityProblem, RunConfig, RunOutcome};

use output::{ExperimentFiles, RecordRow, RunMetadata, SweepRow};

#[derive(Parser)]
#[command(
    name = "tgp",
    version,
    about = "Traceless genetic programming for even-parity circuits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a batch of independent runs and write records + effort report
    Run(RunArgs),
    /// Recompute an effort report from a persisted records file
    Report(ReportArgs),
    /// Run the benchmark ladder and write a summary table
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GateChoice {
    /// AND, OR, NAND, NOR
    Koza4,
    /// all 16 two-input functions
    All16,
}

impl GateChoice {
    fn build(self) -> GateSet {
        match self {
            GateChoice::Koza4 => GateSet::koza4(),
            GateChoice::All16 => GateSet::all16(),
        }
    }
}

const PRESET_NAMES: [&str; 6] = ["even-3", "even-4", "even-5", "even-6", "even-7", "even-8"];

#[derive(Args)]
#[command(group = clap::ArgGroup::new("experiment").required(true).multiple(false))]
struct RunArgs {
    /// Named experiment; alternative to --k/--pop/--gens
    #[arg(long, group = "experiment", value_parser = PRESET_NAMES, conflicts_with_all = ["pop", "gens"])]
    preset: Option<String>,
    /// Number of problem inputs
    #[arg(long, group = "experiment", requires_all = ["pop", "gens"])]
    k: Option<u32>,
    /// Population size
    #[arg(long)]
    pop: Option<usize>,
    /// Generations per run
    #[arg(long)]
    gens: Option<u32>,
    /// Independent runs
    #[arg(long)]
    runs: Option<u32>,
    /// Probability of filling an offspring slot by insertion
    #[arg(long = "p-insert", default_value_t = 0.05)]
    p_insert: f64,
    /// Tournament size for parent selection
    #[arg(long, default_value_t = 2)]
    tournament: usize,
    /// Function set available to crossover
    #[arg(long, value_enum, default_value_t = GateChoice::Koza4)]
    gates: GateChoice,
    /// Base seed; run i uses a seed derived from it
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Success-probability target for the effort report
    #[arg(long, default_value_t = 0.99)]
    z: f64,
    /// Record implicit programs and emit solution expressions
    #[arg(long)]
    trace: bool,
    /// Stop each run at its first solution
    #[arg(long = "stop-on-solve")]
    stop_on_solve: bool,
    /// Break fitness ties in tournaments toward fewer gates
    #[arg(long)]
    parsimony: bool,
    /// Worker threads for parallel runs (default: available parallelism)
    #[arg(long)]
    jobs: Option<usize>,
    /// Output directory
    #[arg(long, default_value = "results")]
    out: PathBuf,
}

#[derive(Args)]
struct ReportArgs {
    /// Records file written by `tgp run`
    #[arg(long)]
    records: PathBuf,
    /// Population size of the recorded experiment (default: sibling
    /// metadata.json)
    #[arg(long)]
    pop: Option<usize>,
    /// Generation count of the recorded experiment (default: sibling
    /// metadata.json)
    #[arg(long)]
    gens: Option<u32>,
    /// Success-probability target
    #[arg(long)]
    z: Option<f64>,
    /// Output directory (default: the records file's directory)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Last preset of the ladder to include
    #[arg(long, default_value = "even-5", value_parser = PRESET_NAMES)]
    through: String,
    /// Runs per preset (default: each preset's standard count)
    #[arg(long)]
    runs: Option<u32>,
    /// Base seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Success-probability target
    #[arg(long, default_value_t = 0.99)]
    z: f64,
    /// Record implicit programs and emit solution expressions
    #[arg(long)]
    trace: bool,
    /// Worker threads for parallel runs
    #[arg(long)]
    jobs: Option<usize>,
    /// Output directory
    #[arg(long, default_value = "results")]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Report(args) => cmd_report(args),
        Command::Sweep(args) => cmd_sweep(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

/// A configured batch: everything `run` and `sweep` share.
struct Experiment {
    name: String,
    cfg: RunConfig,
    runs: u32,
    z: f64,
}

fn configure_pool(jobs: Option<usize>) -> anyhow::Result<()> {
    if let Some(n) = jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("initializing worker pool")?;
    }
    Ok(())
}

/// Runs the batch in parallel; outcomes are ordered by run index, so the
/// output is independent of scheduling.
fn execute(experiment: &Experiment) -> anyhow::Result<(Vec<RunOutcome>, Vec<Duration>)> {
    let problem = ParityProblem::new(experiment.cfg.inputs)?;
    let results: Vec<(RunOutcome, Duration)> = (0..experiment.runs)
        .into_par_iter()
        .map(|i| {
            let cfg = experiment
                .cfg
                .clone()
                .with_seed(derive_run_seed(experiment.cfg.seed, u64::from(i)));
            let started = Instant::now();
            let outcome = tgp::run(&cfg, &problem)?;
            Ok((outcome, started.elapsed()))
        })
        .collect::<tgp::Result<_>>()?;
    Ok(results.into_iter().unzip())
}

fn run_experiment(
    experiment: &Experiment,
    out_dir: &PathBuf,
) -> anyhow::Result<(EffortReport, Vec<Duration>)> {
    let started = Instant::now();
    let (outcomes, durations) = execute(experiment)?;

    let rows: Vec<RecordRow> = outcomes
        .iter()
        .enumerate()
        .map(|(i, o)| RecordRow::new(i as u32, o))
        .collect();
    let records: Vec<_> = outcomes.iter().map(|o| o.record.clone()).collect();
    let report = EffortReport::compute(
        &records,
        experiment.cfg.pop_size,
        experiment.cfg.generations,
        experiment.z,
    )?;

    let files = ExperimentFiles::new(out_dir);
    files.write_records(&rows)?;
    files.write_report(&report)?;
    if experiment.cfg.tracing {
        files.write_solutions(&rows, &outcomes)?;
    }
    files.write_metadata(&RunMetadata::collect(
        &experiment.name,
        &experiment.cfg,
        experiment.runs,
        experiment.z,
        started.elapsed(),
    ))?;

    let solved = records.iter().filter(|r| r.solved_at.is_some()).count();
    println!(
        "{}: {}/{} runs solved{}",
        experiment.name,
        solved,
        experiment.runs,
        match report.min_effort {
            Some(m) => format!(", min effort {} at generation {}", m.effort, m.generation),
            None => String::new(),
        }
    );
    println!("wrote {}", out_dir.display());
    Ok((report, durations))
}

fn build_experiment(args: &RunArgs) -> anyhow::Result<Experiment> {
    let (name, inputs, pop, gens, default_runs) = match &args.preset {
        Some(name) => {
            let p = tgp::preset(name)
                .with_context(|| format!("unknown preset {name:?}; expected even-3 .. even-8"))?;
            (
                p.name.to_string(),
                p.inputs,
                p.pop_size,
                p.generations,
                p.default_runs,
            )
        }
        None => match (args.k, args.pop, args.gens) {
            (Some(k), Some(pop), Some(gens)) => (format!("even-{k}"), k, pop, gens, 100),
            _ => bail!("either --preset or all of --k/--pop/--gens must be given"),
        },
    };
    let mut cfg = RunConfig::new(inputs, pop, gens).with_seed(args.seed);
    cfg.insert_probability = args.p_insert;
    cfg.tournament_size = args.tournament;
    cfg.gate_set = args.gates.build();
    cfg.tracing = args.trace;
    cfg.stop_on_solve = args.stop_on_solve;
    cfg.parsimony = args.parsimony;
    Ok(Experiment {
        name,
        cfg,
        runs: args.runs.unwrap_or(default_runs),
        z: args.z,
    })
}

fn cmd_run(args: RunArgs) -> anyhow::Result<()> {
    configure_pool(args.jobs)?;
    let experiment = build_experiment(&args)?;
    anyhow::ensure!(
        args.z > 0.0 && args.z < 1.0,
        "--z must lie strictly between 0 and 1"
    );
    run_experiment(&experiment, &args.out)?;
    Ok(())
}

fn cmd_report(args: ReportArgs) -> anyhow::Result<()> {
    let rows = output::read_records(&args.records)?;
    anyhow::ensure!(!rows.is_empty(), "records file is empty");

    let meta = output::read_sibling_metadata(&args.records);
    let pop = args
        .pop
        .or(meta.as_ref().map(|m| m.pop_size))
        .context("population size unknown: pass --pop or keep metadata.json next to the records")?;
    let gens = args
        .gens
        .or(meta.as_ref().map(|m| m.generations))
        .unwrap_or_else(|| {
            rows.iter()
                .map(|r| r.best_fitness.len() as u32)
                .max()
                .unwrap_or(0)
        });
    let z = args.z.or(meta.as_ref().map(|m| m.z)).unwrap_or(0.99);
    anyhow::ensure!(z > 0.0 && z < 1.0, "--z must lie strictly between 0 and 1");

    let records: Vec<_> = rows.iter().map(RecordRow::to_record).collect();
    let report = EffortReport::compute(&records, pop, gens, z)?;

    let out_dir = args.out.unwrap_or_else(|| {
        args.records
            .parent()
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from("."))
    });
    let files = ExperimentFiles::new(&out_dir);
    files.write_report(&report)?;
    match report.min_effort {
        Some(m) => println!(
            "min effort {} at generation {} (z = {z})",
            m.effort, m.generation
        ),
        None => println!("no run solved; effort undefined (z = {z})"),
    }
    println!("wrote {}", out_dir.display());
    Ok(())
}

fn cmd_sweep(args: SweepArgs) -> anyhow::Result<()> {
    configure_pool(args.jobs)?;
    let last = tgp::preset(&args.through).with_context(|| {
        format!(
            "unknown preset {:?}; expected even-3 .. even-8",
            args.through
        )
    })?;
    anyhow::ensure!(
        args.z > 0.0 && args.z < 1.0,
        "--z must lie strictly between 0 and 1"
    );

    let mut summary = Vec::new();
    for preset in tgp::PRESETS.iter().take_while(|p| p.inputs <= last.inputs) {
        let mut cfg = preset.config(args.seed);
        // sweeps time each run to first solution, so stop there; success
        // statistics only depend on when a run first solves
        cfg.stop_on_solve = true;
        cfg.tracing = args.trace;
        let experiment = Experiment {
            name: preset.name.to_string(),
            cfg,
            runs: args.runs.unwrap_or(preset.default_runs),
            z: args.z,
        };
        let out_dir = args.out.join(preset.name);
        let (report, durations) = run_experiment(&experiment, &out_dir)?;

        let records = output::read_records(&ExperimentFiles::new(&out_dir).records_path())?;
        let solve_times: Vec<f64> = records
            .iter()
            .zip(&durations)
            .filter(|(r, _)| r.solved_at.is_some())
            .map(|(_, d)| d.as_secs_f64())
            .collect();
        summary.push(SweepRow {
            problem: preset.name.to_string(),
            pop_size: preset.pop_size,
            min_effort: report.min_effort.map(|m| m.effort),
            at_generation: report.min_effort.map(|m| m.generation),
            mean_solve_seconds: (!solve_times.is_empty())
                .then(|| solve_times.iter().sum::<f64>() / solve_times.len() as f64),
        });
    }

    output::write_sweep_summary(&args.out, &summary)?;
    println!("{}", output::SWEEP_HEADER);
    for row in &summary {
        println!("{}", row.to_csv_line());
    }
    Ok(())
}
