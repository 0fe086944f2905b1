//! File formats of the harness.
//!
//! - `records.jsonl` — one JSON object per run: index, seed, solved_at,
//!   best-fitness array, optional solution expression. Streamable and
//!   append-safe.
//! - `report.csv` — `generation,ns,p,r,effort`, one row per generation;
//!   `report.json` — the headline summary.
//! - `solutions.txt` / `solutions.json` — rendered expressions and
//!   netlists of solving runs (tracing only).
//! - `metadata.json` — config echo plus timestamps, kept separate so the
//!   numeric outputs above are byte-identical for identical flags + seed.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use anyhow::Context;
use serde::{Deserialize, Serialize};
use tgp::{EffortReport, RunConfig, RunOutcome, RunRecord, SolvedCircuit};

/// One line of `records.jsonl`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordRow {
    pub run: u32,
    pub seed: u64,
    pub solved_at: Option<u32>,
    pub best_fitness: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solution: Option<String>,
}

impl RecordRow {
    pub fn new(run: u32, outcome: &RunOutcome) -> Self {
        Self {
            run,
            seed: outcome.record.seed_used,
            solved_at: outcome.record.solved_at,
            best_fitness: outcome.record.best_fitness_per_generation.clone(),
            solution: outcome.solution.as_ref().map(|s| s.expression.clone()),
        }
    }

    pub fn to_record(&self) -> RunRecord {
        RunRecord {
            solved_at: self.solved_at,
            best_fitness_per_generation: self.best_fitness.clone(),
            seed_used: self.seed,
        }
    }
}

/// Headline numbers of `report.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportSummary {
    pub min_effort: Option<u64>,
    pub at_generation: Option<u32>,
    pub z: f64,
    pub m: usize,
    pub n_total: u32,
}

/// Config echo and timing, written next to the deterministic outputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMetadata {
    pub tool: String,
    pub version: String,
    pub experiment: String,
    pub inputs: u32,
    pub pop_size: usize,
    pub generations: u32,
    pub runs: u32,
    pub seed: u64,
    pub z: f64,
    pub insert_probability: f64,
    pub tournament_size: usize,
    pub gates: Vec<String>,
    pub tracing: bool,
    pub stop_on_solve: bool,
    pub parsimony: bool,
    pub created_unix_secs: u64,
    pub elapsed_secs: f64,
}

impl RunMetadata {
    pub fn collect(name: &str, cfg: &RunConfig, runs: u32, z: f64, elapsed: Duration) -> Self {
        Self {
            tool: "tgp".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            experiment: name.into(),
            inputs: cfg.inputs,
            pop_size: cfg.pop_size,
            generations: cfg.generations,
            runs,
            seed: cfg.seed,
            z,
            insert_probability: cfg.insert_probability,
            tournament_size: cfg.tournament_size,
            gates: cfg
                .gate_set
                .symbols()
                .iter()
                .map(|s| s.name().to_owned())
                .collect(),
            tracing: cfg.tracing,
            stop_on_solve: cfg.stop_on_solve,
            parsimony: cfg.parsimony,
            created_unix_secs: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            elapsed_secs: elapsed.as_secs_f64(),
        }
    }
}

/// One solving run's circuit in `solutions.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionEntry {
    pub run: u32,
    pub gates: u64,
    pub distinct_gates: u64,
    pub expression: String,
    pub netlist: tgp::Netlist,
}

/// Paths of one experiment's output directory.
pub struct ExperimentFiles {
    dir: PathBuf,
}

impl ExperimentFiles {
    pub fn new(dir: impl AsRef<Path>) -> Self {
        Self {
            dir: dir.as_ref().to_path_buf(),
        }
    }

    pub fn records_path(&self) -> PathBuf {
        self.dir.join("records.jsonl")
    }

    pub fn report_csv_path(&self) -> PathBuf {
        self.dir.join("report.csv")
    }

    pub fn report_json_path(&self) -> PathBuf {
        self.dir.join("report.json")
    }

    pub fn solutions_text_path(&self) -> PathBuf {
        self.dir.join("solutions.txt")
    }

    pub fn solutions_json_path(&self) -> PathBuf {
        self.dir.join("solutions.json")
    }

    pub fn metadata_path(&self) -> PathBuf {
        self.dir.join("metadata.json")
    }

    fn ensure_dir(&self) -> anyhow::Result<()> {
        fs::create_dir_all(&self.dir)
            .with_context(|| format!("creating output directory {}", self.dir.display()))
    }

    pub fn write_records(&self, rows: &[RecordRow]) -> anyhow::Result<()> {
        self.ensure_dir()?;
        let mut buf = String::new();
        for row in rows {
            buf.push_str(&serde_json::to_string(row)?);
            buf.push('\n');
        }
        write_file(&self.records_path(), buf.as_bytes())
    }

    pub fn write_report(&self, report: &EffortReport) -> anyhow::Result<()> {
        self.ensure_dir()?;
        let mut csv = String::from("generation,ns,p,r,effort\n");
        for row in &report.rows {
            csv.push_str(&format!(
                "{},{},{},{},{}\n",
                row.generation,
                row.ns,
                row.p,
                row.r.map(|v| v.to_string()).unwrap_or_default(),
                row.effort.map(|v| v.to_string()).unwrap_or_default(),
            ));
        }
        write_file(&self.report_csv_path(), csv.as_bytes())?;

        let summary = ReportSummary {
            min_effort: report.min_effort.map(|m| m.effort),
            at_generation: report.min_effort.map(|m| m.generation),
            z: report.z,
            m: report.pop_size,
            n_total: report.n_total,
        };
        let json = serde_json::to_string_pretty(&summary)?;
        write_file(&self.report_json_path(), format!("{json}\n").as_bytes())
    }

    pub fn write_solutions(
        &self,
        rows: &[RecordRow],
        outcomes: &[RunOutcome],
    ) -> anyhow::Result<()> {
        self.ensure_dir()?;
        let mut text = String::new();
        let mut entries = Vec::new();
        for (row, outcome) in rows.iter().zip(outcomes) {
            let Some(solution) = &outcome.solution else {
                continue;
            };
            text.push_str(&format!("run {}: {}\n", row.run, solution.expression));
            entries.push(solution_entry(row.run, solution));
        }
        write_file(&self.solutions_text_path(), text.as_bytes())?;
        let json = serde_json::to_string_pretty(&entries)?;
        write_file(&self.solutions_json_path(), format!("{json}\n").as_bytes())
    }

    pub fn write_metadata(&self, meta: &RunMetadata) -> anyhow::Result<()> {
        self.ensure_dir()?;
        let json = serde_json::to_string_pretty(meta)?;
        write_file(&self.metadata_path(), format!("{json}\n").as_bytes())
    }
}

fn solution_entry(run: u32, solution: &SolvedCircuit) -> SolutionEntry {
    SolutionEntry {
        run,
        gates: solution.gates,
        distinct_gates: solution.distinct_gates,
        expression: solution.expression.clone(),
        netlist: solution.netlist.clone(),
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> anyhow::Result<()> {
    let mut file =
        fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
    file.write_all(bytes)
        .with_context(|| format!("writing {}", path.display()))
}

/// Parses a `records.jsonl` file.
pub fn read_records(path: &Path) -> anyhow::Result<Vec<RecordRow>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    text.lines()
        .enumerate()
        .filter(|(_, line)| !line.trim().is_empty())
        .map(|(i, line)| {
            serde_json::from_str(line)
                .with_context(|| format!("{}:{}: malformed record", path.display(), i + 1))
        })
        .collect()
}

/// Loads `metadata.json` from the records file's directory, if present.
pub fn read_sibling_metadata(records_path: &Path) -> Option<RunMetadata> {
    let dir = records_path.parent()?;
    let text = fs::read_to_string(dir.join("metadata.json")).ok()?;
    serde_json::from_str(&text).ok()
}

pub const SWEEP_HEADER: &str = "problem,pop_size,min_effort,at_generation,mean_solve_seconds";

/// One line of the sweep summary.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub problem: String,
    pub pop_size: usize,
    pub min_effort: Option<u64>,
    pub at_generation: Option<u32>,
    pub mean_solve_seconds: Option<f64>,
}

impl SweepRow {
    pub fn to_csv_line(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.problem,
            self.pop_size,
            self.min_effort.map(|v| v.to_string()).unwrap_or_default(),
            self.at_generation
                .map(|v| v.to_string())
                .unwrap_or_default(),
            self.mean_solve_seconds
                .map(|v| format!("{v:.6}"))
                .unwrap_or_default(),
        )
    }
}

pub fn write_sweep_summary(out_dir: &Path, rows: &[SweepRow]) -> anyhow::Result<()> {
    fs::create_dir_all(out_dir)
        .with_context(|| format!("creating output directory {}", out_dir.display()))?;
    let mut csv = String::from(SWEEP_HEADER);
    csv.push('\n');
    for row in rows {
        csv.push_str(&row.to_csv_line());
        csv.push('\n');
    }
    write_file(&out_dir.join("sweep_summary.csv"), csv.as_bytes())
}
