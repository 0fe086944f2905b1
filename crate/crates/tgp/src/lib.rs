//! Traceless genetic programming over bit-packed truth vectors.
//!
//! Individuals never store the program they represent — only its outputs
//! over all fitness cases, packed 64 cases to a word. Crossover applies a
//! gate case-wise across the parents' vectors (the parents become subtrees
//! of the implicit offspring program) and insertion reseeds slots with
//! single terminals. The crate ships the even-parity benchmark family,
//! cumulative-success/effort statistics over run batches, and an optional
//! trace arena that records the implicit programs so they can be checked
//! against the vectors they claim to compute.
//!
//! ```
//! use tgp::{EffortReport, ParityProblem, RunConfig};
//!
//! let problem = ParityProblem::new(3).unwrap();
//! let cfg = RunConfig::new(3, 50, 200).with_seed(1);
//! let outcomes = tgp::run_batch(&cfg, &problem, 20).unwrap();
//! let records: Vec<_> = outcomes.into_iter().map(|o| o.record).collect();
//! let report = EffortReport::compute(&records, 50, 200, 0.99).unwrap();
//! assert!(report.min_effort.is_some());
//! ```

pub mod chromosome;
pub mod engine;
pub mod error;
pub mod gates;
pub mod metrics;
pub mod parity;
pub mod presets;
pub mod trace;
pub mod truth;

pub use chromosome::Chromosome;
pub use engine::{
    derive_run_seed, run, run_batch, Evolution, RunConfig, RunOutcome, RunRecord, SolvedCircuit,
};
pub use error::{Error, Result};
pub use gates::{Arity, FunctionSymbol, GateSet};
pub use metrics::{EffortReport, EffortRow, MinEffort};
pub use parity::{even_parity_table, fitness, terminal_vector, ParityProblem};
pub use presets::{preset, ExperimentPreset, PRESETS};
pub use trace::{Netlist, NetlistNode, NodeId, TraceArena, TraceNode};
pub use truth::TruthVector;
