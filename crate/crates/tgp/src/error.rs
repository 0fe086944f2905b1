//! Error type shared across the crate.
//!
//! Every fallible operation reports a contract violation through [`enum@Error`];
//! there are no panicking public APIs apart from slice-style index accessors.

use thiserror::Error;

/// Contract violations raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input count outside the supported `1..=16` range.
    #[error("input count {0} outside supported range 1..=16")]
    InputCountOutOfRange(u32),

    /// Two values with different input counts were combined.
    #[error("input-count mismatch: {left} vs {right}")]
    InputCountMismatch { left: u32, right: u32 },

    /// A gate was applied to the wrong number of operands.
    #[error("gate {gate:?} expects {expected} operand(s), got {got}")]
    OperandCountMismatch {
        gate: String,
        expected: usize,
        got: usize,
    },

    /// Truth table bits set beyond the `2^arity` entries a gate defines.
    #[error(
        "truth table {table:#06b} has bits beyond the {entries} entries of an arity-{arity} gate"
    )]
    InvalidTruthTable { table: u8, arity: u8, entries: u8 },

    /// A terminal index outside `0..k` was requested.
    #[error("terminal index {index} out of range for {inputs} input(s)")]
    TerminalIndexOutOfRange { index: u32, inputs: u32 },

    /// A gate set must contain at least one symbol.
    #[error("gate set must not be empty")]
    EmptyGateSet,

    /// Gate names must be unique within a set.
    #[error("duplicate gate name {0:?}")]
    DuplicateGateName(String),

    /// A gate name could not be resolved against the active gate set.
    #[error("unknown gate {0:?}")]
    UnknownGate(String),

    /// A node reference does not belong to the arena it was used with.
    #[error("node {index} not present in arena of {len} node(s)")]
    DanglingNode { index: usize, len: usize },

    /// A run configuration failed validation.
    #[error("invalid run configuration: {0}")]
    InvalidConfig(String),

    /// Effort statistics need at least one run record.
    #[error("no run records supplied")]
    NoRecords,

    /// A probability argument fell outside `[0, 1]`.
    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),

    /// The target success probability `z` must lie strictly inside `(0, 1)`.
    #[error("z must lie strictly between 0 and 1, got {0}")]
    InvalidZ(f64),

    /// A success count exceeded the total number of runs.
    #[error("success count {successes} exceeds total runs {total}")]
    CountExceedsTotal { successes: u32, total: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
