//! The traceless individual: an output vector plus bookkeeping.

use crate::trace::NodeId;
use crate::truth::TruthVector;

/// One individual of the evolving population.
///
/// Only the outputs over all fitness cases are stored; the program that
/// produced them is implicit. `gates` tracks the size of that implicit
/// program (tree-expanded; offspring carry the sum of their parents' counts
/// plus one). A count of `u64::MAX` means the true value no longer fits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chromosome {
    values: TruthVector,
    gates: u64,
    trace: Option<NodeId>,
}

impl Chromosome {
    /// A fresh single-terminal individual: zero gates.
    pub fn terminal(values: TruthVector, trace: Option<NodeId>) -> Self {
        Self {
            values,
            gates: 0,
            trace,
        }
    }

    pub(crate) fn with_gates(values: TruthVector, gates: u64, trace: Option<NodeId>) -> Self {
        Self {
            values,
            gates,
            trace,
        }
    }

    /// Outputs over all fitness cases.
    pub fn values(&self) -> &TruthVector {
        &self.values
    }

    /// Size of the implicit program, in gate applications.
    pub fn gates(&self) -> u64 {
        self.gates
    }

    /// Recorded program node, when the run traces expressions.
    pub fn trace(&self) -> Option<NodeId> {
        self.trace
    }
}
