//! Optional expression recorder.
//!
//! Evolution normally keeps only output vectors; when tracing is enabled,
//! every individual also carries a reference into a per-run [`TraceArena`]
//! that records the program which produced it. Offspring nodes reference
//! their parents' nodes, so the arena is an append-only DAG whose size stays
//! linear in `population * generations` even though the implicit trees grow
//! exponentially. The arena doubles as an independent oracle: re-evaluating
//! a node from the terminals must reproduce the stored vector bit for bit.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gates::{FunctionSymbol, GateSet};
use crate::parity::terminal_vector;
use crate::truth::TruthVector;

/// Reference to a node in a [`TraceArena`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NodeId(u32);

impl NodeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// One recorded program node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceNode {
    /// A problem input `d_j`.
    Terminal { input: u32 },
    /// A gate applied to earlier nodes. `gate` indexes the arena's interned
    /// symbol list; `operands` always point at lower node ids.
    Op { gate: u16, operands: Vec<NodeId> },
}

/// Append-only arena of program nodes for one run.
#[derive(Debug, Clone, Default)]
pub struct TraceArena {
    nodes: Vec<TraceNode>,
    symbols: Vec<FunctionSymbol>,
}

/// Tree-expanded gate counts saturate here; a count of `u64::MAX` means the
/// true value overflowed 64 bits.
pub const GATE_COUNT_SATURATED: u64 = u64::MAX;

impl TraceArena {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: NodeId) -> Result<&TraceNode> {
        self.nodes.get(id.index()).ok_or(Error::DanglingNode {
            index: id.index(),
            len: self.nodes.len(),
        })
    }

    /// The symbol applied at `id`, or `None` for terminals.
    pub fn symbol_at(&self, id: NodeId) -> Result<Option<&FunctionSymbol>> {
        Ok(match self.node(id)? {
            TraceNode::Terminal { .. } => None,
            TraceNode::Op { gate, .. } => Some(&self.symbols[*gate as usize]),
        })
    }

    /// Records a terminal node.
    pub fn push_terminal(&mut self, input: u32) -> NodeId {
        self.push(TraceNode::Terminal { input })
    }

    /// Records a gate application over existing nodes.
    pub fn push_op(&mut self, symbol: &FunctionSymbol, operands: &[NodeId]) -> Result<NodeId> {
        if operands.len() != symbol.arity().operand_count() {
            return Err(Error::OperandCountMismatch {
                gate: symbol.name().to_owned(),
                expected: symbol.arity().operand_count(),
                got: operands.len(),
            });
        }
        for id in operands {
            self.node(*id)?;
        }
        let gate = self.intern(symbol);
        Ok(self.push(TraceNode::Op {
            gate,
            operands: operands.to_vec(),
        }))
    }

    fn push(&mut self, node: TraceNode) -> NodeId {
        let id = NodeId(u32::try_from(self.nodes.len()).expect("arena exceeds u32 nodes"));
        self.nodes.push(node);
        id
    }

    fn intern(&mut self, symbol: &FunctionSymbol) -> u16 {
        if let Some(i) = self.symbols.iter().position(|s| s == symbol) {
            return i as u16;
        }
        self.symbols.push(symbol.clone());
        (self.symbols.len() - 1) as u16
    }

    /// Marks every node reachable from `root`; ids in the result are
    /// ascending, which is also a valid evaluation order.
    fn reachable(&self, root: NodeId) -> Result<Vec<bool>> {
        self.node(root)?;
        let mut seen = vec![false; root.index() + 1];
        let mut stack = vec![root];
        while let Some(id) = stack.pop() {
            if seen[id.index()] {
                continue;
            }
            seen[id.index()] = true;
            if let TraceNode::Op { operands, .. } = &self.nodes[id.index()] {
                stack.extend_from_slice(operands);
            }
        }
        Ok(seen)
    }

    /// Re-evaluates the program rooted at `node` from the terminals.
    ///
    /// Shared subtrees are evaluated once (the arena is in topological
    /// order, so a single ascending pass over reachable nodes suffices).
    pub fn eval(&self, node: NodeId, inputs: u32) -> Result<TruthVector> {
        let seen = self.reachable(node)?;
        let mut memo: Vec<Option<TruthVector>> = vec![None; node.index() + 1];
        for idx in 0..=node.index() {
            if !seen[idx] {
                continue;
            }
            let value = match &self.nodes[idx] {
                TraceNode::Terminal { input } => terminal_vector(inputs, *input)?,
                TraceNode::Op { gate, operands } => {
                    let args: Vec<&TruthVector> = operands
                        .iter()
                        .map(|o| memo[o.index()].as_ref().expect("topological order"))
                        .collect();
                    self.symbols[*gate as usize].apply(&args)?
                }
            };
            memo[idx] = Some(value);
        }
        Ok(memo[node.index()].take().expect("root evaluated"))
    }

    /// Gate count of the fully expanded tree rooted at `node`, with shared
    /// subtrees counted once per occurrence. Saturates at
    /// [`GATE_COUNT_SATURATED`].
    pub fn op_count(&self, node: NodeId) -> Result<u64> {
        let seen = self.reachable(node)?;
        let mut memo: Vec<u64> = vec![0; node.index() + 1];
        for idx in 0..=node.index() {
            if !seen[idx] {
                continue;
            }
            if let TraceNode::Op { operands, .. } = &self.nodes[idx] {
                memo[idx] = operands
                    .iter()
                    .fold(1u64, |acc, o| acc.saturating_add(memo[o.index()]));
            }
        }
        Ok(memo[node.index()])
    }

    /// Number of distinct gate nodes reachable from `node` (the DAG view of
    /// the same program).
    pub fn distinct_op_count(&self, node: NodeId) -> Result<u64> {
        let seen = self.reachable(node)?;
        Ok((0..=node.index())
            .filter(|&i| seen[i] && matches!(self.nodes[i], TraceNode::Op { .. }))
            .count() as u64)
    }

    /// Prefix-notation rendering, e.g. `(NAND (AND d0 d1) d2)`.
    ///
    /// Subtrees deeper than `max_depth` render as `…[n]`, where `n` is the
    /// subtree's tree-expanded gate count. The output therefore contains at
    /// most `2^max_depth` leaf atoms; with symbol names of at most `L`
    /// bytes, its length is bounded by `2^(max_depth + 1) * (L + 24)` bytes.
    pub fn render(&self, node: NodeId, max_depth: u32) -> Result<String> {
        self.node(node)?;
        let mut out = String::new();
        self.render_into(&mut out, node, max_depth);
        Ok(out)
    }

    fn render_into(&self, out: &mut String, node: NodeId, depth_left: u32) {
        match &self.nodes[node.index()] {
            TraceNode::Terminal { input } => {
                out.push('d');
                out.push_str(&input.to_string());
            }
            TraceNode::Op { gate, operands } => {
                if depth_left == 0 {
                    let count = self.op_count(node).expect("node already validated");
                    out.push_str(&format!("…[{count}]"));
                    return;
                }
                out.push('(');
                out.push_str(self.symbols[*gate as usize].name());
                for op in operands {
                    out.push(' ');
                    self.render_into(out, *op, depth_left - 1);
                }
                out.push(')');
            }
        }
    }

    /// Extracts the reachable subgraph as a standalone [`Netlist`], nodes
    /// renumbered topologically.
    pub fn netlist(&self, node: NodeId) -> Result<Netlist> {
        let seen = self.reachable(node)?;
        let mut remap: Vec<usize> = vec![usize::MAX; node.index() + 1];
        let mut nodes = Vec::new();
        for idx in 0..=node.index() {
            if !seen[idx] {
                continue;
            }
            remap[idx] = nodes.len();
            nodes.push(match &self.nodes[idx] {
                TraceNode::Terminal { input } => NetlistNode::Input { input: *input },
                TraceNode::Op { gate, operands } => NetlistNode::Gate {
                    gate: self.symbols[*gate as usize].name().to_owned(),
                    operands: operands.iter().map(|o| remap[o.index()]).collect(),
                },
            });
        }
        Ok(Netlist {
            nodes,
            output: remap[node.index()],
        })
    }
}

/// A self-contained circuit listing: inputs and gate applications in
/// topological order, plus the index of the output node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Netlist {
    pub nodes: Vec<NetlistNode>,
    pub output: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NetlistNode {
    Input { input: u32 },
    Gate { gate: String, operands: Vec<usize> },
}

impl Netlist {
    /// Evaluates the netlist over `inputs` problem inputs, resolving gate
    /// names against `gates`.
    pub fn eval(&self, gates: &GateSet, inputs: u32) -> Result<TruthVector> {
        let mut values: Vec<TruthVector> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let value = match node {
                NetlistNode::Input { input } => terminal_vector(inputs, *input)?,
                NetlistNode::Gate { gate, operands } => {
                    let sym = gates
                        .get(gate)
                        .ok_or_else(|| Error::UnknownGate(gate.clone()))?;
                    let args: Vec<&TruthVector> = operands
                        .iter()
                        .map(|&o| {
                            values.get(o).ok_or(Error::DanglingNode {
                                index: o,
                                len: values.len(),
                            })
                        })
                        .collect::<Result<_>>()?;
                    sym.apply(&args)?
                }
            };
            values.push(value);
        }
        let len = values.len();
        values
            .into_iter()
            .nth(self.output)
            .ok_or(Error::DanglingNode {
                index: self.output,
                len,
            })
    }
}
