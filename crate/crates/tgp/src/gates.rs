//! Function symbols (gates) and their word-parallel application.
//!
//! A gate's semantics is a truth table packed into a `u8`: entry `i` is the
//! output for the input tuple encoded by `i`. Binary gates index with
//! `2*a + b`, unary gates with `a`. Application to [`TruthVector`] operands
//! expands the table into a fixed bitwise expression over whole storage
//! words, so evaluating all `2^k` fitness cases costs a handful of machine
//! operations per 64 cases regardless of which of the 16 binary functions
//! is involved.

use crate::error::{Error, Result};
use crate::truth::TruthVector;

/// Gate arity. Both built-in sets are binary; unary symbols are supported
/// for completeness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Arity {
    Unary,
    Binary,
}

impl Arity {
    /// Number of operands the gate consumes.
    pub fn operand_count(self) -> usize {
        match self {
            Arity::Unary => 1,
            Arity::Binary => 2,
        }
    }

    /// Number of truth-table entries (`2^arity`).
    pub fn table_entries(self) -> u8 {
        1 << self.operand_count()
    }
}

/// A named boolean function of one or two arguments.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FunctionSymbol {
    name: String,
    arity: Arity,
    table: u8,
}

/// All-ones word when `bit` of `table` is set, zero otherwise.
fn spread(table: u8, bit: u8) -> u64 {
    if table >> bit & 1 == 1 {
        u64::MAX
    } else {
        0
    }
}

impl FunctionSymbol {
    fn new(name: impl Into<String>, arity: Arity, table: u8) -> Result<Self> {
        let entries = arity.table_entries();
        if table >> entries != 0 {
            return Err(Error::InvalidTruthTable {
                table,
                arity: arity.operand_count() as u8,
                entries,
            });
        }
        Ok(Self {
            name: name.into(),
            arity,
            table,
        })
    }

    /// Unary gate; `table` bit `a` is the output on input `a`.
    pub fn unary(name: impl Into<String>, table: u8) -> Result<Self> {
        Self::new(name, Arity::Unary, table)
    }

    /// Binary gate; `table` bit `2*a + b` is the output on inputs `(a, b)`.
    pub fn binary(name: impl Into<String>, table: u8) -> Result<Self> {
        Self::new(name, Arity::Binary, table)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> Arity {
        self.arity
    }

    /// The packed truth table.
    pub fn table(&self) -> u8 {
        self.table
    }

    /// Output on a single input tuple. Panics if `inputs` length differs
    /// from the arity.
    pub fn eval(&self, inputs: &[bool]) -> bool {
        assert_eq!(inputs.len(), self.arity.operand_count(), "arity mismatch");
        let index = inputs.iter().fold(0u8, |acc, &b| acc << 1 | b as u8);
        self.table >> index & 1 == 1
    }

    /// Applies the gate case-wise across the operands' fitness cases.
    ///
    /// All operands must share the same input count, and there must be
    /// exactly as many operands as the arity demands. Padding bits of the
    /// result are zero.
    pub fn apply(&self, operands: &[&TruthVector]) -> Result<TruthVector> {
        if operands.len() != self.arity.operand_count() {
            return Err(Error::OperandCountMismatch {
                gate: self.name.clone(),
                expected: self.arity.operand_count(),
                got: operands.len(),
            });
        }
        for other in &operands[1..] {
            operands[0].check_same_inputs(other)?;
        }
        let inputs = operands[0].inputs();
        let words = match self.arity {
            Arity::Unary => {
                let m0 = spread(self.table, 0);
                let m1 = spread(self.table, 1);
                operands[0]
                    .words()
                    .iter()
                    .map(|&a| m0 & !a | m1 & a)
                    .collect()
            }
            Arity::Binary => {
                let m00 = spread(self.table, 0);
                let m01 = spread(self.table, 1);
                let m10 = spread(self.table, 2);
                let m11 = spread(self.table, 3);
                operands[0]
                    .words()
                    .iter()
                    .zip(operands[1].words())
                    .map(|(&a, &b)| m00 & !a & !b | m01 & !a & b | m10 & a & !b | m11 & a & b)
                    .collect()
            }
        };
        Ok(TruthVector::from_words(inputs, words))
    }
}

/// Truth tables of the classic four-gate function set.
pub mod tables {
    pub const AND: u8 = 0b1000;
    pub const OR: u8 = 0b1110;
    pub const NAND: u8 = 0b0111;
    pub const NOR: u8 = 0b0001;
    pub const NOT: u8 = 0b01;
}

/// Names for all 16 binary functions, indexed by truth table value.
const ALL16_NAMES: [&str; 16] = [
    "FALSE",
    "NOR",
    "NOT_A_AND_B",
    "NOT_A",
    "A_AND_NOT_B",
    "NOT_B",
    "XOR",
    "NAND",
    "AND",
    "XNOR",
    "B",
    "NOT_A_OR_B",
    "A",
    "A_OR_NOT_B",
    "OR",
    "TRUE",
];

/// An ordered set of distinct function symbols available to crossover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateSet {
    symbols: Vec<FunctionSymbol>,
}

impl GateSet {
    /// Builds a set from explicit symbols; names must be unique.
    pub fn new(symbols: Vec<FunctionSymbol>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::EmptyGateSet);
        }
        for (i, s) in symbols.iter().enumerate() {
            if symbols[..i].iter().any(|t| t.name() == s.name()) {
                return Err(Error::DuplicateGateName(s.name().to_owned()));
            }
        }
        Ok(Self { symbols })
    }

    /// The classic `{AND, OR, NAND, NOR}` set.
    pub fn koza4() -> Self {
        Self::new(vec![
            FunctionSymbol::binary("AND", tables::AND).unwrap(),
            FunctionSymbol::binary("OR", tables::OR).unwrap(),
            FunctionSymbol::binary("NAND", tables::NAND).unwrap(),
            FunctionSymbol::binary("NOR", tables::NOR).unwrap(),
        ])
        .unwrap()
    }

    /// The unbiased set of all 16 two-input boolean functions.
    pub fn all16() -> Self {
        Self::new(
            (0u8..16)
                .map(|t| FunctionSymbol::binary(ALL16_NAMES[t as usize], t).unwrap())
                .collect(),
        )
        .unwrap()
    }

    pub fn symbols(&self) -> &[FunctionSymbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Looks a symbol up by name.
    pub fn get(&self, name: &str) -> Option<&FunctionSymbol> {
        self.symbols.iter().find(|s| s.name() == name)
    }
}
