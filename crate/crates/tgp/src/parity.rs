//! Even-parity targets, terminal input vectors, and fitness.
//!
//! Fitness cases are the `2^k` assignments of `k` boolean inputs; input
//! `d_j` of case `c` is bit `j` of `c`. Fitness is the Hamming distance to
//! the even-parity truth table, so 0 means solved and `2^k` is the worst
//! possible score.

use crate::chromosome::Chromosome;
use crate::error::{Error, Result};
use crate::truth::{check_inputs, TruthVector, WORD_BITS};

/// Word patterns for the six terminals whose period fits inside one word.
const TERMINAL_WORDS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// Truth vector of input `d_index`: bit `c` is bit `index` of the case
/// number `c`.
pub fn terminal_vector(inputs: u32, index: u32) -> Result<TruthVector> {
    check_inputs(inputs)?;
    if index >= inputs {
        return Err(Error::TerminalIndexOutOfRange { index, inputs });
    }
    let words = (1usize << inputs).div_ceil(WORD_BITS);
    let pattern: Vec<u64> = if index < 6 {
        vec![TERMINAL_WORDS[index as usize]; words]
    } else {
        // whole words alternate: word w is all-ones iff bit (index-6) of w
        (0..words)
            .map(|w| {
                if w >> (index - 6) & 1 == 1 {
                    u64::MAX
                } else {
                    0
                }
            })
            .collect()
    };
    Ok(TruthVector::from_words(inputs, pattern))
}

/// Truth table of the even-parity function: true iff an even number of the
/// `k` inputs are true.
///
/// Built as the complement of the XOR of all terminals, which equals the
/// case-by-case definition (a case has even popcount iff the XOR of its
/// bits is 0).
pub fn even_parity_table(inputs: u32) -> Result<TruthVector> {
    let mut acc = terminal_vector(inputs, 0)?;
    for j in 1..inputs {
        acc = acc.xor(&terminal_vector(inputs, j)?)?;
    }
    Ok(acc.complemented())
}

/// An even-parity synthesis problem of `k` inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityProblem {
    inputs: u32,
    target: TruthVector,
}

impl ParityProblem {
    pub fn new(inputs: u32) -> Result<Self> {
        Ok(Self {
            inputs,
            target: even_parity_table(inputs)?,
        })
    }

    pub fn inputs(&self) -> u32 {
        self.inputs
    }

    pub fn target(&self) -> &TruthVector {
        &self.target
    }
}

/// Standardized fitness: cases on which the chromosome disagrees with the
/// parity target. Zero is a solution.
pub fn fitness(chromosome: &Chromosome, problem: &ParityProblem) -> Result<u32> {
    chromosome.values().hamming(&problem.target)
}
