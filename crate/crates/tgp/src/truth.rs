//! Bit-packed output vectors over all fitness cases of a boolean problem.
//!
//! A [`TruthVector`] stores one output bit per fitness case: for `k` inputs
//! there are `2^k` cases, and case `c` (the integer encoding of the input
//! assignment) lives at bit `c` of a little-endian sequence of 64-bit words.
//! All bits past case `2^k - 1` are kept at zero, so word-wise equality and
//! popcounts agree with the semantic view of the vector.

use std::fmt;

use crate::error::{Error, Result};

/// Number of bits per storage word.
pub const WORD_BITS: usize = 64;

/// Largest supported input count (`2^16` fitness cases, 8 KiB per vector).
pub const MAX_INPUTS: u32 = 16;

/// Packed outputs of an implicit boolean program over all `2^k` fitness cases.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthVector {
    inputs: u32,
    words: Vec<u64>,
}

pub(crate) fn check_inputs(inputs: u32) -> Result<()> {
    if (1..=MAX_INPUTS).contains(&inputs) {
        Ok(())
    } else {
        Err(Error::InputCountOutOfRange(inputs))
    }
}

fn word_count(inputs: u32) -> usize {
    (1usize << inputs).div_ceil(WORD_BITS)
}

/// Mask selecting the live bits of the final word for a given input count.
fn tail_mask(inputs: u32) -> u64 {
    let rem = (1usize << inputs) % WORD_BITS;
    if rem == 0 {
        u64::MAX
    } else {
        (1u64 << rem) - 1
    }
}

impl TruthVector {
    /// All-zero vector for `inputs` boolean arguments.
    pub fn zeros(inputs: u32) -> Result<Self> {
        check_inputs(inputs)?;
        Ok(Self {
            inputs,
            words: vec![0; word_count(inputs)],
        })
    }

    /// Builds a vector by evaluating `f` on every case index in order.
    pub fn from_fn(inputs: u32, mut f: impl FnMut(usize) -> bool) -> Result<Self> {
        let mut v = Self::zeros(inputs)?;
        for case in 0..v.num_cases() {
            if f(case) {
                v.words[case / WORD_BITS] |= 1u64 << (case % WORD_BITS);
            }
        }
        Ok(v)
    }

    /// Builds a small vector (`inputs <= 6`) from a literal bit pattern,
    /// bit `c` of `bits` giving the output for case `c`.
    pub fn from_word(inputs: u32, bits: u64) -> Result<Self> {
        check_inputs(inputs)?;
        if inputs > 6 {
            return Err(Error::InputCountOutOfRange(inputs));
        }
        let mask = tail_mask(inputs);
        if bits & !mask != 0 {
            return Err(Error::InvalidTruthTable {
                table: 0,
                arity: inputs as u8,
                entries: 0,
            });
        }
        Ok(Self {
            inputs,
            words: vec![bits & mask],
        })
    }

    /// The whole vector as a single word, when it fits in one (`inputs <= 6`).
    pub fn as_word(&self) -> Option<u64> {
        (self.words.len() == 1).then(|| self.words[0])
    }

    /// Number of boolean inputs `k`.
    pub fn inputs(&self) -> u32 {
        self.inputs
    }

    /// Number of fitness cases `m = 2^k`.
    pub fn num_cases(&self) -> usize {
        1usize << self.inputs
    }

    /// Output bit for fitness case `case`.
    ///
    /// Panics if `case >= 2^k`, like slice indexing.
    pub fn bit(&self, case: usize) -> bool {
        assert!(case < self.num_cases(), "case {case} out of range");
        (self.words[case / WORD_BITS] >> (case % WORD_BITS)) & 1 == 1
    }

    /// Number of cases whose output is true.
    pub fn count_ones(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    /// Hamming distance: the number of cases on which `self` and `other`
    /// disagree. Ranges over `0..=2^k`.
    pub fn hamming(&self, other: &Self) -> Result<u32> {
        self.check_same_inputs(other)?;
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones())
            .sum())
    }

    /// Complement of every output within the `2^k`-case window.
    pub fn complemented(&self) -> Self {
        let mut out = Self {
            inputs: self.inputs,
            words: self.words.iter().map(|w| !w).collect(),
        };
        out.mask_tail();
        out
    }

    /// Case-wise exclusive or.
    pub fn xor(&self, other: &Self) -> Result<Self> {
        self.check_same_inputs(other)?;
        Ok(Self {
            inputs: self.inputs,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a ^ b)
                .collect(),
        })
    }

    pub(crate) fn check_same_inputs(&self, other: &Self) -> Result<()> {
        if self.inputs == other.inputs {
            Ok(())
        } else {
            Err(Error::InputCountMismatch {
                left: self.inputs,
                right: other.inputs,
            })
        }
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn from_words(inputs: u32, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), word_count(inputs));
        let mut v = Self { inputs, words };
        v.mask_tail();
        v
    }

    /// Clears storage bits past the last fitness case, restoring the
    /// canonical-padding invariant after a complementing operation.
    pub(crate) fn mask_tail(&mut self) {
        if let Some(last) = self.words.last_mut() {
            *last &= tail_mask(self.inputs);
        }
    }

    #[cfg(test)]
    pub(crate) fn padding_is_zero(&self) -> bool {
        self.words
            .last()
            .is_none_or(|w| w & !tail_mask(self.inputs) == 0)
    }
}

impl fmt::Debug for TruthVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inputs <= 6 {
            write!(
                f,
                "TruthVector(k={}, {:#0width$b})",
                self.inputs,
                self.words[0],
                width = self.num_cases() + 2
            )
        } else {
            write!(
                f,
                "TruthVector(k={}, {} cases, {} ones)",
                self.inputs,
                self.num_cases(),
                self.count_ones()
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn random_vector(inputs: u32, seed: u64) -> TruthVector {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        TruthVector::from_fn(inputs, |_| rng.gen_bool(0.5)).unwrap()
    }

    #[test]
    fn from_word_and_bit_agree() {
        let v = TruthVector::from_word(2, 0b1010).unwrap();
        assert!(!v.bit(0));
        assert!(v.bit(1));
        assert!(!v.bit(2));
        assert!(v.bit(3));
        assert_eq!(v.as_word(), Some(0b1010));
        assert_eq!(v.num_cases(), 4);
    }

    #[test]
    fn from_word_rejects_bits_past_window() {
        assert!(TruthVector::from_word(2, 0b10000).is_err());
        assert!(TruthVector::from_word(7, 0).is_err());
    }

    #[test]
    fn input_count_range_is_enforced() {
        assert_eq!(
            TruthVector::zeros(0).unwrap_err(),
            Error::InputCountOutOfRange(0)
        );
        assert_eq!(
            TruthVector::zeros(17).unwrap_err(),
            Error::InputCountOutOfRange(17)
        );
        assert!(TruthVector::zeros(16).is_ok());
    }

    #[test]
    fn hamming_examples() {
        let a = TruthVector::from_word(2, 0b1010).unwrap();
        let b = TruthVector::from_word(2, 0b1001).unwrap();
        assert_eq!(a.hamming(&a).unwrap(), 0);
        assert_eq!(a.hamming(&a.complemented()).unwrap(), 4);
        assert_eq!(a.hamming(&b).unwrap(), 2);
        assert_eq!(b.hamming(&a).unwrap(), 2);
    }

    #[test]
    fn hamming_rejects_mismatched_inputs() {
        let a = TruthVector::zeros(2).unwrap();
        let b = TruthVector::zeros(3).unwrap();
        assert_eq!(
            a.hamming(&b).unwrap_err(),
            Error::InputCountMismatch { left: 2, right: 3 }
        );
    }

    #[test]
    fn complement_of_full_window_is_balanced() {
        for inputs in 1..=9 {
            let z = TruthVector::zeros(inputs).unwrap();
            let ones = z.complemented();
            assert_eq!(ones.count_ones() as usize, ones.num_cases());
            assert!(ones.padding_is_zero());
        }
    }

    proptest! {
        #[test]
        fn complement_is_involutive(inputs in 1u32..=8, seed in any::<u64>()) {
            let v = random_vector(inputs, seed);
            prop_assert_eq!(v.complemented().complemented(), v);
        }

        #[test]
        fn complement_never_touches_padding(inputs in 1u32..=8, seed in any::<u64>()) {
            let v = random_vector(inputs, seed).complemented();
            prop_assert!(v.padding_is_zero());
        }

        #[test]
        fn hamming_is_a_metric(inputs in 1u32..=8, s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
            let a = random_vector(inputs, s1);
            let b = random_vector(inputs, s2);
            let c = random_vector(inputs, s3);
            prop_assert_eq!(a.hamming(&b).unwrap(), b.hamming(&a).unwrap());
            prop_assert_eq!(a.hamming(&a).unwrap(), 0);
            prop_assert!(a.hamming(&c).unwrap() <= a.hamming(&b).unwrap() + b.hamming(&c).unwrap());
        }

        #[test]
        fn xor_agrees_with_per_case(inputs in 1u32..=8, s1 in any::<u64>(), s2 in any::<u64>()) {
            let a = random_vector(inputs, s1);
            let b = random_vector(inputs, s2);
            let x = a.xor(&b).unwrap();
            let expected = TruthVector::from_fn(inputs, |c| a.bit(c) ^ b.bit(c)).unwrap();
            prop_assert_eq!(x, expected);
        }
    }
}
