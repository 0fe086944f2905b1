//! Effort statistics over a set of completed runs.
//!
//! For each generation `i` the report carries the number of runs solved by
//! then, `Ns(i)`; the cumulative success probability `P(M,i) = Ns(i)/N`;
//! the independent-run count `R(z) = ceil(ln(1-z)/ln(1-P))` needed to reach
//! overall success probability `z`; and the processed-chromosome count
//! `I(M,i,z) = M*R(z)*i`. The minimum of `I` over `i >= 1` is the headline
//! effort figure.

use serde::{Deserialize, Serialize};

use crate::engine::RunRecord;
use crate::error::{Error, Result};

/// One generation's row of the effort table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EffortRow {
    /// Generation index; 0 is the initial population.
    pub generation: u32,
    /// Runs solved at or before this generation.
    pub ns: u32,
    /// Cumulative probability of success.
    pub p: f64,
    /// Independent runs required for confidence `z`; `None` before the
    /// first success.
    pub r: Option<u64>,
    /// Processed chromosomes `M * r * generation`; `None` where `r` is.
    pub effort: Option<u64>,
}

/// The minimizing row of the effort table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinEffort {
    pub effort: u64,
    pub generation: u32,
}

/// Effort table over all generations plus its minimum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EffortReport {
    pub z: f64,
    pub pop_size: usize,
    pub n_total: u32,
    pub rows: Vec<EffortRow>,
    pub min_effort: Option<MinEffort>,
}

/// `Ns(i)` for `i` in `0..=generations`: how many records solved at or
/// before each generation. Cumulative by construction.
pub fn success_counts(records: &[RunRecord], generations: u32) -> Result<Vec<u32>> {
    if records.is_empty() {
        return Err(Error::NoRecords);
    }
    let mut counts = vec![0u32; generations as usize + 1];
    for record in records {
        if let Some(g) = record.solved_at {
            if g <= generations {
                counts[g as usize] += 1;
            }
        }
    }
    let mut acc = 0;
    for c in &mut counts {
        acc += *c;
        *c = acc;
    }
    Ok(counts)
}

/// `P(M,i) = Ns(i) / N_total`.
pub fn cumulative_probability(successes: u32, total: u32) -> Result<f64> {
    if total == 0 {
        return Err(Error::NoRecords);
    }
    if successes > total {
        return Err(Error::CountExceedsTotal { successes, total });
    }
    Ok(f64::from(successes) / f64::from(total))
}

/// Independent runs needed to solve with probability `z` when one run
/// solves with probability `p`: `ceil(ln(1-z) / ln(1-p))`.
///
/// `p = 0` yields `None` (no successes yet, the count is undefined) and
/// `p = 1` yields 1. The ceiling is taken after nudging the ratio down by a
/// few ulps so that values landing an epsilon above an integer (from
/// logarithm rounding) do not spuriously round up.
pub fn runs_required(p: f64, z: f64) -> Result<Option<u64>> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    if !(z > 0.0 && z < 1.0) {
        return Err(Error::InvalidZ(z));
    }
    if p == 0.0 {
        return Ok(None);
    }
    if p == 1.0 {
        return Ok(Some(1));
    }
    let ratio = (1.0 - z).ln() / (1.0 - p).ln();
    let nudged = ratio * (1.0 - 4.0 * f64::EPSILON);
    Ok(Some(nudged.ceil().max(1.0) as u64))
}

/// Processed chromosomes for `runs` independent runs of `generation`
/// generations: `M * R * i` exactly.
pub fn effort(pop_size: usize, generation: u32, runs: u64) -> u64 {
    let product = pop_size as u128 * u128::from(generation) * u128::from(runs);
    u64::try_from(product).expect("effort exceeds u64")
}

/// The row minimizing effort over `i >= 1`; earlier generation wins ties.
/// `None` when no run ever solved.
pub fn min_effort(rows: &[EffortRow]) -> Option<MinEffort> {
    let mut best: Option<MinEffort> = None;
    for row in rows {
        if row.generation == 0 {
            continue;
        }
        if let Some(e) = row.effort {
            if best.is_none_or(|b| e < b.effort) {
                best = Some(MinEffort {
                    effort: e,
                    generation: row.generation,
                });
            }
        }
    }
    best
}

impl EffortReport {
    /// Builds the full table for records produced under a common config.
    pub fn compute(
        records: &[RunRecord],
        pop_size: usize,
        generations: u32,
        z: f64,
    ) -> Result<Self> {
        let counts = success_counts(records, generations)?;
        let n_total = records.len() as u32;
        let rows = counts
            .iter()
            .enumerate()
            .map(|(i, &ns)| {
                let generation = i as u32;
                let p = cumulative_probability(ns, n_total)?;
                let r = runs_required(p, z)?;
                Ok(EffortRow {
                    generation,
                    ns,
                    p,
                    r,
                    effort: r.map(|r| effort(pop_size, generation, r)),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let min = min_effort(&rows);
        Ok(Self {
            z,
            pop_size,
            n_total,
            rows,
            min_effort: min,
        })
    }
}
