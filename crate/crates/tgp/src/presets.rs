//! Canned even-parity experiment configurations.

use crate::engine::RunConfig;

/// Named parity experiment: problem size plus the population/generation
/// budget used for its benchmark numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExperimentPreset {
    pub name: &'static str,
    pub inputs: u32,
    pub pop_size: usize,
    pub generations: u32,
    /// Independent runs normally performed for this problem size.
    pub default_runs: u32,
}

/// The benchmark ladder from even-3 up to even-8.
pub const PRESETS: [ExperimentPreset; 6] = [
    ExperimentPreset {
        name: "even-3",
        inputs: 3,
        pop_size: 50,
        generations: 200,
        default_runs: 100,
    },
    ExperimentPreset {
        name: "even-4",
        inputs: 4,
        pop_size: 100,
        generations: 500,
        default_runs: 100,
    },
    ExperimentPreset {
        name: "even-5",
        inputs: 5,
        pop_size: 500,
        generations: 1000,
        default_runs: 100,
    },
    ExperimentPreset {
        name: "even-6",
        inputs: 6,
        pop_size: 1000,
        generations: 2500,
        default_runs: 100,
    },
    ExperimentPreset {
        name: "even-7",
        inputs: 7,
        pop_size: 2000,
        generations: 5000,
        default_runs: 100,
    },
    ExperimentPreset {
        name: "even-8",
        inputs: 8,
        pop_size: 5000,
        generations: 10000,
        default_runs: 10,
    },
];

/// Looks a preset up by name (`"even-3"` .. `"even-8"`).
pub fn preset(name: &str) -> Option<&'static ExperimentPreset> {
    PRESETS.iter().find(|p| p.name == name)
}

impl ExperimentPreset {
    /// Run configuration with the standard defaults and the given seed.
    pub fn config(&self, seed: u64) -> RunConfig {
        RunConfig::new(self.inputs, self.pop_size, self.generations).with_seed(seed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladder_matches_published_budgets() {
        let rows: Vec<(&str, u32, usize, u32, u32)> = PRESETS
            .iter()
            .map(|p| (p.name, p.inputs, p.pop_size, p.generations, p.default_runs))
            .collect();
        assert_eq!(
            rows,
            vec![
                ("even-3", 3, 50, 200, 100),
                ("even-4", 4, 100, 500, 100),
                ("even-5", 5, 500, 1000, 100),
                ("even-6", 6, 1000, 2500, 100),
                ("even-7", 7, 2000, 5000, 100),
                ("even-8", 8, 5000, 10000, 10),
            ]
        );
    }

    #[test]
    fn lookup_by_name() {
        assert_eq!(preset("even-5").unwrap().pop_size, 500);
        assert!(preset("even-9").is_none());
        let cfg = preset("even-3").unwrap().config(7);
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.insert_probability, 0.05);
        assert_eq!(cfg.tournament_size, 2);
    }
}
