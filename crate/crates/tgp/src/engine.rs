//! The generational evolution loop: terminal-only initialization, binary
//! tournament selection, value-wise crossover, and terminal insertion.
//!
//! Every run is a pure function of its configuration (including the seed):
//! the RNG is a ChaCha8 stream seeded from `RunConfig::seed`, and draws
//! happen in a fixed order — one Bernoulli draw per offspring slot, then
//! either one terminal index (insertion) or one gate index followed by
//! `tournament_size` population indices per parent (crossover); after the
//! last slot, one Bernoulli draw for runner-up survival when enabled.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::chromosome::Chromosome;
use crate::error::{Error, Result};
use crate::gates::{FunctionSymbol, GateSet};
use crate::parity::{fitness, terminal_vector, ParityProblem};
use crate::trace::{Netlist, TraceArena};
use crate::truth::MAX_INPUTS;

/// Depth at which solution expressions are rendered for reports; deeper
/// subtrees are elided with their gate count.
pub const SOLUTION_RENDER_DEPTH: u32 = 10;

/// All parameters of a single evolutionary run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Number of problem inputs `k`.
    pub inputs: u32,
    /// Individuals per generation.
    pub pop_size: usize,
    /// Generations to evolve after the initial population.
    pub generations: u32,
    /// Probability that an offspring slot is filled by insertion rather
    /// than crossover.
    pub insert_probability: f64,
    /// Tournament size for parent selection; 2 is the standard choice.
    pub tournament_size: usize,
    /// Function symbols available to crossover.
    pub gate_set: GateSet,
    /// Seed of the run's random stream.
    pub seed: u64,
    /// Record the implicit program of every individual in a trace arena.
    pub tracing: bool,
    /// Break fitness ties in tournaments toward fewer gates.
    pub parsimony: bool,
    /// Carry the best individual of each generation into the next
    /// unchanged. Without any survivors, replacement is purely generational
    /// and progress on plateau-heavy targets is routinely lost.
    pub elitism: bool,
    /// Probability that the best individual computing a *different*
    /// function from the elite also survives the generation. The second
    /// anchor keeps one near-solution from monopolizing the population —
    /// two distinct near-misses often recombine into an exact solution.
    /// 0 disables; only drawn when `elitism` is on.
    pub runner_up_survival: f64,
    /// Stop as soon as any individual reaches fitness 0 instead of running
    /// all generations.
    pub stop_on_solve: bool,
}

impl RunConfig {
    /// A config with the standard defaults: insertion probability 0.05,
    /// binary tournament, the four-gate set, seed 0, elitism with a 0.75
    /// runner-up survival, everything else off.
    pub fn new(inputs: u32, pop_size: usize, generations: u32) -> Self {
        Self {
            inputs,
            pop_size,
            generations,
            insert_probability: 0.05,
            tournament_size: 2,
            gate_set: GateSet::koza4(),
            seed: 0,
            tracing: false,
            parsimony: false,
            elitism: true,
            runner_up_survival: 0.75,
            stop_on_solve: false,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=MAX_INPUTS).contains(&self.inputs) {
            return Err(Error::InputCountOutOfRange(self.inputs));
        }
        if self.pop_size == 0 {
            return Err(Error::InvalidConfig(
                "population size must be positive".into(),
            ));
        }
        if self.generations == 0 {
            return Err(Error::InvalidConfig(
                "generation count must be positive".into(),
            ));
        }
        if !(0.0..=1.0).contains(&self.insert_probability) {
            return Err(Error::InvalidProbability(self.insert_probability));
        }
        if !(0.0..=1.0).contains(&self.runner_up_survival) {
            return Err(Error::InvalidProbability(self.runner_up_survival));
        }
        if self.tournament_size == 0 || self.tournament_size > self.pop_size {
            return Err(Error::InvalidConfig(format!(
                "tournament size {} must be in 1..={}",
                self.tournament_size, self.pop_size
            )));
        }
        if self.gate_set.is_empty() {
            return Err(Error::EmptyGateSet);
        }
        Ok(())
    }
}

/// What a finished run reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunRecord {
    /// First generation at which any individual reached fitness 0;
    /// generation 0 is the initial population. `None` if never solved.
    pub solved_at: Option<u32>,
    /// Best fitness after each executed generation (entry `g-1` belongs to
    /// generation `g`). Shorter than `generations` only under
    /// `stop_on_solve`.
    pub best_fitness_per_generation: Vec<u32>,
    /// The seed this run actually used.
    pub seed_used: u64,
}

/// A solving individual's reconstructed circuit, available when tracing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolvedCircuit {
    /// Depth-limited prefix rendering of the expression.
    pub expression: String,
    /// Full reachable subgraph, gate names plus operand indices.
    pub netlist: Netlist,
    /// Tree-expanded gate count (`u64::MAX` when saturated).
    pub gates: u64,
    /// Distinct gate nodes in the DAG view.
    pub distinct_gates: u64,
}

/// Record plus the optional solution payload.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub record: RunRecord,
    pub solution: Option<SolvedCircuit>,
}

/// Derives the seed for run `run_index` from a base seed, splitmix64-style.
///
/// Fixed for reproducibility: `mix(base + (index + 1) * 0x9E3779B97F4A7C15)`
/// where `mix` is the splitmix64 finalizer.
pub fn derive_run_seed(base_seed: u64, run_index: u64) -> u64 {
    let mut z = base_seed.wrapping_add(
        run_index
            .wrapping_add(1)
            .wrapping_mul(0x9E37_79B9_7F4A_7C15),
    );
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn fresh_terminal(
    cfg: &RunConfig,
    rng: &mut impl Rng,
    arena: Option<&mut TraceArena>,
) -> Result<Chromosome> {
    let index = rng.gen_range(0..cfg.inputs);
    let values = terminal_vector(cfg.inputs, index)?;
    let trace = arena.map(|a| a.push_terminal(index));
    Ok(Chromosome::terminal(values, trace))
}

/// Builds the initial population: every individual is a single terminal
/// drawn uniformly.
pub fn init_population(
    cfg: &RunConfig,
    rng: &mut impl Rng,
    mut arena: Option<&mut TraceArena>,
) -> Result<Vec<Chromosome>> {
    cfg.validate()?;
    (0..cfg.pop_size)
        .map(|_| fresh_terminal(cfg, rng, arena.as_deref_mut()))
        .collect()
}

/// The insertion operator: a fresh single-terminal individual.
pub fn insertion(
    cfg: &RunConfig,
    rng: &mut impl Rng,
    arena: Option<&mut TraceArena>,
) -> Result<Chromosome> {
    fresh_terminal(cfg, rng, arena)
}

/// The crossover operator: applies `symbol` case-wise across the parents'
/// value vectors. The offspring's gate count is the parents' sum plus one.
pub fn crossover(
    symbol: &FunctionSymbol,
    parents: &[&Chromosome],
    arena: Option<&mut TraceArena>,
) -> Result<Chromosome> {
    let operand_values: Vec<_> = parents.iter().map(|p| p.values()).collect();
    let values = symbol.apply(&operand_values)?;
    let gates = parents
        .iter()
        .fold(1u64, |acc, p| acc.saturating_add(p.gates()));
    let trace = match arena {
        Some(a) => {
            let operand_ids: Vec<_> = parents
                .iter()
                .map(|p| p.trace().expect("traced run carries trace nodes"))
                .collect();
            Some(a.push_op(symbol, &operand_ids)?)
        }
        None => None,
    };
    Ok(Chromosome::with_gates(values, gates, trace))
}

/// Tournament selection over cached fitnesses: draws `size` indices
/// uniformly with replacement and returns the fittest one.
///
/// Ties go to the earliest draw, or to the lower gate count first when
/// `parsimony` is set.
pub fn tournament_select(
    pop: &[Chromosome],
    fitnesses: &[u32],
    size: usize,
    rng: &mut impl Rng,
    parsimony: bool,
) -> usize {
    assert!(!pop.is_empty() && pop.len() == fitnesses.len());
    assert!(size >= 1);
    let mut best = rng.gen_range(0..pop.len());
    for _ in 1..size {
        let candidate = rng.gen_range(0..pop.len());
        let better = if parsimony {
            (fitnesses[candidate], pop[candidate].gates()) < (fitnesses[best], pop[best].gates())
        } else {
            fitnesses[candidate] < fitnesses[best]
        };
        if better {
            best = candidate;
        }
    }
    best
}

/// Produces the next generation: each of the `pop_size` slots is filled by
/// insertion with probability `insert_probability`, otherwise by crossover
/// under a uniformly chosen symbol with tournament-selected parents. The
/// result fully replaces the old population; survivor policy is applied by
/// the run loop on top of it.
pub fn step_generation(
    pop: &[Chromosome],
    fitnesses: &[u32],
    cfg: &RunConfig,
    rng: &mut impl Rng,
    mut arena: Option<&mut TraceArena>,
) -> Result<Vec<Chromosome>> {
    let mut next = Vec::with_capacity(cfg.pop_size);
    for _ in 0..cfg.pop_size {
        if rng.gen_bool(cfg.insert_probability) {
            next.push(insertion(cfg, rng, arena.as_deref_mut())?);
            continue;
        }
        let symbol = &cfg.gate_set.symbols()[rng.gen_range(0..cfg.gate_set.len())];
        let parents: Vec<&Chromosome> = (0..symbol.arity().operand_count())
            .map(|_| {
                &pop[tournament_select(pop, fitnesses, cfg.tournament_size, rng, cfg.parsimony)]
            })
            .collect();
        next.push(crossover(symbol, &parents, arena.as_deref_mut())?);
    }
    Ok(next)
}

fn best_index(fitnesses: &[u32]) -> usize {
    let mut best = 0;
    for (i, &f) in fitnesses.iter().enumerate() {
        if f < fitnesses[best] {
            best = i;
        }
    }
    best
}

/// A run in progress, stepable one generation at a time for inspection.
#[derive(Debug)]
pub struct Evolution {
    cfg: RunConfig,
    problem: ParityProblem,
    rng: ChaCha8Rng,
    pop: Vec<Chromosome>,
    fitnesses: Vec<u32>,
    arena: Option<TraceArena>,
    generation: u32,
}

impl Evolution {
    /// Validates the config, builds generation 0, and evaluates it.
    pub fn new(cfg: RunConfig, problem: &ParityProblem) -> Result<Self> {
        cfg.validate()?;
        if cfg.inputs != problem.inputs() {
            return Err(Error::InputCountMismatch {
                left: cfg.inputs,
                right: problem.inputs(),
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut arena = cfg.tracing.then(TraceArena::new);
        let pop = init_population(&cfg, &mut rng, arena.as_mut())?;
        let fitnesses = evaluate(&pop, problem)?;
        Ok(Self {
            cfg,
            problem: problem.clone(),
            rng,
            pop,
            fitnesses,
            arena,
            generation: 0,
        })
    }

    /// Advances one generation: fills every slot by insertion or crossover,
    /// then applies the survivor policy (elite into slot 0; with
    /// probability `runner_up_survival` the best distinct-valued individual
    /// into slot 1).
    pub fn step(&mut self) -> Result<()> {
        let mut next = step_generation(
            &self.pop,
            &self.fitnesses,
            &self.cfg,
            &mut self.rng,
            self.arena.as_mut(),
        )?;
        if self.cfg.elitism {
            let best = best_index(&self.fitnesses);
            next[0] = self.pop[best].clone();
            if self.cfg.pop_size >= 2
                && self.cfg.runner_up_survival > 0.0
                && self.rng.gen_bool(self.cfg.runner_up_survival)
            {
                let runner_up = (0..self.pop.len())
                    .filter(|&i| self.pop[i].values() != self.pop[best].values())
                    .min_by_key(|&i| self.fitnesses[i]);
                if let Some(i) = runner_up {
                    next[1] = self.pop[i].clone();
                }
            }
        }
        self.fitnesses = evaluate(&next, &self.problem)?;
        self.pop = next;
        self.generation += 1;
        Ok(())
    }

    pub fn generation(&self) -> u32 {
        self.generation
    }

    pub fn population(&self) -> &[Chromosome] {
        &self.pop
    }

    pub fn fitnesses(&self) -> &[u32] {
        &self.fitnesses
    }

    pub fn arena(&self) -> Option<&TraceArena> {
        self.arena.as_ref()
    }

    pub fn config(&self) -> &RunConfig {
        &self.cfg
    }

    /// Index and fitness of the current best individual (first index on
    /// ties).
    pub fn best(&self) -> (usize, u32) {
        let i = best_index(&self.fitnesses);
        (i, self.fitnesses[i])
    }

    fn extract_solution(&self) -> Result<Option<SolvedCircuit>> {
        let Some(arena) = &self.arena else {
            return Ok(None);
        };
        let (idx, best) = self.best();
        if best != 0 {
            return Ok(None);
        }
        let node = self.pop[idx]
            .trace()
            .expect("traced run carries trace nodes");
        Ok(Some(SolvedCircuit {
            expression: arena.render(node, SOLUTION_RENDER_DEPTH)?,
            netlist: arena.netlist(node)?,
            gates: self.pop[idx].gates(),
            distinct_gates: arena.distinct_op_count(node)?,
        }))
    }
}

fn evaluate(pop: &[Chromosome], problem: &ParityProblem) -> Result<Vec<u32>> {
    pop.iter().map(|c| fitness(c, problem)).collect()
}

/// Executes one full run.
///
/// The initial population counts as generation 0 and is checked for
/// solutions; each of the `generations` steps afterwards records its best
/// fitness. Unless `stop_on_solve` is set the run continues to the last
/// generation regardless of success, so cumulative success statistics stay
/// well-defined at every generation index.
pub fn run(cfg: &RunConfig, problem: &ParityProblem) -> Result<RunOutcome> {
    let mut ev = Evolution::new(cfg.clone(), problem)?;
    let mut solved_at = (ev.best().1 == 0).then_some(0u32);
    let mut solution = ev.extract_solution()?;
    let mut best_per_generation = Vec::with_capacity(cfg.generations as usize);
    for g in 1..=cfg.generations {
        if cfg.stop_on_solve && solved_at.is_some() {
            break;
        }
        ev.step()?;
        let best = ev.best().1;
        best_per_generation.push(best);
        if best == 0 && solved_at.is_none() {
            solved_at = Some(g);
            solution = ev.extract_solution()?;
        }
    }
    Ok(RunOutcome {
        record: RunRecord {
            solved_at,
            best_fitness_per_generation: best_per_generation,
            seed_used: cfg.seed,
        },
        solution,
    })
}

/// Executes `num_runs` independent runs, run `i` seeded with
/// [`derive_run_seed`]`(cfg.seed, i)`. Results are ordered by run index.
pub fn run_batch(
    cfg: &RunConfig,
    problem: &ParityProblem,
    num_runs: u32,
) -> Result<Vec<RunOutcome>> {
    (0..num_runs)
        .map(|i| {
            let run_cfg = cfg
                .clone()
                .with_seed(derive_run_seed(cfg.seed, u64::from(i)));
            run(&run_cfg, problem)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::tables;
    use crate::parity::even_parity_table;
    use crate::truth::TruthVector;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn init_population_is_all_terminals() {
        let cfg = RunConfig::new(3, 50, 10);
        let terminals: Vec<TruthVector> = (0..3).map(|j| terminal_vector(3, j).unwrap()).collect();
        let pop = init_population(&cfg, &mut rng(5), None).unwrap();
        assert_eq!(pop.len(), 50);
        for c in &pop {
            assert!(terminals.contains(c.values()));
            assert_eq!(c.gates(), 0);
        }
    }

    #[test]
    fn init_population_single_input_forces_d0() {
        let cfg = RunConfig::new(1, 8, 10);
        let d0 = terminal_vector(1, 0).unwrap();
        for c in init_population(&cfg, &mut rng(9), None).unwrap() {
            assert_eq!(c.values(), &d0);
        }
    }

    #[test]
    fn init_population_is_deterministic() {
        let cfg = RunConfig::new(4, 30, 10);
        let a = init_population(&cfg, &mut rng(77), None).unwrap();
        let b = init_population(&cfg, &mut rng(77), None).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn crossover_applies_gate_and_sums_gate_counts() {
        let and = FunctionSymbol::binary("AND", tables::AND).unwrap();
        let a = Chromosome::with_gates(TruthVector::from_word(2, 0b1010).unwrap(), 3, None);
        let b = Chromosome::with_gates(TruthVector::from_word(2, 0b1001).unwrap(), 5, None);
        let child = crossover(&and, &[&a, &b], None).unwrap();
        assert_eq!(child.values().as_word(), Some(0b1000));
        assert_eq!(child.gates(), 9);

        let t = Chromosome::terminal(TruthVector::from_word(2, 0b1010).unwrap(), None);
        assert_eq!(crossover(&and, &[&t, &t], None).unwrap().gates(), 1);
    }

    #[test]
    fn crossover_requires_matching_arity() {
        let and = FunctionSymbol::binary("AND", tables::AND).unwrap();
        let a = Chromosome::terminal(TruthVector::from_word(2, 0b1010).unwrap(), None);
        assert!(matches!(
            crossover(&and, &[&a], None).unwrap_err(),
            Error::OperandCountMismatch { .. }
        ));
    }

    #[test]
    fn unary_crossover_takes_one_parent() {
        let not = FunctionSymbol::unary("NOT", tables::NOT).unwrap();
        let a = Chromosome::terminal(terminal_vector(3, 1).unwrap(), None);
        let child = crossover(&not, &[&a], None).unwrap();
        assert_eq!(child.values(), &a.values().complemented());
        assert_eq!(child.gates(), 1);
    }

    #[test]
    fn traced_crossover_records_matching_node() {
        let mut arena = TraceArena::new();
        let and = FunctionSymbol::binary("AND", tables::AND).unwrap();
        let a = Chromosome::terminal(terminal_vector(3, 0).unwrap(), Some(arena.push_terminal(0)));
        let b = Chromosome::terminal(terminal_vector(3, 1).unwrap(), Some(arena.push_terminal(1)));
        let child = crossover(&and, &[&a, &b], Some(&mut arena)).unwrap();
        let node = child.trace().unwrap();
        assert_eq!(&arena.eval(node, 3).unwrap(), child.values());
        assert_eq!(arena.op_count(node).unwrap(), child.gates());
    }

    #[test]
    fn insertion_produces_fresh_terminal() {
        let cfg = RunConfig::new(3, 10, 10);
        let mut arena = TraceArena::new();
        let c = insertion(&cfg, &mut rng(3), Some(&mut arena)).unwrap();
        assert_eq!(c.gates(), 0);
        assert_eq!(arena.len(), 1);
        assert_eq!(arena.op_count(c.trace().unwrap()).unwrap(), 0);
    }

    #[test]
    fn tournament_of_one_ignores_fitness() {
        let pop: Vec<Chromosome> = (0..4)
            .map(|j| Chromosome::terminal(terminal_vector(2, j % 2).unwrap(), None))
            .collect();
        let fits = vec![9, 0, 9, 9];
        let mut r = rng(123);
        let mut expect = rng(123);
        for _ in 0..20 {
            let want = expect.gen_range(0..pop.len());
            assert_eq!(tournament_select(&pop, &fits, 1, &mut r, false), want);
        }
    }

    #[test]
    fn tournament_picks_strictly_dominant_individual() {
        let pop: Vec<Chromosome> = (0..2)
            .map(|_| Chromosome::terminal(terminal_vector(2, 0).unwrap(), None))
            .collect();
        let fits = vec![0, 8];
        let mut r = rng(42);
        let mut expect = rng(42);
        for _ in 0..50 {
            let draws = [expect.gen_range(0..2usize), expect.gen_range(0..2usize)];
            let want = if draws.contains(&0) { 0 } else { 1 };
            assert_eq!(tournament_select(&pop, &fits, 2, &mut r, false), want);
        }
    }

    #[test]
    fn parsimony_breaks_fitness_ties_by_gate_count() {
        let lean = Chromosome::with_gates(terminal_vector(2, 0).unwrap(), 2, None);
        let fat = Chromosome::with_gates(terminal_vector(2, 0).unwrap(), 7, None);
        let pop = vec![fat, lean];
        let fits = vec![4, 4];
        // draw both indices: tournament size 16 with any seed covers both
        let mut r = rng(1);
        assert_eq!(tournament_select(&pop, &fits, 16, &mut r, true), 1);
        // without parsimony the earliest draw wins the tie
        let mut r2 = rng(1);
        let mut expect = rng(1);
        let first = expect.gen_range(0..2);
        assert_eq!(tournament_select(&pop, &fits, 16, &mut r2, false), first);
    }

    #[test]
    fn forced_insertion_fills_population_with_terminals() {
        let mut cfg = RunConfig::new(3, 40, 10);
        cfg.insert_probability = 1.0;
        let mut r = rng(2);
        let pop = init_population(&cfg, &mut r, None).unwrap();
        let fits = vec![0; 40];
        let next = step_generation(&pop, &fits, &cfg, &mut r, None).unwrap();
        assert_eq!(next.len(), 40);
        assert!(next.iter().all(|c| c.gates() == 0));
    }

    #[test]
    fn forced_crossover_obeys_gate_recurrence() {
        let mut cfg = RunConfig::new(3, 30, 10);
        cfg.insert_probability = 0.0;
        cfg.gate_set =
            GateSet::new(vec![FunctionSymbol::binary("AND", tables::AND).unwrap()]).unwrap();
        let mut r = rng(3);
        let pop = init_population(&cfg, &mut r, None).unwrap();
        let fits = vec![1; 30];
        let mut current = pop;
        for generation in 1..=12u32 {
            let next = step_generation(&current, &fits, &cfg, &mut r, None).unwrap();
            // with all-terminal ancestry the recurrence gives gates
            // <= 2^g - 1, and every offspring has at least 1 gate
            for c in &next {
                assert!((1..=(1 << generation) - 1).contains(&c.gates()));
            }
            current = next;
        }
    }

    #[test]
    fn step_generation_is_deterministic() {
        let cfg = RunConfig::new(4, 25, 10);
        let problem = ParityProblem::new(4).unwrap();
        let mut r1 = rng(10);
        let p1 = init_population(&cfg, &mut r1, None).unwrap();
        let f1 = evaluate(&p1, &problem).unwrap();
        let n1 = step_generation(&p1, &f1, &cfg, &mut r1, None).unwrap();

        let mut r2 = rng(10);
        let p2 = init_population(&cfg, &mut r2, None).unwrap();
        let f2 = evaluate(&p2, &problem).unwrap();
        let n2 = step_generation(&p2, &f2, &cfg, &mut r2, None).unwrap();
        assert_eq!(n1, n2);
    }

    /// Enumeration oracle for the single-input problem: breadth-first
    /// closure of {d0} under the four gates, tracking minimal gate counts.
    #[test]
    fn single_input_problem_is_solvable_with_one_gate() {
        let target = even_parity_table(1).unwrap();
        let d0 = terminal_vector(1, 0).unwrap();
        let set = GateSet::koza4();
        // level 0: terminals only
        let mut reachable = vec![(d0.clone(), 0u32)];
        let mut minimal_solution: Option<u32> = None;
        for _ in 0..2 {
            let mut discovered = Vec::new();
            for (a, ga) in &reachable {
                for (b, gb) in &reachable {
                    for sym in set.symbols() {
                        let v = sym.apply(&[a, b]).unwrap();
                        let gates = ga + gb + 1;
                        if v == target {
                            minimal_solution = Some(match minimal_solution {
                                Some(m) => m.min(gates),
                                None => gates,
                            });
                        }
                        if !reachable.iter().any(|(r, _)| r == &v)
                            && !discovered.iter().any(|(r, _): &(TruthVector, u32)| r == &v)
                        {
                            discovered.push((v, gates));
                        }
                    }
                }
            }
            reachable.extend(discovered);
        }
        assert_eq!(minimal_solution, Some(1)); // NOR(d0,d0) = NOT d0

        // and the engine finds it with a modest budget
        let mut cfg = RunConfig::new(1, 10, 50);
        cfg.seed = 6;
        let outcome = run(&cfg, &ParityProblem::new(1).unwrap()).unwrap();
        assert!(outcome.record.solved_at.is_some());
    }

    #[test]
    fn run_is_a_pure_function_of_config() {
        let mut cfg = RunConfig::new(3, 20, 40);
        cfg.seed = 99;
        cfg.tracing = true;
        let problem = ParityProblem::new(3).unwrap();
        let a = run(&cfg, &problem).unwrap();
        let b = run(&cfg, &problem).unwrap();
        assert_eq!(a.record, b.record);
        assert_eq!(a.solution, b.solution);
        assert_eq!(a.record.seed_used, 99);
    }

    #[test]
    fn run_records_have_consistent_shape() {
        let cfg = RunConfig::new(2, 30, 60).with_seed(4);
        let problem = ParityProblem::new(2).unwrap();
        let outcome = run(&cfg, &problem).unwrap();
        let record = &outcome.record;
        assert_eq!(record.best_fitness_per_generation.len(), 60);
        for &f in &record.best_fitness_per_generation {
            assert!(f <= 4);
        }
        if let Some(g) = record.solved_at {
            assert!(g >= 1); // terminal-only generation 0 cannot solve k>=2
            assert_eq!(record.best_fitness_per_generation[g as usize - 1], 0);
        }
    }

    #[test]
    fn stop_on_solve_truncates_the_record() {
        let mut cfg = RunConfig::new(2, 30, 500).with_seed(4);
        cfg.stop_on_solve = true;
        let problem = ParityProblem::new(2).unwrap();
        let outcome = run(&cfg, &problem).unwrap();
        let solved_at = outcome.record.solved_at.expect("even-2 solves fast");
        assert_eq!(
            outcome.record.best_fitness_per_generation.len(),
            solved_at as usize
        );
        // identical prefix to the untruncated run
        let mut full_cfg = cfg.clone();
        full_cfg.stop_on_solve = false;
        let full = run(&full_cfg, &problem).unwrap();
        assert_eq!(full.record.solved_at, Some(solved_at));
        assert_eq!(
            &full.record.best_fitness_per_generation[..solved_at as usize],
            &outcome.record.best_fitness_per_generation[..]
        );
    }

    #[test]
    fn elitism_makes_best_fitness_monotone() {
        let cfg = RunConfig::new(4, 20, 80).with_seed(15);
        assert!(cfg.elitism);
        let problem = ParityProblem::new(4).unwrap();
        let record = run(&cfg, &problem).unwrap().record;
        let mut prev = u32::MAX;
        for &f in &record.best_fitness_per_generation {
            assert!(f <= prev);
            prev = f;
        }
    }

    #[test]
    fn disabling_survivors_gives_pure_generational_replacement() {
        // without survivors the plateau reclaims progress: best fitness may
        // regress between generations
        let mut cfg = RunConfig::new(3, 20, 120).with_seed(3);
        cfg.elitism = false;
        cfg.runner_up_survival = 0.0;
        let problem = ParityProblem::new(3).unwrap();
        let record = run(&cfg, &problem).unwrap().record;
        let regressed = record
            .best_fitness_per_generation
            .windows(2)
            .any(|w| w[1] > w[0]);
        assert!(regressed);
    }

    #[test]
    fn runner_up_survivor_computes_a_different_function() {
        let cfg = RunConfig::new(3, 30, 25).with_seed(44);
        assert_eq!(cfg.runner_up_survival, 0.75);
        let problem = ParityProblem::new(3).unwrap();
        let mut ev = Evolution::new(cfg, &problem).unwrap();
        for _ in 0..25 {
            let best = ev.population()[best_index(ev.fitnesses())].clone();
            let runner_up = ev
                .population()
                .iter()
                .enumerate()
                .filter(|(_, c)| c.values() != best.values())
                .min_by_key(|(i, _)| ev.fitnesses()[*i])
                .map(|(_, c)| c.clone());
            ev.step().unwrap();
            // slot 0 is always the previous best
            assert_eq!(ev.population()[0], best);
            // slot 1 is either a fresh offspring or the previous runner-up
            if let Some(r) = runner_up {
                let slot1 = &ev.population()[1];
                if slot1 == &r {
                    assert_ne!(slot1.values(), best.values());
                }
            }
        }
    }

    #[test]
    fn population_size_is_invariant() {
        let cfg = RunConfig::new(3, 17, 25).with_seed(8);
        let problem = ParityProblem::new(3).unwrap();
        let mut ev = Evolution::new(cfg, &problem).unwrap();
        for _ in 0..25 {
            ev.step().unwrap();
            assert_eq!(ev.population().len(), 17);
        }
    }

    #[test]
    fn traced_arena_growth_is_bounded() {
        let mut cfg = RunConfig::new(3, 12, 20).with_seed(21);
        cfg.tracing = true;
        let problem = ParityProblem::new(3).unwrap();
        let mut ev = Evolution::new(cfg, &problem).unwrap();
        assert_eq!(ev.arena().unwrap().len(), 12);
        for g in 1..=20u32 {
            ev.step().unwrap();
            assert!(ev.arena().unwrap().len() <= 12 * (g as usize + 1));
        }
    }

    #[test]
    fn derived_seeds_differ_across_runs() {
        let seeds: Vec<u64> = (0..100).map(|i| derive_run_seed(42, i)).collect();
        let mut unique = seeds.clone();
        unique.sort_unstable();
        unique.dedup();
        assert_eq!(unique.len(), seeds.len());
        assert_ne!(derive_run_seed(42, 0), derive_run_seed(43, 0));
    }

    #[test]
    fn config_validation_rejects_bad_parameters() {
        let problem = ParityProblem::new(3).unwrap();
        let mut cfg = RunConfig::new(3, 10, 10);
        cfg.insert_probability = 1.5;
        assert!(matches!(
            Evolution::new(cfg, &problem).unwrap_err(),
            Error::InvalidProbability(_)
        ));
        let mut cfg = RunConfig::new(3, 10, 10);
        cfg.tournament_size = 11;
        assert!(matches!(
            Evolution::new(cfg, &problem).unwrap_err(),
            Error::InvalidConfig(_)
        ));
        let cfg = RunConfig::new(4, 10, 10);
        assert_eq!(
            Evolution::new(cfg, &problem).unwrap_err(),
            Error::InputCountMismatch { left: 4, right: 3 }
        );
    }
}
