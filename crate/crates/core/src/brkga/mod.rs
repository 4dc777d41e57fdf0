//! Biased random-key genetic algorithm with reset and local search.
//!
//! Individuals are [`RandomKeyVector`]s; the decoder of the run's [`Mode`]
//! turns each into a first-fit sequence and its number of colors. Per
//! generation the elite fraction is copied, a mutant fraction is drawn
//! fresh, and the rest are children of one elite and one non-elite parent,
//! each key inherited from the elite parent with probability `ρ_e`.
//!
//! When the best value improves and local search is enabled, the best
//! individual plus `b - 1` distinct random elites are improved with
//! [`localsearch::local_search`](crate::localsearch::local_search), re-encoded,
//! and written over the `b` worst individuals. After `g_lim` generations
//! without improvement the population is redrawn at random, keeping only the
//! incumbent.

mod decoder;
mod run;

pub use decoder::{decode, decode_connected, decode_plain, Decoded, RandomKeyVector};
pub use run::{run, RunEvent, RunStats, TracePoint};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::{Error, Mode, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BrkgaParams {
    pub mode: Mode,
    /// Population size as a multiple of `n` (rounded up, at least 3).
    pub population_factor: f64,
    /// Explicit population size; overrides `population_factor`.
    pub population_size: Option<usize>,
    pub elite_fraction: f64,
    pub mutant_fraction: f64,
    /// Probability that a child takes a key from its elite parent.
    pub elite_inheritance: f64,
    /// `g_lim`: generations without improvement before a reset. `None`
    /// disables resets.
    pub reset_generations: Option<u64>,
    pub ls_enabled: bool,
    /// `b`: individuals improved by local search on each new best. Capped at
    /// the elite size.
    pub ls_count: usize,
    /// Wall-clock limit in seconds.
    pub time_limit: Option<f64>,
    pub max_generations: Option<u64>,
    /// Stop once this value is reached.
    pub target_value: Option<u32>,
    /// Stop once the best value meets the combinatorial upper bound.
    pub stop_at_bound: bool,
    /// Record one trace point per generation.
    pub trace: bool,
    pub seed: u64,
}

impl Default for BrkgaParams {
    fn default() -> Self {
        Self::reset_local_search(0)
    }
}

impl BrkgaParams {
    /// Baseline configuration: `(3n, 30%, 10%, 60%)`, no reset, no local search.
    pub fn baseline(seed: u64) -> Self {
        Self {
            mode: Mode::Connected,
            population_factor: 3.0,
            population_size: None,
            elite_fraction: 0.30,
            mutant_fraction: 0.10,
            elite_inheritance: 0.60,
            reset_generations: None,
            ls_enabled: false,
            ls_count: 5,
            time_limit: Some(300.0),
            max_generations: None,
            target_value: None,
            stop_at_bound: true,
            trace: false,
            seed,
        }
    }

    /// Reset plus local search: `(1.7n, 30%, 10%, 60%)`, `g_lim = 2000`, `b = 5`.
    pub fn reset_local_search(seed: u64) -> Self {
        Self {
            population_factor: 1.7,
            reset_generations: Some(2000),
            ls_enabled: true,
            ..Self::baseline(seed)
        }
    }

    /// Negated comparisons also reject NaN.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        if !(self.elite_fraction > 0.0 && self.mutant_fraction >= 0.0) {
            return bad("elite fraction must be positive and mutant fraction non-negative".into());
        }
        if self.elite_fraction + self.mutant_fraction >= 1.0 {
            return bad(format!(
                "elite ({}) + mutant ({}) fractions must stay below 1",
                self.elite_fraction, self.mutant_fraction
            ));
        }
        if !(self.elite_inheritance > 0.5 && self.elite_inheritance < 1.0) {
            return bad(format!("elite inheritance {} must lie in (0.5, 1)", self.elite_inheritance));
        }
        if self.population_size.is_some_and(|p| p < 3) || !(self.population_factor > 0.0) {
            return bad("population must hold at least 3 individuals".into());
        }
        if self.time_limit.is_none() && self.max_generations.is_none() {
            return bad("set a time limit or a generation limit".into());
        }
        if self.time_limit.is_some_and(|t| !(t >= 0.0)) {
            return bad("time limit must be non-negative".into());
        }
        if self.reset_generations == Some(0) {
            return bad("reset threshold must be at least one generation".into());
        }
        Ok(())
    }

    pub fn sizes(&self, n: usize) -> Sizes {
        let population = self
            .population_size
            .unwrap_or_else(|| portion(self.population_factor, n).max(3))
            .max(3);
        let elite = portion(self.elite_fraction, population).clamp(1, population - 1);
        let mutants = portion(self.mutant_fraction, population).min(population - elite);
        Sizes { population, elite, mutants, ls_count: self.ls_count.min(elite) }
    }
}

/// `ceil(fraction * count)`, ignoring float noise such as `0.3 * 10 = 3.0000000000000004`.
fn portion(fraction: f64, count: usize) -> usize {
    (fraction * count as f64 - 1e-9).ceil().max(0.0) as usize
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Sizes {
    pub population: usize,
    pub elite: usize,
    pub mutants: usize,
    pub ls_count: usize,
}

impl Sizes {
    pub fn children(&self) -> usize {
        self.population - self.elite - self.mutants
    }
}

/// Parametrized uniform crossover: each key comes from `elite` with
/// probability `rho`, otherwise from `other`.
pub fn crossover<R: Rng + ?Sized>(
    elite: &RandomKeyVector,
    other: &RandomKeyVector,
    rho: f64,
    rng: &mut R,
) -> RandomKeyVector {
    assert_eq!(elite.len(), other.len(), "parents must have equal length");
    let mut child = other.clone();
    for (c, &e) in child.keys_mut().iter_mut().zip(elite.keys()) {
        if rng.gen::<f64>() < rho {
            *c = e;
        }
    }
    child
}

/// An evaluated individual.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub keys: RandomKeyVector,
    pub value: u32,
}

/// Builds the next generation's key vectors from a population sorted by
/// value, best first: the elites verbatim, then the mutants, then the
/// children. Only the first `sizes.elite` entries keep their evaluation.
pub fn evolve<R: Rng + ?Sized>(
    population: &[Individual],
    sizes: &Sizes,
    rho: f64,
    rng: &mut R,
) -> Vec<RandomKeyVector> {
    debug_assert!(population.windows(2).all(|w| w[0].value >= w[1].value));
    let n = population[0].keys.len();
    let (elite, rest) = population.split_at(sizes.elite);
    let mut next: Vec<RandomKeyVector> = elite.iter().map(|i| i.keys.clone()).collect();
    next.extend((0..sizes.mutants).map(|_| RandomKeyVector::random(n, rng)));
    for _ in 0..sizes.children() {
        let e = &elite.choose(rng).expect("elite is nonempty").keys;
        let o = &rest.choose(rng).expect("non-elite is nonempty").keys;
        next.push(crossover(e, o, rho, rng));
    }
    next
}
