use std::cmp::Reverse;
use std::time::{Duration, Instant};

use rand::seq::index;
use serde::Serialize;

use super::{decode, evolve, BrkgaParams, Individual, RandomKeyVector, Sizes};
use crate::bounds::BoundsReport;
use crate::localsearch::local_search;
use crate::{rng, Coloring, Error, Graph, Result, VertexSequence};

/// Something that happened during a run. Carries generation numbers only,
/// so a deterministic run produces a reproducible log.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum RunEvent {
    Improved { generation: u64, value: u32, source: Source },
    LocalSearch { generation: u64, candidates: usize, improvements: usize, best: u32 },
    Reset { generation: u64, incumbent: u32 },
    Stopped { generation: u64, reason: StopReason },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Initial,
    Evolution,
    LocalSearch,
    Reset,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    TimeLimit,
    GenerationLimit,
    Target,
    UpperBound,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TracePoint {
    pub generation: u64,
    pub best: u32,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunStats {
    pub best_value: u32,
    pub best_sequence: VertexSequence,
    pub best_coloring: Coloring,
    /// Seconds from the start of the run until `best_value` was first seen.
    pub time_to_best: f64,
    pub elapsed: f64,
    pub generations: u64,
    pub resets: u64,
    pub ls_invocations: u64,
    pub upper_bound: usize,
    pub sizes: Sizes,
    pub events: Vec<RunEvent>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<TracePoint>,
}

impl RunStats {
    /// Event log as one JSON object per line.
    pub fn events_jsonl(&self) -> String {
        self.events
            .iter()
            .map(|e| serde_json::to_string(e).expect("events serialize") + "\n")
            .collect()
    }
}

struct Incumbent {
    keys: RandomKeyVector,
    value: u32,
    sequence: VertexSequence,
    coloring: Coloring,
}

struct Runner<'a> {
    g: &'a Graph,
    params: &'a BrkgaParams,
    sizes: Sizes,
    start: Instant,
    deadline: Option<Instant>,
    bound: u32,
    population: Vec<Individual>,
    best: Incumbent,
    time_to_best: f64,
    events: Vec<RunEvent>,
    ls_invocations: u64,
}

/// Runs the genetic algorithm on `g`.
///
/// Stops at the time limit, the generation limit, the target value, or (with
/// `stop_at_bound`) when the best value meets the combinatorial upper bound.
/// Without a time limit the run is fully determined by `params.seed`.
pub fn run(g: &Graph, params: &BrkgaParams) -> Result<RunStats> {
    params.validate()?;
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::InvalidGraph("graph has no vertices".into()));
    }
    if params.mode == crate::Mode::Connected && !g.is_connected() {
        return Err(Error::Disconnected { components: g.connected_components().len() });
    }
    let start = Instant::now();
    let deadline = params.time_limit.map(|t| start + Duration::from_secs_f64(t));
    let sizes = params.sizes(n);
    let bound = BoundsReport::compute(g).best as u32;
    let mut rng = rng::stream(params.seed, 0);

    let initial = (0..sizes.population).map(|_| RandomKeyVector::random(n, &mut rng)).collect();
    let population = evaluate(g, params, initial, Vec::new())?;
    let first = decode(g, &population[0].keys, params.mode)?;
    let mut r = Runner {
        g,
        params,
        sizes,
        start,
        deadline,
        bound,
        best: Incumbent {
            keys: population[0].keys.clone(),
            value: first.value,
            sequence: first.sequence,
            coloring: first.coloring,
        },
        population,
        time_to_best: 0.0,
        events: vec![RunEvent::Improved { generation: 0, value: first.value, source: Source::Initial }],
        ls_invocations: 0,
    };
    r.time_to_best = r.seconds();
    if params.ls_enabled {
        r.inject_local_search(0)?;
    }

    let mut generation = 0u64;
    let mut stale = 0u64;
    let mut resets = 0u64;
    let mut trace = Vec::new();
    let reason = loop {
        if params.trace {
            trace.push(TracePoint { generation, best: r.best.value, seconds: r.seconds() });
        }
        if let Some(reason) = r.stop_reason(generation) {
            break reason;
        }
        generation += 1;
        let next = evolve(&r.population, &sizes, params.elite_inheritance, &mut rng);
        let elites = r.population.drain(..sizes.elite).collect();
        r.population = evaluate(g, params, next, elites)?;
        if r.observe(generation, Source::Evolution)? {
            stale = 0;
            if params.ls_enabled {
                r.inject_local_search(generation)?;
            }
        } else {
            stale += 1;
        }
        if params.reset_generations.is_some_and(|lim| stale >= lim) {
            resets += 1;
            stale = 0;
            r.events.push(RunEvent::Reset { generation, incumbent: r.best.value });
            let mut fresh = vec![r.best.keys.clone()];
            fresh.extend((1..sizes.population).map(|_| RandomKeyVector::random(n, &mut rng)));
            r.population = evaluate(g, params, fresh, Vec::new())?;
            if r.observe(generation, Source::Reset)? && params.ls_enabled {
                r.inject_local_search(generation)?;
            }
        }
    };
    r.events.push(RunEvent::Stopped { generation, reason });
    Ok(RunStats {
        best_value: r.best.value,
        best_sequence: r.best.sequence,
        best_coloring: r.best.coloring,
        time_to_best: r.time_to_best,
        elapsed: start.elapsed().as_secs_f64(),
        generations: generation,
        resets,
        ls_invocations: r.ls_invocations,
        upper_bound: bound as usize,
        sizes,
        events: r.events,
        trace,
    })
}

/// Decodes `keys` (skipping the first `kept.len()` entries, whose values are
/// known) and returns the population sorted by value, best first. The sort
/// is stable, so ties keep their order in `keys`.
fn evaluate(
    g: &Graph,
    params: &BrkgaParams,
    keys: Vec<RandomKeyVector>,
    kept: Vec<Individual>,
) -> Result<Vec<Individual>> {
    let skip = kept.len();
    let mut pop = kept;
    for k in keys.into_iter().skip(skip) {
        let value = decode(g, &k, params.mode)?.value;
        pop.push(Individual { keys: k, value });
    }
    pop.sort_by_key(|i| Reverse(i.value));
    Ok(pop)
}

impl Runner<'_> {
    fn seconds(&self) -> f64 {
        self.start.elapsed().as_secs_f64()
    }

    fn stop_reason(&self, generation: u64) -> Option<StopReason> {
        let p = self.params;
        if p.target_value.is_some_and(|t| self.best.value >= t) {
            Some(StopReason::Target)
        } else if p.stop_at_bound && self.best.value >= self.bound {
            Some(StopReason::UpperBound)
        } else if p.max_generations.is_some_and(|m| generation >= m) {
            Some(StopReason::GenerationLimit)
        } else if self.deadline.is_some_and(|d| Instant::now() >= d) {
            Some(StopReason::TimeLimit)
        } else {
            None
        }
    }

    /// Promotes the population's best to incumbent if strictly better.
    fn observe(&mut self, generation: u64, source: Source) -> Result<bool> {
        let top = &self.population[0];
        if top.value <= self.best.value {
            return Ok(false);
        }
        let d = decode(self.g, &top.keys, self.params.mode)?;
        self.set_best(top.keys.clone(), d.value, d.sequence, d.coloring);
        self.events.push(RunEvent::Improved { generation, value: self.best.value, source });
        Ok(true)
    }

    fn set_best(&mut self, keys: RandomKeyVector, value: u32, sequence: VertexSequence, coloring: Coloring) {
        self.best = Incumbent { keys, value, sequence, coloring };
        self.time_to_best = self.seconds();
    }

    /// Improves the best individual and `b - 1` distinct random elites,
    /// writing the encoded results over the `b` worst individuals.
    fn inject_local_search(&mut self, generation: u64) -> Result<()> {
        let b = self.sizes.ls_count;
        if b == 0 {
            return Ok(());
        }
        let mut rng = rng::stream(self.params.seed, 1 + generation);
        let mut picks = vec![0];
        picks.extend(index::sample(&mut rng, self.sizes.elite - 1, b - 1).into_iter().map(|i| i + 1));
        let mut improved = Vec::with_capacity(b);
        let mut moves = 0;
        for i in picks {
            let res = local_search(self.g, &self.population[i].keys, self.params.mode, self.deadline)?;
            moves += res.improvements;
            let keys = RandomKeyVector::encode(&res.sequence);
            if res.value > self.best.value {
                self.set_best(keys.clone(), res.value, res.sequence, res.coloring);
                self.events.push(RunEvent::Improved { generation, value: res.value, source: Source::LocalSearch });
            }
            improved.push(Individual { keys, value: res.value });
        }
        self.ls_invocations += 1;
        let worst = self.population.len() - b;
        self.population.truncate(worst);
        self.population.extend(improved);
        self.population.sort_by_key(|i| Reverse(i.value));
        self.events.push(RunEvent::LocalSearch {
            generation,
            candidates: b,
            improvements: moves,
            best: self.best.value,
        });
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::first_fit;

    fn params(seed: u64) -> BrkgaParams {
        BrkgaParams {
            time_limit: None,
            max_generations: Some(30),
            stop_at_bound: false,
            ..BrkgaParams::reset_local_search(seed)
        }
    }

    #[test]
    fn deterministic_without_time_limit() {
        let g = Graph::cycle(9);
        let a = run(&g, &params(5)).unwrap();
        let b = run(&g, &params(5)).unwrap();
        assert_eq!(a.best_sequence, b.best_sequence);
        assert_eq!(a.events, b.events);
        assert_eq!(a.generations, 30);
    }

    #[test]
    fn best_is_consistent() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (1, 5)]).unwrap();
        let s = run(&g, &params(1)).unwrap();
        assert_eq!(s.best_value, 3);
        assert_eq!(first_fit(&g, &s.best_sequence), s.best_coloring);
        assert!(crate::coloring::is_connected_sequence(&g, &s.best_sequence));
    }

    #[test]
    fn stops_at_bound() {
        let g = Graph::complete(6);
        let p = BrkgaParams { stop_at_bound: true, ..params(0) };
        let s = run(&g, &p).unwrap();
        assert_eq!(s.best_value, 6);
        assert_eq!(s.generations, 0);
        assert!(matches!(s.events.last(), Some(RunEvent::Stopped { reason: StopReason::UpperBound, .. })));
    }

    #[test]
    fn resets_fire() {
        let g = Graph::path(8);
        let p = BrkgaParams { reset_generations: Some(3), ls_enabled: false, ..params(2) };
        let s = run(&g, &p).unwrap();
        assert!(s.resets >= 5, "{} resets", s.resets);
    }

    #[test]
    fn rejects_disconnected_in_connected_mode() {
        assert!(matches!(run(&Graph::empty(3), &params(0)), Err(Error::Disconnected { .. })));
        let p = BrkgaParams { mode: crate::Mode::Plain, ..params(0) };
        assert_eq!(run(&Graph::empty(3), &p).unwrap().best_value, 1);
    }
}
