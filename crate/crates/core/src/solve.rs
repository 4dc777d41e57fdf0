//! One algorithm on one instance, with a machine-readable report.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::bounds::BoundsReport;
use crate::brkga::{self, BrkgaParams, RunStats};
use crate::coloring::is_connected_sequence;
use crate::exact::{self, ExactResult};
use crate::heuristics::Heuristic;
use crate::{Coloring, Error, Graph, Mode, Result, VertexSequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    /// Genetic algorithm with the baseline parameters.
    BrkgaB,
    /// Genetic algorithm with reset and local search.
    BrkgaRls,
    Heuristic(Heuristic),
    Exact,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::BrkgaB => f.write_str("brkga-b"),
            Self::BrkgaRls => f.write_str("brkga-rls"),
            Self::Heuristic(h) => write!(f, "heuristic:{}", h.name()),
            Self::Exact => f.write_str("exact"),
        }
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brkga-b" => Ok(Self::BrkgaB),
            "brkga-rls" => Ok(Self::BrkgaRls),
            "exact" => Ok(Self::Exact),
            _ => match s.strip_prefix("heuristic:") {
                Some(h) => Ok(Self::Heuristic(h.parse()?)),
                None => Err(Error::InvalidParams(format!(
                    "unknown algorithm `{s}` (brkga-b, brkga-rls, heuristic:<name>, exact)"
                ))),
            },
        }
    }
}

impl Serialize for Algorithm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Algorithm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Settings shared by every algorithm. The genetic algorithms start from
/// their preset and take `seed`, `mode` and the stopping rules from here;
/// `brkga` replaces the preset entirely.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolveOptions {
    pub mode: Mode,
    pub seed: u64,
    pub time_limit: Option<f64>,
    pub max_generations: Option<u64>,
    pub target_value: Option<u32>,
    pub stop_at_bound: bool,
    /// Vertex budget for `exact`; defaults to the module limits.
    pub exact_limit: Option<usize>,
    pub brkga: Option<BrkgaParams>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            mode: Mode::Connected,
            seed: 0,
            time_limit: Some(300.0),
            max_generations: None,
            target_value: None,
            stop_at_bound: true,
            exact_limit: None,
            brkga: None,
        }
    }
}

impl SolveOptions {
    /// Parameters the genetic algorithm would run with, if any.
    pub fn brkga_params(&self, algorithm: Algorithm) -> Option<BrkgaParams> {
        let preset = match algorithm {
            Algorithm::BrkgaB => BrkgaParams::baseline(self.seed),
            Algorithm::BrkgaRls => BrkgaParams::reset_local_search(self.seed),
            _ => return None,
        };
        Some(self.brkga.clone().unwrap_or(BrkgaParams {
            mode: self.mode,
            time_limit: self.time_limit,
            max_generations: self.max_generations,
            target_value: self.target_value,
            stop_at_bound: self.stop_at_bound,
            ..preset
        }))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub algorithm: Algorithm,
    pub mode: Mode,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    /// Edges added (1-based) to connect a disconnected input.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub added_edges: Vec<(usize, usize)>,
    pub value: u32,
    pub sequence: VertexSequence,
    pub coloring: Coloring,
    pub upper_bound: usize,
    pub elapsed: f64,
    pub options: SolveOptions,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<BrkgaParams>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub run: Option<RunStats>,
}

/// Connects `g` when the mode needs it. Returns the graph to solve and the
/// added edges (0-based).
pub fn prepare(g: &Graph, mode: Mode) -> (Graph, Vec<(usize, usize)>) {
    if mode == Mode::Connected && !g.is_connected() {
        g.connectify()
    } else {
        (g.clone(), Vec::new())
    }
}

pub fn solve(g: &Graph, algorithm: Algorithm, options: &SolveOptions) -> Result<SolveReport> {
    let mode = options.brkga.as_ref().map_or(options.mode, |p| p.mode);
    let (h, added) = prepare(g, mode);
    if h.vertex_count() == 0 {
        return Err(Error::InvalidGraph("graph has no vertices".into()));
    }
    let start = Instant::now();
    let params = options.brkga_params(algorithm);
    let (sequence, coloring, run) = match algorithm {
        Algorithm::BrkgaB | Algorithm::BrkgaRls => {
            let stats = brkga::run(&h, params.as_ref().expect("genetic algorithms have params"))?;
            (stats.best_sequence.clone(), stats.best_coloring.clone(), Some(stats))
        }
        Algorithm::Heuristic(heur) => {
            let (s, c) = heur.run(&h, mode)?;
            (s, c, None)
        }
        Algorithm::Exact => {
            let ExactResult { witness, .. } = match mode {
                Mode::Connected => exact::brute_gamma_c(&h, options.exact_limit.unwrap_or(exact::GAMMA_C_LIMIT))?,
                Mode::Plain => exact::brute_gamma(&h, options.exact_limit.unwrap_or(exact::GAMMA_LIMIT))?,
            };
            let c = crate::first_fit(&h, &witness);
            (witness, c, None)
        }
    };
    debug_assert!(mode == Mode::Plain || is_connected_sequence(&h, &sequence));
    Ok(SolveReport {
        algorithm,
        mode,
        seed: options.seed,
        n: g.vertex_count(),
        m: g.edge_count(),
        added_edges: added.iter().map(|&(u, v)| (u + 1, v + 1)).collect(),
        value: coloring.used_colors(),
        sequence,
        coloring,
        upper_bound: run.as_ref().map_or_else(|| BoundsReport::compute(&h).best, |r| r.upper_bound),
        elapsed: start.elapsed().as_secs_f64(),
        options: options.clone(),
        params,
        run,
    })
}
