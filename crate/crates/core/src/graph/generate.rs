//! Benchmark instance generators.
//!
//! All four classes are pure functions of their [`InstanceSpec`]. The
//! generator for an instance is [`rng::stream`]`(seed, 0)`; suites that draw
//! several instances from one seed give each its own `InstanceSpec::seed`
//! (see `instance_seed`).

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::Graph;
use crate::{rng, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphClass {
    #[serde(alias = "rand")]
    Random,
    #[serde(alias = "geo")]
    Geometric,
    #[serde(alias = "bip")]
    Bipartite,
    #[serde(alias = "cbip")]
    ComplementBipartite,
}

impl GraphClass {
    /// Short label used in instance group names (`rand_15_0.4`).
    pub fn short_name(self) -> &'static str {
        match self {
            GraphClass::Random => "rand",
            GraphClass::Geometric => "geo",
            GraphClass::Bipartite => "bip",
            GraphClass::ComplementBipartite => "cbip",
        }
    }
}

impl std::str::FromStr for GraphClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "rand" | "random" => GraphClass::Random,
            "geo" | "geometric" => GraphClass::Geometric,
            "bip" | "bipartite" => GraphClass::Bipartite,
            "cbip" | "complement_bipartite" => GraphClass::ComplementBipartite,
            _ => return Err(Error::InvalidSpec(format!("unknown graph class `{s}`"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub class: GraphClass,
    pub n: usize,
    /// Edge probability, or the distance threshold for geometric graphs.
    pub eta: f64,
    pub seed: u64,
}

impl InstanceSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidSpec("n must be at least 1".into()));
        }
        // A distance threshold above 1 is meaningful (the unit square has diameter sqrt 2).
        let eta_ok = match self.class {
            GraphClass::Geometric => self.eta > 0.0 && self.eta.is_finite(),
            _ => self.eta > 0.0 && self.eta <= 1.0,
        };
        if !eta_ok {
            return Err(Error::InvalidSpec(format!("eta = {} out of range for {:?}", self.eta, self.class)));
        }
        Ok(())
    }
}

/// Seed of the `index`-th instance of a group drawn from `group_seed`.
pub fn instance_seed(group_seed: u64, index: u64) -> u64 {
    use rand::RngCore;
    rng::stream(group_seed, index + 1).next_u64()
}

pub fn generate(spec: &InstanceSpec) -> Result<Graph> {
    spec.validate()?;
    let mut rng = rng::stream(spec.seed, 0);
    let n = spec.n;
    let mut edges = Vec::new();
    match spec.class {
        GraphClass::Random => {
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen::<f64>() < spec.eta {
                        edges.push((u, v));
                    }
                }
            }
        }
        GraphClass::Geometric => {
            let points: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen(), rng.gen())).collect();
            for u in 0..n {
                for v in u + 1..n {
                    let (dx, dy) = (points[u].0 - points[v].0, points[u].1 - points[v].1);
                    if (dx * dx + dy * dy).sqrt() <= spec.eta {
                        edges.push((u, v));
                    }
                }
            }
        }
        GraphClass::Bipartite | GraphClass::ComplementBipartite => {
            edges = bipartite_edges(n, spec.eta, &mut rng);
        }
    }
    let g = Graph::from_edges(n, edges)?;
    Ok(if spec.class == GraphClass::ComplementBipartite { g.complement() } else { g })
}

/// Parts are `0..ceil(n/2)` and `ceil(n/2)..n`.
fn bipartite_edges(n: usize, p: f64, rng: &mut rng::Rng) -> Vec<(usize, usize)> {
    let split = n.div_ceil(2);
    let mut edges = Vec::new();
    for u in 0..split {
        for v in split..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    edges
}
