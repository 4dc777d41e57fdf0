//! Exhaustive oracles for small graphs.
//!
//! The Grundy searches extend first-fit prefixes one vertex at a time. Two
//! prefixes that leave the same partial coloring have identical futures, so
//! visited partial colorings are memoized (packed 4 bits per vertex, which
//! caps the budgets at 15 vertices). Pruning uses only sound upper bounds.
//! Budgets are hard limits: an oversized graph is refused, never
//! approximated.

use std::collections::HashSet;

use serde::Serialize;

use crate::bounds::BoundsReport;
use crate::coloring::FirstFitScratch;
use crate::{Coloring, Error, Graph, Result, VertexSequence};

pub const GAMMA_C_LIMIT: usize = 10;
pub const GAMMA_LIMIT: usize = 9;
pub const CHROMATIC_LIMIT: usize = 12;
/// Largest budget the packed state encoding supports.
pub const MAX_LIMIT: usize = 15;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactResult {
    pub value: u32,
    /// A sequence achieving `value`.
    pub witness: VertexSequence,
}

fn check_budget(g: &Graph, limit: usize) -> Result<()> {
    let n = g.vertex_count();
    if n > limit || n > MAX_LIMIT {
        return Err(Error::BudgetExceeded { n, limit: limit.min(MAX_LIMIT) });
    }
    Ok(())
}

/// Upper-bound pruning for the Grundy searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Pruning {
    /// Cut with the [`BoundsReport`] caps and stop once `best` is reached.
    #[default]
    Bounds,
    /// Memoization only. Use this when the bounds themselves are under test.
    None,
}

/// `Γ_c(G)`: best first-fit value over connected sequences.
pub fn brute_gamma_c(g: &Graph, limit: usize) -> Result<ExactResult> {
    brute_gamma_c_with(g, limit, Pruning::Bounds)
}

pub fn brute_gamma_c_with(g: &Graph, limit: usize, pruning: Pruning) -> Result<ExactResult> {
    check_budget(g, limit)?;
    let comps = g.connected_components().len();
    if comps > 1 {
        return Err(Error::Disconnected { components: comps });
    }
    Ok(Search::new(g, true, pruning).run())
}

/// `Γ(G)`: best first-fit value over all sequences.
pub fn brute_gamma(g: &Graph, limit: usize) -> Result<ExactResult> {
    brute_gamma_with(g, limit, Pruning::Bounds)
}

pub fn brute_gamma_with(g: &Graph, limit: usize, pruning: Pruning) -> Result<ExactResult> {
    check_budget(g, limit)?;
    Ok(Search::new(g, false, pruning).run())
}

struct Search<'a> {
    g: &'a Graph,
    connected: bool,
    caps: Vec<usize>,
    ceiling: u32,
    colors: Coloring,
    packed: u64,
    prefix: Vec<usize>,
    visited: HashSet<u64>,
    scratch: FirstFitScratch,
    best: u32,
    witness: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, connected: bool, pruning: Pruning) -> Self {
        let n = g.vertex_count();
        let (caps, ceiling) = match pruning {
            Pruning::Bounds => {
                let report = BoundsReport::compute(g);
                (report.psi_cap, report.best as u32)
            }
            // first-fit never exceeds d(v) + 1
            Pruning::None => (g.vertices().map(|v| g.degree(v) + 1).collect(), n as u32 + 1),
        };
        Self {
            g,
            connected,
            caps,
            ceiling,
            colors: Coloring::uncolored(g.vertex_count()),
            packed: 0,
            prefix: Vec::with_capacity(g.vertex_count()),
            visited: HashSet::new(),
            scratch: FirstFitScratch::new(),
            best: 0,
            witness: Vec::new(),
        }
    }

    fn run(mut self) -> ExactResult {
        let n = self.g.vertex_count();
        if n > 0 {
            self.dfs(0);
        }
        ExactResult { value: self.best, witness: VertexSequence::from_vec_unchecked(self.witness) }
    }

    fn dfs(&mut self, current_max: u32) {
        let g = self.g;
        let n = g.vertex_count();
        if self.prefix.len() == n {
            if current_max > self.best {
                self.best = current_max;
                self.witness = self.prefix.clone();
            }
            return;
        }
        if self.best >= self.ceiling || !self.visited.insert(self.packed) {
            return;
        }
        let optimistic = g
            .vertices()
            .filter(|&v| self.colors.get(v).is_none())
            .map(|v| self.caps[v] as u32)
            .max()
            .unwrap_or(0)
            .max(current_max);
        if optimistic <= self.best {
            return;
        }
        for v in 0..n {
            if self.colors.get(v).is_some() {
                continue;
            }
            if self.connected
                && !self.prefix.is_empty()
                && !g.neighbors(v).iter().any(|&u| self.colors.get(u).is_some())
            {
                continue;
            }
            let c = self.scratch.color_vertex(g, v, &self.colors);
            self.colors.set(v, c);
            self.packed |= (c as u64) << (4 * v);
            self.prefix.push(v);
            self.dfs(current_max.max(c));
            self.prefix.pop();
            self.packed &= !(0xF << (4 * v));
            self.colors.clear(v);
            if self.best >= self.ceiling {
                return;
            }
        }
    }
}

/// `χ(G)` by backtracking over proper colorings.
pub fn brute_chromatic(g: &Graph, limit: usize) -> Result<u32> {
    let n = g.vertex_count();
    if n > limit {
        return Err(Error::BudgetExceeded { n, limit });
    }
    if n == 0 {
        return Ok(0);
    }
    // Color high-degree vertices first.
    let mut order: Vec<usize> = g.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut colors = vec![0u32; n];
    for k in 1..=n as u32 {
        if proper_k(g, &order, 0, k, &mut colors, 0) {
            return Ok(k);
        }
    }
    unreachable!("n colors always suffice")
}

fn proper_k(g: &Graph, order: &[usize], i: usize, k: u32, colors: &mut [u32], used: u32) -> bool {
    let Some(&v) = order.get(i) else { return true };
    // Colors above used + 1 are symmetric to used + 1.
    for c in 1..=k.min(used + 1) {
        if g.neighbors(v).iter().all(|&u| colors[u] != c) {
            colors[v] = c;
            if proper_k(g, order, i + 1, k, colors, used.max(c)) {
                return true;
            }
            colors[v] = 0;
        }
    }
    false
}
