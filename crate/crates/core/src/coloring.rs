//! First-fit coloring over vertex sequences.
//!
//! Colors are 1-based. A vertex is either uncolored or holds a color `>= 1`;
//! [`Coloring`] stores this as `Option<NonZeroU32>` rather than a sentinel.

use std::fmt::Write as _;
use std::num::NonZeroU32;

use serde::{Deserialize, Serialize};

use crate::{Error, Graph, Result};

/// Which problem a run targets: connected Grundy (`Γ_c`) or plain Grundy (`Γ`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    #[default]
    Connected,
    Plain,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "connected" => Ok(Mode::Connected),
            "plain" => Ok(Mode::Plain),
            _ => Err(Error::InvalidParams(format!("unknown mode `{s}`"))),
        }
    }
}

/// A permutation of the vertex set, read left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexSequence(Vec<usize>);

impl VertexSequence {
    pub fn new(order: Vec<usize>, n: usize) -> Result<Self> {
        let mut seen = vec![false; n];
        if order.len() != n {
            return Err(Error::NotAPermutation(format!("sequence of length {} for n = {n}", order.len())));
        }
        for &v in &order {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::NotAPermutation(format!("vertex {} repeated or out of range", v + 1)));
            }
        }
        Ok(Self(order))
    }

    /// Builds a sequence from 1-based vertex labels.
    pub fn from_one_based(order: &[usize], n: usize) -> Result<Self> {
        if order.contains(&0) {
            return Err(Error::NotAPermutation("vertex 0 in a 1-based sequence".into()));
        }
        Self::new(order.iter().map(|v| v - 1).collect(), n)
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub(crate) fn from_vec_unchecked(order: Vec<usize>) -> Self {
        Self(order)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|v| v + 1).collect()
    }

    /// Position of each vertex.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    /// The sequence with the vertex at `from` relocated to index `to`,
    /// everything else keeping its relative order.
    pub fn moved(&self, from: usize, to: usize) -> Self {
        let mut order = self.0.clone();
        let v = order.remove(from);
        order.insert(to, v);
        Self(order)
    }
}

impl std::ops::Index<usize> for VertexSequence {
    type Output = usize;

    fn index(&self, i: usize) -> &usize {
        &self.0[i]
    }
}

impl Serialize for VertexSequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_one_based().serialize(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    colors: Vec<Option<NonZeroU32>>,
}

impl Coloring {
    pub fn uncolored(n: usize) -> Self {
        Self { colors: vec![None; n] }
    }

    /// Complete coloring from a per-vertex color list; every entry must be `>= 1`.
    pub fn from_colors(colors: &[u32]) -> Result<Self> {
        let colors = colors
            .iter()
            .enumerate()
            .map(|(v, &c)| {
                NonZeroU32::new(c)
                    .map(Some)
                    .ok_or_else(|| Error::Domain(format!("vertex {} has color 0", v + 1)))
            })
            .collect::<Result<_>>()?;
        Ok(Self { colors })
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    #[inline]
    pub fn get(&self, v: usize) -> Option<u32> {
        self.colors[v].map(NonZeroU32::get)
    }

    /// # Panics
    /// If `color` is 0.
    #[inline]
    pub fn set(&mut self, v: usize, color: u32) {
        self.colors[v] = Some(NonZeroU32::new(color).expect("colors are 1-based"));
    }

    #[inline]
    pub fn clear(&mut self, v: usize) {
        self.colors[v] = None;
    }

    pub fn is_complete(&self) -> bool {
        self.colors.iter().all(Option::is_some)
    }

    /// Largest assigned color (0 when nothing is colored).
    pub fn used_colors(&self) -> u32 {
        self.colors.iter().flatten().map(|c| c.get()).max().unwrap_or(0)
    }

    /// Per-vertex colors, 0 for uncolored.
    pub fn to_vec(&self) -> Vec<u32> {
        self.colors.iter().map(|c| c.map_or(0, NonZeroU32::get)).collect()
    }

    /// `v <vertex> <color>` lines, vertices 1-based, uncolored vertices omitted.
    pub fn to_dimacs_block(&self) -> String {
        let mut out = String::new();
        for (v, c) in self.colors.iter().enumerate() {
            if let Some(c) = c {
                let _ = writeln!(out, "v {} {}", v + 1, c);
            }
        }
        out
    }
}

impl Serialize for Coloring {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.colors.iter().map(|c| c.map(NonZeroU32::get)).collect::<Vec<_>>().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Coloring {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<Option<u32>>::deserialize(d)?;
        let colors = raw
            .into_iter()
            .map(|c| match c {
                None => Ok(None),
                Some(c) => NonZeroU32::new(c).map(Some).ok_or_else(|| serde::de::Error::custom("color 0")),
            })
            .collect::<std::result::Result<_, _>>()?;
        Ok(Self { colors })
    }
}

/// Reusable buffer for repeated first-fit color queries.
#[derive(Debug, Default, Clone)]
pub struct FirstFitScratch {
    mark: Vec<u64>,
    stamp: u64,
}

impl FirstFitScratch {
    pub fn new() -> Self {
        Self::default()
    }

    /// Smallest color absent from the colored neighbors of `v`.
    pub fn color_vertex(&mut self, g: &Graph, v: usize, colors: &Coloring) -> u32 {
        let nbrs = g.neighbors(v);
        // With d neighbors the answer is at most d + 1.
        let bound = nbrs.len() + 1;
        if self.mark.len() <= bound {
            self.mark.resize(bound + 1, 0);
        }
        self.stamp += 1;
        for &u in nbrs {
            if let Some(c) = colors.get(u) {
                if (c as usize) <= bound {
                    self.mark[c as usize] = self.stamp;
                }
            }
        }
        (1..=bound).find(|&c| self.mark[c] != self.stamp).unwrap_or(bound + 1) as u32
    }
}

/// Smallest positive color not used by an already-colored neighbor of `v`.
pub fn color_vertex(g: &Graph, v: usize, partial: &Coloring) -> u32 {
    FirstFitScratch::new().color_vertex(g, v, partial)
}

/// Colors the vertices in sequence order, each with [`color_vertex`].
pub fn first_fit(g: &Graph, s: &VertexSequence) -> Coloring {
    let mut colors = Coloring::uncolored(g.vertex_count());
    let mut scratch = FirstFitScratch::new();
    for &v in s.as_slice() {
        let c = scratch.color_vertex(g, v, &colors);
        colors.set(v, c);
    }
    colors
}

/// Every vertex after the first has a neighbor earlier in the sequence.
pub fn is_connected_sequence(g: &Graph, s: &VertexSequence) -> bool {
    let mut placed = vec![false; g.vertex_count()];
    for (i, &v) in s.as_slice().iter().enumerate() {
        if i > 0 && !g.neighbors(v).iter().any(|&u| placed[u]) {
            return false;
        }
        placed[v] = true;
    }
    true
}

/// Properness plus the Grundy property: a vertex of color `k` sees every
/// color `1..k` among its neighbors. Incomplete colorings are rejected.
pub fn validate_grundy(g: &Graph, c: &Coloring) -> bool {
    if c.len() != g.vertex_count() || !c.is_complete() {
        return false;
    }
    let mut seen = Vec::new();
    g.vertices().all(|v| {
        let k = c.get(v).expect("complete") as usize;
        seen.clear();
        seen.resize(k, false);
        for &u in g.neighbors(v) {
            let cu = c.get(u).expect("complete") as usize;
            if cu == k {
                return false;
            }
            if cu < k {
                seen[cu] = true;
            }
        }
        seen[1..].iter().all(|&b| b)
    })
}

/// Positional data for a sequence `S`, all positions 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionIndex {
    /// `p_S(v)`: position of `v`.
    pub pos: Vec<usize>,
    /// `f_S(v)`: position of the first neighbor of `v` in `S`; `None` when
    /// `v` has no neighbors.
    pub first: Vec<Option<usize>>,
    /// `fc_S(v)`: number of neighbors of `v` placed before it.
    pub preceding: Vec<usize>,
}

impl PositionIndex {
    pub fn build(g: &Graph, s: &VertexSequence) -> Self {
        let n = g.vertex_count();
        let pos = s.positions();
        let mut first = vec![None; n];
        let mut preceding = vec![0; n];
        for &v in s.as_slice() {
            let p = pos[v];
            for &u in g.neighbors(v) {
                let q = pos[u];
                if q < p {
                    preceding[v] += 1;
                }
                if first[v].is_none_or(|f| q < f) {
                    first[v] = Some(q);
                }
            }
        }
        Self { pos, first, preceding }
    }
}
