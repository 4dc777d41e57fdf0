use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::coloring::FirstFitScratch;
use crate::{Coloring, Error, Graph, Mode, Result, VertexSequence};

/// One key in `[0, 1)` per vertex; key `i` is the priority of vertex `i`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RandomKeyVector(Vec<f64>);

impl RandomKeyVector {
    pub fn new(keys: Vec<f64>) -> Result<Self> {
        if let Some(k) = keys.iter().find(|k| !(0.0..1.0).contains(*k)) {
            return Err(Error::InvalidParams(format!("key {k} outside [0, 1)")));
        }
        Ok(Self(keys))
    }

    pub fn random<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        Self((0..n).map(|_| rng.gen::<f64>()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn keys(&self) -> &[f64] {
        &self.0
    }

    pub(crate) fn keys_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }

    /// Rank-based keys: the `i`-th vertex of `s` (1-based) gets
    /// `(n - i + 1) / (n + 1)`, so keys strictly decrease along `s`.
    pub fn encode(s: &VertexSequence) -> Self {
        let n = s.len();
        let mut keys = vec![0.0; n];
        for (i, &v) in s.as_slice().iter().enumerate() {
            keys[v] = (n - i) as f64 / (n + 1) as f64;
        }
        Self(keys)
    }
}

/// A decoded individual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decoded {
    pub sequence: VertexSequence,
    pub coloring: Coloring,
    pub value: u32,
}

/// Max-heap entry: higher key first, lower vertex index on equal keys.
#[derive(Clone, Copy, PartialEq)]
struct Priority {
    key: f64,
    vertex: usize,
}

impl Eq for Priority {}

impl Ord for Priority {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.total_cmp(&other.key).then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for Priority {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Connected decoder.
///
/// Seeds a priority queue with the highest-key vertex, then repeatedly
/// dequeues the highest-key reached vertex, first-fit colors it and enqueues
/// its unreached neighbors. Every vertex enters the queue once, so the cost
/// is `O(n log n + m)`.
pub fn decode_connected(g: &Graph, x: &RandomKeyVector) -> Result<Decoded> {
    let n = g.vertex_count();
    check_len(n, x)?;
    let keys = x.keys();
    let mut colors = Coloring::uncolored(n);
    let mut order = Vec::with_capacity(n);
    if n > 0 {
        let mut reached = vec![false; n];
        let mut queue = BinaryHeap::with_capacity(n);
        let start = (0..n).map(|v| Priority { key: keys[v], vertex: v }).max().expect("n > 0");
        reached[start.vertex] = true;
        queue.push(start);
        let mut scratch = FirstFitScratch::new();
        while let Some(Priority { vertex: v, .. }) = queue.pop() {
            let c = scratch.color_vertex(g, v, &colors);
            colors.set(v, c);
            order.push(v);
            for &u in g.neighbors(v) {
                if !reached[u] {
                    reached[u] = true;
                    queue.push(Priority { key: keys[u], vertex: u });
                }
            }
        }
        if order.len() < n {
            return Err(Error::Disconnected { components: g.connected_components().len() });
        }
    }
    let value = colors.used_colors();
    Ok(Decoded { sequence: VertexSequence::from_vec_unchecked(order), coloring: colors, value })
}

/// Plain decoder: vertices by descending key (ties by index), then first-fit.
pub fn decode_plain(g: &Graph, x: &RandomKeyVector) -> Result<Decoded> {
    let n = g.vertex_count();
    check_len(n, x)?;
    let keys = x.keys();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| keys[b].total_cmp(&keys[a]).then(a.cmp(&b)));
    let sequence = VertexSequence::from_vec_unchecked(order);
    let coloring = crate::first_fit(g, &sequence);
    let value = coloring.used_colors();
    Ok(Decoded { sequence, coloring, value })
}

pub fn decode(g: &Graph, x: &RandomKeyVector, mode: Mode) -> Result<Decoded> {
    match mode {
        Mode::Connected => decode_connected(g, x),
        Mode::Plain => decode_plain(g, x),
    }
}

fn check_len(n: usize, x: &RandomKeyVector) -> Result<()> {
    if x.len() != n {
        return Err(Error::InvalidParams(format!("key vector of length {} for n = {n}", x.len())));
    }
    Ok(())
}
