//! Greedy orderings for warm starts and baselines.
//!
//! Every tie is broken by the lowest vertex index.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::coloring::{first_fit, is_connected_sequence};
use crate::{Coloring, Error, Graph, Mode, Result, VertexSequence};

fn require_connected(g: &Graph) -> Result<()> {
    let comps = g.connected_components().len();
    if comps > 1 {
        return Err(Error::Disconnected { components: comps });
    }
    Ok(())
}

/// Residual degrees of the graph `H` obtained by deleting vertices one by one.
struct Residual<'a> {
    g: &'a Graph,
    degree: Vec<usize>,
    removed: Vec<bool>,
}

impl<'a> Residual<'a> {
    fn new(g: &'a Graph) -> Self {
        Self { g, degree: g.vertices().map(|v| g.degree(v)).collect(), removed: vec![false; g.vertex_count()] }
    }

    fn remove(&mut self, v: usize) {
        self.removed[v] = true;
        for &u in self.g.neighbors(v) {
            if !self.removed[u] {
                self.degree[u] -= 1;
            }
        }
    }

    fn remaining(&self) -> impl Iterator<Item = usize> + '_ {
        self.g.vertices().filter(|&v| !self.removed[v])
    }
}

/// Connected smallest-degree first (CMinDF).
///
/// Starts at a minimum-degree vertex and grows the sequence from the reached
/// frontier, always taking the reached vertex of smallest degree in the
/// residual graph of not-yet-sequenced vertices.
pub fn connected_smallest_degree_first(g: &Graph) -> Result<VertexSequence> {
    require_connected(g)?;
    let n = g.vertex_count();
    if n == 0 {
        return Ok(VertexSequence::identity(0));
    }
    let mut h = Residual::new(g);
    let mut reached = vec![false; n];
    let mut frontier = Vec::new();
    let start = g.vertices().min_by_key(|&v| (g.degree(v), v)).expect("nonempty");
    reached[start] = true;
    frontier.push(start);
    let mut order = Vec::with_capacity(n);
    while !frontier.is_empty() {
        let (i, &v) = frontier
            .iter()
            .enumerate()
            .min_by_key(|&(_, &v)| (h.degree[v], v))
            .expect("frontier is nonempty");
        frontier.swap_remove(i);
        for &u in g.neighbors(v) {
            if !reached[u] {
                reached[u] = true;
                frontier.push(u);
            }
        }
        h.remove(v);
        order.push(v);
    }
    Ok(VertexSequence::from_vec_unchecked(order))
}

/// Connected maximum-degree first (CMDF): highest static degree among the
/// vertices adjacent to something already sequenced.
pub fn connected_max_degree_first(g: &Graph) -> Result<VertexSequence> {
    require_connected(g)?;
    let n = g.vertex_count();
    if n == 0 {
        return Ok(VertexSequence::identity(0));
    }
    // (degree, Reverse(index)) as the max-heap key selects lowest index on ties.
    let mut heap = std::collections::BinaryHeap::new();
    let mut reached = vec![false; n];
    let start = g.vertices().max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v))).expect("nonempty");
    reached[start] = true;
    heap.push((g.degree(start), std::cmp::Reverse(start)));
    let mut order = Vec::with_capacity(n);
    while let Some((_, std::cmp::Reverse(v))) = heap.pop() {
        order.push(v);
        for &u in g.neighbors(v) {
            if !reached[u] {
                reached[u] = true;
                heap.push((g.degree(u), std::cmp::Reverse(u)));
            }
        }
    }
    Ok(VertexSequence::from_vec_unchecked(order))
}

/// DSatur ordering with its first-fit coloring, for any graph.
///
/// Starts at a maximum-degree vertex, then repeatedly takes the vertex with
/// the most distinct neighbor colors, ties by residual degree, then index.
fn dsatur_unchecked(g: &Graph) -> (VertexSequence, Coloring) {
    let n = g.vertex_count();
    let mut h = Residual::new(g);
    let mut colors = Coloring::uncolored(n);
    let mut scratch = crate::coloring::FirstFitScratch::new();
    let mut neighbor_colors: Vec<std::collections::BTreeSet<u32>> = vec![Default::default(); n];
    let mut order = Vec::with_capacity(n);
    for step in 0..n {
        let v = if step == 0 {
            g.vertices().max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v))).expect("nonempty")
        } else {
            h.remaining()
                .max_by_key(|&v| (neighbor_colors[v].len(), h.degree[v], std::cmp::Reverse(v)))
                .expect("vertices remain")
        };
        let c = scratch.color_vertex(g, v, &colors);
        colors.set(v, c);
        for &u in g.neighbors(v) {
            neighbor_colors[u].insert(c);
        }
        h.remove(v);
        order.push(v);
    }
    (VertexSequence::from_vec_unchecked(order), colors)
}

/// DSatur on a connected graph. The produced sequence is checked to be
/// connected.
pub fn dsatur_sequence(g: &Graph) -> Result<(VertexSequence, Coloring)> {
    require_connected(g)?;
    let (s, c) = dsatur_unchecked(g);
    if !is_connected_sequence(g, &s) {
        return Err(Error::InvalidGraph("DSatur produced a disconnected sequence".into()));
    }
    Ok((s, c))
}

/// Classical orderings for the plain Grundy problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlainCriterion {
    MaxDegreeFirst,
    AdaptiveMaxDegree,
    SmallestDegreeLast,
}

pub fn plain_greedy_sequence(g: &Graph, criterion: PlainCriterion) -> VertexSequence {
    let n = g.vertex_count();
    let order = match criterion {
        PlainCriterion::MaxDegreeFirst => {
            let mut order: Vec<usize> = g.vertices().collect();
            order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
            order
        }
        PlainCriterion::AdaptiveMaxDegree => {
            let mut h = Residual::new(g);
            let mut order = Vec::with_capacity(n);
            for _ in 0..n {
                let v = h.remaining().max_by_key(|&v| (h.degree[v], std::cmp::Reverse(v))).expect("vertices remain");
                h.remove(v);
                order.push(v);
            }
            order
        }
        PlainCriterion::SmallestDegreeLast => {
            let mut h = Residual::new(g);
            let mut order = Vec::with_capacity(n);
            for _ in 0..n {
                let v = h.remaining().min_by_key(|&v| (h.degree[v], v)).expect("vertices remain");
                h.remove(v);
                order.push(v);
            }
            order.reverse();
            order
        }
    };
    VertexSequence::from_vec_unchecked(order)
}

/// A named greedy heuristic, as selected from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Heuristic {
    /// Connected smallest-degree first.
    Cmindf,
    /// Connected maximum-degree first.
    Cmdf,
    Dsatur,
    MaxDegreeFirst,
    AdaptiveMaxDegree,
    SmallestDegreeLast,
}

impl Heuristic {
    pub const CONNECTED: [Heuristic; 3] = [Heuristic::Cmindf, Heuristic::Cmdf, Heuristic::Dsatur];
    pub const PLAIN: [Heuristic; 4] = [
        Heuristic::MaxDegreeFirst,
        Heuristic::AdaptiveMaxDegree,
        Heuristic::SmallestDegreeLast,
        Heuristic::Dsatur,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Heuristic::Cmindf => "cmindf",
            Heuristic::Cmdf => "cmdf",
            Heuristic::Dsatur => "dsatur",
            Heuristic::MaxDegreeFirst => "max_degree_first",
            Heuristic::AdaptiveMaxDegree => "adaptive_max_degree",
            Heuristic::SmallestDegreeLast => "smallest_degree_last",
        }
    }

    /// Runs the heuristic. Connected heuristics require a connected graph;
    /// DSatur only enforces it in connected mode.
    pub fn run(self, g: &Graph, mode: Mode) -> Result<(VertexSequence, Coloring)> {
        let with_colors = |s: VertexSequence| {
            let c = first_fit(g, &s);
            (s, c)
        };
        Ok(match self {
            Heuristic::Cmindf => with_colors(connected_smallest_degree_first(g)?),
            Heuristic::Cmdf => with_colors(connected_max_degree_first(g)?),
            Heuristic::Dsatur if mode == Mode::Connected => dsatur_sequence(g)?,
            Heuristic::Dsatur => dsatur_unchecked(g),
            Heuristic::MaxDegreeFirst => with_colors(plain_greedy_sequence(g, PlainCriterion::MaxDegreeFirst)),
            Heuristic::AdaptiveMaxDegree => {
                with_colors(plain_greedy_sequence(g, PlainCriterion::AdaptiveMaxDegree))
            }
            Heuristic::SmallestDegreeLast => {
                with_colors(plain_greedy_sequence(g, PlainCriterion::SmallestDegreeLast))
            }
        })
    }
}

impl FromStr for Heuristic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Heuristic::CONNECTED.as_slice(), Heuristic::PLAIN.as_slice()]
            .concat()
            .into_iter()
            .find(|h| h.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown heuristic `{s}`")))
    }
}

/// Best sequence among the mode's heuristics; ties go to the first listed.
pub fn warm_start(g: &Graph, mode: Mode) -> Result<(Heuristic, VertexSequence, Coloring)> {
    let set: &[Heuristic] = match mode {
        Mode::Connected => &Heuristic::CONNECTED,
        Mode::Plain => &Heuristic::PLAIN,
    };
    let mut best: Option<(Heuristic, VertexSequence, Coloring)> = None;
    for &h in set {
        let (s, c) = h.run(g, mode)?;
        if best.as_ref().is_none_or(|(_, _, b)| c.used_colors() > b.used_colors()) {
            best = Some((h, s, c));
        }
    }
    best.ok_or_else(|| Error::InvalidParams("empty heuristic set".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cmindf_traces() {
        assert_eq!(connected_smallest_degree_first(&Graph::path(3)).unwrap().as_slice(), &[0, 1, 2]);
        let s = connected_smallest_degree_first(&Graph::star(4)).unwrap();
        assert_eq!(s.as_slice(), &[1, 0, 2, 3, 4]);
        let k = connected_smallest_degree_first(&Graph::complete(5)).unwrap();
        assert_eq!(k.as_slice(), &[0, 1, 2, 3, 4]);
        assert!(connected_smallest_degree_first(&Graph::empty(2)).is_err());
    }

    #[test]
    fn cmdf_traces() {
        assert_eq!(connected_max_degree_first(&Graph::star(4)).unwrap()[0], 0);
        // P4: inner vertex 1 first, then 2 (degree 2), then the leaves by index.
        assert_eq!(connected_max_degree_first(&Graph::path(4)).unwrap().as_slice(), &[1, 2, 0, 3]);
        assert!(connected_max_degree_first(&Graph::empty(2)).is_err());
    }

    #[test]
    fn dsatur_small() {
        let (_, c) = dsatur_sequence(&Graph::complete(4)).unwrap();
        assert_eq!(c.used_colors(), 4);
        let (s, c) = dsatur_sequence(&Graph::cycle(6)).unwrap();
        assert_eq!(c.used_colors(), 2);
        assert!(is_connected_sequence(&Graph::cycle(6), &s));
        assert!(dsatur_sequence(&Graph::empty(3)).is_err());
    }

    #[test]
    fn plain_orders() {
        let star = Graph::star(3);
        assert_eq!(plain_greedy_sequence(&star, PlainCriterion::MaxDegreeFirst)[0], 0);
        let p4 = Graph::path(4);
        let s = plain_greedy_sequence(&p4, PlainCriterion::SmallestDegreeLast);
        // 0 is removed first and placed last; 1 then ties with 3 at residual degree 1.
        assert_eq!(s.as_slice(), &[3, 2, 1, 0]);
        let a = plain_greedy_sequence(&Graph::complete(4), PlainCriterion::AdaptiveMaxDegree);
        assert_eq!(a.as_slice(), &[0, 1, 2, 3]);
    }

    #[test]
    fn warm_start_complete_and_bipartite() {
        let (_, _, c) = warm_start(&Graph::complete(5), Mode::Connected).unwrap();
        assert_eq!(c.used_colors(), 5);
        let (_, _, c) = warm_start(&Graph::cycle(8), Mode::Connected).unwrap();
        assert_eq!(c.used_colors(), 2);
        let (_, _, c) = warm_start(&Graph::complete(4), Mode::Plain).unwrap();
        assert_eq!(c.used_colors(), 4);
    }

    #[test]
    fn names_round_trip() {
        for h in Heuristic::CONNECTED.iter().chain(Heuristic::PLAIN.iter()) {
            assert_eq!(h.name().parse::<Heuristic>().unwrap(), *h);
        }
    }
}
