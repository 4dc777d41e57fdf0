//! Simple undirected graphs.
//!
//! [`Graph`] stores adjacency in compressed sparse row form with every
//! neighbor list sorted ascending. Graphs are immutable once built.

mod dimacs;
mod generate;

pub use dimacs::{parse_dimacs, write_dimacs};
pub use generate::{generate, instance_seed, GraphClass, InstanceSpec};

use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.vertex_count())
            .field("m", &self.edge_count())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Builds a graph on `n` vertices from 0-based edge pairs.
    ///
    /// Duplicate pairs and both orientations collapse to one edge. Self-loops
    /// and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut pairs = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            pairs.push((u, v));
            pairs.push((v, u));
        }
        pairs.sort_unstable();
        pairs.dedup();
        let mut offsets = vec![0; n + 1];
        for &(u, _) in &pairs {
            offsets[u + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let targets = pairs.into_iter().map(|(_, v)| v).collect();
        Ok(Self { offsets, targets })
    }

    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self { offsets: vec![0; n + 1], targets: Vec::new() }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::from_edges(n, edges).expect("complete graph edges are valid")
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        if n > 2 {
            edges.push((n - 1, 0));
        }
        Self::from_edges(n, edges).expect("cycle edges are valid")
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Self::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star edges are valid")
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.vertex_count()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertices()
            .flat_map(move |u| self.neighbors(u).iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// `2m / (n (n - 1))`. Undefined below two vertices.
    pub fn density(&self) -> Result<f64> {
        let n = self.vertex_count();
        if n < 2 {
            return Err(Error::Domain(format!("density needs at least 2 vertices, got {n}")));
        }
        Ok(2.0 * self.edge_count() as f64 / (n as f64 * (n as f64 - 1.0)))
    }

    pub fn complement(&self) -> Self {
        let n = self.vertex_count();
        let mut edges = Vec::new();
        for u in 0..n {
            let mut nbrs = self.neighbors(u).iter().peekable();
            for v in u + 1..n {
                while nbrs.next_if(|&&w| w < v).is_some() {}
                if nbrs.peek() != Some(&&v) {
                    edges.push((u, v));
                }
            }
        }
        Self::from_edges(n, edges).expect("complement edges are valid")
    }

    /// Maximal connected vertex sets, each sorted, ordered by minimum vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        let mut stack = Vec::new();
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            stack.push(root);
            let mut component = Vec::new();
            while let Some(v) = stack.pop() {
                component.push(v);
                for &u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            component.sort_unstable();
            components.push(component);
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() <= 1 || self.connected_components().len() == 1
    }

    /// Joins the components with a path through one representative each.
    ///
    /// The representative of a component is its maximum-degree vertex, ties
    /// going to the lowest index. Representatives are linked in index order,
    /// so exactly `components - 1` edges are added. Returns the new graph
    /// and the added edges.
    pub fn connectify(&self) -> (Self, Vec<(usize, usize)>) {
        let components = self.connected_components();
        if components.len() <= 1 {
            return (self.clone(), Vec::new());
        }
        let mut reps: Vec<usize> = components
            .iter()
            .map(|c| {
                // max_by_key keeps the last maximum; iterate in reverse so ties pick the lowest index.
                *c.iter().rev().max_by_key(|&&v| self.degree(v)).expect("components are nonempty")
            })
            .collect();
        reps.sort_unstable();
        let added: Vec<_> = reps.windows(2).map(|w| (w[0], w[1])).collect();
        let graph = Self::from_edges(self.vertex_count(), self.edges().chain(added.iter().copied()))
            .expect("connecting edges are valid");
        (graph, added)
    }

    /// Checks the structural invariants: symmetric sorted adjacency without
    /// loops or repeated neighbors.
    pub fn validate(&self) -> Result<()> {
        for v in self.vertices() {
            let nbrs = self.neighbors(v);
            if nbrs.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidGraph(format!("neighbors of {v} not strictly sorted")));
            }
            for &u in nbrs {
                if u == v {
                    return Err(Error::InvalidGraph(format!("self-loop at {v}")));
                }
                if !self.has_edge(u, v) {
                    return Err(Error::InvalidGraph(format!("edge {v}->{u} has no reverse")));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_collapses_duplicates() {
        let g = Graph::from_edges(2, [(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        g.validate().unwrap();
    }

    #[test]
    fn rejects_loops_and_range() {
        assert!(Graph::from_edges(3, [(1, 1)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
    }

    #[test]
    fn density_values() {
        assert_eq!(Graph::complete(4).density().unwrap(), 1.0);
        assert!((Graph::path(3).density().unwrap() - 2.0 / 3.0).abs() < 1e-12);
        assert!(Graph::empty(1).density().is_err());
    }

    #[test]
    fn complement_small_cases() {
        assert_eq!(Graph::complete(4).complement(), Graph::empty(4));
        assert_eq!(Graph::empty(3).complement(), Graph::complete(3));
        let p = Graph::path(4);
        let c = p.complement();
        assert_eq!(c.edges().collect::<Vec<_>>(), vec![(0, 2), (0, 3), (1, 3)]);
    }

    #[test]
    fn components() {
        assert_eq!(Graph::path(3).connected_components(), vec![vec![0, 1, 2]]);
        assert_eq!(Graph::empty(2).connected_components(), vec![vec![0], vec![1]]);
    }

    #[test]
    fn components_joined_at_lowest_index_hubs() {
        // b d e f | g h i  ->  0..=3 | 4..=6
        let g = Graph::from_edges(7, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (4, 5), (4, 6)]).unwrap();
        let comps = g.connected_components();
        assert_eq!(comps.iter().map(Vec::len).collect::<Vec<_>>(), vec![4, 3]);
        // d and e tie on degree 3; the lower index (d) is the representative.
        let (h, added) = g.connectify();
        assert_eq!(added, vec![(1, 4)]);
        assert!(h.is_connected());
    }

    #[test]
    fn connectify_cases() {
        let p = Graph::path(5);
        let (same, added) = p.connectify();
        assert!(added.is_empty());
        assert_eq!(same, p);

        let (h, added) = Graph::empty(3).connectify();
        assert_eq!(added, vec![(0, 1), (1, 2)]);
        assert_eq!(h, Graph::path(3));

        let two_triangles =
            Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let (h, added) = two_triangles.connectify();
        assert_eq!(added, vec![(0, 3)]);
        assert_eq!(h.connectify().1, vec![]);
    }
}
