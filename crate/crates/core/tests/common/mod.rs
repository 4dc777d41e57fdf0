#![allow(dead_code)]

use grundy_core::graph::{generate, GraphClass, InstanceSpec};
use grundy_core::Graph;

/// Random graph on `n` vertices with edge probability `p`, connected by
/// linking its components.
pub fn random_connected(n: usize, p: f64, seed: u64) -> Graph {
    let g = generate(&InstanceSpec { class: GraphClass::Random, n, eta: p, seed }).unwrap();
    g.connectify().0
}

/// a..f = 0..5: the 5-cycle a-b-c-d-e plus f adjacent to a and b.
pub fn ear_cycle() -> Graph {
    Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (1, 5)]).unwrap()
}

/// The eight-vertex coloring example of the representatives model, 0-based.
/// Vertex 7 (1-based) hangs off vertex 5, so it can take color 2.
pub fn representatives_example() -> Graph {
    let edges = [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4), (5, 6), (5, 3), (8, 6), (8, 4), (5, 7)];
    Graph::from_edges(8, edges.map(|(u, v)| (u - 1, v - 1))).unwrap()
}
