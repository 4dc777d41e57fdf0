//! Toolkit for the connected Grundy coloring problem.
//!
//! A Grundy coloring is one that first-fit can produce for some vertex order;
//! in the connected variant every vertex after the first must have an earlier
//! neighbor in that order. The crate provides:
//!
//! - [`graph`]: the graph type, DIMACS I/O, the four benchmark generators and
//!   the component-connection procedure;
//! - [`coloring`]: first-fit, connectivity and Grundy validation, and the
//!   positional index used by the local search;
//! - [`bounds`]: the `Δ₂+1`, `Ψ` and stair-factor upper bounds and the pruned
//!   color sets consumed by the integer programs;
//! - [`heuristics`]: connected and classical greedy orderings;
//! - [`exact`]: exhaustive oracles for `Γ_c`, `Γ` and `χ` on small graphs;
//! - [`brkga`]: random-key encoding, decoders and the genetic algorithm with
//!   reset and local-search injection;
//! - [`localsearch`]: the move neighborhood with incremental recoloring;
//! - [`ipgen`]: the standard and representatives formulations, LP/MST writers
//!   and an external-solver bridge;
//! - [`solve`], [`bench`], [`metrics`]: the reporting layer used by the CLI.
//!
//! Vertices are `0..n` in memory. Every external format (DIMACS, JSON
//! sequences, LP variable names) uses `1..=n`.

pub mod bench;
pub mod bounds;
pub mod brkga;
pub mod coloring;
mod error;
pub mod exact;
pub mod graph;
pub mod heuristics;
pub mod ipgen;
pub mod localsearch;
pub mod metrics;
pub mod rng;
pub mod solve;

pub use coloring::{first_fit, Coloring, Mode, PositionIndex, VertexSequence};
pub use error::{Error, Result};
pub use graph::Graph;
