//! Move neighborhood over first-fit sequences.
//!
//! A move relocates one vertex `v` next to one of its neighbors `u`, keeping
//! everything else in relative order. Moving `v` to the position of `u`
//! means `v` ends up at index `p(u)`: directly before `u` when `u` was
//! earlier, directly after it when `u` was later. Only such moves can change
//! the coloring, because two sequences that agree on the relative order of
//! every adjacent pair produce the same first-fit coloring.
//!
//! In connected mode two O(1)/O(deg) predicates certify that a move keeps
//! the sequence connected. They are sufficient, not necessary.
//!
//! Positions are 0-based throughout.

use std::time::Instant;

use crate::brkga::{decode, RandomKeyVector};
use crate::coloring::FirstFitScratch;
use crate::{first_fit, Coloring, Graph, Mode, PositionIndex, Result, VertexSequence};

/// `u` is earlier than `v`; moving `v` in front of `u` keeps the sequence
/// connected if `u` is first or `v` already has a neighbor before `u`.
pub fn can_move_left(idx: &PositionIndex, u: usize, v: usize) -> bool {
    let pu = idx.pos[u];
    pu == 0 || idx.first[v].is_some_and(|f| f < pu)
}

/// `u` is later than `v`; moving `v` just after `u` keeps the sequence
/// connected if every neighbor `w` of `v` in the window `(p(v), p(u)]`
/// either has a neighbor before `v`, or has `v` as its first neighbor but
/// also another earlier one.
pub fn can_move_right(g: &Graph, idx: &PositionIndex, u: usize, v: usize) -> bool {
    let (pv, pu) = (idx.pos[v], idx.pos[u]);
    g.neighbors(v).iter().all(|&w| {
        let pw = idx.pos[w];
        if pw <= pv || pw > pu {
            return true;
        }
        match idx.first[w] {
            Some(f) if f < pv => true,
            Some(f) if f == pv => idx.preceding[w] > 1,
            _ => false,
        }
    })
}

/// Result of [`color_sequence`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveOutcome {
    pub sequence: VertexSequence,
    pub coloring: Coloring,
    pub value: u32,
}

/// Applies a move and recolors incrementally.
///
/// `colors` is the first-fit coloring of `s`. Vertex `v` moves to
/// `new_position`; the first `keep` positions of the new sequence are known
/// to be unaffected and are copied. Inside the window up to `new_position`
/// only `v` and its neighbors are recolored until some color differs from
/// the old one; from that point every remaining vertex is recolored. If the
/// window closes without a change the rest is copied.
///
/// Callers pass `keep = p(u)` for a left move and `keep = p(v)` for a right
/// move.
pub fn color_sequence(
    g: &Graph,
    s: &VertexSequence,
    colors: &Coloring,
    v: usize,
    new_position: usize,
    keep: usize,
    scratch: &mut FirstFitScratch,
) -> MoveOutcome {
    let old_position = s.as_slice().iter().position(|&x| x == v).expect("v is in the sequence");
    let sequence = s.moved(old_position, new_position);
    let order = sequence.as_slice();
    let mut out = Coloring::uncolored(colors.len());
    for &x in &order[..keep] {
        out.set(x, colors.get(x).expect("input coloring is complete"));
    }
    let mut changed = false;
    for (p, &x) in order.iter().enumerate().skip(keep) {
        let old = colors.get(x).expect("input coloring is complete");
        if changed {
            out.set(x, scratch.color_vertex(g, x, &out));
        } else if p > new_position || (x != v && !g.has_edge(v, x)) {
            out.set(x, old);
        } else {
            let c = scratch.color_vertex(g, x, &out);
            out.set(x, c);
            changed = c != old;
        }
    }
    let value = out.used_colors();
    MoveOutcome { sequence, coloring: out, value }
}

/// Outcome of a local search run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub sequence: VertexSequence,
    pub coloring: Coloring,
    pub value: u32,
    /// Accepted (strictly improving) moves.
    pub improvements: usize,
    /// Whether the deadline cut the search short.
    pub timed_out: bool,
}

/// Decodes `x` in the given mode and improves it with [`improve`].
pub fn local_search(g: &Graph, x: &RandomKeyVector, mode: Mode, deadline: Option<Instant>) -> Result<SearchResult> {
    let decoded = decode(g, x, mode)?;
    Ok(improve(g, decoded.sequence, decoded.coloring, mode, deadline))
}

/// Same as [`improve`] starting from a bare sequence.
pub fn improve_sequence(g: &Graph, s: VertexSequence, mode: Mode, deadline: Option<Instant>) -> SearchResult {
    let colors = first_fit(g, &s);
    improve(g, s, colors, mode, deadline)
}

/// First-improvement search over the move neighborhood.
///
/// Scans vertices `v` by ascending index and, for each, its neighbors `u` by
/// ascending index, trying the left move when `u` is earlier and the right
/// move when it is later. The first strictly better move is accepted and the
/// scan restarts on the new sequence. Stops after a full scan without
/// improvement, or at `deadline` (checked between vertices).
///
/// In plain mode the connectivity predicates are skipped.
pub fn improve(
    g: &Graph,
    mut sequence: VertexSequence,
    mut coloring: Coloring,
    mode: Mode,
    deadline: Option<Instant>,
) -> SearchResult {
    let mut value = coloring.used_colors();
    let mut improvements = 0;
    let mut scratch = FirstFitScratch::new();
    let gated = mode == Mode::Connected;
    'outer: loop {
        let idx = PositionIndex::build(g, &sequence);
        for v in g.vertices() {
            if deadline.is_some_and(|d| Instant::now() >= d) {
                return SearchResult { sequence, coloring, value, improvements, timed_out: true };
            }
            for &u in g.neighbors(v) {
                let (pu, pv) = (idx.pos[u], idx.pos[v]);
                let keep = if pu < pv {
                    if gated && !can_move_left(&idx, u, v) {
                        continue;
                    }
                    pu
                } else {
                    if gated && !can_move_right(g, &idx, u, v) {
                        continue;
                    }
                    pv
                };
                let outcome = color_sequence(g, &sequence, &coloring, v, pu, keep, &mut scratch);
                if outcome.value > value {
                    sequence = outcome.sequence;
                    coloring = outcome.coloring;
                    value = outcome.value;
                    improvements += 1;
                    continue 'outer;
                }
            }
        }
        return SearchResult { sequence, coloring, value, improvements, timed_out: false };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::is_connected_sequence;

    fn diamond_with_tail() -> (Graph, VertexSequence) {
        // a b c d = 0..3, S = (b, a, c, d)
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (1, 3), (2, 3)]).unwrap();
        (g, VertexSequence::new(vec![1, 0, 2, 3], 4).unwrap())
    }

    fn apply(g: &Graph, s: &VertexSequence, u: usize, v: usize) -> MoveOutcome {
        let idx = PositionIndex::build(g, s);
        let colors = first_fit(g, s);
        let (pu, pv) = (idx.pos[u], idx.pos[v]);
        let keep = if pu < pv { pu } else { pv };
        color_sequence(g, s, &colors, v, pu, keep, &mut FirstFitScratch::new())
    }

    #[test]
    fn diamond_left_move() {
        let (g, s) = diamond_with_tail();
        let idx = PositionIndex::build(&g, &s);
        assert!(can_move_left(&idx, 1, 2));
        let out = apply(&g, &s, 1, 2);
        assert_eq!(out.sequence.as_slice(), &[2, 1, 0, 3]);
        assert_eq!(out.coloring.to_vec(), vec![1, 2, 1, 3]);
    }

    #[test]
    fn diamond_right_move() {
        let (g, s) = diamond_with_tail();
        let idx = PositionIndex::build(&g, &s);
        assert!(can_move_right(&g, &idx, 3, 2));
        let out = apply(&g, &s, 3, 2);
        assert_eq!(out.sequence.as_slice(), &[1, 0, 3, 2]);
        assert_eq!(out.coloring.to_vec(), vec![2, 1, 3, 2]);
    }

    #[test]
    fn gate_rejections() {
        let g = Graph::path(4);
        // S = (2, 1, 3, 4) 1-based; move 4 before 3: f(4) = p(3), not earlier.
        let s = VertexSequence::new(vec![1, 0, 2, 3], 4).unwrap();
        let idx = PositionIndex::build(&g, &s);
        assert!(!can_move_left(&idx, 2, 3));
        // S = (1, 2, 3, 4); moving 2 after 3 would strand 3.
        let s = VertexSequence::identity(4);
        let idx = PositionIndex::build(&g, &s);
        assert!(!can_move_right(&g, &idx, 2, 1));
        // Moving to the front next to the first vertex is always fine.
        assert!(can_move_left(&idx, 0, 1));
    }

    #[test]
    fn path_move_recolors_everything() {
        let g = Graph::path(6);
        let s = VertexSequence::identity(6);
        // Moving a to the very end is not a neighbor-relative move; use the primitive directly.
        let colors = first_fit(&g, &s);
        let out = color_sequence(&g, &s, &colors, 0, 5, 0, &mut FirstFitScratch::new());
        assert_eq!(out.sequence.as_slice(), &[1, 2, 3, 4, 5, 0]);
        assert_eq!(out.coloring.to_vec(), vec![2, 1, 2, 1, 2, 1]);
        assert!(is_connected_sequence(&g, &out.sequence));
        assert!(g.vertices().all(|v| out.coloring.get(v) != colors.get(v)));
    }

    #[test]
    fn complete_graph_is_left_alone() {
        let g = Graph::complete(5);
        let r = improve_sequence(&g, VertexSequence::identity(5), Mode::Connected, None);
        assert_eq!(r.value, 5);
        assert_eq!(r.improvements, 0);
        assert_eq!(r.sequence, VertexSequence::identity(5));
    }

    #[test]
    fn finds_the_fourth_color_in_plain_mode() {
        let g = Graph::path(4);
        // (1,2,3,4) gives 2 colors; Γ(P4) = 3.
        let r = improve_sequence(&g, VertexSequence::identity(4), Mode::Plain, None);
        assert_eq!(r.value, 3);
        assert_eq!(first_fit(&g, &r.sequence), r.coloring);
    }
}
