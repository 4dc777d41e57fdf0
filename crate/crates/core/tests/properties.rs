mod common;

use grundy_core::bounds::BoundsReport;
use grundy_core::brkga::{decode_connected, decode_plain, RandomKeyVector};
use grundy_core::coloring::{is_connected_sequence, validate_grundy, FirstFitScratch};
use grundy_core::exact::{brute_chromatic, brute_gamma, brute_gamma_c, Pruning};
use grundy_core::heuristics::{warm_start, Heuristic};
use grundy_core::localsearch::{can_move_left, can_move_right, color_sequence, improve, improve_sequence};
use grundy_core::{first_fit, Graph, Mode, PositionIndex, VertexSequence};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::random_connected;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n, 0.1f64..0.9, any::<u64>()).prop_map(|(n, p, seed)| random_connected(n, p, seed))
}

fn shuffled(n: usize, rng: &mut ChaCha8Rng) -> VertexSequence {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    VertexSequence::new(v, n).unwrap()
}

fn connected_sequence(g: &Graph, rng: &mut ChaCha8Rng) -> VertexSequence {
    decode_connected(g, &RandomKeyVector::random(g.vertex_count(), rng)).unwrap().sequence
}

/// Every (u, v) move the neighborhood considers, as (keep, v, new position).
fn moves(g: &Graph, s: &VertexSequence) -> Vec<(usize, usize, usize, bool)> {
    let idx = PositionIndex::build(g, s);
    let mut out = Vec::new();
    for v in g.vertices() {
        for &u in g.neighbors(v) {
            let (pu, pv) = (idx.pos[u], idx.pos[v]);
            let (keep, accepted) =
                if pu < pv { (pu, can_move_left(&idx, u, v)) } else { (pv, can_move_right(g, &idx, u, v)) };
            out.push((keep, v, pu, accepted));
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn generated_graphs_validate(n in 1usize..40, p in 0.0f64..1.0, seed: u64) {
        let g = random_connected(n, p.max(1e-3), seed);
        prop_assert!(g.validate().is_ok());
        prop_assert!(g.is_connected());
        prop_assert!(g.connectify().1.is_empty());
    }

    #[test]
    fn prefix_stability(g in graph(14), seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = g.vertex_count();
        let s = shuffled(n, &mut rng);
        let (from, to) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let t = s.moved(from, to);
        let (a, b) = (first_fit(&g, &s), first_fit(&g, &t));
        for &x in &s.as_slice()[..from.min(to)] {
            prop_assert_eq!(a.get(x), b.get(x));
        }
    }

    #[test]
    fn twin_swap(g in graph(10), seed: u64, adjacent: bool) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = g.vertex_count();
        let u = rng.gen_range(0..n);
        // New vertex n copies the neighborhood of u.
        let mut edges: Vec<(usize, usize)> = g.edges().collect();
        edges.extend(g.neighbors(u).iter().map(|&w| (w, n)));
        if adjacent {
            edges.push((u, n));
        }
        let h = Graph::from_edges(n + 1, edges).unwrap();
        let s = shuffled(n + 1, &mut rng);
        let pos = s.positions();
        let mut swapped = s.clone().into_vec();
        swapped.swap(pos[u], pos[n]);
        let t = VertexSequence::new(swapped, n + 1).unwrap();
        let (a, b) = (first_fit(&h, &s), first_fit(&h, &t));
        prop_assert_eq!(a.get(u), b.get(n));
        prop_assert_eq!(a.get(n), b.get(u));
        for x in 0..n {
            if x != u {
                prop_assert_eq!(a.get(x), b.get(x));
            }
        }
    }

    #[test]
    fn cut_stability(left in graph(7), right in graph(7), seed: u64) {
        // Cut vertex c joined to part of each side.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (nl, nr) = (left.vertex_count(), right.vertex_count());
        let c = nl + nr;
        let mut edges: Vec<(usize, usize)> = left.edges().collect();
        edges.extend(right.edges().map(|(a, b)| (a + nl, b + nl)));
        edges.push((rng.gen_range(0..nl), c));
        edges.push((nl + rng.gen_range(0..nr), c));
        for x in 0..c {
            if rng.gen_bool(0.3) {
                edges.push((x, c));
            }
        }
        let g = Graph::from_edges(c + 1, edges).unwrap();
        let s = connected_sequence(&g, &mut rng);
        // Re-interleave the sides, keeping the order within {c} ∪ side.
        let side = |x: usize| if x == c { 2 } else if x < nl { 0 } else { 1 };
        let lists: [Vec<usize>; 2] = [0, 1].map(|i| {
            s.as_slice().iter().copied().filter(|&x| side(x) == i || side(x) == 2).collect()
        });
        let mut heads = [0usize; 2];
        let mut t = Vec::with_capacity(c + 1);
        while t.len() < c + 1 {
            let eligible: Vec<usize> = (0..2)
                .filter(|&i| heads[i] < lists[i].len())
                .filter(|&i| {
                    let x = lists[i][heads[i]];
                    side(x) != 2 || (0..2).all(|j| lists[j].get(heads[j]) == Some(&x))
                })
                .collect();
            let i = *eligible.choose(&mut rng).unwrap();
            let x = lists[i][heads[i]];
            t.push(x);
            for j in 0..2 {
                if lists[j].get(heads[j]) == Some(&x) {
                    heads[j] += 1;
                }
            }
        }
        let t = VertexSequence::new(t, c + 1).unwrap();
        prop_assert_eq!(first_fit(&g, &s), first_fit(&g, &t));
    }

    #[test]
    fn critical_position(g in graph(14), seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = g.vertex_count();
        let s = shuffled(n, &mut rng);
        let v = rng.gen_range(0..n);
        let rest: Vec<usize> = s.as_slice().iter().copied().filter(|&x| x != v).collect();
        let nbr_pos: Vec<usize> = rest.iter().enumerate().filter(|(_, &x)| g.has_edge(v, x)).map(|(i, _)| i).collect();
        let original = s.positions()[v];
        // Insertion slots 0..=n-1 in `rest`; v's gap is bounded by the neighbors around it.
        let lo = nbr_pos.iter().copied().filter(|&p| p < original).max().map_or(0, |p| p + 1);
        let hi = nbr_pos.iter().copied().find(|&p| p >= original).unwrap_or(n - 1);
        let expect = first_fit(&g, &s);
        for slot in lo..=hi {
            let mut t = rest.clone();
            t.insert(slot, v);
            prop_assert_eq!(&first_fit(&g, &VertexSequence::new(t, n).unwrap()), &expect);
        }
    }

    #[test]
    fn incremental_recoloring_matches_full(g in graph(20), seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = connected_sequence(&g, &mut rng);
        let colors = first_fit(&g, &s);
        let mut scratch = FirstFitScratch::new();
        for (keep, v, to, accepted) in moves(&g, &s) {
            let out = color_sequence(&g, &s, &colors, v, to, keep, &mut scratch);
            prop_assert_eq!(&out.coloring, &first_fit(&g, &out.sequence));
            if accepted {
                prop_assert!(is_connected_sequence(&g, &out.sequence));
            }
            // Colors before the window never change.
            for &x in &s.as_slice()[..keep] {
                prop_assert_eq!(out.coloring.get(x), colors.get(x));
            }
            // A left move that keeps v's color changes nothing.
            let from = s.positions()[v];
            if to < from && out.coloring.get(v) == colors.get(v) {
                prop_assert_eq!(&out.coloring, &colors);
            }
        }
    }

    #[test]
    fn decoders_are_valid(g in graph(25), seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = RandomKeyVector::random(g.vertex_count(), &mut rng);
        let bound = BoundsReport::compute(&g).best as u32;
        for d in [decode_connected(&g, &x).unwrap(), decode_plain(&g, &x).unwrap()] {
            prop_assert_eq!(&d.coloring, &first_fit(&g, &d.sequence));
            prop_assert!(validate_grundy(&g, &d.coloring));
            prop_assert!(d.value <= bound);
        }
        prop_assert!(is_connected_sequence(&g, &decode_connected(&g, &x).unwrap().sequence));
    }

    #[test]
    fn encoding_round_trips(g in graph(25), seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = connected_sequence(&g, &mut rng);
        prop_assert_eq!(&decode_connected(&g, &RandomKeyVector::encode(&s)).unwrap().sequence, &s);
        let any = shuffled(g.vertex_count(), &mut rng);
        prop_assert_eq!(&decode_plain(&g, &RandomKeyVector::encode(&any)).unwrap().sequence, &any);
    }

    #[test]
    fn local_search_never_worsens(g in graph(16), seed: u64, plain: bool) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mode = if plain { Mode::Plain } else { Mode::Connected };
        let s = if plain { shuffled(g.vertex_count(), &mut rng) } else { connected_sequence(&g, &mut rng) };
        let before = first_fit(&g, &s).used_colors();
        let r = improve_sequence(&g, s, mode, None);
        prop_assert!(r.value >= before);
        prop_assert_eq!(&r.coloring, &first_fit(&g, &r.sequence));
        if !plain {
            prop_assert!(is_connected_sequence(&g, &r.sequence));
        }
        let again = improve(&g, r.sequence.clone(), r.coloring.clone(), mode, None);
        prop_assert_eq!(again.improvements, 0);
    }

    #[test]
    fn connected_heuristics_stay_connected(g in graph(30)) {
        for h in Heuristic::CONNECTED {
            let (s, c) = h.run(&g, Mode::Connected).unwrap();
            prop_assert!(is_connected_sequence(&g, &s), "{}", h.name());
            prop_assert_eq!(&c, &first_fit(&g, &s));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn bound_sandwich(g in graph(8)) {
        let chi = brute_chromatic(&g, 12).unwrap();
        let gc = brute_gamma_c(&g, 10).unwrap().value;
        let gamma = brute_gamma(&g, 9).unwrap().value;
        let report = BoundsReport::compute(&g);
        prop_assert!(chi <= gc && gc <= gamma);
        prop_assert!(gamma as usize <= report.best && report.best <= report.delta_plus_one);
        prop_assert_eq!(gamma, gamma_unpruned(&g));
        let (_, _, ws) = warm_start(&g, Mode::Connected).unwrap();
        prop_assert!(ws.used_colors() <= gc);
        let (_, _, wp) = warm_start(&g, Mode::Plain).unwrap();
        prop_assert!(wp.used_colors() <= gamma);
    }
}

fn gamma_unpruned(g: &Graph) -> u32 {
    grundy_core::exact::brute_gamma_with(g, 9, Pruning::None).unwrap().value
}
