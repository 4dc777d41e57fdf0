use std::collections::HashMap;

use super::{IpModel, ModelKind, Sense};
use crate::bounds::ColorSets;
use crate::Graph;

/// Builds the standard model over the pruned sets `K_v`, `K_vt = {k ∈ K_v :
/// k <= t}` and `V_k`, with `T = 1..=n`.
///
/// Rows, by family:
/// - `c0a`: for each edge `uv` and common color `k`, both endpoints together
///   hold `k` at most `w_k` times;
/// - `c0b`: each vertex is colored once;
/// - `c0c`: `w_k` needs some vertex with color `k`;
/// - `c0d`: a vertex holding `k'` by time `t` has, for each `k < k'`, a
///   neighbor holding `k` by time `t - 1` (rows with no left-hand side are
///   omitted);
/// - `c02`: one vertex per time;
/// - `cbb`: a vertex colored at `t >= 2` has a neighbor colored earlier.
pub fn emit_standard(g: &Graph, cs: &ColorSets) -> IpModel {
    let n = g.vertex_count();
    let mut m = IpModel::new(format!("standard_n{n}"), ModelKind::Standard);
    let mut z = HashMap::new();
    for v in g.vertices() {
        for k in 1..=cs.vertex_max[v] {
            for t in k..=n {
                z.insert((v, k, t), m.add_binary(format!("z_{}_{k}_{t}", v + 1)));
            }
        }
    }
    let w: Vec<usize> = (1..=cs.k_max).map(|k| m.add_binary(format!("w_{k}"))).collect();
    m.set_objective(w.iter().map(|&j| (j, 1)).collect());

    // z_v,k,t for t in the given range, skipping absent combinations.
    let span = |v: usize, k: usize, ts: std::ops::RangeInclusive<usize>| {
        ts.filter_map(|t| z.get(&(v, k, t)).copied()).collect::<Vec<_>>()
    };
    // z_v,k,t for every k in K_vt and t in the range.
    let colored_during = |v: usize, ts: std::ops::RangeInclusive<usize>| {
        ts.flat_map(|t| cs.colors_at(v, t).map(move |k| (k, t)))
            .map(|(k, t)| z[&(v, k, t)])
            .collect::<Vec<_>>()
    };

    for (u, v) in g.edges() {
        for k in 1..=cs.vertex_max[u].min(cs.vertex_max[v]) {
            let mut terms: Vec<(usize, i64)> = span(u, k, k..=n).into_iter().map(|j| (j, 1)).collect();
            terms.extend(span(v, k, k..=n).into_iter().map(|j| (j, 1)));
            terms.push((w[k - 1], -1));
            m.add_constraint("c0a", format!("c0a_{}_{}_{k}", u + 1, v + 1), terms, Sense::Le, 0);
        }
    }
    for v in g.vertices() {
        let terms = colored_during(v, 1..=n).into_iter().map(|j| (j, 1)).collect();
        m.add_constraint("c0b", format!("c0b_{}", v + 1), terms, Sense::Eq, 1);
    }
    for k in 1..=cs.k_max {
        let mut terms = vec![(w[k - 1], 1)];
        for &v in cs.vertices_with(k) {
            terms.extend(span(v, k, k..=n).into_iter().map(|j| (j, -1)));
        }
        m.add_constraint("c0c", format!("c0c_{k}"), terms, Sense::Le, 0);
    }
    for v in g.vertices() {
        for kp in 2..=cs.vertex_max[v] {
            for k in 1..kp {
                for t in kp.max(2)..=n {
                    let mut terms: Vec<(usize, i64)> = span(v, kp, kp..=t).into_iter().map(|j| (j, 1)).collect();
                    for &u in g.neighbors(v) {
                        if cs.has_color(u, k) {
                            terms.extend(span(u, k, k..=t - 1).into_iter().map(|j| (j, -1)));
                        }
                    }
                    m.add_constraint("c0d", format!("c0d_{}_{k}_{kp}_{t}", v + 1), terms, Sense::Le, 0);
                }
            }
        }
    }
    for t in 1..=n {
        let terms = g
            .vertices()
            .flat_map(|v| cs.colors_at(v, t).map(move |k| (v, k)))
            .map(|(v, k)| (z[&(v, k, t)], 1))
            .collect();
        m.add_constraint("c02", format!("c02_{t}"), terms, Sense::Eq, 1);
    }
    for v in g.vertices() {
        for t in 2..=n {
            let mut terms: Vec<(usize, i64)> = colored_during(v, t..=t).into_iter().map(|j| (j, 1)).collect();
            for &u in g.neighbors(v) {
                terms.extend(colored_during(u, 1..=t - 1).into_iter().map(|j| (j, -1)));
            }
            m.add_constraint("cbb", format!("cbb_{}_{t}", v + 1), terms, Sense::Le, 0);
        }
    }
    m
}
