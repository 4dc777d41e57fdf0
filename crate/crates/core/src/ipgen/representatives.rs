use std::collections::HashMap;

use super::{IpModel, ModelKind, Sense};
use crate::bounds::ColorSets;
use crate::Graph;

/// Builds the representatives model, including one row per time that
/// admits exactly one colored vertex (family `rtime`).
///
/// Without `rtime` nothing stops several vertices from sharing time 1, and
/// the optimum can exceed the connected Grundy number: on the path 1-2-3-4,
/// vertices 1 and 4 both start at time 1 and the model reaches 3 colors.
/// [`emit_representatives_loose`] omits the family.
pub fn emit_representatives(g: &Graph, cs: &ColorSets) -> IpModel {
    build(g, cs, true)
}

/// The representatives model without the one-vertex-per-time rows.
pub fn emit_representatives_loose(g: &Graph, cs: &ColorSets) -> IpModel {
    build(g, cs, false)
}

/// `N̄[u]`: the vertices not adjacent to `u`, `u` included.
fn anti(g: &Graph, u: usize) -> impl Iterator<Item = usize> + '_ {
    g.vertices().filter(move |&v| !g.has_edge(u, v))
}

/// Rows, by family (`Z_u,v = Σ_t Z_u,v,t`):
/// - `r01`: a representative's class holds no edge;
/// - `r01b`: only representatives represent others (members with no
///   neighbor in `N̄(u)`, which `r01` does not reach);
/// - `r02`: each vertex is represented once;
/// - `r03`: if `p` precedes `u` and `u` represents `v` by time `t`, then `p`
///   represents a neighbor of `v` by time `t - 1`;
/// - `rbb`: a vertex colored at `t >= 2` has a neighbor colored earlier;
/// - `r04`, `r05`: two vertices are ordered iff both are representatives;
/// - `r09`: at most `max K` representatives.
fn build(g: &Graph, cs: &ColorSets, one_per_time: bool) -> IpModel {
    let n = g.vertex_count();
    let name = if one_per_time { "representatives" } else { "representatives_loose" };
    let mut m = IpModel::new(format!("{name}_n{n}"), ModelKind::Representatives);
    let mut z = HashMap::new();
    for u in g.vertices() {
        for v in anti(g, u).filter(|&v| v >= u) {
            for t in 1..=n {
                z.insert((u, v, t), m.add_binary(format!("Z_{}_{}_{t}", u + 1, v + 1)));
            }
        }
    }
    let mut y = HashMap::new();
    for u in g.vertices() {
        for v in g.vertices().filter(|&v| v != u) {
            y.insert((u, v), m.add_binary(format!("y_{}_{}", u + 1, v + 1)));
        }
    }
    let zs = |u: usize, v: usize, ts: std::ops::RangeInclusive<usize>, coef: i64| {
        ts.map(|t| (z[&(u, v, t)], coef)).collect::<Vec<_>>()
    };
    // Σ over representatives u of v of Z_u,v,t for t in the range.
    let colored = |v: usize, ts: std::ops::RangeInclusive<usize>, coef: i64| {
        anti(g, v)
            .filter(|&u| u <= v)
            .flat_map(|u| zs(u, v, ts.clone(), coef))
            .collect::<Vec<_>>()
    };

    m.set_objective(g.vertices().flat_map(|v| zs(v, v, 1..=n, 1)).collect());

    for u in g.vertices() {
        let members: Vec<usize> = anti(g, u).filter(|&v| v >= u).collect();
        for (i, &v) in members.iter().enumerate() {
            for &w in &members[i + 1..] {
                if g.has_edge(v, w) {
                    let mut terms = zs(u, v, 1..=n, 1);
                    terms.extend(zs(u, w, 1..=n, 1));
                    terms.extend(zs(u, u, 1..=n, -1));
                    m.add_constraint("r01", format!("r01_{}_{}_{}", u + 1, v + 1, w + 1), terms, Sense::Le, 0);
                }
            }
        }
        for &v in members.iter().filter(|&&v| v > u) {
            if g.neighbors(v).iter().all(|&w| g.has_edge(u, w) || w == u) {
                let mut terms = zs(u, v, 1..=n, 1);
                terms.extend(zs(u, u, 1..=n, -1));
                m.add_constraint("r01b", format!("r01b_{}_{}", u + 1, v + 1), terms, Sense::Le, 0);
            }
        }
    }
    for u in g.vertices() {
        m.add_constraint("r02", format!("r02_{}", u + 1), colored(u, 1..=n, 1), Sense::Eq, 1);
    }
    for u in g.vertices() {
        for p in g.vertices().filter(|&p| p != u) {
            for v in anti(g, u).filter(|&v| v >= u) {
                let support: Vec<usize> =
                    g.neighbors(v).iter().copied().filter(|&w| w >= p && !g.has_edge(p, w)).collect();
                for t in 2..=n {
                    let mut terms = zs(u, v, 1..=t, 1);
                    for &w in &support {
                        terms.extend(zs(p, w, 1..=t - 1, -1));
                    }
                    terms.push((y[&(p, u)], 1));
                    m.add_constraint(
                        "r03",
                        format!("r03_{}_{}_{}_{t}", u + 1, p + 1, v + 1),
                        terms,
                        Sense::Le,
                        1,
                    );
                }
            }
        }
    }
    for v in g.vertices() {
        for t in 2..=n {
            let mut terms = colored(v, t..=t, 1);
            for &w in g.neighbors(v) {
                terms.extend(colored(w, 1..=t - 1, -1));
            }
            m.add_constraint("rbb", format!("rbb_{}_{t}", v + 1), terms, Sense::Le, 0);
        }
    }
    for u in g.vertices() {
        for v in u + 1..n {
            let mut terms = vec![(y[&(v, u)], 1), (y[&(u, v)], 1)];
            terms.extend(zs(u, u, 1..=n, -1));
            terms.extend(zs(v, v, 1..=n, -1));
            m.add_constraint("r04", format!("r04_{}_{}", u + 1, v + 1), terms, Sense::Ge, -1);
        }
    }
    for u in g.vertices() {
        for v in g.vertices().filter(|&v| v != u) {
            let mut terms = vec![(y[&(u, v)], 1), (y[&(v, u)], 1)];
            terms.extend(zs(u, u, 1..=n, -1));
            m.add_constraint("r05", format!("r05_{}_{}", u + 1, v + 1), terms, Sense::Le, 0);
        }
    }
    let reps = g.vertices().flat_map(|u| zs(u, u, 1..=n, 1)).collect();
    m.add_constraint("r09", "r09".into(), reps, Sense::Le, cs.k_max as i64);
    if one_per_time {
        for t in 1..=n {
            let terms = g.vertices().flat_map(|v| colored(v, t..=t, 1)).collect();
            m.add_constraint("rtime", format!("rtime_{t}"), terms, Sense::Eq, 1);
        }
    }
    m
}
