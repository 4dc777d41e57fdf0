//! Upper bounds on the Grundy number and the color sets derived from them.
//!
//! Every bound here holds for `Γ(G)` and therefore also for `Γ_c(G)`.

use serde::Serialize;

use crate::Graph;

/// Default vertex limit for the exact stair-factor computation.
pub const STAIR_FACTOR_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub delta_plus_one: usize,
    pub delta2_plus_one: usize,
    pub psi_global: usize,
    /// Per-vertex cap on the highest color the vertex can receive.
    pub psi_cap: Vec<usize>,
    /// Absent when the graph is above the exact-computation limit.
    pub stair_factor: Option<usize>,
    pub best: usize,
}

impl BoundsReport {
    pub fn compute(g: &Graph) -> Self {
        Self::with_stair_limit(g, STAIR_FACTOR_LIMIT)
    }

    pub fn with_stair_limit(g: &Graph, stair_limit: usize) -> Self {
        let delta2_plus_one = delta2_plus_one(g);
        let (psi_global, psi_cap) = psi_bound(g);
        let stair_factor = stair_factor(g, stair_limit);
        let best = [Some(delta2_plus_one), Some(psi_global), stair_factor]
            .into_iter()
            .flatten()
            .min()
            .expect("at least two bounds are always present");
        Self { delta_plus_one: g.max_degree() + 1, delta2_plus_one, psi_global, psi_cap, stair_factor, best }
    }

    /// Highest color vertex `v` may take: `min(best, ψ cap of v)`.
    pub fn vertex_cap(&self, v: usize) -> usize {
        self.best.min(self.psi_cap[v])
    }
}

/// `1 + max_u max { d(v) : v ∈ N(u), d(v) <= d(u) }`; 1 for edgeless graphs.
pub fn delta2_plus_one(g: &Graph) -> usize {
    let delta2 = g
        .vertices()
        .flat_map(|u| {
            let du = g.degree(u);
            g.neighbors(u).iter().map(|&v| g.degree(v)).filter(move |&dv| dv <= du)
        })
        .max()
        .unwrap_or(0);
    delta2 + 1
}

/// Per-vertex color caps by a monotone fixpoint, and their maximum `Ψ(G)`.
///
/// Caps start at `d(v) + 1`. A vertex can take color `c` only if it has
/// `c - 1` distinct neighbors able to take colors `c-1, c-2, ..., 1`; with the
/// neighbor caps sorted descending as `a_1 >= a_2 >= ...` this holds exactly
/// when `a_i >= c - i` for `i = 1..c-1`. Each pass lowers every cap to the
/// largest `c` passing that test until nothing changes.
pub fn psi_bound(g: &Graph) -> (usize, Vec<usize>) {
    let mut cap: Vec<usize> = g.vertices().map(|v| g.degree(v) + 1).collect();
    let mut nbr_caps = Vec::new();
    loop {
        let mut changed = false;
        let snapshot = cap.clone();
        for v in g.vertices() {
            nbr_caps.clear();
            nbr_caps.extend(g.neighbors(v).iter().map(|&u| snapshot[u]));
            nbr_caps.sort_unstable_by(|a, b| b.cmp(a));
            let feasible = |c: usize| (1..c).all(|i| nbr_caps.get(i - 1).is_some_and(|&a| a + i >= c));
            let mut c = cap[v];
            while c > 1 && !feasible(c) {
                c -= 1;
            }
            if c != cap[v] {
                cap[v] = c;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    (cap.iter().copied().max().unwrap_or(0), cap)
}

/// Stair factor `ζ(G)`: the longest sequence `(g_1, ..., g_r)` of distinct
/// vertices where `g_i` keeps degree `>= i - 1` once `g_{i+1}, ..., g_r` are
/// deleted. Exact, exponential in `n`; `None` above `limit` vertices.
///
/// With `Z(H)` the answer on the induced subgraph `H`,
/// `Z(H) = max_v min(d_H(v) + 1, Z(H - v) + 1)`: `v` is the last vertex of the
/// sequence, and a feasible sequence stays feasible when its first element
/// is dropped, so only the best length of `H - v` matters.
pub fn stair_factor(g: &Graph, limit: usize) -> Option<usize> {
    let n = g.vertex_count();
    if n > limit || n >= usize::BITS as usize {
        return None;
    }
    if n == 0 {
        return Some(0);
    }
    let masks: Vec<u64> = g.vertices().map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u)).collect();
    let mut memo = vec![u8::MAX; 1usize << n];
    memo[0] = 0;
    let full = (1u64 << n) - 1;
    Some(stair_rec(full, &masks, &mut memo) as usize)
}

fn stair_rec(set: u64, masks: &[u64], memo: &mut [u8]) -> u8 {
    if memo[set as usize] != u8::MAX {
        return memo[set as usize];
    }
    let size = set.count_ones() as u8;
    // Order candidates by residual degree so the optimum is usually met early.
    let mut cands: Vec<(u8, usize)> = (0..masks.len())
        .filter(|&v| set >> v & 1 == 1)
        .map(|v| ((masks[v] & set).count_ones() as u8, v))
        .collect();
    cands.sort_unstable_by(|a, b| b.cmp(a));
    let mut best = 1;
    for (deg, v) in cands {
        if deg < best || best == size {
            break;
        }
        let rest = stair_rec(set & !(1 << v), masks, memo);
        best = best.max((deg + 1).min(rest + 1));
    }
    memo[set as usize] = best;
    best
}

/// Index sets of the integer programs, all colors and times 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColorSets {
    /// `K = 1..=k_max`.
    pub k_max: usize,
    /// `K_v = 1..=vertex_max[v]`.
    pub vertex_max: Vec<usize>,
    /// `V_k`: vertices whose set `K_v` contains `k`, indexed by `k - 1`.
    pub by_color: Vec<Vec<usize>>,
    /// `T = 1..=horizon`.
    pub horizon: usize,
}

impl ColorSets {
    pub fn build(g: &Graph, report: &BoundsReport) -> Self {
        let vertex_max: Vec<usize> = g.vertices().map(|v| report.vertex_cap(v)).collect();
        let k_max = report.best;
        let by_color =
            (1..=k_max).map(|k| g.vertices().filter(|&v| vertex_max[v] >= k).collect()).collect();
        Self { k_max, vertex_max, by_color, horizon: g.vertex_count() }
    }

    pub fn has_color(&self, v: usize, k: usize) -> bool {
        k >= 1 && k <= self.vertex_max[v]
    }

    /// `K_vt = { k ∈ K_v : k <= t }`.
    pub fn colors_at(&self, v: usize, t: usize) -> std::ops::RangeInclusive<usize> {
        1..=self.vertex_max[v].min(t)
    }

    pub fn vertices_with(&self, k: usize) -> &[usize] {
        &self.by_color[k - 1]
    }
}
