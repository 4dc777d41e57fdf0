mod common;

use std::collections::BTreeMap;

use grundy_core::bounds::{BoundsReport, ColorSets};
use grundy_core::exact::brute_gamma_c;
use grundy_core::heuristics::warm_start;
use grundy_core::ipgen::{
    emit_representatives, emit_representatives_loose, emit_standard, solve_external, warm_start_from, write_lp,
    IpModel, ModelKind, SolveStatus, SOLVER_ENV,
};
use grundy_core::{first_fit, Coloring, Graph, Mode, VertexSequence};

use common::{ear_cycle, random_connected, representatives_example};

fn sets(g: &Graph) -> ColorSets {
    ColorSets::build(g, &BoundsReport::compute(g))
}

fn ones(m: &IpModel, names: &[&str]) -> Vec<f64> {
    let map: BTreeMap<String, u8> = names.iter().map(|s| (s.to_string(), 1)).collect();
    m.dense(&map).unwrap()
}

fn anti_up(g: &Graph, u: usize) -> usize {
    g.vertices().filter(|&v| v >= u && !g.has_edge(u, v)).count()
}

#[test]
fn standard_sizes_match_closed_forms() {
    for seed in 0..20 {
        let n = 3 + (seed as usize % 6);
        let g = random_connected(n, 0.4, seed);
        let cs = sets(&g);
        let m = emit_standard(&g, &cs);
        let cap = |v: usize| cs.vertex_max[v];
        let z: usize = g.vertices().map(|v| (1..=cap(v)).map(|k| n - k + 1).sum::<usize>()).sum();
        assert_eq!(m.variables().len(), z + cs.k_max, "seed {seed}");
        let counts = m.family_counts();
        let get = |f: &str| counts.get(f).copied().unwrap_or(0);
        assert_eq!(get("c0a"), g.edges().map(|(u, v)| cap(u).min(cap(v))).sum::<usize>());
        assert_eq!(get("c0b"), n);
        assert_eq!(get("c0c"), cs.k_max);
        let c0d: usize = g
            .vertices()
            .map(|v| {
                (2..=cap(v)).map(|kp| (kp - 1) * (n + 1 - kp.max(2))).sum::<usize>()
            })
            .sum();
        assert_eq!(get("c0d"), c0d);
        assert_eq!(get("c02"), n);
        assert_eq!(get("cbb"), n * (n - 1));
    }
}

#[test]
fn representatives_sizes_match_closed_forms() {
    for seed in 0..20 {
        let n = 3 + (seed as usize % 6);
        let g = random_connected(n, 0.4, 100 + seed);
        let m = emit_representatives(&g, &sets(&g));
        let pairs: usize = g.vertices().map(|u| anti_up(&g, u)).sum();
        assert_eq!(m.variables().len(), pairs * n + n * (n - 1), "seed {seed}");
        let counts = m.family_counts();
        assert_eq!(counts["r02"], n);
        assert_eq!(counts.get("r03").copied().unwrap_or(0), pairs * (n - 1) * (n - 1));
        assert_eq!(counts["rbb"], n * (n - 1));
        assert_eq!(counts["r04"], n * (n - 1) / 2);
        assert_eq!(counts["r05"], n * (n - 1));
        assert_eq!(counts["r09"], 1);
        assert_eq!(counts["rtime"], n);
        let r01: usize = g
            .vertices()
            .map(|u| {
                let members: Vec<usize> = g.vertices().filter(|&v| v >= u && !g.has_edge(u, v)).collect();
                members.iter().enumerate().map(|(i, &v)| members[i + 1..].iter().filter(|&&w| g.has_edge(v, w)).count()).sum::<usize>()
            })
            .sum();
        assert_eq!(counts.get("r01").copied().unwrap_or(0), r01);
    }
}

#[test]
fn warm_starts_are_feasible() {
    for seed in 0..20 {
        let n = 4 + (seed as usize % 6);
        let g = random_connected(n, 0.35, 200 + seed);
        let cs = sets(&g);
        let (_, s, c) = warm_start(&g, Mode::Connected).unwrap();
        for (model, kind) in [
            (emit_standard(&g, &cs), ModelKind::Standard),
            (emit_representatives(&g, &cs), ModelKind::Representatives),
        ] {
            let ws = warm_start_from(&g, &cs, &s, &c, kind).unwrap();
            let x = model.dense(&ws).unwrap();
            assert_eq!(model.violations(&x), Vec::<String>::new(), "seed {seed} {kind}");
            assert_eq!(model.objective_value(&x), c.used_colors() as f64);
        }
    }
}

#[test]
fn optimal_sequences_are_feasible_too() {
    for seed in 0..10 {
        let g = random_connected(7, 0.4, 300 + seed);
        let cs = sets(&g);
        let best = brute_gamma_c(&g, 10).unwrap();
        let c = first_fit(&g, &best.witness);
        for (model, kind) in [
            (emit_standard(&g, &cs), ModelKind::Standard),
            (emit_representatives(&g, &cs), ModelKind::Representatives),
        ] {
            let ws = warm_start_from(&g, &cs, &best.witness, &c, kind).unwrap();
            let x = model.dense(&ws).unwrap();
            assert!(model.violations(&x).is_empty(), "seed {seed} {kind}");
            assert_eq!(model.objective_value(&x), best.value as f64);
        }
    }
}

#[test]
fn ear_cycle_standard_warm_start() {
    let g = ear_cycle();
    // f, b, c, a, e, d
    let s = VertexSequence::new(vec![5, 1, 2, 0, 4, 3], 6).unwrap();
    let c = first_fit(&g, &s);
    assert_eq!(c.to_vec(), vec![3, 2, 1, 2, 1, 1]);
    let ws = warm_start_from(&g, &sets(&g), &s, &c, ModelKind::Standard).unwrap();
    let expected = ["z_6_1_1", "z_2_2_2", "z_3_1_3", "z_1_3_4", "z_5_1_5", "z_4_2_6", "w_1", "w_2", "w_3"];
    let mut got: Vec<&str> = ws.keys().map(String::as_str).collect();
    let mut want = expected.to_vec();
    got.sort_unstable();
    want.sort_unstable();
    assert_eq!(got, want);
}

#[test]
fn single_vertex_warm_start() {
    let g = Graph::empty(1);
    let s = VertexSequence::identity(1);
    let c = first_fit(&g, &s);
    let ws = warm_start_from(&g, &sets(&g), &s, &c, ModelKind::Standard).unwrap();
    assert_eq!(ws.keys().collect::<Vec<_>>(), ["w_1", "z_1_1_1"]);
}

#[test]
fn warm_start_rejects_colors_above_the_cap() {
    let g = Graph::star(3);
    let s = VertexSequence::new(vec![1, 0, 2, 3], 4).unwrap();
    let c = first_fit(&g, &s);
    let mut cs = sets(&g);
    cs.vertex_max[0] = 1;
    let err = warm_start_from(&g, &cs, &s, &c, ModelKind::Standard).unwrap_err();
    assert!(err.to_string().contains("vertex 1"), "{err}");
    let bogus = Coloring::from_colors(&[1, 1, 1, 1]).unwrap();
    assert!(warm_start_from(&g, &sets(&g), &s, &bogus, ModelKind::Standard).is_err());
}

#[test]
fn representatives_example_is_feasible_with_three() {
    let g = representatives_example();
    let cs = sets(&g);
    let names = [
        "Z_1_1_1", "Z_2_2_2", "Z_3_3_3", "Z_1_4_4", "Z_1_5_5", "Z_2_6_6", "Z_2_7_7", "Z_3_8_8", "y_1_2", "y_1_3",
        "y_2_3",
    ];
    for m in [emit_representatives(&g, &cs), emit_representatives_loose(&g, &cs)] {
        let x = ones(&m, &names);
        assert_eq!(m.violations(&x), Vec::<String>::new(), "{}", m.name);
        assert_eq!(m.objective_value(&x), 3.0);
    }
    // The same coloring arises from the sequence 1..8.
    let c = first_fit(&g, &VertexSequence::identity(8));
    assert_eq!(c.to_vec(), vec![1, 2, 3, 1, 1, 2, 2, 3]);
}

#[test]
fn loose_representatives_admit_two_starts() {
    // Path 1-2-3-4 with 1 and 4 both at time 1 gives 3 colors, above Γ_c = 2.
    let g = Graph::path(4);
    let cs = sets(&g);
    assert_eq!(brute_gamma_c(&g, 10).unwrap().value, 2);
    let names = ["Z_1_1_1", "Z_1_4_1", "Z_2_2_2", "Z_3_3_3", "y_1_2", "y_1_3", "y_2_3"];
    let loose = emit_representatives_loose(&g, &cs);
    let x = ones(&loose, &names);
    assert!(loose.violations(&x).is_empty());
    assert_eq!(loose.objective_value(&x), 3.0);
    let strict = emit_representatives(&g, &cs);
    let x = ones(&strict, &names);
    assert!(strict.violations(&x).iter().any(|r| r.starts_with("rtime")));
}

#[test]
fn k2_standard_lp_golden() {
    let g = Graph::complete(2);
    let lp = write_lp(&emit_standard(&g, &sets(&g)));
    assert_eq!(lp, include_str!("data/k2_standard.lp"));
    assert_eq!(lp, write_lp(&emit_standard(&g, &sets(&g))));
}

#[test]
fn lp_names_are_one_based_and_unique() {
    let g = random_connected(6, 0.5, 9);
    let m = emit_representatives(&g, &sets(&g));
    let mut names = m.variables().to_vec();
    names.sort();
    names.dedup();
    assert_eq!(names.len(), m.variables().len());
    assert!(m.variables().iter().all(|v| !v.contains("_0")));
    let lp = write_lp(&m);
    for c in m.constraints() {
        assert!(lp.contains(&format!(" {}:", c.name)));
    }
}

/// Cross-checks both models against the exact oracle when a solver is
/// configured through the environment.
#[test]
fn external_solver_optima_match_the_oracle() {
    if std::env::var(SOLVER_ENV).is_err() {
        eprintln!("{SOLVER_ENV} not set; skipping solver cross-check");
        return;
    }
    let mut graphs = vec![Graph::complete(3), ear_cycle(), Graph::path(4)];
    graphs.extend((0..6).map(|s| random_connected(5 + s as usize % 3, 0.4, 400 + s)));
    for g in graphs {
        let cs = sets(&g);
        let oracle = brute_gamma_c(&g, 10).unwrap().value as f64;
        for model in [emit_standard(&g, &cs), emit_representatives(&g, &cs)] {
            let out = solve_external(&model, None, 60.0).unwrap();
            assert_eq!(out.status, SolveStatus::Optimal, "{}", model.name);
            assert_eq!(out.objective.map(f64::round), Some(oracle), "{} on n = {}", model.name, g.vertex_count());
            let x = model.dense(&out.assignment).unwrap();
            assert!(model.violations(&x).is_empty());
        }
    }
    let p4 = Graph::path(4);
    let out = solve_external(&emit_representatives_loose(&p4, &sets(&p4)), None, 60.0).unwrap();
    assert_eq!(out.objective.map(f64::round), Some(3.0));
}
