//! Instance groups, manifests and batch experiments.
//!
//! A group `<class>_<n>_<eta>` holds several instances drawn from one seed.
//! Its manifest lists the DIMACS files relative to the manifest itself.
//! A bench run executes every algorithm `runs` times on every instance and
//! aggregates mean, max and mean time-to-best per instance, then averages
//! those per group. With two or more algorithms the first is the base and
//! the second the challenger for the `diff` columns, which are computed from
//! unrounded means.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::graph::{generate, instance_seed, parse_dimacs, GraphClass, InstanceSpec};
use crate::metrics::{mean, metric_diff};
use crate::solve::{solve, Algorithm, SolveOptions};
use crate::{Graph, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub group: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<GraphClass>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub instances: Vec<ManifestEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub name: String,
    /// Path relative to the manifest's directory.
    pub file: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Manifest {
    pub fn load(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
    }
}

pub fn group_name(class: GraphClass, n: usize, eta: f64) -> String {
    format!("{}_{n}_{eta}", class.short_name())
}

/// Draws `count` instances; instance `i` (0-based) uses
/// [`instance_seed`]`(seed, i)`. Files are named `<group>_<i+1>.col`.
pub fn generate_group(class: GraphClass, n: usize, eta: f64, count: usize, seed: u64) -> Result<(Manifest, Vec<Graph>)> {
    let group = group_name(class, n, eta);
    let mut entries = Vec::with_capacity(count);
    let mut graphs = Vec::with_capacity(count);
    for i in 0..count {
        let spec = InstanceSpec { class, n, eta, seed: instance_seed(seed, i as u64) };
        graphs.push(generate(&spec)?);
        let name = format!("{group}_{}", i + 1);
        entries.push(ManifestEntry { file: format!("{name}.col"), name, seed: Some(spec.seed) });
    }
    let manifest =
        Manifest { group, class: Some(class), n: Some(n), eta: Some(eta), seed: Some(seed), instances: entries };
    Ok((manifest, graphs))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BenchConfig {
    pub algorithms: Vec<Algorithm>,
    pub runs: usize,
    /// Explicit per-run seeds; otherwise run `r` uses `base_seed + r`.
    pub seeds: Option<Vec<u64>>,
    pub base_seed: u64,
    pub options: SolveOptions,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            algorithms: vec![Algorithm::BrkgaB, Algorithm::BrkgaRls],
            runs: 1,
            seeds: None,
            base_seed: 0,
            options: SolveOptions::default(),
        }
    }
}

impl BenchConfig {
    pub fn seed(&self, run: usize) -> u64 {
        match &self.seeds {
            Some(s) => s[run % s.len()],
            None => self.base_seed + run as u64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunRecord {
    pub group: String,
    pub instance: String,
    pub algorithm: Algorithm,
    pub seed: u64,
    pub value: u32,
    pub ttb: f64,
    pub elapsed: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cell {
    pub group: String,
    pub instance: String,
    pub algorithm: Algorithm,
    pub runs: usize,
    pub mean: f64,
    pub max: u32,
    pub ttb: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Stats {
    pub mean: f64,
    pub max: f64,
    pub ttb: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupRow {
    pub group: String,
    pub instances: usize,
    /// Averages over the group's instances, one entry per algorithm.
    pub stats: Vec<Stats>,
    pub diff_m: Option<f64>,
    pub diff_x: Option<f64>,
    /// Instances where the challenger's mean is at least the base's.
    pub ge_mean: Option<usize>,
    pub ge_max: Option<usize>,
    pub gt_max: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub algorithms: Vec<Algorithm>,
    pub runs: Vec<RunRecord>,
    pub cells: Vec<Cell>,
    pub groups: Vec<GroupRow>,
    /// Instance files that could not be read, with the reason.
    pub missing: Vec<String>,
}

/// Runs the batch. Unreadable instance files are listed in
/// [`BenchReport::missing`] and skipped; solver errors abort.
pub fn run_bench(manifests: &[(PathBuf, Manifest)], config: &BenchConfig) -> Result<BenchReport> {
    let mut report = BenchReport {
        algorithms: config.algorithms.clone(),
        runs: Vec::new(),
        cells: Vec::new(),
        groups: Vec::new(),
        missing: Vec::new(),
    };
    for (path, manifest) in manifests {
        let dir = path.parent().unwrap_or(Path::new("."));
        let mut group_cells: Vec<Vec<Cell>> = Vec::new();
        for entry in &manifest.instances {
            let file = dir.join(&entry.file);
            let g = match fs::read_to_string(&file).map_err(crate::Error::from).and_then(|s| parse_dimacs(&s)) {
                Ok(g) => g,
                Err(e) => {
                    report.missing.push(format!("{}: {e}", file.display()));
                    continue;
                }
            };
            let mut cells = Vec::with_capacity(config.algorithms.len());
            for &alg in &config.algorithms {
                let mut values = Vec::with_capacity(config.runs);
                let mut ttbs = Vec::with_capacity(config.runs);
                for r in 0..config.runs {
                    let seed = config.seed(r);
                    let opts = SolveOptions { seed, ..config.options.clone() };
                    let rep = solve(&g, alg, &opts)?;
                    let ttb = rep.run.as_ref().map_or(rep.elapsed, |s| s.time_to_best);
                    values.push(rep.value);
                    ttbs.push(ttb);
                    report.runs.push(RunRecord {
                        group: manifest.group.clone(),
                        instance: entry.name.clone(),
                        algorithm: alg,
                        seed,
                        value: rep.value,
                        ttb,
                        elapsed: rep.elapsed,
                    });
                }
                let fvalues: Vec<f64> = values.iter().map(|&v| v as f64).collect();
                cells.push(Cell {
                    group: manifest.group.clone(),
                    instance: entry.name.clone(),
                    algorithm: alg,
                    runs: config.runs,
                    mean: mean(&fvalues).unwrap_or(0.0),
                    max: values.iter().copied().max().unwrap_or(0),
                    ttb: mean(&ttbs).unwrap_or(0.0),
                });
            }
            report.cells.extend(cells.iter().cloned());
            group_cells.push(cells);
        }
        if !group_cells.is_empty() {
            report.groups.push(group_row(&manifest.group, &group_cells, config.algorithms.len()));
        }
    }
    Ok(report)
}

fn group_row(group: &str, cells: &[Vec<Cell>], algorithms: usize) -> GroupRow {
    let avg = |f: &dyn Fn(&Cell) -> f64, a: usize| {
        mean(&cells.iter().map(|c| f(&c[a])).collect::<Vec<_>>()).unwrap_or(0.0)
    };
    let stats: Vec<Stats> = (0..algorithms)
        .map(|a| Stats { mean: avg(&|c| c.mean, a), max: avg(&|c| c.max as f64, a), ttb: avg(&|c| c.ttb, a) })
        .collect();
    let pair = algorithms >= 2;
    let count = |f: &dyn Fn(&[Cell]) -> bool| pair.then(|| cells.iter().filter(|c| f(c)).count());
    GroupRow {
        group: group.to_string(),
        instances: cells.len(),
        diff_m: pair.then(|| metric_diff(stats[1].mean, stats[0].mean).ok()).flatten(),
        diff_x: pair.then(|| metric_diff(stats[1].max, stats[0].max).ok()).flatten(),
        ge_mean: count(&|c| c[1].mean >= c[0].mean),
        ge_max: count(&|c| c[1].max >= c[0].max),
        gt_max: count(&|c| c[1].max > c[0].max),
        stats,
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn to_csv(header: Vec<String>, rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

impl BenchReport {
    /// One row per run.
    pub fn runs_csv(&self) -> String {
        let header = ["group", "instance", "algorithm", "seed", "value", "ttb", "elapsed"];
        let rows = self
            .runs
            .iter()
            .map(|r| {
                vec![
                    r.group.clone(),
                    r.instance.clone(),
                    r.algorithm.to_string(),
                    r.seed.to_string(),
                    r.value.to_string(),
                    r.ttb.to_string(),
                    r.elapsed.to_string(),
                ]
            })
            .collect();
        to_csv(header.map(String::from).to_vec(), rows)
    }

    /// One row per instance and algorithm.
    pub fn instances_csv(&self) -> String {
        let header = ["group", "instance", "algorithm", "runs", "mean", "max", "ttb"];
        let rows = self
            .cells
            .iter()
            .map(|c| {
                vec![
                    c.group.clone(),
                    c.instance.clone(),
                    c.algorithm.to_string(),
                    c.runs.to_string(),
                    c.mean.to_string(),
                    c.max.to_string(),
                    c.ttb.to_string(),
                ]
            })
            .collect();
        to_csv(header.map(String::from).to_vec(), rows)
    }

    /// One row per group: mean, max and ttb per algorithm, then the
    /// comparison columns when there are two or more algorithms.
    pub fn summary_csv(&self) -> String {
        let mut header = vec!["group".to_string(), "instances".to_string()];
        for a in &self.algorithms {
            header.extend(["mean", "max", "ttb"].map(|s| format!("{a}_{s}")));
        }
        if self.algorithms.len() >= 2 {
            header.extend(["diff_m", "ge_mean", "diff_x", "ge_max", "gt_max"].map(String::from));
        }
        let rows = self
            .groups
            .iter()
            .map(|g| {
                let mut row = vec![g.group.clone(), g.instances.to_string()];
                for s in &g.stats {
                    row.extend([s.mean.to_string(), s.max.to_string(), s.ttb.to_string()]);
                }
                if self.algorithms.len() >= 2 {
                    row.extend([opt(g.diff_m), opt(g.ge_mean), opt(g.diff_x), opt(g.ge_max), opt(g.gt_max)]);
                }
                row
            })
            .collect();
        to_csv(header, rows)
    }
}
