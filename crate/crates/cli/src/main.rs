use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::json;

use grundy_core::bench::{generate_group, run_bench, BenchConfig, Manifest};
use grundy_core::bounds::{BoundsReport, ColorSets};
use grundy_core::exact;
use grundy_core::graph::{parse_dimacs, write_dimacs, GraphClass};
use grundy_core::heuristics::{warm_start, Heuristic};
use grundy_core::ipgen::{
    emit_representatives, emit_representatives_loose, emit_standard, solve_external, warm_start_from, write_lp,
    write_mst, ModelKind, SolveStatus, SOLVER_ENV,
};
use grundy_core::localsearch::improve_sequence;
use grundy_core::solve::{prepare, solve, Algorithm, SolveOptions};
use grundy_core::{first_fit, Graph, Mode, VertexSequence};

#[derive(Parser)]
#[command(name = "grundy", version, about = "Connected Grundy coloring toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Connected,
    Plain,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Connected => Mode::Connected,
            ModeArg::Plain => Mode::Plain,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    Rand,
    Geo,
    Bip,
    Cbip,
}

impl From<ClassArg> for GraphClass {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::Rand => GraphClass::Random,
            ClassArg::Geo => GraphClass::Geometric,
            ClassArg::Bip => GraphClass::Bipartite,
            ClassArg::Cbip => GraphClass::ComplementBipartite,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Standard,
    Representatives,
    /// The representatives model without the one-vertex-per-time rows.
    RepresentativesLoose,
}

/// Overrides shared by `solve` and `bench`.
#[derive(clap::Args)]
struct RunArgs {
    /// TOML or JSON file with solve options (bench: a bench config).
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Wall-clock limit in seconds per run.
    #[arg(long)]
    time_limit: Option<f64>,
    /// Generation cap. With `--no-time-limit` the run is deterministic.
    #[arg(long)]
    max_generations: Option<u64>,
    #[arg(long, conflicts_with = "time_limit")]
    no_time_limit: bool,
    /// Stop once this value is reached.
    #[arg(long)]
    target: Option<u32>,
    /// Keep running after the upper bound is met.
    #[arg(long)]
    ignore_bound: bool,
}

impl RunArgs {
    fn apply(&self, o: &mut SolveOptions) {
        if let Some(m) = self.mode {
            o.mode = m.into();
        }
        if self.time_limit.is_some() {
            o.time_limit = self.time_limit;
        }
        if self.no_time_limit {
            o.time_limit = None;
        }
        if self.max_generations.is_some() {
            o.max_generations = self.max_generations;
        }
        if self.target.is_some() {
            o.target_value = self.target;
        }
        if self.ignore_bound {
            o.stop_at_bound = false;
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance group: DIMACS files plus a JSON manifest.
    Gen {
        #[arg(long, value_enum)]
        class: ClassArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        eta: f64,
        #[arg(long, default_value_t = 5)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Run one algorithm and print a JSON report.
    Solve {
        instance: PathBuf,
        /// brkga-b, brkga-rls, heuristic:<name> or exact.
        #[arg(long, short, default_value = "brkga-rls")]
        algorithm: String,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        run: RunArgs,
        /// Also write the event log as JSON lines.
        #[arg(long)]
        events: Option<PathBuf>,
    },
    /// Upper bounds on the Grundy number.
    Bounds { instance: PathBuf },
    /// Exact value by exhaustive search (small graphs only).
    Exact {
        instance: PathBuf,
        #[arg(long, value_enum, default_value = "connected")]
        mode: ModeArg,
        /// Vertex budget.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Run a greedy heuristic.
    Heuristic {
        instance: PathBuf,
        #[arg(long, default_value = "dsatur")]
        name: String,
        #[arg(long, value_enum, default_value = "connected")]
        mode: ModeArg,
    },
    /// Local search from a given sequence, or from the best heuristic.
    Ls {
        instance: PathBuf,
        /// Comma-separated 1-based vertex order.
        #[arg(long)]
        sequence: Option<String>,
        #[arg(long, value_enum, default_value = "connected")]
        mode: ModeArg,
    },
    /// Write an IP model (`.lp`) and its warm start (`.mst`).
    ExportIp {
        instance: PathBuf,
        #[arg(long, value_enum, default_value = "standard")]
        model: ModelArg,
        /// Output path prefix; `.lp` and `.mst` are appended.
        #[arg(long)]
        out: PathBuf,
        /// Run the solver from GRUNDY_IP_SOLVER and print its outcome.
        #[arg(long)]
        solve: bool,
        #[arg(long, default_value_t = 300.0)]
        solver_time_limit: f64,
    },
    /// Run algorithms over instance groups and write CSV tables.
    Bench {
        #[arg(required = true)]
        manifests: Vec<PathBuf>,
        /// Comma-separated algorithm list; the first is the diff base.
        #[arg(long, value_delimiter = ',')]
        algorithms: Option<Vec<String>>,
        #[arg(long)]
        runs: Option<usize>,
        /// Comma-separated seeds, one per run.
        #[arg(long, value_delimiter = ',')]
        seeds: Option<Vec<u64>>,
        #[command(flatten)]
        run: RunArgs,
        /// Directory for runs.csv, instances.csv and summary.csv.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_dimacs(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_config<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let parsed = match path.extension().and_then(|e| e.to_str()) {
        Some("toml") => toml::from_str(&text).map_err(anyhow::Error::from),
        Some("json") => serde_json::from_str(&text).map_err(anyhow::Error::from),
        _ => bail!("config {} must end in .toml or .json", path.display()),
    };
    parsed.with_context(|| format!("parsing {}", path.display()))
}

/// Writes to stdout; a closed pipe (`| head`) ends the output quietly.
fn emit(text: &str) -> Result<()> {
    match io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    emit(&(serde_json::to_string_pretty(value)? + "\n"))
}

fn parse_sequence(text: &str, n: usize) -> Result<VertexSequence> {
    let order = text
        .split(',')
        .map(|s| s.trim().parse::<usize>().with_context(|| format!("bad vertex `{s}`")))
        .collect::<Result<Vec<_>>>()?;
    Ok(VertexSequence::from_one_based(&order, n)?)
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Gen { class, n, eta, count, seed, out } => {
            let (manifest, graphs) = generate_group(class.into(), n, eta, count, seed)?;
            fs::create_dir_all(&out)?;
            for (entry, g) in manifest.instances.iter().zip(&graphs) {
                let header = format!("{} seed {}", entry.name, entry.seed.unwrap_or(seed));
                fs::write(out.join(&entry.file), write_dimacs(g, &[header.as_str()]))?;
            }
            let path = out.join(format!("{}.json", manifest.group));
            fs::write(&path, serde_json::to_string_pretty(&manifest)? + "\n")?;
            emit(&format!("{}\n", path.display()))?;
        }
        Command::Solve { instance, algorithm, seed, run, events } => {
            let g = read_graph(&instance)?;
            let algorithm: Algorithm = algorithm.parse()?;
            let mut options = match &run.config {
                Some(p) => load_config(p)?,
                None => SolveOptions::default(),
            };
            run.apply(&mut options);
            if let Some(s) = seed {
                options.seed = s;
            }
            let report = solve(&g, algorithm, &options)?;
            if let (Some(path), Some(stats)) = (events, &report.run) {
                fs::write(path, stats.events_jsonl())?;
            }
            print_json(&report)?;
        }
        Command::Bounds { instance } => {
            let g = read_graph(&instance)?;
            print_json(&BoundsReport::compute(&g))?;
        }
        Command::Exact { instance, mode, limit } => {
            let (g, added) = prepare(&read_graph(&instance)?, mode.into());
            let r = match Mode::from(mode) {
                Mode::Connected => exact::brute_gamma_c(&g, limit.unwrap_or(exact::GAMMA_C_LIMIT))?,
                Mode::Plain => exact::brute_gamma(&g, limit.unwrap_or(exact::GAMMA_LIMIT))?,
            };
            let coloring = first_fit(&g, &r.witness);
            print_json(&json!({
                "mode": Mode::from(mode),
                "value": r.value,
                "sequence": r.witness,
                "coloring": coloring,
                "added_edges": one_based(&added),
            }))?;
        }
        Command::Heuristic { instance, name, mode } => {
            let (g, added) = prepare(&read_graph(&instance)?, mode.into());
            let h: Heuristic = name.parse()?;
            let (s, c) = h.run(&g, mode.into())?;
            print_json(&json!({
                "heuristic": h.name(),
                "mode": Mode::from(mode),
                "value": c.used_colors(),
                "sequence": s,
                "coloring": c,
                "added_edges": one_based(&added),
            }))?;
        }
        Command::Ls { instance, sequence, mode } => {
            let mode = Mode::from(mode);
            let (g, added) = prepare(&read_graph(&instance)?, mode);
            let start = match sequence {
                Some(text) => parse_sequence(&text, g.vertex_count())?,
                None => warm_start(&g, mode)?.1,
            };
            if mode == Mode::Connected && !grundy_core::coloring::is_connected_sequence(&g, &start) {
                bail!("the starting sequence is not connected");
            }
            let before = first_fit(&g, &start).used_colors();
            let r = improve_sequence(&g, start, mode, None);
            print_json(&json!({
                "mode": mode,
                "initial_value": before,
                "value": r.value,
                "improvements": r.improvements,
                "sequence": r.sequence,
                "coloring": r.coloring,
                "added_edges": one_based(&added),
            }))?;
        }
        Command::ExportIp { instance, model, out, solve, solver_time_limit } => {
            let (g, added) = prepare(&read_graph(&instance)?, Mode::Connected);
            let cs = ColorSets::build(&g, &BoundsReport::compute(&g));
            let (mut m, kind) = match model {
                ModelArg::Standard => (emit_standard(&g, &cs), ModelKind::Standard),
                ModelArg::Representatives => (emit_representatives(&g, &cs), ModelKind::Representatives),
                ModelArg::RepresentativesLoose => {
                    (emit_representatives_loose(&g, &cs), ModelKind::Representatives)
                }
            };
            let (h, s, c) = warm_start(&g, Mode::Connected)?;
            m.set_warm_start(warm_start_from(&g, &cs, &s, &c, kind)?)?;
            if let Some(dir) = out.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            let lp = out.with_extension("lp");
            let mst = out.with_extension("mst");
            fs::write(&lp, write_lp(&m))?;
            fs::write(&mst, write_mst(&m))?;
            let mut summary = json!({
                "model": m.name,
                "variables": m.variables().len(),
                "constraints": m.constraints().len(),
                "families": m.family_counts(),
                "warm_start": { "heuristic": h.name(), "value": c.used_colors() },
                "lp": lp,
                "mst": mst,
                "added_edges": one_based(&added),
            });
            if solve {
                let outcome = solve_external(&m, None, solver_time_limit)?;
                if outcome.status == SolveStatus::Unavailable {
                    eprintln!("no solver configured; set {SOLVER_ENV} to a command template");
                }
                summary["solver"] = json!({ "status": format!("{:?}", outcome.status), "objective": outcome.objective });
            }
            print_json(&summary)?;
        }
        Command::Bench { manifests, algorithms, runs, seeds, run, out } => {
            let mut config: BenchConfig = match &run.config {
                Some(p) => load_config(p)?,
                None => BenchConfig::default(),
            };
            run.apply(&mut config.options);
            if let Some(a) = algorithms {
                config.algorithms = a.iter().map(|s| s.parse()).collect::<Result<_, _>>()?;
            }
            if let Some(r) = runs {
                config.runs = r;
            }
            if seeds.is_some() {
                config.seeds = seeds;
            }
            if config.runs == 0 || config.algorithms.is_empty() {
                bail!("bench needs at least one run and one algorithm");
            }
            let loaded = manifests
                .into_iter()
                .map(|p| Manifest::load(&p).with_context(|| format!("loading {}", p.display())).map(|m| (p, m)))
                .collect::<Result<Vec<_>>>()?;
            let report = run_bench(&loaded, &config)?;
            for missing in &report.missing {
                eprintln!("missing instance: {missing}");
            }
            fs::create_dir_all(&out)?;
            fs::write(out.join("runs.csv"), report.runs_csv())?;
            fs::write(out.join("instances.csv"), report.instances_csv())?;
            fs::write(out.join("summary.csv"), report.summary_csv())?;
            emit(&report.summary_csv())?;
        }
    }
    Ok(())
}

fn one_based(edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    edges.iter().map(|&(u, v)| (u + 1, v + 1)).collect()
}
