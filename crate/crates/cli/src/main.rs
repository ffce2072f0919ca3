//! `cutquery`: generate instances, run the cut-query algorithms with fixed
//! seeds, check them against exact solvers and record query counts as CSV.

use std::fs::{File, OpenOptions};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use cutquery::discovery::{self, Learned};
use cutquery::generate::{self, Kind};
use cutquery::global::{self, GlobalConfig};
use cutquery::rng::{self, stage};
use cutquery::st::{self, StConfig};
use cutquery::{io, reference, sparsify, Constants, CutGraph, CutOracle, LedgerSnapshot, Rational, SimpleGraph};
use num_traits::ToPrimitive;

#[derive(Parser)]
#[command(name = "cutquery", version, about = "Exact minimum cuts from cut-value queries")]
struct Cli {
    /// CSV file every run appends its row to.
    #[arg(long, global = true, default_value = "cutquery.csv")]
    csv: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated instance as an edge list.
    Gen(GenArgs),
    /// Recover the whole graph through edge-count queries.
    Learn(LearnArgs),
    /// Exact global minimum cut.
    GlobalMincut(GlobalArgs),
    /// Exact minimum s-t cut.
    StMincut(StArgs),
    /// Build a cut sparsifier and write it as a weighted edge list.
    Sparsify(SparsifyArgs),
    /// Query counts over a range of sizes, with the learn-everything baseline.
    Bench(BenchArgs),
}

#[derive(Args)]
struct Common {
    /// Root seed; every stage draws from its own stream of it.
    #[arg(long, env = "CUTQUERY_SEED", default_value_t = 0)]
    seed: u64,
    /// Multiplies every logarithmic sampling constant.
    #[arg(long = "scale-constants", default_value_t = 1.0)]
    scale: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Gnp,
    Barbell,
    Cycle,
    Planted,
    CliquePath,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: GenKind,
    #[arg(long, default_value_t = 32)]
    n: usize,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 5)]
    clique: usize,
    /// Planted cut size.
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 5)]
    path: usize,
    #[arg(long, env = "CUTQUERY_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct LearnArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Also write the learned graph here.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    verify: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    V1,
    V2,
}

#[derive(Args)]
struct GlobalArgs {
    #[arg(long, value_enum, default_value_t = Algo::V2)]
    algo: Algo,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, default_value_t = 0.25)]
    epsilon: f64,
    #[command(flatten)]
    common: Common,
    /// Compare with an exact solver; exit 1 on mismatch.
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct StArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    source: usize,
    #[arg(long)]
    sink: usize,
    /// Sparsifier accuracy; defaults to n^(-1/3).
    #[arg(long)]
    epsilon: Option<f64>,
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct SparsifyArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, default_value_t = 0.25)]
    epsilon: f64,
    #[command(flatten)]
    common: Common,
    /// Weighted edge list output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Check that the minimum cut of the sparsifier is within the band.
    #[arg(long)]
    verify: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    /// Both global algorithms.
    Global,
    GlobalV1,
    GlobalV2,
    St,
    Learn,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    #[arg(long, value_delimiter = ',', default_values_t = [64, 128, 256, 512])]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 3)]
    trials: u64,
    /// Edge probability of the random instances.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 0.25)]
    epsilon: f64,
    #[command(flatten)]
    common: Common,
    /// Skip the exact reference solver.
    #[arg(long)]
    no_verify: bool,
}

/// One CSV row.
struct Row {
    instance: String,
    n: usize,
    m: usize,
    algo: &'static str,
    seed: u64,
    epsilon: Option<f64>,
    scale: f64,
    queries: LedgerSnapshot,
    cut_value: Option<String>,
    ref_value: Option<String>,
    correct: Option<bool>,
    wall_ms: u128,
}

const HEADER: [&str; 13] = ["instance", "n", "m", "algo", "seed", "epsilon", "scale", "distinct_queries", "total_calls", "cut_value", "ref_value", "correct", "wall_ms"];

impl Row {
    fn fields(&self) -> Vec<String> {
        let opt = |x: &Option<String>| x.clone().unwrap_or_default();
        vec![
            self.instance.clone(),
            self.n.to_string(),
            self.m.to_string(),
            self.algo.to_string(),
            self.seed.to_string(),
            self.epsilon.map(|e| format!("{e:.6}")).unwrap_or_default(),
            self.scale.to_string(),
            self.queries.distinct_queries.to_string(),
            self.queries.total_calls.to_string(),
            opt(&self.cut_value),
            opt(&self.ref_value),
            self.correct.map(|c| c.to_string()).unwrap_or_default(),
            self.wall_ms.to_string(),
        ]
    }
}

/// Prints rows to stdout and appends them to the CSV file, writing the
/// header when the file is new or empty.
struct Sink {
    out: csv::Writer<File>,
    stdout: csv::Writer<std::io::Stdout>,
}

impl Sink {
    fn open(path: &Path) -> Result<Self> {
        let fresh = std::fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
        let file = OpenOptions::new().create(true).append(true).open(path).with_context(|| format!("opening {}", path.display()))?;
        let mut out = csv::Writer::from_writer(file);
        if fresh {
            out.write_record(HEADER)?;
        }
        let mut stdout = csv::Writer::from_writer(std::io::stdout());
        stdout.write_record(HEADER)?;
        Ok(Self { out, stdout })
    }

    fn push(&mut self, row: &Row) -> Result<()> {
        let fields = row.fields();
        self.stdout.write_record(&fields)?;
        self.stdout.flush()?;
        self.out.write_record(&fields)?;
        self.out.flush()?;
        Ok(())
    }
}

fn read_graph(path: &Path) -> Result<SimpleGraph> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    io::read_edge_list(BufReader::new(file)).with_context(|| format!("reading {}", path.display()))
}

fn instance_name(path: &Path) -> String {
    path.display().to_string()
}

fn exact_global(g: &SimpleGraph) -> Result<Rational> {
    Ok(reference::deterministic_min_cut(&g.to_weighted())?.value)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Runs one command; `Ok(false)` means a verification failed.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Gen(a) => gen(&cli.csv, a),
        Command::Learn(a) => learn(&cli.csv, a),
        Command::GlobalMincut(a) => global_mincut(&cli.csv, a),
        Command::StMincut(a) => st_mincut(&cli.csv, a),
        Command::Sparsify(a) => sparsify_cmd(&cli.csv, a),
        Command::Bench(a) => bench(&cli.csv, a),
    }
}

fn gen(csv: &Path, a: GenArgs) -> Result<bool> {
    let start = Instant::now();
    let kind = match a.kind {
        GenKind::Gnp => Kind::Gnp { n: a.n, p: a.p },
        GenKind::Barbell => Kind::Barbell { clique: a.clique },
        GenKind::Cycle => Kind::Cycle { n: a.n },
        GenKind::Planted => Kind::PlantedCut { n: a.n, k: a.k, p_in: a.p },
        GenKind::CliquePath => Kind::CliquePlusPath { clique: a.clique, path: a.path },
    };
    let g = generate::generate(&kind, a.seed)?;
    let mut out = BufWriter::new(File::create(&a.out).with_context(|| format!("creating {}", a.out.display()))?);
    io::write_edge_list(&g, &mut out)?;
    out.flush()?;
    let mut sink = Sink::open(csv)?;
    sink.push(&Row {
        instance: instance_name(&a.out),
        n: g.n(),
        m: g.m(),
        algo: "gen",
        seed: a.seed,
        epsilon: None,
        scale: 1.0,
        queries: LedgerSnapshot::default(),
        cut_value: None,
        ref_value: None,
        correct: None,
        wall_ms: start.elapsed().as_millis(),
    })?;
    Ok(true)
}

fn learn(csv: &Path, a: LearnArgs) -> Result<bool> {
    let g = read_graph(&a.input)?;
    let start = Instant::now();
    let mut o = CutOracle::new(&g);
    let learned = match discovery::learn_graph(&mut o, None)? {
        Learned::Complete(h) => h,
        Learned::Aborted { .. } => bail!("learning without a limit stopped early"),
    };
    let wall_ms = start.elapsed().as_millis();
    if let Some(path) = &a.out {
        let mut out = BufWriter::new(File::create(path)?);
        io::write_edge_list(&learned, &mut out)?;
        out.flush()?;
    }
    let correct = a.verify.then(|| learned == g);
    Sink::open(csv)?.push(&Row {
        instance: instance_name(&a.input),
        n: g.n(),
        m: g.m(),
        algo: "learn",
        seed: 0,
        epsilon: None,
        scale: 1.0,
        queries: o.snapshot(),
        cut_value: Some(learned.m().to_string()),
        ref_value: a.verify.then(|| g.m().to_string()),
        correct,
        wall_ms,
    })?;
    Ok(correct != Some(false))
}

fn constants(scale: f64) -> Result<Constants> {
    if !(scale > 0.0 && scale.is_finite()) {
        bail!(format!("--scale-constants must be positive, got {scale}"));
    }
    Ok(Constants::scaled(scale))
}

fn run_global(g: &SimpleGraph, algo: Algo, epsilon: f64, common: &Common) -> Result<(Rational, LedgerSnapshot, u128)> {
    let config = GlobalConfig { epsilon, constants: constants(common.scale)?, ..Default::default() };
    let start = Instant::now();
    let mut o = CutOracle::new(g);
    let r = match algo {
        Algo::V1 => global::global_min_cut_v1(&mut o, &config, &mut rng::stream(common.seed, stage::GLOBAL_V1))?,
        Algo::V2 => global::global_min_cut_v2(&mut o, &config, &mut rng::stream(common.seed, stage::GLOBAL_V2))?,
    };
    let wall = start.elapsed().as_millis();
    debug_assert_eq!(g.cut_value(&r.cut.side)?, r.cut.value);
    Ok((r.cut.value, r.queries, wall))
}

fn algo_name(algo: Algo) -> &'static str {
    match algo {
        Algo::V1 => "global-v1",
        Algo::V2 => "global-v2",
    }
}

fn global_mincut(csv: &Path, a: GlobalArgs) -> Result<bool> {
    let g = read_graph(&a.input)?;
    let (value, queries, wall_ms) = run_global(&g, a.algo, a.epsilon, &a.common)?;
    let reference = if a.verify { Some(exact_global(&g)?) } else { None };
    let correct = reference.map(|r| r == value);
    Sink::open(csv)?.push(&Row {
        instance: instance_name(&a.input),
        n: g.n(),
        m: g.m(),
        algo: algo_name(a.algo),
        seed: a.common.seed,
        epsilon: Some(a.epsilon),
        scale: a.common.scale,
        queries,
        cut_value: Some(value.to_string()),
        ref_value: reference.map(|r| r.to_string()),
        correct,
        wall_ms,
    })?;
    if correct == Some(false) {
        eprintln!("verification failed: found {value}, exact {}", reference.expect("verified"));
    }
    Ok(correct != Some(false))
}

fn st_mincut(csv: &Path, a: StArgs) -> Result<bool> {
    let g = read_graph(&a.input)?;
    let n = g.n();
    if a.source >= n || a.sink >= n || a.source == a.sink {
        bail!(format!("source and sink must be distinct vertices below {n}"));
    }
    let config = StConfig { epsilon: a.epsilon, constants: constants(a.common.scale)? };
    let start = Instant::now();
    let mut o = CutOracle::new(&g);
    let r = st::st_min_cut(&mut o, a.source, a.sink, &config, &mut rng::stream(a.common.seed, stage::ST))?;
    let wall_ms = start.elapsed().as_millis();
    let reference = if a.verify { Some(reference::exact_st_min_cut(&g.to_weighted(), a.source, a.sink)?.value) } else { None };
    let correct = reference.map(|x| x == r.cut.value);
    Sink::open(csv)?.push(&Row {
        instance: instance_name(&a.input),
        n,
        m: g.m(),
        algo: "st",
        seed: a.common.seed,
        epsilon: Some(r.epsilon),
        scale: a.common.scale,
        queries: r.queries,
        cut_value: Some(r.cut.value.to_string()),
        ref_value: reference.map(|x| x.to_string()),
        correct,
        wall_ms,
    })?;
    if correct == Some(false) {
        eprintln!("verification failed: found {}, exact {}", r.cut.value, reference.expect("verified"));
    }
    Ok(correct != Some(false))
}

fn sparsify_cmd(csv: &Path, a: SparsifyArgs) -> Result<bool> {
    let g = read_graph(&a.input)?;
    if !(a.epsilon > 0.0 && a.epsilon < 1.0) {
        bail!(format!("--epsilon must lie in (0, 1), got {}", a.epsilon));
    }
    let start = Instant::now();
    let mut o = CutOracle::new(&g);
    let h = sparsify::build_sparsifier(&mut o, a.epsilon, &constants(a.common.scale)?, &mut rng::stream(a.common.seed, stage::SPARSIFY))?;
    let wall_ms = start.elapsed().as_millis();
    if let Some(path) = &a.out {
        let mut out = BufWriter::new(File::create(path)?);
        io::write_weighted_edge_list(&h, &mut out)?;
        out.flush()?;
    }
    let lambda_h = reference::deterministic_min_cut(&h)?.value;
    let reference = if a.verify { Some(exact_global(&g)?) } else { None };
    let correct = reference.map(|lambda| {
        let (x, y) = (lambda_h.to_f64().unwrap_or(f64::NAN), lambda.to_f64().unwrap_or(f64::NAN));
        (x - y).abs() <= a.epsilon * y
    });
    eprintln!("sparsifier: {} edges, {} in the input", h.edge_count(), g.m());
    Sink::open(csv)?.push(&Row {
        instance: instance_name(&a.input),
        n: g.n(),
        m: g.m(),
        algo: "sparsify",
        seed: a.common.seed,
        epsilon: Some(a.epsilon),
        scale: a.common.scale,
        queries: o.snapshot(),
        cut_value: Some(lambda_h.to_string()),
        ref_value: reference.map(|x| x.to_string()),
        correct,
        wall_ms,
    })?;
    Ok(correct != Some(false))
}

/// Least-squares slope of `ln y` against `ln x`.
fn fitted_exponent(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0.ln()).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1.ln()).sum::<f64>() / k;
    let sxy: f64 = points.iter().map(|p| (p.0.ln() - mx) * (p.1.ln() - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0.ln() - mx).powi(2)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

fn bench(csv: &Path, a: BenchArgs) -> Result<bool> {
    if a.sizes.is_empty() || a.sizes.iter().any(|&n| n < 4) {
        bail!("--sizes needs sizes of at least 4");
    }
    if a.trials == 0 {
        bail!("--trials must be positive");
    }
    let algos: Vec<&'static str> = match a.suite {
        Suite::Global => vec!["global-v1", "global-v2"],
        Suite::GlobalV1 => vec!["global-v1"],
        Suite::GlobalV2 => vec!["global-v2"],
        Suite::St => vec!["st"],
        Suite::Learn => vec![],
    };
    let mut names = algos.clone();
    names.push("learn");
    let mut sink = Sink::open(csv)?;
    let mut all_ok = true;
    // mean distinct queries per (algorithm, size)
    let mut means: Vec<Vec<(f64, f64)>> = vec![Vec::new(); names.len()];
    for &n in &a.sizes {
        let mut sums = vec![0u64; names.len()];
        for trial in 0..a.trials {
            let seed = a.common.seed.wrapping_add(trial);
            let g = generate::gnp(n, a.p, seed)?;
            let instance = format!("gnp-n{n}-p{}-s{seed}", a.p);
            let common = Common { seed, scale: a.common.scale };
            let global_ref = if a.no_verify || !algos.iter().any(|x| x.starts_with("global")) { None } else { Some(exact_global(&g)?) };
            for (i, &name) in names.iter().enumerate() {
                let (value, reference, queries, wall_ms, epsilon, learned_ok) = match name {
                    "global-v1" | "global-v2" => {
                        let algo = if name == "global-v1" { Algo::V1 } else { Algo::V2 };
                        let (v, q, w) = run_global(&g, algo, a.epsilon, &common)?;
                        (v, global_ref, q, w, Some(a.epsilon), true)
                    }
                    "st" => {
                        let config = StConfig { epsilon: None, constants: constants(a.common.scale)? };
                        let start = Instant::now();
                        let mut o = CutOracle::new(&g);
                        let r = st::st_min_cut(&mut o, 0, n - 1, &config, &mut rng::stream(seed, stage::ST))?;
                        let w = start.elapsed().as_millis();
                        let reference = if a.no_verify { None } else { Some(reference::exact_st_min_cut(&g.to_weighted(), 0, n - 1)?.value) };
                        (r.cut.value, reference, r.queries, w, Some(r.epsilon), true)
                    }
                    _ => {
                        let start = Instant::now();
                        let mut o = CutOracle::new(&g);
                        let h = discovery::learn_graph(&mut o, None)?.complete().context("learning without a limit stopped early")?;
                        let w = start.elapsed().as_millis();
                        let m = |x: &SimpleGraph| Rational::from_integer(x.m() as i64);
                        (m(&h), Some(m(&g)), o.snapshot(), w, None, h == g)
                    }
                };
                let correct = reference.map(|r| r == value && learned_ok);
                all_ok &= correct != Some(false);
                sums[i] += queries.distinct_queries;
                sink.push(&Row {
                    instance: instance.clone(),
                    n,
                    m: g.m(),
                    algo: name,
                    seed,
                    epsilon,
                    scale: a.common.scale,
                    queries,
                    cut_value: Some(value.to_string()),
                    ref_value: reference.map(|r| r.to_string()),
                    correct,
                    wall_ms,
                })?;
            }
        }
        for (i, s) in sums.iter().enumerate() {
            means[i].push((n as f64, *s as f64 / a.trials as f64));
        }
    }
    for (name, points) in names.iter().zip(&means) {
        let monotone = points.windows(2).all(|w| w[1].1 >= w[0].1);
        let exponent = fitted_exponent(points).map(|e| format!("{e:.3}")).unwrap_or_else(|| "n/a".into());
        let counts: Vec<String> = points.iter().map(|p| format!("{}:{:.0}", p.0, p.1)).collect();
        eprintln!("{name}: fitted exponent {exponent}, monotone {monotone}, mean distinct queries {}", counts.join(" "));
    }
    Ok(all_ok)
}
