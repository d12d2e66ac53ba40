//! Command-line front end: error-bound tables and the binary32 experiments.
//!
//! Exit status: 0 on success, 2 for invalid arguments, 1 for I/O failures.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use givens::errbounds::{first_failing_n, small_n_table};
use givens::experiments::accum::shared_histograms;
use givens::experiments::heatmap::grid;
use givens::experiments::{
    run_accum2, run_accum3, run_bench, run_heatmap, run_single_accuracy, BenchKernel, U,
};
use givens::givens::{AlgorithmId, ComplexAlgorithm};
use givens::output::{self, fmt_f, CsvOut};
use givens::precision::Precision;
use givens::rng_polar::{default_rho, default_scenarios, read_scenarios, ScenarioSpec};
use givens::GivensError;

#[derive(Parser)]
#[command(name = "givens", version, about = "Givens rotation accuracy experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Square-root error bounds for small n and the floor(n/2)+1 threshold.
    Bounds(BoundsArgs),
    /// Non-unitarity and backward-error statistics over random inputs.
    Accuracy(AccuracyArgs),
    /// Mean sigma - 1 on a grid of (log2|f|, log2|g|) cells.
    Heatmap(HeatmapArgs),
    /// Products of M singular values of 2x2 rotations, with log-normal forecast.
    Accum2(AccumArgs),
    /// M rotations accumulated on a 3x3 matrix in round-robin planes.
    Accum3(Accum3Args),
    /// Nanoseconds per call over the timing scenarios.
    Bench(BenchArgs),
}

#[derive(Args)]
struct Common {
    /// Output directory, created if absent.
    #[arg(long, default_value = "results")]
    out: PathBuf,
    /// Overwrite existing output files.
    #[arg(long)]
    force: bool,
    /// Random seed.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Worker threads; 0 uses all cores. Results do not depend on it.
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Working precision; the experiments support binary32 only.
    #[arg(long, default_value = "binary32")]
    precision: Precision,
}

#[derive(Args)]
struct BoundsArgs {
    /// Output directory, created if absent.
    #[arg(long, default_value = "results")]
    out: PathBuf,
    /// Overwrite existing output files.
    #[arg(long)]
    force: bool,
    /// Precision whose unit roundoff enters the bounds.
    #[arg(long, default_value = "binary32")]
    precision: Precision,
    /// Largest n in the table.
    #[arg(long, default_value_t = 20)]
    nmax: u64,
}

#[derive(Args)]
struct AccuracyArgs {
    #[command(flatten)]
    common: Common,
    /// Algorithm name or `all` (the four complex algorithms).
    #[arg(long, default_value = "all")]
    algo: AlgoSel,
    /// Number of random input pairs.
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    #[command(flatten)]
    rho: RhoArgs,
}

#[derive(Args)]
struct RhoArgs {
    /// Lower end of the log2|f| range [default: -50.5].
    #[arg(long, allow_hyphen_values = true)]
    rho_f_min: Option<f64>,
    /// Upper end of the log2|f| range [default: 50.5].
    #[arg(long, allow_hyphen_values = true)]
    rho_f_max: Option<f64>,
    /// Lower end of the log2|g| range [default: -50.5].
    #[arg(long, allow_hyphen_values = true)]
    rho_g_min: Option<f64>,
    /// Upper end of the log2|g| range [default: 50.5].
    #[arg(long, allow_hyphen_values = true)]
    rho_g_max: Option<f64>,
}

#[derive(Args)]
struct HeatmapArgs {
    #[command(flatten)]
    common: Common,
    /// Algorithm name or `all` (the four complex algorithms).
    #[arg(long, default_value = "all")]
    algo: AlgoSel,
    /// Samples per cell.
    #[arg(long, default_value_t = 1000)]
    samples: u64,
    /// Smallest grid point in log2 units.
    #[arg(long, default_value_t = -50.0, allow_hyphen_values = true)]
    grid_min: f64,
    /// Largest grid point in log2 units.
    #[arg(long, default_value_t = 50.0, allow_hyphen_values = true)]
    grid_max: f64,
    /// Spacing of grid points in log2 units.
    #[arg(long, default_value_t = 2.0)]
    grid_step: f64,
    /// Width of each cell in log2 units; 0 fixes the moduli. Defaults to the grid step.
    #[arg(long)]
    cell_width: Option<f64>,
}

#[derive(Args)]
struct AccumArgs {
    #[command(flatten)]
    common: Common,
    /// Algorithm name or `all` (the four complex algorithms).
    #[arg(long, default_value = "all")]
    algo: AlgoSel,
    /// Rotations per product.
    #[arg(long = "M", default_value_t = 10_000)]
    m: u64,
    /// Independent repetitions.
    #[arg(long = "N", default_value_t = 1000)]
    n: u64,
}

#[derive(Args)]
struct Accum3Args {
    #[command(flatten)]
    common: Common,
    /// Algorithm name or `all` (the four complex algorithms).
    #[arg(long, default_value = "all")]
    algo: AlgoSel,
    /// Rotations applied to each matrix.
    #[arg(long = "M", default_value_t = 10_000)]
    m: u64,
    /// Independent repetitions.
    #[arg(long = "N", default_value_t = 200)]
    n: u64,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    common: Common,
    /// Algorithm name or `all` (working and cast variants).
    #[arg(long, default_value = "all")]
    algo: AlgoSel,
    /// Input pairs per scenario.
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    /// Scenario file, one `rho_f_min,rho_f_max,rho_g_min,rho_g_max` per line.
    /// Defaults to the bundled seven scenarios.
    #[arg(long)]
    scenarios: Option<PathBuf>,
}

#[derive(Clone, Copy)]
enum AlgoSel {
    All,
    One(AlgorithmId),
}

impl FromStr for AlgoSel {
    type Err = GivensError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "all" {
            Ok(AlgoSel::All)
        } else {
            s.parse().map(AlgoSel::One)
        }
    }
}

impl AlgoSel {
    fn complex(self) -> Result<Vec<ComplexAlgorithm>, Failure> {
        match self {
            AlgoSel::All => Ok(ComplexAlgorithm::ALL.to_vec()),
            AlgoSel::One(id) => Ok(vec![id.complex().map_err(Failure::usage)?]),
        }
    }
}

enum Failure {
    Usage(String),
    Run(GivensError),
}

impl Failure {
    fn usage(e: impl std::fmt::Display) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<GivensError> for Failure {
    fn from(e: GivensError) -> Self {
        match e {
            GivensError::Io { .. } | GivensError::Csv { .. } => Failure::Run(e),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Run(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Bounds(a) => bounds(a),
        Command::Accuracy(a) => with_pool(&a.common, || accuracy(&a)),
        Command::Heatmap(a) => with_pool(&a.common, || heatmap(&a)),
        Command::Accum2(a) => with_pool(&a.common, || accum2(&a)),
        Command::Accum3(a) => with_pool(&a.common, || accum3(&a)),
        Command::Bench(a) => {
            check_precision(&a.common)?;
            bench(&a)
        }
    }
}

fn check_precision(c: &Common) -> Result<(), Failure> {
    if c.precision != Precision::Binary32 {
        return Err(Failure::Usage(format!(
            "experiments run in binary32 only (got {})",
            c.precision
        )));
    }
    Ok(())
}

fn with_pool(c: &Common, body: impl FnOnce() -> Result<(), Failure> + Send) -> Result<(), Failure> {
    check_precision(c)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(c.threads)
        .build()
        .map_err(Failure::usage)?;
    pool.install(body)
}

fn prepare(out: &Path, names: &[String], force: bool) -> Result<Vec<PathBuf>, Failure> {
    output::prepare(out, names, force).map_err(Failure::Run)
}

fn bounds(a: BoundsArgs) -> Result<(), Failure> {
    let u = a.precision.unit_roundoff();
    let rows = small_n_table(a.nmax, u)?;
    let paths = prepare(
        &a.out,
        &["bounds.csv".into(), "bounds_thresholds.csv".into()],
        a.force,
    )?;
    let mut w = CsvOut::create(&paths[0], output::BOUNDS_HEADER)?;
    for r in rows {
        w.row(&[
            r.n.to_string(),
            fmt_f(r.gamma_alpha_n),
            fmt_f(r.gamma_half_n),
            fmt_f(r.gamma_floor_half_plus1),
        ])?;
    }
    w.finish()?;
    let mut w = CsvOut::create(&paths[1], output::THRESHOLDS_HEADER)?;
    w.row(&[
        a.precision.name().to_owned(),
        fmt_f(u),
        first_failing_n(u).to_string(),
    ])?;
    w.finish()?;
    Ok(())
}

fn accuracy(a: &AccuracyArgs) -> Result<(), Failure> {
    let algos = a.algo.complex()?;
    let (lo, hi) = default_rho(Precision::Binary32);
    let spec = ScenarioSpec {
        rho_f: (a.rho.rho_f_min.unwrap_or(lo), a.rho.rho_f_max.unwrap_or(hi)),
        rho_g: (a.rho.rho_g_min.unwrap_or(lo), a.rho.rho_g_max.unwrap_or(hi)),
        samples: a.samples,
        seed: a.common.seed,
    };
    spec.validate(Precision::Binary32)?;
    let paths = prepare(
        &a.common.out,
        &["accuracy_stats.csv".into(), "accuracy_hist.csv".into()],
        a.common.force,
    )?;
    let results = algos
        .iter()
        .map(|&algo| run_single_accuracy(algo, &spec))
        .collect::<Result<Vec<_>, _>>()?;
    let mut stats = CsvOut::create(&paths[0], output::STATS_HEADER)?;
    let mut hist = CsvOut::create(&paths[1], output::HIST_HEADER)?;
    for r in &results {
        stats.stats(r.algo.name(), "sigma", &r.sigma)?;
        stats.stats(r.algo.name(), "backward", &r.backward)?;
        hist.histogram(r.algo.name(), "sigma", &r.sigma_hist)?;
        hist.histogram(r.algo.name(), "backward", &r.backward_hist)?;
    }
    stats.finish()?;
    hist.finish()?;
    Ok(())
}

fn heatmap(a: &HeatmapArgs) -> Result<(), Failure> {
    let algos = a.algo.complex()?;
    let axis = grid(a.grid_min, a.grid_max, a.grid_step)?;
    let width = a.cell_width.unwrap_or(a.grid_step);
    let names: Vec<String> = algos.iter().map(|x| format!("heatmap_{}.csv", x.name())).collect();
    let paths = prepare(&a.common.out, &names, a.common.force)?;
    for (algo, path) in algos.iter().zip(&paths) {
        let cells = run_heatmap(*algo, &axis, &axis, width, a.samples, a.common.seed)?;
        let mut w = CsvOut::create(path, output::HEATMAP_HEADER)?;
        for c in cells {
            w.row(&[fmt_f(c.log2_f), fmt_f(c.log2_g), fmt_f(c.sigma_err_avg)])?;
        }
        w.finish()?;
    }
    Ok(())
}

fn accum2(a: &AccumArgs) -> Result<(), Failure> {
    let algos = a.algo.complex()?;
    let paths = prepare(
        &a.common.out,
        &[
            "accum2_stats.csv".into(),
            "accum2_forecast.csv".into(),
            "accum2_hist.csv".into(),
        ],
        a.common.force,
    )?;
    let results = algos
        .iter()
        .map(|&algo| run_accum2(algo, a.m, a.n, a.common.seed))
        .collect::<Result<Vec<_>, _>>()?;
    let mut stats = CsvOut::create(&paths[0], output::STATS_HEADER)?;
    let mut fc = CsvOut::create(&paths[1], output::FORECAST_HEADER)?;
    for r in &results {
        stats.stats(r.algo.name(), "sigma", &r.single)?;
        stats.stats(r.algo.name(), "prod_sigma", &r.product)?;
        let f = &r.forecast;
        fc.row(&[
            r.algo.name().to_owned(),
            r.m.to_string(),
            r.n.to_string(),
            fmt_f(f.mu_x_minus_1 / U),
            fmt_f(f.sigma_x / U),
            fmt_f(f.mu_y_minus_1 / U),
            fmt_f(f.sigma_y / U),
        ])?;
    }
    stats.finish()?;
    fc.finish()?;
    let series: Vec<&[f64]> = results.iter().map(|r| r.products.as_slice()).collect();
    let mut hist = CsvOut::create(&paths[2], output::HIST_HEADER)?;
    for (r, h) in results.iter().zip(shared_histograms(&series)) {
        hist.histogram(r.algo.name(), "prod_sigma", &h)?;
    }
    hist.finish()?;
    Ok(())
}

fn accum3(a: &Accum3Args) -> Result<(), Failure> {
    let algos = a.algo.complex()?;
    let paths = prepare(
        &a.common.out,
        &["accum3_stats.csv".into(), "accum3_hist.csv".into()],
        a.common.force,
    )?;
    let results = algos
        .iter()
        .map(|&algo| run_accum3(algo, a.m, a.n, a.common.seed))
        .collect::<Result<Vec<_>, _>>()?;
    let metrics = ["prod_sigma", "norm_proxy", "offdiag"];
    let mut stats = CsvOut::create(&paths[0], output::STATS_HEADER)?;
    for r in &results {
        for (metric, s) in metrics.iter().zip([&r.prod_sigma, &r.norm_proxy, &r.offdiag]) {
            stats.stats(r.algo.name(), metric, s)?;
        }
    }
    stats.finish()?;
    let mut hist = CsvOut::create(&paths[1], output::HIST_HEADER)?;
    for (k, metric) in metrics.iter().enumerate() {
        let columns: Vec<Vec<f64>> = results
            .iter()
            .map(|r| r.values.iter().map(|v| v[k]).collect())
            .collect();
        let series: Vec<&[f64]> = columns.iter().map(Vec::as_slice).collect();
        for (r, h) in results.iter().zip(shared_histograms(&series)) {
            hist.histogram(r.algo.name(), metric, &h)?;
        }
    }
    hist.finish()?;
    Ok(())
}

fn bench(a: &BenchArgs) -> Result<(), Failure> {
    let kernels: Vec<BenchKernel> = match a.algo {
        AlgoSel::All => BenchKernel::DEFAULT.to_vec(),
        AlgoSel::One(id) => vec![BenchKernel::from_algorithm(id.complex().map_err(Failure::usage)?)],
    };
    let scenarios = match &a.scenarios {
        Some(p) => read_scenarios(p).map_err(|e| match e {
            GivensError::Io { .. } => Failure::Run(e),
            other => Failure::Usage(format!("{}: {other}", p.display())),
        })?,
        None => default_scenarios(),
    };
    let paths = prepare(&a.common.out, &["bench.csv".into()], a.common.force)?;
    let rows = run_bench(&kernels, &scenarios, a.samples, a.common.seed)?;
    let mut w = CsvOut::create(&paths[0], output::BENCH_HEADER)?;
    for r in rows {
        w.row(&[r.scenario.to_string(), r.kernel.name(), fmt_f(r.ns_per_call)])?;
    }
    w.finish()?;
    Ok(())
}
