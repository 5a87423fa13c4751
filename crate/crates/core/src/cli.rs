//! `graphlab` command-line front end.
//!
//! Exit codes: 0 success, 2 configuration error (including bad flags),
//! 3 I/O error, 4 resource error (too many qubits).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::analytic;
use crate::error::Error;
use crate::graph::{generators, parse_graph, WeightedGraph};
use crate::noise::NoiseModel;
use crate::pauli::{AxisPair, PauliAxis};
use crate::sim::DEFAULT_MAX_QUBITS;
use crate::sweep::{self, parse_angle, Column, Grid, Quantity, SweepConfig, SweepResult};

pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;

/// Environment variable capping the number of sweep worker threads.
pub const THREADS_ENV: &str = "GRAPHLAB_THREADS";

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Io(String),
    Resource(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Io(_) => EXIT_IO,
            CliError::Resource(_) => EXIT_RESOURCE,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Io(m) | CliError::Resource(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) => CliError::Io(e.to_string()),
            Error::TooManyQubits { .. } => CliError::Resource(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(name = "graphlab", version, about = "Entanglement and correlators of weighted variational graph states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form Bloch vector, GME and correlators for one graph.
    Analytic(AnalyticArgs),
    /// Sweep uniform (phi, theta) over a grid and write result tables.
    Sweep(SweepArgs),
    /// Run the K_1,4 experiment: GME of the center and all nine center-leaf correlators.
    K14(K14Args),
    /// Point-by-point absolute difference between two sweep files.
    Compare(CompareArgs),
}

#[derive(Args, Debug)]
struct GraphSource {
    /// Graph document (JSON).
    #[arg(long, value_name = "FILE", conflicts_with = "star")]
    graph: Option<PathBuf>,
    /// Builtin star K_1,K with center 0.
    #[arg(long, value_name = "K")]
    star: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
    Both,
}

impl TableFormat {
    fn csv(self) -> bool {
        matches!(self, TableFormat::Csv | TableFormat::Both)
    }

    fn json(self) -> bool {
        matches!(self, TableFormat::Json | TableFormat::Both)
    }
}

#[derive(Args, Debug)]
struct AnalyticArgs {
    #[command(flatten)]
    source: GraphSource,
    /// Set every vertex phase to this angle.
    #[arg(long, value_name = "ANGLE", allow_hyphen_values = true)]
    phi: Option<String>,
    /// Set every edge coupling to this angle.
    #[arg(long, value_name = "ANGLE", allow_hyphen_values = true)]
    theta: Option<String>,
    #[arg(long, value_name = "L", default_value_t = 0)]
    vertex: usize,
    #[arg(long, value_name = "L,M")]
    pair: Option<String>,
    /// Comma-separated axis pairs, e.g. xx,yz (default: all nine).
    #[arg(long)]
    axes: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: ReportFormat,
}

#[derive(Args, Debug)]
struct SamplingArgs {
    /// Shots per estimate.
    #[arg(long)]
    shots: Option<u64>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// readout,err1q,err2q
    #[arg(long, value_name = "R,E1,E2")]
    noise: Option<String>,
    /// JSON noise model: {"readout_flip":..,"err_1q":..,"err_2q":..,"channel":"depolarizing"}
    #[arg(long, value_name = "FILE", conflicts_with = "noise")]
    noise_config: Option<PathBuf>,
    #[arg(long, value_name = "DIR", default_value = ".")]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    format: TableFormat,
    #[arg(long, value_name = "N", default_value_t = DEFAULT_MAX_QUBITS)]
    max_qubits: usize,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    source: GraphSource,
    #[arg(long, value_name = "A:B:N", default_value = "0:pi:21", allow_hyphen_values = true)]
    phi: String,
    #[arg(long, value_name = "A:B:N", default_value = "0:pi:21", allow_hyphen_values = true)]
    theta: String,
    /// Vertex whose GME is swept (default 0 when no --pair is given).
    #[arg(long, value_name = "L")]
    vertex: Option<usize>,
    #[arg(long, value_name = "L,M")]
    pair: Option<String>,
    #[arg(long)]
    axes: Option<String>,
    #[command(flatten)]
    sampling: SamplingArgs,
}

#[derive(Args, Debug)]
struct K14Args {
    #[arg(long, value_name = "A:B:N", default_value = "0:pi:21", allow_hyphen_values = true)]
    phi: String,
    #[arg(long, value_name = "A:B:N", default_value = "0:pi:21", allow_hyphen_values = true)]
    theta: String,
    #[arg(long, default_value_t = 10_000)]
    shots: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_name = "R,E1,E2", default_value = "0.01,0.0001,0.01")]
    noise: String,
    #[arg(long, value_name = "FILE")]
    noise_config: Option<PathBuf>,
    #[arg(long, value_name = "DIR", default_value = "k14_out")]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    format: TableFormat,
    #[arg(long, value_name = "N", default_value_t = DEFAULT_MAX_QUBITS)]
    max_qubits: usize,
}

#[derive(Args, Debug)]
struct CompareArgs {
    file_a: PathBuf,
    file_b: PathBuf,
    #[arg(long, value_enum, default_value = "analytic")]
    column_a: Column,
    #[arg(long, value_enum, default_value = "analytic")]
    column_b: Column,
    /// Write the table here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

/// Entry point for the binary; returns the process exit code.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    match run_from(std::env::args_os(), &mut stdout.lock()) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    }
}

/// Parses `args` (program name first) and runs the command, writing reports to `out`.
pub fn run_from<I, T>(args: I, out: &mut dyn Write) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            write!(out, "{e}")?;
            return Ok(());
        }
        Err(e) => {
            let msg = e.to_string();
            return Err(CliError::Config(msg.trim_start_matches("error: ").trim_end().to_string()));
        }
    };
    match cli.command {
        Command::Analytic(a) => cmd_analytic(&a, out),
        Command::Sweep(a) => cmd_sweep(&a, out),
        Command::K14(a) => cmd_k14(&a, out),
        Command::Compare(a) => cmd_compare(&a, out),
    }
}

fn load_graph(source: &GraphSource) -> Result<(WeightedGraph, String), CliError> {
    match (&source.graph, source.star) {
        (Some(path), _) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            let g = parse_graph(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            Ok((g, path.display().to_string()))
        }
        (None, Some(k)) => Ok((generators::star(k, 0.0, 0.0)?, format!("star({k})"))),
        (None, None) => Err(CliError::Config("give --graph FILE or --star K".into())),
    }
}

fn parse_pair(text: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Config(format!("--pair expects L,M, got '{text}'"));
    let (l, m) = text.split_once(',').ok_or_else(bad)?;
    let l = l.trim().parse().map_err(|_| bad())?;
    let m = m.trim().parse().map_err(|_| bad())?;
    if l == m {
        return Err(CliError::Config(format!("--pair needs two different vertices, got {l},{m}")));
    }
    Ok((l, m))
}

fn parse_axes(text: Option<&str>) -> Result<Vec<AxisPair>, CliError> {
    match text {
        None => Ok(AxisPair::all()),
        Some(t) => t.split(',').map(|p| p.parse::<AxisPair>().map_err(CliError::from)).collect(),
    }
}

fn parse_noise(flag: Option<&str>, file: Option<&Path>) -> Result<Option<NoiseModel>, CliError> {
    if let Some(path) = file {
        let text =
            fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        let model: NoiseModel = serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        model.validate()?;
        return Ok(Some(model));
    }
    let Some(text) = flag else { return Ok(None) };
    let values = text
        .split(',')
        .map(|v| v.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::Config(format!("--noise expects readout,err1q,err2q, got '{text}'")))?;
    match values.as_slice() {
        [r, e1, e2] => Ok(Some(NoiseModel::new(*r, *e1, *e2)?)),
        _ => Err(CliError::Config(format!("--noise expects three probabilities, got '{text}'"))),
    }
}

fn cmd_analytic(args: &AnalyticArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (mut g, label) = load_graph(&args.source)?;
    if args.source.star.is_some() && (args.phi.is_none() || args.theta.is_none()) {
        return Err(CliError::Config("--star needs --phi and --theta".into()));
    }
    if args.phi.is_some() || args.theta.is_some() {
        let phi = args.phi.as_deref().map(parse_angle).transpose()?;
        let theta = args.theta.as_deref().map(parse_angle).transpose()?;
        let phases = phi.map(|p| vec![p; g.n()]).unwrap_or_else(|| g.vertex_weights().to_vec());
        let edges: Vec<_> = g.edges().iter().map(|e| (e.j, e.k, theta.unwrap_or(e.theta))).collect();
        g = WeightedGraph::new(phases, edges)?;
    }

    let l = args.vertex;
    let bloch = analytic::bloch_vector(&g, l)?;
    let gme = analytic::gme(&g, l)?;
    let mut correlators = Vec::new();
    if let Some(pair) = &args.pair {
        let (pl, pm) = parse_pair(pair)?;
        for axes in parse_axes(args.axes.as_deref())? {
            correlators.push((axes, analytic::correlator(&g, pl, pm, axes.0, axes.1)?));
        }
        correlators.sort_by_key(|(a, _)| a.to_string());
        correlators.dedup_by_key(|(a, _)| *a);
        write_analytic(args.format, out, &g, &label, l, bloch, gme, Some((pl, pm)), &correlators)
    } else {
        write_analytic(args.format, out, &g, &label, l, bloch, gme, None, &correlators)
    }
}

#[allow(clippy::too_many_arguments)]
fn write_analytic(
    format: ReportFormat,
    out: &mut dyn Write,
    g: &WeightedGraph,
    label: &str,
    l: usize,
    bloch: analytic::BlochVector,
    gme: f64,
    pair: Option<(usize, usize)>,
    correlators: &[(AxisPair, f64)],
) -> Result<(), CliError> {
    match format {
        ReportFormat::Json => {
            let corr: serde_json::Map<String, serde_json::Value> =
                correlators.iter().map(|(a, v)| (a.to_string(), json!(v))).collect();
            let doc = json!({
                "graph": label,
                "vertex": l,
                "bloch": {"x": bloch.mx, "y": bloch.my, "z": bloch.mz},
                "gme": gme,
                "pair": pair.map(|(a, b)| vec![a, b]),
                "correlators": corr,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("report serializes"))?;
        }
        ReportFormat::Text => {
            writeln!(out, "graph: {label} ({} vertices, {} edges)", g.n(), g.edges().len())?;
            writeln!(out, "vertex {l}")?;
            for axis in PauliAxis::ALL {
                writeln!(out, "  <{axis}> = {:.12}", bloch.component(axis))?;
            }
            writeln!(out, "  |m| = {:.12}", bloch.norm())?;
            writeln!(out, "  gme = {gme:.12}")?;
            if let Some((a, b)) = pair {
                writeln!(out, "pair ({a}, {b})")?;
                for (axes, v) in correlators {
                    writeln!(out, "  <{axes}> = {v:.12}")?;
                }
            }
        }
    }
    Ok(())
}

fn run_parallel(cfg: &SweepConfig) -> Result<Vec<SweepResult>, CliError> {
    let cap = match std::env::var(THREADS_ENV) {
        Ok(v) => Some(v.trim().parse::<usize>().ok().filter(|&n| n > 0).ok_or_else(|| {
            CliError::Config(format!("{THREADS_ENV} must be a positive integer, got '{v}'"))
        })?),
        Err(_) => None,
    };
    match cap {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Resource(e.to_string()))?;
            Ok(pool.install(|| sweep::run_sweep(cfg))?)
        }
        None => Ok(sweep::run_sweep(cfg)?),
    }
}

fn timestamp() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Writes one sweep table (and optionally its difference table) per format.
/// Returns the written paths.
fn write_results(
    results: &mut [SweepResult],
    dir: &Path,
    format: TableFormat,
    with_diffs: bool,
) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let now = timestamp();
    let mut written = Vec::new();
    for r in results.iter_mut() {
        r.metadata.generated_at = Some(now);
        let label = r.quantity.label();
        if format.csv() {
            let mut buf = Vec::new();
            r.write_csv(&mut buf)?;
            written.push(dir.join(format!("{label}.csv")));
            write_file(written.last().unwrap(), &buf)?;
            if with_diffs {
                let mut buf = Vec::new();
                r.write_diff_csv(&mut buf)?;
                written.push(dir.join(format!("{label}.diff.csv")));
                write_file(written.last().unwrap(), &buf)?;
            }
        }
        if format.json() {
            written.push(dir.join(format!("{label}.json")));
            write_file(written.last().unwrap(), r.to_json().as_bytes())?;
            if with_diffs {
                written.push(dir.join(format!("{label}.diff.json")));
                write_file(written.last().unwrap(), r.diff_json().as_bytes())?;
            }
        }
    }
    Ok(written)
}

fn fmt_max(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.6}")).unwrap_or_else(|| "-".into())
}

fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (graph, graph_label) = load_graph(&args.source)?;
    let mut quantities = Vec::new();
    if args.vertex.is_some() || args.pair.is_none() {
        quantities.push(Quantity::Gme { vertex: args.vertex.unwrap_or(0) });
    }
    if let Some(pair) = &args.pair {
        let (l, m) = parse_pair(pair)?;
        for axes in parse_axes(args.axes.as_deref())? {
            quantities.push(Quantity::Correlator { l, m, axes });
        }
    } else if args.axes.is_some() {
        return Err(CliError::Config("--axes needs --pair".into()));
    }
    let s = &args.sampling;
    let cfg = SweepConfig {
        graph,
        graph_label,
        phi: args.phi.parse()?,
        theta: args.theta.parse()?,
        quantities,
        shots: s.shots,
        seed: s.seed,
        noise: parse_noise(s.noise.as_deref(), s.noise_config.as_deref())?,
        max_qubits: s.max_qubits,
    };
    let mut results = run_parallel(&cfg)?;
    let written = write_results(&mut results, &s.out, s.format, false)?;
    for r in &results {
        writeln!(
            out,
            "{}: {} points, max d_ideal {}, max d_noisy {}",
            r.quantity.label(),
            r.rows.len(),
            fmt_max(r.max_d_ideal()),
            fmt_max(r.max_d_noisy())
        )?;
    }
    for p in written {
        writeln!(out, "wrote {}", p.display())?;
    }
    Ok(())
}

/// Sweep configuration of the K_1,4 experiment.
pub fn k14_config(phi: Grid, theta: Grid, shots: u64, seed: u64, noise: NoiseModel, max_qubits: usize) -> SweepConfig {
    let mut quantities = vec![Quantity::Gme { vertex: 0 }];
    quantities.extend(AxisPair::all().into_iter().map(|axes| Quantity::Correlator { l: 0, m: 1, axes }));
    SweepConfig {
        graph: generators::star(4, 0.0, 0.0).expect("star graph"),
        graph_label: "star(4)".into(),
        phi,
        theta,
        quantities,
        shots: Some(shots),
        seed,
        noise: Some(noise),
        max_qubits,
    }
}

fn cmd_k14(args: &K14Args, out: &mut dyn Write) -> Result<(), CliError> {
    let noise = match &args.noise_config {
        Some(path) => parse_noise(None, Some(path))?,
        None => parse_noise(Some(&args.noise), None)?,
    }
    .expect("noise is always given");
    let cfg = k14_config(args.phi.parse()?, args.theta.parse()?, args.shots, args.seed, noise, args.max_qubits);
    let mut results = run_parallel(&cfg)?;
    let written = write_results(&mut results, &args.out, args.format, true)?;
    let summary: Vec<String> = results
        .iter()
        .map(|r| {
            format!("{}={}/{}", r.quantity.label(), fmt_max(r.max_d_ideal()), fmt_max(r.max_d_noisy()))
        })
        .collect();
    writeln!(out, "wrote {} files to {}", written.len(), args.out.display())?;
    writeln!(out, "summary max d (ideal/noisy): {}", summary.join(" "))?;
    Ok(())
}

fn cmd_compare(args: &CompareArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let a = sweep::read_rows(&args.file_a)?;
    let b = sweep::read_rows(&args.file_b)?;
    let cmp = sweep::compare(&a, args.column_a, &b, args.column_b)?;
    match &args.out {
        Some(path) => {
            let mut buf = Vec::new();
            cmp.write_csv(&mut buf)?;
            write_file(path, &buf)?;
        }
        None => cmp.write_csv(&mut *out)?,
    }
    writeln!(out, "compared {} points: max |a - b| = {}, mean = {}", cmp.rows.len(), cmp.max, cmp.mean)?;
    Ok(())
}
