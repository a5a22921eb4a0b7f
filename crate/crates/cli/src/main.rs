//! `ordim`: generate ordered sets, compute their dimensions, run seeded sweeps.

mod experiment;
mod report;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use ordim::embed::{monotone_injection_exists, order_embedding_exists};
use ordim::generators::{EventCloud, MetricSample, Region, WarningGrid};
use ordim::relations::{beta_chronology, circle_directions, direction_order, gamma_chronology, horismos, Relation};
use ordim::{CausalSet, CausalSetDoc, DimensionResult, EmbedMode, SearchOutcome};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use experiment::{
    generate, run_experiment, run_operation, unit_cube_points, ExperimentSpec, Format, GeneratorSpec, Instance, OperationSpec,
};

/// Invalid user input; exits with code 2.
#[derive(Debug)]
pub struct Invalid(pub String);

impl std::fmt::Display for Invalid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Invalid {}

fn invalid(flag: &str, reason: impl std::fmt::Display) -> anyhow::Error {
    Invalid(format!("{flag}: {reason}")).into()
}

/// Result needs bounds only: exit code 3 after printing.
#[derive(Debug)]
struct BudgetExhausted;

impl std::fmt::Display for BudgetExhausted {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("search budget exhausted; bounds reported")
    }
}

impl std::error::Error for BudgetExhausted {}

#[derive(Parser)]
#[command(name = "ordim", version, about = "Order dimensions of finite posets and sampled causal sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an ordered set and write it as JSON.
    Gen(GenArgs),
    /// Derive a relation (beta, gamma, horismos, direction order) from an order.
    Rel(RelArgs),
    /// Compute a dimension and print the result as JSON.
    Dim(DimArgs),
    /// Decide whether one order embeds (or injects monotonically) into another.
    Embed(EmbedArgs),
    /// Run a seeded sweep from a JSON manifest.
    Sweep(SweepArgs),
    /// Convert sweep rows between CSV and JSON, or summarize them.
    Report(ReportArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Minkowski,
    Desitter,
    Grid,
    Powerset,
    Cone,
    Warning,
    Chain,
    Antichain,
    UnitCube,
}

#[derive(Clone, Copy, ValueEnum)]
enum RegionArg {
    Diamond,
    Box,
}

#[derive(Args)]
struct GenArgs {
    kind: GenKind,
    /// Spatial dimensions (minkowski).
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Number of points.
    #[arg(long = "N", default_value_t = 100)]
    big_n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Side length of grid factors.
    #[arg(long = "L", default_value_t = 3)]
    l: usize,
    /// Number of grid factors, or the size of the cone standard example.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Ground set size for powerset.
    #[arg(long, default_value_t = 3)]
    s: usize,
    /// Radius ratio for the cone standard example.
    #[arg(long, default_value_t = 1.0)]
    r: f64,
    #[arg(long, value_enum, default_value = "diamond")]
    region: RegionArg,
    /// Points placed first, e.g. "-0.9,0;0,0.5".
    #[arg(long, allow_hyphen_values = true)]
    inject: Option<String>,
    #[arg(long, default_value_t = std::f64::consts::TAU)]
    circumference: f64,
    #[arg(long, default_value_t = 8.0)]
    t_max: f64,
    #[arg(long, default_value_t = 24)]
    nt: usize,
    #[arg(long, default_value_t = 13)]
    ns: usize,
    #[arg(long, default_value_t = 24)]
    ntheta: usize,
    /// Dimension of the unit cube.
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// Output file; stdout if absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Coordinates file; defaults to `<out>.coords.json` when the generator has coordinates.
    #[arg(long)]
    coords_out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum RelKind {
    Beta,
    Gamma,
    Horismos,
    Dirorder,
}

#[derive(Args)]
struct RelArgs {
    kind: RelKind,
    #[arg(long = "in")]
    input: PathBuf,
    /// Coordinates file; defaults to the sibling `.coords.json` if present.
    #[arg(long)]
    coords: Option<PathBuf>,
    #[arg(long, default_value_t = 0.0)]
    eps: f64,
    /// Number of equispaced directions for dirorder.
    #[arg(long, default_value_t = 16)]
    dirs: usize,
    /// Require both chronology clauses to be non-vacuous (gamma).
    #[arg(long)]
    guarded: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum DimKind {
    Dm,
    Catcher,
    /// Reported through the catcher computation.
    Compactness,
    Stoica,
    Triang,
    Ml,
}

#[derive(Args)]
struct DimArgs {
    kind: DimKind,
    /// Order JSON, or a point set `{"points": ...}` / metric `{"n", "dist"}` for triang.
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    coords: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    p: usize,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long, default_value_t = experiment_defaults::KAPPA)]
    kappa: f64,
    #[arg(long, default_value_t = 0.5)]
    r: f64,
    #[arg(long, default_value_t = experiment_defaults::MAX_SIZE)]
    max_size: usize,
    #[arg(long)]
    delta: Option<f64>,
    /// Trim chains with the standard diamond window (catcher).
    #[arg(long)]
    margin: Option<f64>,
    #[arg(long = "L", default_value_t = 3)]
    l: usize,
    #[arg(long, default_value_t = 8)]
    max_k: usize,
    /// Search node budget; accepts forms like 1e7.
    #[arg(long, default_value = "1e7", value_parser = parse_count)]
    budget: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

mod experiment_defaults {
    pub const KAPPA: f64 = ordim::causal::DEFAULT_EPS_KAPPA;
    pub const MAX_SIZE: usize = ordim::causal::DEFAULT_MAX_SIZE;
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Embed,
    Inject,
}

#[derive(Args)]
struct EmbedArgs {
    #[arg(long)]
    src: PathBuf,
    #[arg(long)]
    dst: PathBuf,
    #[arg(long, value_enum, default_value = "embed")]
    mode: ModeArg,
    #[arg(long, default_value = "1e8", value_parser = parse_count)]
    budget: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Experiment manifest (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Overrides the manifest seeds: "0..20" or "1,2,5".
    #[arg(long)]
    seeds: Option<String>,
    /// Overrides the manifest output path; stdout if neither is set.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Record wall time per row (breaks byte-identical output).
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct ReportArgs {
    /// Rows written by `sweep`.
    #[arg(long = "in")]
    input: PathBuf,
    /// Input format; guessed from the extension if absent.
    #[arg(long, value_enum)]
    from: Option<Format>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Print the per-group median table instead of the rows.
    #[arg(long)]
    summary: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    match s.parse::<f64>() {
        Ok(v) if v >= 0.0 && v.fract() == 0.0 && v <= u64::MAX as f64 => Ok(v as u64),
        _ => Err(format!("expected a non-negative integer count, got `{s}`")),
    }
}

fn parse_points(s: &str) -> anyhow::Result<Vec<Vec<f64>>> {
    s.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            p.split(',')
                .map(|x| x.trim().parse::<f64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| invalid("--inject", format!("`{p}`: {e}")))
        })
        .collect()
}

fn parse_seeds(s: &str) -> anyhow::Result<Vec<u64>> {
    let bad = |e: std::num::ParseIntError| invalid("--seeds", format!("`{s}`: {e}"));
    if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (a.trim().parse::<u64>().map_err(bad)?, b.trim().parse::<u64>().map_err(bad)?);
        return Ok((a..b).collect());
    }
    s.split(',').filter(|x| !x.trim().is_empty()).map(|x| x.trim().parse::<u64>().map_err(bad)).collect()
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path, flag: &str) -> anyhow::Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("{flag}: cannot read {}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| invalid(flag, format!("{}: {e}", path.display())))
}

fn write_output(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out.filter(|p| p.as_os_str() != "-") {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn to_json(v: &impl Serialize) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn coords_path(order: &Path) -> PathBuf {
    let name = order.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let stem = name.strip_suffix(".json").unwrap_or(&name);
    order.with_file_name(format!("{stem}.coords.json"))
}

fn load_order(path: &Path) -> anyhow::Result<CausalSet> {
    let doc: CausalSetDoc = read_json(path, "--in")?;
    doc.to_causal_set().map_err(|e| invalid("--in", e))
}

fn load_cloud(order: &Path, explicit: Option<&Path>, n: usize) -> anyhow::Result<Option<EventCloud>> {
    let path = match explicit {
        Some(p) => p.to_path_buf(),
        None => {
            let p = coords_path(order);
            if !p.exists() {
                return Ok(None);
            }
            p
        }
    };
    let cloud: EventCloud = read_json(&path, "--coords")?;
    if cloud.len() != n {
        return Err(invalid("--coords", format!("{} points for an order on {n} elements", cloud.len())));
    }
    Ok(Some(cloud))
}

fn cmd_gen(a: &GenArgs) -> anyhow::Result<()> {
    let manifest = match a.kind {
        GenKind::Minkowski => GeneratorSpec::Minkowski {
            n_spatial: a.n,
            n: a.big_n,
            region: match a.region {
                RegionArg::Diamond => Region::Diamond,
                RegionArg::Box => Region::Box,
            },
            inject: a.inject.as_deref().map(parse_points).transpose()?.unwrap_or_default(),
        },
        GenKind::Desitter => GeneratorSpec::DeSitter { n: a.big_n },
        GenKind::Grid => GeneratorSpec::Grid { l: a.l, k: a.k },
        GenKind::Powerset => GeneratorSpec::Powerset { s: a.s },
        GenKind::Cone => GeneratorSpec::Cone { k: a.k, r: a.r },
        GenKind::Warning => GeneratorSpec::Warning {
            circumference: a.circumference,
            t_max: a.t_max,
            grid: WarningGrid {
                nt: a.nt,
                ns: a.ns,
                ntheta: a.ntheta,
            },
        },
        GenKind::UnitCube => GeneratorSpec::UnitCube { dim: a.dim, n: a.big_n },
        GenKind::Chain | GenKind::Antichain => {
            let cs = if matches!(a.kind, GenKind::Chain) {
                CausalSet::chain(a.big_n)
            } else {
                CausalSet::antichain(a.big_n)
            };
            let meta = json!({ "generator": { "kind": if matches!(a.kind, GenKind::Chain) { "chain" } else { "antichain" }, "n": a.big_n } });
            return write_output(a.out.as_deref(), &to_json(&cs.to_doc(meta.as_object().unwrap().clone()))?);
        }
    };
    if let GenKind::UnitCube = a.kind {
        if a.dim == 0 || a.big_n == 0 {
            return Err(invalid("--dim", "unit-cube needs --dim >= 1 and --N >= 1"));
        }
        let points = unit_cube_points(a.dim, a.big_n, a.seed);
        return write_output(a.out.as_deref(), &to_json(&json!({ "points": points }))?);
    }
    let inst = generate(&manifest, a.seed).map_err(|e| flag_error(e, gen_flag))?;
    let mut meta = serde_json::Map::new();
    meta.insert("generator".into(), serde_json::to_value(&manifest)?);
    meta.insert("seed".into(), json!(a.seed));
    write_output(a.out.as_deref(), &to_json(&inst.cs.to_doc(meta))?)?;
    if let Some(cloud) = &inst.cloud {
        let path = a.coords_out.clone().or_else(|| a.out.as_deref().map(coords_path));
        if let Some(p) = path {
            write_output(Some(&p), &to_json(cloud)?)?;
        }
    }
    Ok(())
}

/// Maps a core argument name to the `gen` flag that sets it.
fn gen_flag(field: &str) -> &'static str {
    match field {
        "N" => "--N",
        "L" => "--L",
        "k" => "--k",
        "r" => "--r",
        "inject" => "--inject",
        "region" => "--region",
        "T" | "t_max" => "--t-max",
        "circumference" => "--circumference",
        "grid" => "--nt/--ns/--ntheta",
        "shape" => "--k",
        _ => "--n",
    }
}

/// Rewrites core argument errors so the message names a CLI flag.
fn flag_error(e: anyhow::Error, flag_of: fn(&str) -> &'static str) -> anyhow::Error {
    match e.downcast_ref::<ordim::Error>() {
        Some(ordim::Error::InvalidArgument { field, reason }) => invalid(flag_of(field), reason),
        Some(ordim::Error::SizeLimit { .. }) => invalid(flag_of("shape"), e),
        Some(ordim::Error::DimensionMismatch { .. }) => invalid("--inject", e),
        Some(other) => Invalid(other.to_string()).into(),
        None => e,
    }
}

fn relation_json(rel: &Relation, stats: Value) -> Value {
    let pairs: Vec<[usize; 2]> = rel.pairs().into_iter().map(|(a, b)| [a, b]).collect();
    json!({ "kind": rel.kind, "pairs": pairs, "stats": stats })
}

fn cmd_rel(a: &RelArgs) -> anyhow::Result<()> {
    let cs = load_order(&a.input)?;
    let cloud = load_cloud(&a.input, a.coords.as_deref(), cs.len())?;
    if !(a.eps >= 0.0 && a.eps.is_finite()) {
        return Err(invalid("--eps", "must be finite and non-negative"));
    }
    let n = cs.len();
    let out = match a.kind {
        RelKind::Beta => {
            let r = beta_chronology(&cs);
            relation_json(&r, json!({ "n": n, "count": r.count() }))
        }
        RelKind::Gamma => {
            let r = gamma_chronology(&cs, a.guarded);
            relation_json(&r, json!({ "n": n, "count": r.count(), "guarded": a.guarded }))
        }
        RelKind::Horismos => {
            if a.eps > 0.0 && cloud.is_none() {
                return Err(invalid("--eps", "eps > 0 needs coordinates (--coords)"));
            }
            let (plus, minus) = horismos(cloud.as_ref(), &cs, a.eps)?;
            relation_json(&plus, json!({ "n": n, "count": plus.count(), "minus_count": minus.count(), "eps": a.eps }))
        }
        RelKind::Dirorder => {
            let cloud = cloud.ok_or_else(|| invalid("--coords", "dirorder needs coordinates"))?;
            if cloud.n_spatial != 2 {
                return Err(invalid("--coords", "dirorder needs 1+2 dimensional coordinates"));
            }
            let dirs = circle_directions(a.dirs);
            let (r, mis) = direction_order(&cloud, &cs, &dirs).map_err(|e| invalid("--dirs", e))?;
            let total = (n * n.saturating_sub(1)).max(1);
            relation_json(
                &r,
                json!({ "n": n, "count": r.count(), "directions": a.dirs, "misclassified": mis,
                        "misclassified_fraction": mis as f64 / total as f64 }),
            )
        }
    };
    write_output(a.out.as_deref(), &to_json(&out)?)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MetricInput {
    Points { points: Vec<Vec<f64>> },
    Matrix(MetricSample),
}

fn dim_flag(field: &str) -> &'static str {
    match field {
        "eps" => "--eps",
        "delta" => "--delta",
        "margin" => "--margin",
        "L" => "--L",
        "neighborhood_r" | "r" => "--r",
        "window" => "--margin",
        _ => "--in",
    }
}

fn cmd_dim(a: &DimArgs) -> anyhow::Result<()> {
    for (flag, v) in [("--eps", a.eps), ("--delta", a.delta)] {
        if let Some(v) = v {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(invalid(flag, "must be finite and non-negative"));
            }
        }
    }
    if let Some(m) = a.margin {
        if !(0.0..1.0).contains(&m) {
            return Err(invalid("--margin", "must lie in [0, 1)"));
        }
    }
    let (name, inst, op) = match a.kind {
        DimKind::Triang => {
            let input: MetricInput = read_json(&a.input, "--in")?;
            let metric = match input {
                MetricInput::Points { points } => MetricSample::euclidean(&points).map_err(|e| invalid("--in", e))?,
                MetricInput::Matrix(m) => {
                    m.check_triangle().map_err(|e| invalid("--in", e))?;
                    m
                }
            };
            if a.p >= metric.len() {
                return Err(invalid("--p", format!("index {} out of range for {} points", a.p, metric.len())));
            }
            let inst = Instance {
                cs: CausalSet::antichain(metric.len()),
                cloud: None,
                metric: Some(metric),
            };
            let op = OperationSpec::Triang {
                p: a.p,
                delta: a.delta,
                budget: a.budget,
            };
            ("triang", inst, op)
        }
        kind => {
            let cs = load_order(&a.input)?;
            if a.p >= cs.len() {
                return Err(invalid("--p", format!("index {} out of range for {} elements", a.p, cs.len())));
            }
            let cloud = load_cloud(&a.input, a.coords.as_deref(), cs.len())?;
            let (name, op) = match kind {
                DimKind::Dm => ("dm", OperationSpec::Dm {
                    max_k: a.max_k,
                    budget: a.budget,
                }),
                DimKind::Catcher | DimKind::Compactness => {
                    if a.margin.is_some() && cloud.is_none() {
                        return Err(invalid("--margin", "needs coordinates (--coords)"));
                    }
                    let name = if matches!(kind, DimKind::Catcher) { "catcher" } else { "compactness" };
                    (name, OperationSpec::Catcher {
                        p: a.p,
                        margin: a.margin,
                        budget: a.budget,
                    })
                }
                DimKind::Stoica => {
                    if cloud.is_none() {
                        return Err(invalid("--coords", "stoica needs coordinates"));
                    }
                    ("stoica", OperationSpec::Stoica {
                        p: a.p,
                        eps: a.eps,
                        kappa: a.kappa,
                        r: a.r,
                        max_size: a.max_size,
                    })
                }
                DimKind::Ml => ("ml", OperationSpec::Ml {
                    p: a.p,
                    l: a.l,
                    max_k: a.max_k,
                    budget: a.budget,
                }),
                DimKind::Triang => unreachable!(),
            };
            let inst = Instance {
                cs,
                cloud,
                metric: None,
            };
            (name, inst, op)
        }
    };
    let res: DimensionResult = run_operation(&op, &inst).map_err(|e| flag_error(e, dim_flag))?;
    let mut value = serde_json::to_value(&res)?;
    value["dimension"] = json!(name);
    if matches!(a.kind, DimKind::Compactness) {
        value["computed_as"] = json!("catcher");
    }
    write_output(a.out.as_deref(), &to_json(&value)?)?;
    if res.status.is_bounded_only() {
        return Err(BudgetExhausted.into());
    }
    Ok(())
}

fn cmd_embed(a: &EmbedArgs) -> anyhow::Result<()> {
    let src = load_doc(&a.src, "--src")?;
    let dst = load_doc(&a.dst, "--dst")?;
    let outcome = match a.mode {
        ModeArg::Embed => order_embedding_exists(&src, &dst, a.budget),
        ModeArg::Inject => monotone_injection_exists(&src, &dst, a.budget),
    };
    let verdict = match &outcome {
        SearchOutcome::Yes { .. } => "yes",
        SearchOutcome::No { .. } => "no",
        SearchOutcome::Exhausted { .. } => "exhausted",
    };
    let mode = match a.mode {
        ModeArg::Embed => EmbedMode::Embedding,
        ModeArg::Inject => EmbedMode::MonotoneInjection,
    };
    let out = json!({
        "verdict": verdict,
        "mode": mode,
        "nodes": outcome.nodes(),
        "certificate": outcome.certificate(),
    });
    write_output(a.out.as_deref(), &to_json(&out)?)?;
    if matches!(outcome, SearchOutcome::Exhausted { .. }) {
        return Err(BudgetExhausted.into());
    }
    Ok(())
}

fn load_doc(path: &Path, flag: &str) -> anyhow::Result<CausalSet> {
    let doc: CausalSetDoc = read_json(path, flag)?;
    doc.to_causal_set().map_err(|e| invalid(flag, e))
}

fn cmd_sweep(a: &SweepArgs) -> anyhow::Result<()> {
    let mut manifest: ExperimentSpec = read_json(&a.config, "--config")?;
    if let Some(s) = &a.seeds {
        manifest.seeds = parse_seeds(s)?;
    }
    if a.timing {
        manifest.timing = true;
    }
    let rows = run_experiment(&manifest).map_err(|e| flag_error(e, |_| "--config"))?;
    let path = a.out.clone().or_else(|| manifest.output.as_ref().map(|o| PathBuf::from(&o.path)));
    let format = a.format.or(manifest.output.as_ref().map(|o| o.format)).unwrap_or_default();
    let mut buf = Vec::new();
    report::emit_report(&rows, format, &mut buf)?;
    write_output(path.as_deref(), std::str::from_utf8(&buf)?)?;
    if rows.iter().any(|r| matches!(r.status.as_str(), "lower_bound" | "upper_bound" | "interval" | "heuristic")) {
        return Err(BudgetExhausted.into());
    }
    Ok(())
}

fn cmd_report(a: &ReportArgs) -> anyhow::Result<()> {
    let text = fs::read_to_string(&a.input).with_context(|| format!("--in: cannot read {}", a.input.display()))?;
    let from = a.from.unwrap_or(match a.input.extension().and_then(|e| e.to_str()) {
        Some("json") => Format::Json,
        _ => Format::Csv,
    });
    let rows = report::read_rows(&text, from).map_err(|e| invalid("--in", e))?;
    if a.summary {
        return write_output(a.out.as_deref(), &report::summarize(&rows));
    }
    let mut buf = Vec::new();
    report::emit_report(&rows, a.format, &mut buf)?;
    write_output(a.out.as_deref(), std::str::from_utf8(&buf)?)
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("ORDIM_THREADS") {
        let n: usize = v
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| invalid("ORDIM_THREADS", format!("expected a positive integer, got `{v}`")))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    configure_threads()?;
    match &cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Rel(a) => cmd_rel(a),
        Command::Dim(a) => cmd_dim(a),
        Command::Embed(a) => cmd_embed(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Report(a) => cmd_report(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<BudgetExhausted>() => {
            eprintln!("warning: {e}");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let validation = e.is::<Invalid>() || e.is::<ordim::Error>() || e.is::<serde_json::Error>();
            ExitCode::from(if validation { 2 } else { 1 })
        }
    }
}
