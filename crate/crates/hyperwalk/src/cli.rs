//! Command-line front end. [`run`] returns the process exit code: 0 on success (and a
//! true verdict for `check`), 1 for a false `check` verdict, 2 on any error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperwalk_core::criterion::{
    criterion_gap, fuchsian_criterion_for, sweep, MuFamily, Parity, SweepRequest, DEFAULT_SWEEP_CAP,
};
use hyperwalk_core::walksim::{divergence_probe, rotation_check, RotationCheck, DEFAULT_STOP_RADIUS};
use hyperwalk_core::{Family, GroupModel, StepMeasure, WalkConfig};
use serde::Serialize;

use crate::config::FileConfig;
use crate::manifest::{sidecar_path, RunManifest};
use crate::output;
use crate::parallel::Runner;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "hyperwalk", version, about = "Random walks on hyperbolic reflection and Fuchsian groups")]
pub struct Cli {
    /// TOML file with default values for any flag (flags win)
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Output format on stdout
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads for Monte Carlo trials (default: one per core)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Where to write the run manifest (default: next to each output file, else stderr)
    #[arg(long, global = true, value_name = "PATH")]
    pub manifest: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct GroupArgs {
    /// reflection or fuchsian
    #[arg(long)]
    pub family: Option<String>,
    /// Number of polygon sides
    #[arg(short = 'n', long = "n")]
    pub n: Option<u32>,
    /// Interior angle 2π/m
    #[arg(short = 'm', long = "m")]
    pub m: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compare translation length and walk weight for one word
    Check {
        #[command(flatten)]
        group: GroupArgs,
        /// `uniform` or comma-separated weights by generator
        #[arg(long)]
        mu: Option<String>,
        /// Comma-separated generator labels (default: the canonical word)
        #[arg(long)]
        word: Option<String>,
    },
    /// Evaluate the criterion on a grid of (n, m)
    Sweep {
        #[arg(long)]
        family: Option<String>,
        #[arg(long = "n-min")]
        n_min: Option<u32>,
        #[arg(long = "n-max")]
        n_max: Option<u32>,
        #[arg(long = "m-min")]
        m_min: Option<u32>,
        #[arg(long = "m-max")]
        m_max: Option<u32>,
        /// any, even or odd (reflection family)
        #[arg(long)]
        parity: Option<String>,
        #[arg(long)]
        mu: Option<String>,
        /// Largest allowed n or m
        #[arg(long)]
        cap: Option<u32>,
        #[arg(long = "out-csv")]
        out_csv: Option<PathBuf>,
        #[arg(long = "out-svg")]
        out_svg: Option<PathBuf>,
    },
    /// Estimate drift, entropy and the fundamental-inequality gap
    Simulate {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        mu: Option<String>,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Growth rate used in the gap (default 1)
        #[arg(long)]
        volume: Option<f64>,
    },
    /// Count group elements in balls of growing radius
    Ball {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        rmax: Option<f64>,
        /// Radius grid spacing
        #[arg(long)]
        step: Option<f64>,
        #[arg(long = "out-csv")]
        out_csv: Option<PathBuf>,
    },
    /// Sample exit angles of walks and bin them
    Boundary {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        mu: Option<String>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long = "stop-radius")]
        stop_radius: Option<f64>,
        /// Histogram bins, a multiple of n (default 8n)
        #[arg(long)]
        bins: Option<usize>,
        #[arg(long = "out-csv")]
        out_csv: Option<PathBuf>,
    },
    /// Geometric distance against the first-passage Green bound along powers of a word
    Probe {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        mu: Option<String>,
        #[arg(long)]
        word: Option<String>,
        #[arg(long = "k-max")]
        k_max: Option<usize>,
        /// Search horizon in steps
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Re-run the command recorded in a manifest
    Replay {
        path: PathBuf,
    },
}

struct RunContext {
    file: FileConfig,
    format: Option<Format>,
    threads: Option<usize>,
    manifest: Option<PathBuf>,
}

impl RunContext {
    fn format(&self, default: Format) -> anyhow::Result<Format> {
        if let Some(f) = self.format {
            return Ok(f);
        }
        match self.file.format.as_deref() {
            None => Ok(default),
            Some(s) => Format::from_str(s, true).map_err(|_| anyhow!("unknown format {s:?} in config")),
        }
    }

    fn runner(&self) -> anyhow::Result<Runner> {
        Runner::new(self.threads.or(self.file.threads))
    }

    fn emit_manifest(&self, manifest: &RunManifest, outputs: &[&Path]) -> anyhow::Result<()> {
        if let Some(path) = &self.manifest {
            return manifest.write(path);
        }
        if outputs.is_empty() {
            eprintln!("manifest: {}", serde_json::to_string(manifest)?);
        }
        for out in outputs {
            manifest.write(&sidecar_path(out))?;
        }
        Ok(())
    }
}

fn require<T>(value: Option<T>, name: &str) -> anyhow::Result<T> {
    value.ok_or_else(|| anyhow!("missing --{name} (give the flag or set it in --config)"))
}

struct Params(BTreeMap<String, String>);

impl Params {
    fn new() -> Self {
        Params(BTreeMap::new())
    }

    fn set(&mut self, key: &str, value: impl ToString) {
        self.0.insert(key.into(), value.to_string());
    }

    fn set_path(&mut self, key: &str, value: &Option<PathBuf>) {
        if let Some(p) = value {
            self.set(key, p.display());
        }
    }
}

fn format_name(f: Format) -> &'static str {
    match f {
        Format::Json => "json",
        Format::Text => "text",
    }
}

fn resolve_group(ctx: &RunContext, g: &GroupArgs, params: &mut Params) -> anyhow::Result<GroupModel> {
    let family: Family = require(g.family.clone().or(ctx.file.family.clone()), "family")?.parse()?;
    let n = require(g.n.or(ctx.file.n), "n")?;
    let m = require(g.m.or(ctx.file.m), "m")?;
    params.set("family", family);
    params.set("n", n);
    params.set("m", m);
    Ok(GroupModel::build(family, n, m)?)
}

fn parse_weights(spec: &str) -> anyhow::Result<Vec<f64>> {
    spec.split(',')
        .map(|w| w.trim().parse::<f64>().with_context(|| format!("bad weight {w:?} in --mu")))
        .collect()
}

fn resolve_mu(ctx: &RunContext, flag: &Option<String>, model: &GroupModel, params: &mut Params) -> anyhow::Result<StepMeasure> {
    let spec = flag.clone().or(ctx.file.mu.clone()).unwrap_or_else(|| "uniform".into());
    params.set("mu", &spec);
    if spec.trim().eq_ignore_ascii_case("uniform") {
        return Ok(StepMeasure::uniform(model.rank()));
    }
    let weights = parse_weights(&spec)?;
    if weights.len() != model.rank() {
        bail!("--mu has {} weights but the group has {} generators", weights.len(), model.rank());
    }
    Ok(StepMeasure::normalized(weights)?)
}

fn print_json<T: Serialize>(value: &T) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}

fn dispatch(cli: Cli) -> anyhow::Result<i32> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let ctx = RunContext {
        file,
        format: cli.format,
        threads: cli.threads,
        manifest: cli.manifest,
    };
    match cli.command {
        Command::Check { group, mu, word } => check(&ctx, &group, &mu, &word),
        Command::Sweep {
            family,
            n_min,
            n_max,
            m_min,
            m_max,
            parity,
            mu,
            cap,
            out_csv,
            out_svg,
        } => {
            let f = &ctx.file;
            let family: Family = require(family.or(f.family.clone()), "family")?.parse()?;
            let default_m_min = if family == Family::Fuchsian { 3 } else { 4 };
            let req = SweepRequest {
                family,
                n_range: (n_min.or(f.n_min).unwrap_or(4), n_max.or(f.n_max).unwrap_or(DEFAULT_SWEEP_CAP)),
                m_range: (
                    m_min.or(f.m_min).unwrap_or(default_m_min),
                    m_max.or(f.m_max).unwrap_or(DEFAULT_SWEEP_CAP),
                ),
                parity: parse_parity(parity.or(f.parity.clone()).as_deref())?,
                mu: match mu.or(f.mu.clone()) {
                    None => MuFamily::Uniform,
                    Some(s) if s.trim().eq_ignore_ascii_case("uniform") => MuFamily::Uniform,
                    Some(s) => MuFamily::Custom(parse_weights(&s)?),
                },
                cap: cap.or(f.cap).unwrap_or(DEFAULT_SWEEP_CAP),
            };
            let out_csv = out_csv.or(f.out_csv.clone());
            let out_svg = out_svg.or(f.out_svg.clone());
            run_sweep(&ctx, req, out_csv, out_svg)
        }
        Command::Simulate {
            group,
            mu,
            steps,
            trials,
            seed,
            volume,
        } => simulate(&ctx, &group, &mu, steps, trials, seed, volume),
        Command::Ball {
            group,
            rmax,
            step,
            out_csv,
        } => ball(&ctx, &group, rmax, step, out_csv),
        Command::Boundary {
            group,
            mu,
            trials,
            seed,
            stop_radius,
            bins,
            out_csv,
        } => boundary(&ctx, &group, &mu, trials, seed, stop_radius, bins, out_csv),
        Command::Probe {
            group,
            mu,
            word,
            k_max,
            steps,
            trials,
            seed,
        } => probe(&ctx, &group, &mu, &word, k_max, steps, trials, seed),
        Command::Replay { path } => {
            let manifest = RunManifest::read(&path)?;
            let mut args = vec!["hyperwalk".to_string()];
            args.extend(manifest.to_args());
            Ok(run(args))
        }
    }
}

fn parse_parity(s: Option<&str>) -> anyhow::Result<Parity> {
    match s.map(|s| s.trim().to_ascii_lowercase()).as_deref() {
        None | Some("any") => Ok(Parity::Any),
        Some("even") => Ok(Parity::Even),
        Some("odd") => Ok(Parity::Odd),
        Some(other) => bail!("unknown parity {other:?} (expected any, even or odd)"),
    }
}

fn check(ctx: &RunContext, group: &GroupArgs, mu: &Option<String>, word: &Option<String>) -> anyhow::Result<i32> {
    let mut params = Params::new();
    let model = resolve_group(ctx, group, &mut params)?;
    let mu = resolve_mu(ctx, mu, &model, &mut params)?;
    let format = ctx.format(Format::Json)?;
    params.set("format", format_name(format));
    let report = match word.clone().or(ctx.file.word.clone()) {
        Some(text) => {
            params.set("word", &text);
            criterion_gap(&model, &mu, &model.parse_word(&text)?)?
        }
        None if model.family == Family::Fuchsian => fuchsian_criterion_for(&model, &mu)?,
        None => criterion_gap(&model, &mu, &model.canonical_word())?,
    };
    match format {
        Format::Json => print_json(&report)?,
        Format::Text => {
            println!("group: {} n={} m={}", report.family, report.n, report.m);
            println!("word: {}", report.word);
            println!("translation length: {:.12}", report.translation_length);
            println!("weight cost: {:.12}", report.weight_cost);
            println!("gap: {:.12}{}", report.gap, if report.borderline { " (borderline)" } else { "" });
            println!(
                "verdict: {}",
                if report.verdict { "true (criterion holds)" } else { "false (inconclusive)" }
            );
        }
    }
    ctx.emit_manifest(&RunManifest::new("check", params.0, 0, false), &[])?;
    Ok(if report.verdict { 0 } else { 1 })
}

#[derive(Serialize)]
struct SweepSummary<'a> {
    family: Family,
    pairs: usize,
    exceptional: &'a [(u32, u32)],
    rejected: &'a [(u32, u32)],
}

fn run_sweep(ctx: &RunContext, req: SweepRequest, out_csv: Option<PathBuf>, out_svg: Option<PathBuf>) -> anyhow::Result<i32> {
    let mut params = Params::new();
    let format = ctx.format(Format::Text)?;
    params.set("family", req.family);
    params.set("n-min", req.n_range.0);
    params.set("n-max", req.n_range.1);
    params.set("m-min", req.m_range.0);
    params.set("m-max", req.m_range.1);
    params.set(
        "parity",
        match req.parity {
            Parity::Any => "any",
            Parity::Even => "even",
            Parity::Odd => "odd",
        },
    );
    params.set(
        "mu",
        match &req.mu {
            MuFamily::Uniform => "uniform".to_string(),
            MuFamily::Custom(w) => w.iter().map(f64::to_string).collect::<Vec<_>>().join(","),
        },
    );
    params.set("cap", req.cap);
    params.set("format", format_name(format));
    params.set_path("out-csv", &out_csv);
    params.set_path("out-svg", &out_svg);

    let table = sweep(&req)?;
    if table.is_empty() {
        eprintln!("warning: no valid hyperbolic pairs in the requested ranges");
    }
    let mut outputs: Vec<&Path> = Vec::new();
    if let Some(path) = &out_csv {
        output::save(path, |f| output::write_region_csv(&table, f))?;
        outputs.push(path);
    }
    if let Some(path) = &out_svg {
        output::save(path, |f| {
            use std::io::Write;
            Ok(f.write_all(output::region_svg(&table).as_bytes())?)
        })?;
        outputs.push(path);
    }
    match format {
        Format::Json => print_json(&SweepSummary {
            family: table.family,
            pairs: table.pairs.len(),
            exceptional: &table.exceptional,
            rejected: &table.rejected,
        })?,
        Format::Text => {
            println!("{}", output::pair_set(&table.exceptional));
            eprintln!(
                "{} pairs evaluated, {} exceptional, {} not hyperbolic",
                table.pairs.len(),
                table.exceptional.len(),
                table.rejected.len()
            );
        }
    }
    ctx.emit_manifest(&RunManifest::new("sweep", params.0, 0, false), &outputs)?;
    Ok(0)
}

fn walk_config(
    ctx: &RunContext,
    group: &GroupArgs,
    mu: &Option<String>,
    trials: Option<usize>,
    seed: Option<u64>,
    default_trials: usize,
    params: &mut Params,
) -> anyhow::Result<WalkConfig> {
    let model = resolve_group(ctx, group, params)?;
    let mu = resolve_mu(ctx, mu, &model, params)?;
    let trials = trials.or(ctx.file.trials).unwrap_or(default_trials);
    let seed = seed.or(ctx.file.seed).unwrap_or(0);
    params.set("trials", trials);
    params.set("seed", seed);
    Ok(WalkConfig::new(model, mu).trials(trials).seed(seed))
}

fn simulate(
    ctx: &RunContext,
    group: &GroupArgs,
    mu: &Option<String>,
    steps: Option<usize>,
    trials: Option<usize>,
    seed: Option<u64>,
    volume: Option<f64>,
) -> anyhow::Result<i32> {
    let mut params = Params::new();
    let format = ctx.format(Format::Json)?;
    let cfg = walk_config(ctx, group, mu, trials, seed, 10_000, &mut params)?;
    let steps = steps.or(ctx.file.steps).unwrap_or(50);
    let volume = volume.or(ctx.file.volume).unwrap_or(1.0);
    params.set("steps", steps);
    params.set("volume", volume);
    params.set("format", format_name(format));
    let cfg = cfg.steps(steps).volume(volume);
    let stats = ctx.runner()?.stats(&cfg)?;
    if stats.short_horizon {
        eprintln!("warning: fewer than 50 steps; drift and entropy are far from their limits");
    }
    if stats.degenerate {
        eprintln!("warning: a single endpoint; the entropy estimate is degenerate");
    }
    match format {
        Format::Json => print_json(&stats)?,
        Format::Text => {
            println!("drift: {:.6} ± {:.6}", stats.drift_hat, stats.drift_stderr);
            println!("entropy: {:.6} ± {:.6} (plug-in, biased low)", stats.entropy_hat, stats.entropy_stderr);
            println!("volume: {}", stats.volume_hat);
            println!("gap drift·volume - entropy: {:.6} ± {:.6}", stats.fi_gap, stats.fi_stderr);
            println!("trials: {} steps: {} distinct endpoints: {}", stats.samples_used, stats.steps, stats.distinct_endpoints);
        }
    }
    ctx.emit_manifest(&RunManifest::new("simulate", params.0, cfg.seed, true), &[])?;
    Ok(0)
}

#[derive(Serialize)]
struct BallOutput<'a> {
    family: Family,
    n: u32,
    m: u32,
    census: &'a hyperwalk_core::BallCensus,
}

fn ball(ctx: &RunContext, group: &GroupArgs, rmax: Option<f64>, step: Option<f64>, out_csv: Option<PathBuf>) -> anyhow::Result<i32> {
    let mut params = Params::new();
    let format = ctx.format(Format::Text)?;
    let model = resolve_group(ctx, group, &mut params)?;
    let rmax = require(rmax.or(ctx.file.rmax), "rmax")?;
    let step = step.or(ctx.file.step).unwrap_or(0.5);
    let out_csv = out_csv.or(ctx.file.out_csv.clone());
    params.set("rmax", rmax);
    params.set("step", step);
    params.set("format", format_name(format));
    params.set_path("out-csv", &out_csv);
    let census = model.ball_census(rmax, step)?;
    let mut outputs: Vec<&Path> = Vec::new();
    if let Some(path) = &out_csv {
        output::save(path, |f| output::write_census_csv(&census, f))?;
        outputs.push(path);
    }
    match format {
        Format::Json => print_json(&BallOutput {
            family: model.family,
            n: model.n(),
            m: model.m(),
            census: &census,
        })?,
        Format::Text => {
            println!("slope: {:.6}", census.slope_estimate);
            println!("count: {} at R = {}", census.counts.last().copied().unwrap_or(0), rmax);
        }
    }
    ctx.emit_manifest(&RunManifest::new("ball", params.0, 0, false), &outputs)?;
    Ok(0)
}

#[derive(Serialize)]
struct BoundaryOutput {
    trials: usize,
    converged: usize,
    bin_centers: Vec<f64>,
    histogram: Vec<u64>,
    rotation: RotationCheck,
}

#[allow(clippy::too_many_arguments)]
fn boundary(
    ctx: &RunContext,
    group: &GroupArgs,
    mu: &Option<String>,
    trials: Option<usize>,
    seed: Option<u64>,
    stop_radius: Option<f64>,
    bins: Option<usize>,
    out_csv: Option<PathBuf>,
) -> anyhow::Result<i32> {
    let mut params = Params::new();
    let format = ctx.format(Format::Text)?;
    let mut cfg = walk_config(ctx, group, mu, trials, seed, 10_000, &mut params)?;
    cfg.stop_radius = stop_radius.or(ctx.file.stop_radius).unwrap_or(DEFAULT_STOP_RADIUS);
    cfg.bins = bins.or(ctx.file.bins);
    let bins = cfg.histogram_bins()?;
    let out_csv = out_csv.or(ctx.file.out_csv.clone());
    params.set("stop-radius", cfg.stop_radius);
    params.set("bins", bins);
    params.set("format", format_name(format));
    params.set_path("out-csv", &out_csv);
    let sample = ctx.runner()?.boundary(&cfg)?;
    let rotation = rotation_check(&sample, cfg.model.n());
    let mut outputs: Vec<&Path> = Vec::new();
    if let Some(path) = &out_csv {
        output::save(path, |f| output::write_histogram_csv(&sample, f))?;
        outputs.push(path);
    }
    match format {
        Format::Json => print_json(&BoundaryOutput {
            trials: sample.trials,
            converged: sample.converged,
            bin_centers: sample.bin_centers(),
            histogram: sample.histogram.clone(),
            rotation,
        })?,
        Format::Text => {
            println!("converged: {} of {}", sample.converged, sample.trials);
            println!(
                "rotation by 2π/{}: max |z| = {:.3}, chi2/bin = {:.3}, {}",
                cfg.model.n(),
                rotation.max_abs_z,
                rotation.chi2_per_bin,
                if rotation.passes { "symmetric" } else { "asymmetric" }
            );
        }
    }
    ctx.emit_manifest(&RunManifest::new("boundary", params.0, cfg.seed, true), &outputs)?;
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn probe(
    ctx: &RunContext,
    group: &GroupArgs,
    mu: &Option<String>,
    word: &Option<String>,
    k_max: Option<usize>,
    steps: Option<usize>,
    trials: Option<usize>,
    seed: Option<u64>,
) -> anyhow::Result<i32> {
    let mut params = Params::new();
    let format = ctx.format(Format::Json)?;
    let cfg = walk_config(ctx, group, mu, trials, seed, 10_000, &mut params)?;
    let g = match word.clone().or(ctx.file.word.clone()) {
        Some(text) => {
            params.set("word", &text);
            cfg.model.parse_word(&text)?
        }
        None => cfg.model.canonical_word(),
    };
    let k_max = k_max.or(ctx.file.k_max).unwrap_or(3);
    let steps = steps.or(ctx.file.steps).unwrap_or(200);
    params.set("k-max", k_max);
    params.set("steps", steps);
    params.set("format", format_name(format));
    let cfg = cfg.steps(steps);
    let rows = divergence_probe(&cfg, &g, k_max)?;
    match format {
        Format::Json => print_json(&rows)?,
        Format::Text => {
            println!("k\tgeo_distance\tgreen_upper\tweight_cost\tlower_gap");
            for r in &rows {
                println!(
                    "{}\t{:.9}\t{:.6}\t{:.9}\t{:.9}",
                    r.k, r.geo_distance, r.green_upper, r.weight_cost, r.lower_gap
                );
            }
        }
    }
    ctx.emit_manifest(&RunManifest::new("probe", params.0, cfg.seed, true), &[])?;
    Ok(0)
}
