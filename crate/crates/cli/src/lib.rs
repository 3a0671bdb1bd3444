//! Command-line runner for the capacity experiments.
//!
//! `hdc superposition` and `hdc spatial` sweep the experiments and write a
//! records CSV, summary CSVs and a `manifest.json` with file digests.
//! `hdc heatmap` encodes a scene from a CSV file and writes one similarity
//! heatmap per class. `hdc selftest` compares fast paths with slow oracles.
//!
//! Settings resolve as: command-line flag, then the `--config` JSON file,
//! then built-in defaults. The seed additionally falls back to the
//! `HDC_SEED` environment variable before the default of 0.

pub mod args;
pub mod manifest;
pub mod selftest;

use std::collections::BTreeSet;
use std::fs::{self, File};
use std::io::BufReader;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;

use hdc_core::io::{read_scene_csv, write_heatmap_csv, write_raw_records_csv, write_records_csv, write_summary_csv};
use hdc_core::lab::sort_records;
use hdc_core::rng::{purpose, SeedTree};
use hdc_core::{
    decode_peaks, query_class, run_spatial, run_superposition, summarize, thresholds, GridProbe, GridSpec, Grouping,
    LabeledScene, Readout, SimilarityHeatmap, SpatialAxes, SpatialConfig, SuperpositionConfig,
};

use args::{GridArg, IntList, Range2};
use manifest::OutputDir;

pub const SEED_ENV: &str = "HDC_SEED";

#[derive(Debug, Parser)]
#[command(name = "hdc", version, about = "Capacity experiments for holographic reduced representations")]
pub struct Cli {
    /// Worker threads for the experiment pool [default: number of logical cores]
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bundle n random vectors and compare the bundle with members and outsiders
    Superposition(SuperpositionArgs),
    /// Encode labeled scenes for every partition of n objects and read each class back
    Spatial(SpatialArgs),
    /// Write per-class similarity heatmaps for a scene CSV (class_id,x,y)
    Heatmap(HeatmapArgs),
    /// Check the fast algebra and partition code against slow reference implementations
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Master seed [default: $HDC_SEED, else 0]
    #[arg(long)]
    pub seed: Option<u64>,
    /// JSON file with settings; flags given on the command line take precedence
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory
    #[arg(long, default_value = "hdc-out")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SuperpositionArgs {
    /// Vector dimensions, e.g. 256,512,1024 [default: 256,512,1024]
    #[arg(long)]
    pub dims: Option<IntList>,
    /// Bundle sizes: values, inclusive ranges a..b, stepped ranges a..b:step [default: 1,5..200:5]
    #[arg(long)]
    pub n: Option<IntList>,
    /// Random vocabularies per (dim, n) [default: 3]
    #[arg(long)]
    pub repeats: Option<usize>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct SpatialArgs {
    /// Vector dimensions [default: 256,512,1024]
    #[arg(long)]
    pub dims: Option<IntList>,
    /// Total objects per scene: values, a..b, a..b:step [default: 1..12]
    #[arg(long)]
    pub n: Option<IntList>,
    /// Trials per (dim, n, partition) [default: 3]
    #[arg(long)]
    pub trials: Option<usize>,
    /// Half-width of the per-axis membership box [default: 0.4]
    #[arg(long, allow_hyphen_values = true)]
    pub eps: Option<f64>,
    /// Sample this many partitions when n has more [default: none; required for n > 15]
    #[arg(long)]
    pub max_partitions: Option<usize>,
    /// Heatmap grid as x_min,x_max,y_min,y_max,nx,ny [default: -5,5,-5,5,41,41]
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<GridArg>,
    /// Object positions are uniform in [lo,hi]^2, given as lo,hi [default: -4,4]
    #[arg(long, allow_hyphen_values = true)]
    pub coord_range: Option<Range2>,
    /// Place all objects of a class at one shared position [default: off]
    #[arg(long)]
    pub duplicate_positions: bool,
    /// Read heatmaps as raw dot products instead of cosines [default: off]
    #[arg(long)]
    pub raw_query: bool,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct HeatmapArgs {
    /// Scene CSV with header class_id,x,y
    #[arg(long)]
    pub scene: PathBuf,
    /// Vector dimension
    #[arg(long, default_value_t = 512)]
    pub dim: usize,
    /// Heatmap grid as x_min,x_max,y_min,y_max,nx,ny [default: -5,5,-5,5,41,41]
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<GridArg>,
    /// Keep the sign of similarities instead of taking absolute values [default: off]
    #[arg(long)]
    pub signed: bool,
    /// Raw dot products instead of cosines [default: off]
    #[arg(long)]
    pub raw: bool,
    /// Master seed [default: $HDC_SEED, else 0]
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output directory
    #[arg(long, default_value = "hdc-out")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// Master seed [default: $HDC_SEED, else 0]
    #[arg(long)]
    pub seed: Option<u64>,
}

/// Parses `args` (program name first) and runs, as the `hdc` binary would.
pub fn run_args<I, T>(args: I) -> Result<u8>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run(Cli::try_parse_from(args)?)
}

/// Runs a parsed command line; returns the process exit code.
pub fn run(cli: Cli) -> Result<u8> {
    let workers = match cli.workers {
        Some(0) => bail!("--workers must be at least 1"),
        Some(w) => w,
        None => std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build().context("cannot start worker pool")?;
    pool.install(|| match cli.command {
        Command::Superposition(a) => cmd_superposition(a),
        Command::Spatial(a) => cmd_spatial(a),
        Command::Heatmap(a) => cmd_heatmap(a),
        Command::Selftest(a) => cmd_selftest(a),
    })
}

fn env_seed() -> Result<Option<u64>> {
    match std::env::var(SEED_ENV) {
        Ok(s) => Ok(Some(s.trim().parse().with_context(|| format!("{SEED_ENV}={s:?} is not an unsigned integer"))?)),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(e).context(SEED_ENV),
    }
}

/// Flag, then config file, then `HDC_SEED`, then 0.
fn resolve_seed(flag: Option<u64>, from_config: Option<u64>) -> Result<u64> {
    if let Some(s) = flag.or(from_config) {
        return Ok(s);
    }
    Ok(env_seed()?.unwrap_or(0))
}

/// Loads a config file, also reporting whether it set a seed.
fn load_config<T: DeserializeOwned + Default>(path: Option<&Path>) -> Result<(T, Option<u64>)> {
    let Some(path) = path else { return Ok((T::default(), None)) };
    let text = fs::read_to_string(path).with_context(|| format!("cannot read config {}", path.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).with_context(|| format!("config {} is not valid JSON", path.display()))?;
    let seed = match value.get("seed") {
        Some(s) => {
            Some(s.as_u64().with_context(|| format!("config {}: seed must be an unsigned integer", path.display()))?)
        }
        None => None,
    };
    let config = serde_json::from_value(value).with_context(|| format!("invalid config {}", path.display()))?;
    Ok((config, seed))
}

fn csv_bytes(write: impl FnOnce(&mut Vec<u8>) -> hdc_core::Result<()>) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    write(&mut buf)?;
    Ok(buf)
}

fn to_json<T: Serialize>(value: &T) -> Result<serde_json::Value> {
    Ok(serde_json::to_value(value)?)
}

fn report(out: &OutputDir, files: usize) {
    println!("wrote {} files and {} to {}", files, manifest::MANIFEST_FILE, out.root().display());
}

/// Resolved superposition settings for the given flags.
pub fn superposition_config(a: &SuperpositionArgs) -> Result<SuperpositionConfig> {
    let (mut cfg, config_seed): (SuperpositionConfig, _) = load_config(a.common.config.as_deref())?;
    if let Some(d) = &a.dims {
        cfg.dims = d.0.clone();
    }
    if let Some(n) = &a.n {
        cfg.n_values = n.0.clone();
    }
    if let Some(r) = a.repeats {
        cfg.vocab_repeats = r;
    }
    cfg.seed = resolve_seed(a.common.seed, config_seed)?;
    cfg.validate()?;
    Ok(cfg)
}

fn cmd_superposition(a: SuperpositionArgs) -> Result<u8> {
    let cfg = superposition_config(&a)?;
    let mut records = run_superposition(&cfg)?;
    sort_records(&mut records);
    let mut out = OutputDir::create(&a.common.out)?;
    out.write("records.csv", &csv_bytes(|w| write_records_csv(w, &records))?)?;
    out.write("raw_records.csv", &csv_bytes(|w| write_raw_records_csv(w, &records))?)?;
    let summary = summarize(&records, Grouping::TotalObjects)?;
    out.write("summary_by_n.csv", &csv_bytes(|w| write_summary_csv(w, &summary))?)?;
    report(&out, 3);
    let notes = vec![
        "similarity column holds cosine readings; raw_records.csv holds the raw dot products".to_string(),
        "summary rows pool samples across all vocabularies of a (dim, n) point".to_string(),
    ];
    out.finish("superposition", cfg.seed, to_json(&cfg)?, notes)?;
    Ok(0)
}

/// Resolved spatial settings for the given flags.
pub fn spatial_config(a: &SpatialArgs) -> Result<SpatialConfig> {
    let (mut cfg, config_seed): (SpatialConfig, _) = load_config(a.common.config.as_deref())?;
    if let Some(d) = &a.dims {
        cfg.dims = d.0.clone();
    }
    if let Some(n) = &a.n {
        cfg.n_values = n.0.clone();
    }
    if let Some(t) = a.trials {
        cfg.trials = t;
    }
    if let Some(e) = a.eps {
        cfg.membership_eps = e;
    }
    if let Some(m) = a.max_partitions {
        cfg.max_partitions = Some(m);
    }
    if let Some(g) = a.grid {
        cfg.grid = g.0;
    }
    if let Some(r) = a.coord_range {
        cfg.coord_range = r.0;
    }
    if a.duplicate_positions {
        cfg.duplicate_positions = true;
    }
    if a.raw_query {
        cfg.normalize_query = false;
    }
    cfg.seed = resolve_seed(a.common.seed, config_seed)?;
    cfg.validate()?;
    Ok(cfg)
}

fn cmd_spatial(a: SpatialArgs) -> Result<u8> {
    let cfg = spatial_config(&a)?;
    let mut records = run_spatial(&cfg)?;
    sort_records(&mut records);
    let mut out = OutputDir::create(&a.common.out)?;
    out.write("records.csv", &csv_bytes(|w| write_records_csv(w, &records))?)?;
    let by_n = summarize(&records, Grouping::TotalObjects)?;
    out.write("summary_by_n.csv", &csv_bytes(|w| write_summary_csv(w, &by_n))?)?;
    let by_k = summarize(&records, Grouping::ClassSize)?;
    out.write("summary_by_class_size.csv", &csv_bytes(|w| write_summary_csv(w, &by_k))?)?;
    report(&out, 3);
    let notes = vec![
        "one record per class query; member cells lie inside the per-axis eps box of an object of that class"
            .to_string(),
        "summary_by_class_size.csv pools class queries of equal class size across partitions and n".to_string(),
    ];
    out.finish("spatial", cfg.seed, to_json(&cfg)?, notes)?;
    Ok(0)
}

#[derive(Debug, Serialize)]
struct HeatmapSettings<'a> {
    scene: &'a Path,
    dim: usize,
    grid: GridSpec,
    readout: Readout,
    classes: Vec<usize>,
    peak_threshold: f64,
}

fn cmd_heatmap(a: HeatmapArgs) -> Result<u8> {
    let seed = resolve_seed(a.seed, None)?;
    let grid = a.grid.map(|g| g.0).unwrap_or_default();
    let file = File::open(&a.scene).with_context(|| format!("cannot open scene {}", a.scene.display()))?;
    let objects = read_scene_csv(BufReader::new(file)).with_context(|| format!("scene {}", a.scene.display()))?;
    let classes: BTreeSet<usize> = objects.iter().map(|o| o.class_id).collect();
    let vocabulary = classes.last().map_or(0, |&c| c + 1);

    let tree = SeedTree::new(seed);
    let path = |tag: u64| [purpose::HEATMAP, a.dim as u64, tag];
    let axes =
        SpatialAxes::random(a.dim, &mut tree.stream(&path(purpose::AXIS_X)), &mut tree.stream(&path(purpose::AXIS_Y)))?;
    let scene =
        LabeledScene::with_random_vocabulary(objects, vocabulary, a.dim, &mut tree.stream(&path(purpose::VOCABULARY)))?;
    let encoded = axes.encode_scene(&scene)?;
    let probe = GridProbe::new(&axes, &grid)?;
    let readout = Readout { normalize: !a.raw, absolute: !a.signed };
    let peak_threshold = thresholds(a.dim).strong;

    let mut out = OutputDir::create(&a.out)?;
    let mut maps = Vec::with_capacity(classes.len());
    let mut peaks = String::from("class_id,x,y,value\n");
    for &class_id in &classes {
        let hm = probe.heatmap(&query_class(&encoded, scene.label(class_id)?)?, readout)?;
        out.write(&format!("class_{class_id}.csv"), &csv_bytes(|w| write_heatmap_csv(w, &hm))?)?;
        for p in decode_peaks(&hm, peak_threshold) {
            peaks.push_str(&format!("{class_id},{},{},{}\n", p.x, p.y, p.value));
        }
        maps.push(hm);
    }
    let joint = SimilarityHeatmap::max_of(&maps)?;
    out.write("joint.csv", &csv_bytes(|w| write_heatmap_csv(w, &joint))?)?;
    out.write("peaks.csv", peaks.as_bytes())?;
    report(&out, classes.len() + 2);
    let settings = HeatmapSettings {
        scene: &a.scene,
        dim: a.dim,
        grid,
        readout,
        classes: classes.into_iter().collect(),
        peak_threshold,
    };
    let notes = vec!["joint.csv is the cellwise maximum over the per-class heatmaps".to_string()];
    out.finish("heatmap", seed, to_json(&settings)?, notes)?;
    Ok(0)
}

fn cmd_selftest(a: SelftestArgs) -> Result<u8> {
    let seed = resolve_seed(a.seed, None)?;
    let checks = selftest::run_checks(seed)?;
    for c in &checks {
        println!("{c}");
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    println!("{} of {} checks passed", checks.len() - failed, checks.len());
    Ok(if failed == 0 { 0 } else { 1 })
}
