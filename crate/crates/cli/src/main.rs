//! `neurohex`: convert OSM extracts to hex models, render and summarise
//! them, and print the operation-count benchmark.
//!
//! Exit codes: 0 success, 1 pipeline or model error, 2 usage or I/O error.

use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use flate2::read::MultiGzDecoder;
use neurohex::oracle::{bench, bench_csv, Workload};
use neurohex::Quantization;
use osm2hex::output::stats_json;
use osm2hex::{
    read_model, render_svg, run_pipeline, write_model, BBox, LonLat, Model, PipelineConfig,
    PipelineError, ResolutionPolicy, Scale, Tier,
};
use serde::Deserialize;

#[derive(Parser)]
#[command(
    name = "neurohex",
    version,
    about = "Hex-lattice spatial abstraction of OpenStreetMap data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convert an OSM XML extract (optionally gzipped) to a model file.
    Convert {
        input: PathBuf,
        /// W,S,E,N in decimal degrees.
        #[arg(long, allow_hyphen_values = true)]
        bbox: Option<BBox>,
        /// metro or zoom.
        #[arg(long)]
        policy: Option<Scale>,
        /// Cell pitch in meters.
        #[arg(long)]
        cell_size: Option<f64>,
        #[arg(long)]
        quantization_bits: Option<u32>,
        /// Model path; stdout when absent. Stats go next to it.
        #[arg(long)]
        out: Option<PathBuf>,
        /// JSON config file; flags override its values.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Render a model to SVG.
    Render {
        model: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print counts, per-tier breakdown and reduction ratios of a model.
    Stats { model: PathBuf },
    /// Print per-operation counts for both engines as CSV.
    Bench {
        /// Input coordinate bound, bits.
        #[arg(long, default_value_t = 16)]
        bits: u32,
        #[arg(long, default_value_t = 6)]
        quantization_bits: u32,
        #[arg(long, default_value_t = 256)]
        points: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(String),
    Pipeline(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Pipeline(_) => 1,
            CliError::Usage(_) | CliError::Io(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Io(m) | CliError::Pipeline(m) => m,
        }
    }
}

fn io_err(path: &Path, e: io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

fn pipeline_err(stage: &str, e: PipelineError) -> CliError {
    match e {
        PipelineError::Io(e) => CliError::Io(format!("{stage}: {e}")),
        e => CliError::Pipeline(format!("{stage}: {e}")),
    }
}

/// Policy in a config file: a preset name or a full policy object.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum PolicySpec {
    Preset(Scale),
    Full(ResolutionPolicy),
}

/// Config file schema. Every key is optional.
///
/// ```json
/// {
///   "bbox": "24.93,60.16,24.95,60.175",
///   "policy": "zoom",
///   "cell_size": 5.0,
///   "origin": [24.94, 60.17],
///   "quantization_bits": 6,
///   "out": "model.ndjson"
/// }
/// ```
///
/// `origin` absent or null puts the grid origin at the bounding box centre.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Config {
    bbox: Option<String>,
    policy: Option<PolicySpec>,
    cell_size: Option<f64>,
    origin: Option<LonLat>,
    quantization_bits: Option<u32>,
    out: Option<PathBuf>,
}

impl Config {
    fn load(path: &Path) -> Result<Config, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))
    }
}

fn open_input(path: &Path) -> Result<Box<dyn BufRead>, CliError> {
    let file = File::open(path).map_err(|e| io_err(path, e))?;
    let mut reader = BufReader::new(file);
    let gzipped = reader
        .fill_buf()
        .map_err(|e| io_err(path, e))?
        .starts_with(&[0x1f, 0x8b]);
    Ok(if gzipped {
        Box::new(BufReader::new(MultiGzDecoder::new(reader)))
    } else {
        Box::new(reader)
    })
}

fn write_output(out: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, bytes).map_err(|e| io_err(path, e)),
        None => io::stdout()
            .write_all(bytes)
            .map_err(|e| CliError::Io(format!("stdout: {e}"))),
    }
}

fn stats_path(model: &Path) -> PathBuf {
    let stem = model.file_stem().unwrap_or_default().to_string_lossy();
    let stem = stem.strip_suffix(".model").unwrap_or(&stem);
    model.with_file_name(format!("{stem}.stats.json"))
}

fn load_model(path: &Path) -> Result<Model, CliError> {
    let file = File::open(path).map_err(|e| io_err(path, e))?;
    read_model(BufReader::new(file)).map_err(|e| pipeline_err(&path.display().to_string(), e))
}

struct ConvertArgs {
    input: PathBuf,
    bbox: Option<BBox>,
    policy: Option<Scale>,
    cell_size: Option<f64>,
    quantization_bits: Option<u32>,
    out: Option<PathBuf>,
    config: Option<PathBuf>,
}

fn cmd_convert(args: ConvertArgs) -> Result<(), CliError> {
    let config = match &args.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    let bbox = match (args.bbox, &config.bbox) {
        (Some(b), _) => b,
        (None, Some(text)) => text
            .parse()
            .map_err(|e| CliError::Usage(format!("config bbox: {e}")))?,
        (None, None) => return Err(CliError::Usage("--bbox is required".into())),
    };
    let mut policy = match (args.policy, config.policy) {
        (Some(scale), _) => ResolutionPolicy::for_scale(scale),
        (None, Some(PolicySpec::Preset(scale))) => ResolutionPolicy::for_scale(scale),
        (None, Some(PolicySpec::Full(p))) => p,
        (None, None) => ResolutionPolicy::metro(),
    };
    if let Some(size) = args.cell_size.or(config.cell_size) {
        policy.cell_size = size;
    }
    policy
        .validate()
        .map_err(|e| CliError::Usage(format!("policy: {e}")))?;
    let bits = args
        .quantization_bits
        .or(config.quantization_bits)
        .unwrap_or(Quantization::DEFAULT.bits());
    let quantization = Quantization::from_bits(bits)
        .map_err(|e| CliError::Usage(format!("--quantization-bits: {e}")))?;
    let out = args.out.or(config.out);

    let input = open_input(&args.input)?;
    let run_config = PipelineConfig {
        policy: policy.clone(),
        origin: config.origin,
        quantization,
    };
    let started = Instant::now();
    let output = run_pipeline(input, &bbox, &run_config)
        .map_err(|e| pipeline_err(&format!("convert {}", args.input.display()), e))?;
    log::info!(
        "converted {} in {:.2?}: {} objects, {} primitives",
        args.input.display(),
        started.elapsed(),
        output.stats.kept_object_count,
        output.stats.primitive_count
    );
    let model = Model::from_run(&output, bbox, &policy, quantization.levels());
    let mut buf = Vec::new();
    write_model(&mut buf, &model).map_err(|e| CliError::Io(e.to_string()))?;
    write_output(out.as_deref(), &buf)?;
    if let Some(path) = &out {
        let stats = stats_path(path);
        std::fs::write(&stats, stats_json(&output.stats)).map_err(|e| io_err(&stats, e))?;
    }
    Ok(())
}

fn cmd_render(model: &Path, out: Option<&Path>) -> Result<(), CliError> {
    let svg = render_svg(&load_model(model)?);
    write_output(out, svg.as_bytes())
}

fn summary(model: &Model) -> String {
    let stats = model
        .header
        .as_ref()
        .map(|h| h.stats.clone())
        .unwrap_or_default();
    let mut s = String::new();
    let mut line = |text: String| {
        s.push_str(&text);
        s.push('\n');
    };
    if let Some(h) = &model.header {
        line(format!("policy            {:?}", h.policy.scale).to_lowercase());
        line(format!("cell size         {} m", h.grid.cell_size));
    }
    line(format!("raw geometries    {}", stats.raw_geometry_count));
    line(format!("raw vertices      {}", stats.raw_vertex_count));
    line(format!(
        "simplified        {} features, {} vertices",
        stats.post_simplification_feature_count, stats.post_simplification_vertex_count
    ));
    line(format!(
        "kept              {} objects, {} vertices",
        stats.kept_object_count, stats.kept_vertex_count
    ));
    line(format!("primitives        {}", stats.primitive_count));
    line(format!("inaccurate        {}", stats.inaccurate_objects));
    line(format!("objects in file   {}", model.objects.len()));
    for tier in Tier::KEPT {
        let t = stats.tiers.get(tier);
        line(format!(
            "  {:<15} {} objects, {} primitives",
            tier.name(),
            t.objects,
            t.primitives
        ));
    }
    line(format!(
        "simplification    {:.4}",
        stats.ratios.simplification
    ));
    line(format!("filtering         {:.4}", stats.ratios.filtering));
    line(format!("primitive         {:.4}", stats.ratios.primitive));
    s
}

fn cmd_stats(model: &Path) -> Result<(), CliError> {
    write_output(None, summary(&load_model(model)?).as_bytes())
}

fn cmd_bench(
    bits: u32,
    quantization_bits: u32,
    points: usize,
    seed: u64,
    out: Option<&Path>,
) -> Result<(), CliError> {
    if !(3..=40).contains(&bits) {
        return Err(CliError::Usage("--bits must be between 3 and 40".into()));
    }
    if points == 0 {
        return Err(CliError::Usage("--points must be positive".into()));
    }
    let quant = Quantization::from_bits(quantization_bits)
        .map_err(|e| CliError::Usage(format!("--quantization-bits: {e}")))?;
    let rows = bench(&Workload::random(points, bits, quant, seed));
    write_output(out, bench_csv(&rows).as_bytes())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Convert {
            input,
            bbox,
            policy,
            cell_size,
            quantization_bits,
            out,
            config,
        } => cmd_convert(ConvertArgs {
            input,
            bbox,
            policy,
            cell_size,
            quantization_bits,
            out,
            config,
        }),
        Command::Render { model, out } => cmd_render(&model, out.as_deref()),
        Command::Stats { model } => cmd_stats(&model),
        Command::Bench {
            bits,
            quantization_bits,
            points,
            seed,
            out,
        } => cmd_bench(bits, quantization_bits, points, seed, out.as_deref()),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
