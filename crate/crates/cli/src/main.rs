//! `netboard`: annotated network datasets in, dashboard bundle out.
//!
//! stdout only ever carries JSON; diagnostics go to stderr. Exit codes: 0 success,
//! 2 invalid input, 3 nothing to put on the dashboard, 4 environment failure.

mod serve;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use netboard_core::dashboard::{
    emit_bundle, to_json_text, validate_bundle, CustomizationManifest, ManifestFormat,
};
use netboard_core::dataset::Prefixes;
use netboard_core::metrics::PathCriterion;
use netboard_core::network::{BuildOptions, CoordinateScaling};
use netboard_core::pipeline::{PipelineConfig, PipelineError, Session};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "netboard",
    version,
    about = "Build analytics dashboards from annotated network datasets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report domain, dataset roles, column bindings and capability facts.
    Inspect(Inputs),
    /// List every catalog indicator and whether it applies.
    Discover(Inputs),
    /// Compute metrics and write a dashboard bundle.
    Build(BuildArgs),
    /// Check a bundle directory; prints diagnostics, exits 2 if there are any.
    Validate {
        /// Bundle directory.
        #[arg(long, alias = "out")]
        bundle: PathBuf,
    },
    /// Serve a bundle and viewer assets over HTTP until interrupted.
    Serve(serve::ServeArgs),
}

#[derive(Args)]
struct Inputs {
    /// Annotated node set (either file order is accepted).
    #[arg(long)]
    nodes: PathBuf,
    /// Annotated edge set.
    #[arg(long)]
    edges: PathBuf,
    /// Coordinate scaling: `auto` divides values beyond +-1000 by 10^6; a number divides every value.
    #[arg(long, default_value = "auto", value_parser = parse_scaling)]
    coord_divisor: CoordinateScaling,
    /// Edge class whose edges are route segments (repeatable; prefixed names allowed).
    #[arg(long = "route-class", default_value = "qoe-m:Bus_Route")]
    route_classes: Vec<String>,
}

#[derive(Args)]
struct BuildArgs {
    #[command(flatten)]
    inputs: Inputs,
    /// Output bundle directory.
    #[arg(long)]
    out: PathBuf,
    /// Customization manifest (.toml or .json).
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Length of top-k / bottom-k lists.
    #[arg(long, default_value_t = 10)]
    k: usize,
    /// Shortest-path criterion: hops or weight (time is not supported by the input format).
    #[arg(long, default_value = "hops")]
    criterion: PathCriterion,
    /// Omit the generation timestamp so identical inputs give identical bytes.
    #[arg(long)]
    reproducible: bool,
}

fn parse_scaling(s: &str) -> Result<CoordinateScaling, String> {
    if s == "auto" {
        return Ok(CoordinateScaling::Auto);
    }
    match s.parse::<f64>() {
        Ok(d) if d.is_finite() && d > 0.0 => Ok(CoordinateScaling::Divisor(d)),
        _ => Err(format!("expected `auto` or a positive number, got {s:?}")),
    }
}

fn expand_class(name: &str) -> String {
    if let Some((prefix, local)) = name.split_once(':') {
        if let Some(iri) = Prefixes::standard().expand(prefix, local) {
            return iri;
        }
    }
    name.to_string()
}

/// Marks errors caused by the environment rather than the input (exit 4).
#[derive(Debug)]
struct Environment;

impl std::fmt::Display for Environment {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("environment failure")
    }
}

impl std::error::Error for Environment {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Environment>().is_some() || err.chain().any(|c| c.is::<Environment>()) {
        return 4;
    }
    match err.downcast_ref::<PipelineError>() {
        Some(e) if e.is_empty_dashboard() => 3,
        Some(e) if e.is_environment() => 4,
        _ => 2,
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load(inputs: &Inputs, config: PipelineConfig) -> Result<Session> {
    let nodes = read(&inputs.nodes)?;
    let edges = read(&inputs.edges)?;
    let config = PipelineConfig {
        build: BuildOptions {
            coordinates: inputs.coord_divisor,
            route_classes: inputs
                .route_classes
                .iter()
                .map(|c| expand_class(c))
                .collect(),
        },
        ..config
    };
    let session = Session::load(
        (&inputs.nodes.display().to_string(), &nodes),
        (&inputs.edges.display().to_string(), &edges),
        config,
    )?;
    for w in &session.built.warnings {
        log::warn!("{w}");
    }
    Ok(session)
}

fn print(value: &serde_json::Value) {
    print!("{}", to_json_text(value));
}

fn build(args: &BuildArgs) -> Result<()> {
    if args.criterion == PathCriterion::Time {
        return Err(PipelineError::Metric(
            netboard_core::metrics::MetricError::TimeCriterionUnsupported,
        )
        .into());
    }
    let manifest = match &args.manifest {
        Some(path) => {
            let format = match path.extension().and_then(|e| e.to_str()) {
                Some("json") => ManifestFormat::Json,
                _ => ManifestFormat::Toml,
            };
            let text = read(path)?;
            Some(
                CustomizationManifest::parse(&text, format)
                    .map_err(PipelineError::from)
                    .with_context(|| format!("manifest {}", path.display()))?,
            )
        }
        None => None,
    };
    let session = load(
        &args.inputs,
        PipelineConfig {
            k: args.k,
            criterion: args.criterion,
            ..PipelineConfig::default()
        },
    )?;
    let dashboard = session.build(manifest.as_ref())?;
    let generated_at = (!args.reproducible)
        .then(|| chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true));
    emit_bundle(
        &dashboard.model,
        &dashboard.tables,
        &args.out,
        generated_at.as_deref(),
    )
    .map_err(PipelineError::from)?;

    eprintln!("{:<28} {:<14} title", "object", "viz");
    for o in &dashboard.model.objects {
        eprintln!("{:<28} {:<14} {}", o.id, o.viz.as_str(), o.title);
    }
    for w in dashboard.tables.metrics["warnings"]
        .as_array()
        .into_iter()
        .flatten()
    {
        eprintln!("warning: {}", w.as_str().unwrap_or_default());
    }
    print(&json!({
        "out": args.out.display().to_string(),
        "domain": session.domain,
        "objects": dashboard.model.ids(),
        "applicable": dashboard.applicable,
    }));
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Inspect(inputs) => print(&load(&inputs, PipelineConfig::default())?.inspect()),
        Command::Discover(inputs) => print(&load(&inputs, PipelineConfig::default())?.discover()),
        Command::Build(args) => build(&args)?,
        Command::Validate { bundle } => {
            let diagnostics = validate_bundle(&bundle);
            print(&json!({"bundle": bundle.display().to_string(), "diagnostics": diagnostics}));
            if !diagnostics.is_empty() {
                return Err(anyhow!("{} diagnostics", diagnostics.len()));
            }
        }
        Command::Serve(args) => serve::run(&args)?,
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
