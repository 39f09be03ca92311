mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mhvg::mining::FeatureSubset;
use mhvg::DgpKind;

/// Multilayer horizontal visibility graphs for multivariate time series.
#[derive(Debug, Parser)]
#[command(name = "mhvg", version, about)]
pub struct Cli {
    /// Master seed; every random stream is derived from it.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub jobs: Option<u32>,
    /// Directory for every output file.
    #[arg(long, global = true, default_value = ".")]
    pub output_dir: PathBuf,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate synthetic bivariate series, one CSV per instance plus a manifest.
    Generate(GenerateArgs),
    /// Map CSV series to MHVG edge lists and block summaries.
    Map(MapArgs),
    /// Extract the 21 features of every bivariate input.
    Features(FeaturesArgs),
    /// Normalize, project and cluster a feature CSV.
    Cluster(ClusterArgs),
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Comma-separated process names, or `all`.
    #[arg(long, value_delimiter = ',', required = true, value_parser = parse_dgp)]
    pub dgp: Vec<DgpSelection>,
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(2..))]
    pub length: u64,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pub instances: u64,
    #[arg(long, default_value_t = mhvg::tsdata::DEFAULT_BURN_IN)]
    pub burn_in: usize,
}

#[derive(Debug, Clone)]
pub enum DgpSelection {
    All,
    One(DgpKind),
}

fn parse_dgp(s: &str) -> Result<DgpSelection, String> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(DgpSelection::All);
    }
    s.parse().map(DgpSelection::One).map_err(|e: mhvg::Error| e.to_string())
}

#[derive(Debug, Args)]
pub struct MapArgs {
    /// CSV files (one column per component).
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FeaturesArgs {
    /// CSV files, or a directory written by `generate`.
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
    /// Estimate path lengths from this many BFS sources per view.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub sample_paths: Option<u64>,
    /// Output file name inside the output directory.
    #[arg(long, default_value = "features.csv")]
    pub out: String,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("clusters").required(true).args(["k", "k_range"])))]
pub struct ClusterArgs {
    /// Feature CSV written by `features`.
    pub input: PathBuf,
    /// Number of clusters.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: Option<u64>,
    /// Inclusive range of cluster counts, e.g. `2..8`.
    #[arg(long, value_parser = parse_range)]
    pub k_range: Option<(usize, usize)>,
    /// Comma-separated feature subsets (intra, inter, all, relational, mnet).
    #[arg(long, value_delimiter = ',', default_value = "mnet")]
    pub subset: Vec<FeatureSubset>,
    /// k-means restarts per run.
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    pub reps: u64,
    /// Require ground-truth labels and report ARI and NMI.
    #[arg(long)]
    pub ari: bool,
    /// Also write PCA loadings, scores and explained variance of the full feature set.
    #[arg(long)]
    pub pca_out: bool,
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected LO..HI, got `{s}`"))?;
    let lo: usize = a.trim().parse().map_err(|_| format!("bad lower bound `{a}`"))?;
    let hi: usize = b
        .trim()
        .trim_start_matches('=')
        .parse()
        .map_err(|_| format!("bad upper bound `{b}`"))?;
    if lo == 0 || lo > hi {
        return Err(format!("range must satisfy 1 <= LO <= HI, got {lo}..{hi}"));
    }
    Ok((lo, hi))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs as usize)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
