use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use mhvg::features::FeatureConfig;
use mhvg::mining::{
    cluster_features, extract_features, normalize_features, pca, FeatureMatrix, StudyConfig,
};
use mhvg::seed::derive_seed;
use mhvg::tsdata::{read_csv_path, write_csv};
use mhvg::{build_mhvg, generate, DgpKind, DgpSpec, MultivariateTimeSeries};
use serde::{Deserialize, Serialize};

use crate::output::Staged;
use crate::{ClusterArgs, Cli, Command, DgpSelection, FeaturesArgs, GenerateArgs, MapArgs};

pub const MANIFEST: &str = "manifest.json";

#[derive(Debug, Serialize, Deserialize)]
pub struct Manifest {
    pub master_seed: u64,
    pub instances: Vec<ManifestEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub file: String,
    #[serde(flatten)]
    pub spec: DgpSpec,
}

pub fn run(cli: &Cli) -> Result<()> {
    let written = match &cli.command {
        Command::Generate(args) => generate_cmd(cli, args)?,
        Command::Map(args) => map_cmd(cli, args)?,
        Command::Features(args) => features_cmd(cli, args)?,
        Command::Cluster(args) => cluster_cmd(cli, args)?,
    };
    for path in written {
        println!("{}", path.display());
    }
    Ok(())
}

fn generate_cmd(cli: &Cli, args: &GenerateArgs) -> Result<Vec<PathBuf>> {
    let mut kinds: Vec<DgpKind> = Vec::new();
    for sel in &args.dgp {
        match sel {
            DgpSelection::All => kinds.extend(DgpKind::ALL),
            DgpSelection::One(k) => kinds.push(*k),
        }
    }
    let mut seen = Vec::new();
    kinds.retain(|k| {
        let fresh = !seen.contains(k);
        seen.push(*k);
        fresh
    });

    let width = (args.instances - 1).to_string().len();
    let mut entries = Vec::new();
    for kind in &kinds {
        let k = DgpKind::ALL.iter().position(|x| x == kind).unwrap() as u64;
        for i in 0..args.instances {
            let spec = DgpSpec {
                kind: *kind,
                length: args.length as usize,
                seed: derive_seed(cli.seed, &[k, i]),
                burn_in: args.burn_in,
            };
            let file = format!("{}_{:0width$}.csv", kind.name(), i);
            entries.push(ManifestEntry { file, spec });
        }
    }
    let series: Vec<MultivariateTimeSeries> = {
        use rayon::prelude::*;
        entries
            .par_iter()
            .map(|e| generate(&e.spec))
            .collect::<mhvg::Result<_>>()?
    };

    let mut out = Staged::new(&cli.output_dir)?;
    for (entry, mts) in entries.iter().zip(&series) {
        out.write(&entry.file, |buf| Ok(write_csv(mts, buf)?))?;
    }
    let manifest = Manifest {
        master_seed: cli.seed,
        instances: entries,
    };
    out.write(MANIFEST, |buf| {
        serde_json::to_writer_pretty(&mut *buf, &manifest)?;
        buf.push(b'\n');
        Ok(())
    })?;
    out.commit()
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "series".into())
}

fn read_series(path: &Path) -> Result<MultivariateTimeSeries> {
    read_csv_path(path).with_context(|| format!("reading {}", path.display()))
}

fn map_cmd(cli: &Cli, args: &MapArgs) -> Result<Vec<PathBuf>> {
    let series = args
        .inputs
        .iter()
        .map(|p| read_series(p))
        .collect::<Result<Vec<_>>>()?;
    let nets: Vec<_> = {
        use rayon::prelude::*;
        series.par_iter().map(build_mhvg).collect()
    };
    let mut out = Staged::new(&cli.output_dir)?;
    for (path, net) in args.inputs.iter().zip(&nets) {
        let name = stem(path);
        out.write(&format!("{name}.edges.txt"), |buf| Ok(net.write_edge_list(buf)?))?;
        out.write(&format!("{name}.summary.json"), |buf| {
            serde_json::to_writer_pretty(&mut *buf, &net.summary())?;
            buf.push(b'\n');
            Ok(())
        })?;
    }
    out.commit()
}

/// Expands directories to their CSV files (manifest order when present).
fn resolve_inputs(inputs: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for input in inputs {
        if !input.is_dir() {
            files.push(input.clone());
            continue;
        }
        let manifest = input.join(MANIFEST);
        if manifest.exists() {
            let m = load_manifest(&manifest)?;
            files.extend(m.instances.iter().map(|e| input.join(&e.file)));
        } else {
            let mut found: Vec<PathBuf> = fs::read_dir(input)?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "csv"))
                .collect();
            found.sort();
            files.extend(found);
        }
    }
    if files.is_empty() {
        bail!("no CSV inputs found");
    }
    Ok(files)
}

fn load_manifest(path: &Path) -> Result<Manifest> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Labels from the manifest next to each file; `None` unless every file has one.
fn manifest_labels(files: &[PathBuf]) -> Result<Option<Vec<String>>> {
    let mut cache: HashMap<PathBuf, HashMap<String, String>> = HashMap::new();
    let mut labels = Vec::with_capacity(files.len());
    for file in files {
        let dir = file.parent().map(Path::to_path_buf).unwrap_or_default();
        if !cache.contains_key(&dir) {
            let path = dir.join(MANIFEST);
            let map = if path.exists() {
                load_manifest(&path)?
                    .instances
                    .into_iter()
                    .map(|e| (e.file, e.spec.kind.name().to_string()))
                    .collect()
            } else {
                HashMap::new()
            };
            cache.insert(dir.clone(), map);
        }
        let name = file.file_name().map(|s| s.to_string_lossy().into_owned());
        match name.and_then(|n| cache[&dir].get(&n).cloned()) {
            Some(label) => labels.push(label),
            None => return Ok(None),
        }
    }
    Ok(Some(labels))
}

fn features_cmd(cli: &Cli, args: &FeaturesArgs) -> Result<Vec<PathBuf>> {
    let files = resolve_inputs(&args.inputs)?;
    let labels = manifest_labels(&files)?;
    let series = files
        .iter()
        .map(|p| read_series(p))
        .collect::<Result<Vec<_>>>()?;
    for (path, mts) in files.iter().zip(&series) {
        if mts.num_components() != 2 {
            bail!(
                "{} has {} columns; features need a bivariate series",
                path.display(),
                mts.num_components()
            );
        }
    }
    let config = FeatureConfig {
        path_sources: args.sample_paths.map(|n| n as usize),
        seed: cli.seed,
        ..FeatureConfig::default()
    };
    let features = extract_features(&series, &config)?;
    let mut matrix = FeatureMatrix::from_features(&features).with_ids(files.iter().map(|p| stem(p)).collect())?;
    if let Some(labels) = labels {
        matrix = matrix.with_labels(labels)?;
    }
    let mut out = Staged::new(&cli.output_dir)?;
    out.write(&args.out, |buf| Ok(matrix.write_csv(buf)?))?;
    out.commit()
}

fn cluster_cmd(cli: &Cli, args: &ClusterArgs) -> Result<Vec<PathBuf>> {
    let file = fs::File::open(&args.input).with_context(|| format!("reading {}", args.input.display()))?;
    let matrix = FeatureMatrix::read_csv(file).with_context(|| format!("parsing {}", args.input.display()))?;
    if args.ari && matrix.labels().is_none() {
        bail!("--ari needs a `label` column in {}", args.input.display());
    }
    let ks: Vec<usize> = match (args.k, args.k_range) {
        (Some(k), _) => vec![k as usize],
        (None, Some((lo, hi))) => (lo..=hi).collect(),
        (None, None) => unreachable!("clap requires --k or --k-range"),
    };
    if let Some(&k) = ks.iter().find(|&&k| k > matrix.num_rows()) {
        bail!("k = {k} exceeds the {} rows of {}", matrix.num_rows(), args.input.display());
    }
    let config = StudyConfig {
        seed: cli.seed,
        repetitions: args.reps as usize,
        subsets: args.subset.clone(),
        ..StudyConfig::default()
    };
    let reports = cluster_features(&matrix, &ks, &config)?;
    let ids: Vec<String> = match matrix.ids() {
        Some(ids) => ids.to_vec(),
        None => (0..matrix.num_rows()).map(|i| i.to_string()).collect(),
    };
    let pca_result = if args.pca_out {
        Some(pca(&normalize_features(&matrix)?.to_matrix())?)
    } else {
        None
    };

    let mut out = Staged::new(&cli.output_dir)?;
    out.write("cluster_report.json", |buf| {
        serde_json::to_writer_pretty(&mut *buf, &reports)?;
        buf.push(b'\n');
        Ok(())
    })?;
    out.write("cluster_assignments.csv", |buf| {
        writeln!(buf, "instance,subset,k,cluster")?;
        for r in &reports {
            for (id, c) in ids.iter().zip(&r.assignment) {
                writeln!(buf, "{id},{},{},{c}", r.subset, r.k)?;
            }
        }
        Ok(())
    })?;
    if let Some(p) = &pca_result {
        let pcs: Vec<String> = (1..=p.loadings.ncols()).map(|i| format!("PC{i}")).collect();
        out.write("pca_loadings.csv", |buf| {
            writeln!(buf, "feature,{}", pcs.join(","))?;
            for (i, name) in matrix.names().iter().enumerate() {
                let row: Vec<String> = p.loadings.row(i).iter().map(|v| v.to_string()).collect();
                writeln!(buf, "{name},{}", row.join(","))?;
            }
            Ok(())
        })?;
        out.write("pca_scores.csv", |buf| {
            writeln!(buf, "instance,{}", pcs.join(","))?;
            for (i, id) in ids.iter().enumerate() {
                let row: Vec<String> = p.scores.row(i).iter().map(|v| v.to_string()).collect();
                writeln!(buf, "{id},{}", row.join(","))?;
            }
            Ok(())
        })?;
        out.write("pca_variance.csv", |buf| {
            writeln!(buf, "component,variance,ratio")?;
            let ratio = p.explained_ratio();
            for (i, v) in p.explained_variance.iter().enumerate() {
                writeln!(buf, "{},{v},{}", pcs[i], ratio[i])?;
            }
            Ok(())
        })?;
    }
    out.commit()
}
