//! The `gmcc` command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 data or parse error, 3 degenerate
//! input, 4 reproduction threshold failure. Numbers are printed with six
//! decimals.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::classify::{classify, GestureLibrary};
use crate::cluster::{agglomerate, cut, purity};
use crate::error::Error;
use crate::experiments::{self, Report};
use crate::io::{
    format_distance_matrix_csv, format_trajectory, read_distance_matrix, read_trajectory, render_svg,
    write_dendrogram, write_distance_matrix, write_trajectory, DataFormat, RunManifest,
};
use crate::metrics::{distance_matrix_labeled, MetricKind};
use crate::synth::{add_noise, apply_transform, generate, make_transform, ShapeKind, ShapeSpec, TransformSpec};
use crate::trajectory::resample;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;
pub const EXIT_REPRO: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "gmcc", version, about = "Linear-invariant trajectory similarity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a synthetic trajectory file.
    Synth {
        #[arg(long)]
        shape: ShapeKind,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        /// Gaussian noise standard deviation.
        #[arg(long, default_value_t = 0.0)]
        noise: f64,
        /// Applied about the centroid, in order; e.g. `shear:0.5`, `rotation:90deg`.
        #[arg(long)]
        transform: Vec<TransformSpec>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Distance between two trajectory files.
    Dist {
        #[arg(long, default_value_t = MetricKind::Gmcc)]
        metric: MetricKind,
        first: PathBuf,
        second: PathBuf,
        /// Resample both inputs to this many samples.
        #[arg(long)]
        resample: Option<usize>,
    },
    /// Pairwise distance matrix over a manifest.
    Matrix {
        manifest: PathBuf,
        /// Overrides the manifest's metric.
        #[arg(long)]
        metric: Option<MetricKind>,
        /// `.csv` or `.json`; CSV on standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Average-linkage clustering of a distance matrix file.
    Cluster {
        matrix: PathBuf,
        #[arg(long)]
        k: usize,
        /// `.json` or `.nwk`.
        #[arg(long)]
        out_dendrogram: Option<PathBuf>,
        #[arg(long)]
        out_assignments: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Manifest whose labels score the cut.
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
    /// Classify a trajectory against a labelled library manifest.
    Classify {
        library: PathBuf,
        query: PathBuf,
        /// Overrides the manifest's metric.
        #[arg(long)]
        metric: Option<MetricKind>,
        /// Overrides the manifest's threshold.
        #[arg(long)]
        threshold: Option<f64>,
    },
    /// Rerun one of the comparison studies and check its thresholds.
    Repro {
        #[arg(long, value_enum)]
        table: Table,
        #[arg(long, default_value_t = experiments::DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Table {
    Noise,
    CircleTransforms,
    LineTransforms,
    LineVsCircle,
    Clustering,
}

impl Table {
    fn name(self) -> &'static str {
        match self {
            Table::Noise => "noise",
            Table::CircleTransforms => "circle-transforms",
            Table::LineTransforms => "line-transforms",
            Table::LineVsCircle => "line-vs-circle",
            Table::Clustering => "clustering",
        }
    }
}

enum Failure {
    Lib(Error),
    Usage(String),
    Repro(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn exit_code(e: &Error) -> i32 {
    if e.is_degenerate() {
        return EXIT_DEGENERATE;
    }
    match e {
        Error::InvalidArgument(_) => EXIT_USAGE,
        _ => EXIT_DATA,
    }
}

/// Runs the binary on `std::env::args`.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// Parses `args` (program name first) and executes, writing to `out` and `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Repro(msg)) => {
            let _ = write!(err, "{msg}");
            EXIT_REPRO
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::Lib(Error::io("<stdout>", e)))
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        Command::Synth {
            shape,
            samples,
            scale,
            noise,
            transform,
            seed,
            out: path,
        } => {
            let spec = ShapeSpec {
                kind: shape,
                samples,
                scale,
                seed,
            };
            let mut traj = generate(&spec)?;
            for t in &transform {
                traj = apply_transform(&traj, &make_transform(t)?, true)?;
            }
            traj = add_noise(&traj, noise, seed)?;
            match path {
                Some(p) => write_trajectory(&traj, p, Some(&["x", "y"]))?,
                None => emit(out, &format_trajectory(&traj, Some(&["x", "y"])))?,
            }
        }
        Command::Dist {
            metric,
            first,
            second,
            resample: m,
        } => {
            let (mut a, mut b) = (read_trajectory(&first)?, read_trajectory(&second)?);
            if let Some(m) = m {
                a = resample(&a, m)?;
                b = resample(&b, m)?;
            }
            emit(out, &format!("{:.6}\n", metric.distance(&a, &b)?))?;
        }
        Command::Matrix {
            manifest,
            metric,
            out: path,
            svg,
        } => {
            let manifest = RunManifest::load(&manifest)?;
            let entries = manifest.load_entries()?;
            let names: Vec<String> = entries.iter().map(|e| e.name.clone()).collect();
            let trajs: Vec<_> = entries.into_iter().map(|e| e.trajectory).collect();
            let d = distance_matrix_labeled(&trajs, &names, metric.unwrap_or(manifest.metric))?;
            match path {
                Some(p) => {
                    let format = DataFormat::from_path(&p);
                    if format == DataFormat::Newick {
                        return Err(Failure::Usage("distance matrices are written as .csv or .json".into()));
                    }
                    write_distance_matrix(&d, &p, format)?;
                }
                None => emit(out, &format_distance_matrix_csv(&d)?)?,
            }
            if let Some(p) = svg {
                render_svg(&d, p)?;
            }
        }
        Command::Cluster {
            matrix,
            k,
            out_dendrogram,
            out_assignments,
            svg,
            manifest,
        } => {
            let d = read_distance_matrix(&matrix, DataFormat::from_path(&matrix))?;
            let dend = agglomerate(&d)?;
            let assign = cut(&dend, k)?;
            let truth = match manifest {
                Some(p) => Some(manifest_labels(&p, d.labels())?),
                None => None,
            };
            let mut table = String::from("name,cluster");
            table.push_str(if truth.is_some() { ",label\n" } else { "\n" });
            for (i, name) in d.labels().iter().enumerate() {
                let _ = write!(table, "{name},{}", assign.labels[i]);
                match &truth {
                    Some(t) => {
                        let _ = writeln!(table, ",{}", t[i]);
                    }
                    None => table.push('\n'),
                }
            }
            if let Some(p) = out_dendrogram {
                let format = DataFormat::from_path(&p);
                if format == DataFormat::Csv {
                    return Err(Failure::Usage("dendrograms are written as .json or .nwk".into()));
                }
                write_dendrogram(&dend, &p, format)?;
            }
            if let Some(p) = svg {
                render_svg(&dend, p)?;
            }
            match out_assignments {
                Some(p) => fs::write(&p, &table).map_err(|e| Error::io(&p, e))?,
                None => emit(out, &table)?,
            }
            if let Some(t) = &truth {
                emit(out, &format!("purity {:.6}\n", purity(&assign, t)?))?;
            }
        }
        Command::Classify {
            library,
            query,
            metric,
            threshold,
        } => {
            let manifest = RunManifest::load(&library)?;
            let lib = GestureLibrary::new(
                manifest.load_entries()?.into_iter().map(|e| (e.label, e.trajectory)),
                manifest.samples,
            )?;
            let q = read_trajectory(&query)?;
            let c = classify(
                &q,
                &lib,
                metric.unwrap_or(manifest.metric),
                threshold.unwrap_or(manifest.threshold),
            )?;
            let mut s = String::new();
            let _ = writeln!(s, "label {}", c.label);
            let _ = writeln!(s, "distance {:.6}", c.distance);
            let _ = writeln!(s, "accepted {}", c.accepted);
            for (label, d) in &c.ranking {
                let _ = writeln!(s, "  {d:.6} {label}");
            }
            emit(out, &s)?;
        }
        Command::Repro { table, seed, out_dir } => repro(table, seed, out_dir.as_deref(), out)?,
    }
    Ok(())
}

/// Manifest labels reordered to match the matrix's entry names.
fn manifest_labels(path: &Path, names: &[String]) -> Result<Vec<String>, Failure> {
    let manifest = RunManifest::load(path)?;
    names
        .iter()
        .map(|n| {
            manifest
                .entries
                .iter()
                .find(|e| &manifest.entry_name(e) == n)
                .map(|e| e.label.clone())
                .ok_or_else(|| Failure::Lib(Error::parse(path, 0, format!("no manifest entry named '{n}'"))))
        })
        .collect()
}

fn repro(table: Table, seed: u64, out_dir: Option<&Path>, out: &mut dyn Write) -> Result<(), Failure> {
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let report: Report = match table {
        Table::Noise => experiments::noise_table(seed)?,
        Table::CircleTransforms => experiments::transform_table(ShapeKind::Circle)?,
        Table::LineTransforms => experiments::transform_table(ShapeKind::Line)?,
        Table::LineVsCircle => experiments::line_vs_circle()?,
        Table::Clustering => {
            let study = experiments::clustering(&experiments::clustering_classes(), seed)?;
            if let Some(dir) = out_dir {
                for r in &study.results {
                    let stem = format!("clustering_{}", r.metric);
                    write_distance_matrix(&r.matrix, dir.join(format!("{stem}_matrix.csv")), DataFormat::Csv)?;
                    write_dendrogram(&r.dendrogram, dir.join(format!("{stem}_dendrogram.json")), DataFormat::Json)?;
                    write_dendrogram(&r.dendrogram, dir.join(format!("{stem}_dendrogram.nwk")), DataFormat::Newick)?;
                    render_svg(&r.matrix, dir.join(format!("{stem}_matrix.svg")))?;
                    render_svg(&r.dendrogram, dir.join(format!("{stem}_dendrogram.svg")))?;
                }
            }
            study.report
        }
    };
    let text = report.render();
    emit(out, &text)?;
    if let Some(dir) = out_dir {
        let p = dir.join(format!("{}.txt", table.name()));
        fs::write(&p, &text).map_err(|e| Error::io(&p, e))?;
    }
    if report.passed() {
        Ok(())
    } else {
        let mut msg = format!("{}: {} check(s) failed\n", table.name(), report.failures().len());
        for c in report.failures() {
            let _ = writeln!(msg, "  {} (value {:.6})", c.description, c.value);
        }
        Err(Failure::Repro(msg))
    }
}
