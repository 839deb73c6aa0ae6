//! File formats: trajectories (delimited text), distance matrices (CSV or
//! JSON), dendrograms (JSON or Newick), SVG figures and TOML run manifests.
//!
//! Reals are written with Rust's shortest round-trip representation, so
//! every reader returns bit-identical values.

mod dendrogram;
mod manifest;
mod matrix;
mod svg;
mod trajectory;

use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use self::dendrogram::{
    format_dendrogram_json, format_dendrogram_newick, parse_dendrogram, parse_dendrogram_newick, read_dendrogram,
    write_dendrogram,
};
pub use self::manifest::{LoadedEntry, ManifestEntry, RunManifest};
pub use self::matrix::{
    format_distance_matrix_csv, format_distance_matrix_json, parse_distance_matrix, read_distance_matrix,
    write_distance_matrix,
};
pub use self::svg::{dendrogram_svg, matrix_svg, ramp_color, render_svg, Figure};
pub use self::trajectory::{format_trajectory, parse_trajectory, read_trajectory, write_trajectory};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DataFormat {
    Csv,
    Json,
    Newick,
}

impl DataFormat {
    /// `.json` -> Json, `.nwk`/`.newick`/`.tree` -> Newick, anything else -> Csv.
    pub fn from_path(path: &Path) -> Self {
        match path
            .extension()
            .map(|e| e.to_string_lossy().to_ascii_lowercase())
            .as_deref()
        {
            Some("json") => DataFormat::Json,
            Some("nwk") | Some("newick") | Some("tree") => DataFormat::Newick,
            _ => DataFormat::Csv,
        }
    }
}

impl FromStr for DataFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(DataFormat::Csv),
            "json" => Ok(DataFormat::Json),
            "newick" | "nwk" => Ok(DataFormat::Newick),
            other => Err(Error::InvalidArgument(format!("unknown format '{other}'"))),
        }
    }
}

pub(crate) fn fmt_real(v: f64) -> String {
    format!("{v}")
}

pub(crate) fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path, e))
}
