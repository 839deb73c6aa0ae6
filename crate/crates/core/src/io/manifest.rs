use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::{read_trajectory, write_text};
use crate::metrics::MetricKind;
use crate::trajectory::{resample, Trajectory};

/// One dataset entry. `path` is relative to the manifest file unless absolute.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub path: PathBuf,
    /// Class label (ground truth for purity, answer for classification).
    pub label: String,
    /// Unique identifier; defaults to the file stem.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

/// TOML run description:
///
/// ```toml
/// metric = "gmcc"
/// samples = 100
/// seed = 7
/// threshold = 0.3
///
/// [[entries]]
/// path = "line_0.csv"
/// label = "line"
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    #[serde(default = "default_metric")]
    pub metric: MetricKind,
    /// Resample target `T*`.
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_threshold")]
    pub threshold: f64,
    pub entries: Vec<ManifestEntry>,
    #[serde(skip)]
    base_dir: PathBuf,
}

fn default_metric() -> MetricKind {
    MetricKind::Gmcc
}

fn default_samples() -> usize {
    100
}

fn default_threshold() -> f64 {
    1.0
}

/// Entry loaded from disk and resampled to the manifest's `samples`.
#[derive(Debug, Clone)]
pub struct LoadedEntry {
    pub name: String,
    pub label: String,
    pub trajectory: Trajectory,
}

impl RunManifest {
    pub fn new(metric: MetricKind, samples: usize, seed: u64, threshold: f64, entries: Vec<ManifestEntry>) -> Self {
        Self {
            metric,
            samples,
            seed,
            threshold,
            entries,
            base_dir: PathBuf::new(),
        }
    }

    /// Parses the manifest and checks that every entry path resolves.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut manifest: RunManifest = toml::from_str(&text).map_err(|e| {
            let line = e
                .span()
                .map(|s| 1 + text[..s.start.min(text.len())].matches('\n').count())
                .unwrap_or(0);
            Error::parse(path, line, e.message().to_string())
        })?;
        manifest.base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        if manifest.entries.is_empty() {
            return Err(Error::parse(path, 0, "manifest lists no entries"));
        }
        if manifest.samples < 2 {
            return Err(Error::parse(path, 0, format!("samples must be at least 2, got {}", manifest.samples)));
        }
        for entry in &manifest.entries {
            let resolved = manifest.resolve(&entry.path);
            if !resolved.is_file() {
                return Err(Error::parse(
                    path,
                    0,
                    format!("entry '{}' points to missing file {}", manifest.entry_name(entry), resolved.display()),
                ));
            }
        }
        Ok(manifest)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        write_text(path.as_ref(), &self.to_toml()?)
    }

    pub fn resolve(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir.join(p)
        }
    }

    pub fn entry_name(&self, entry: &ManifestEntry) -> String {
        entry.name.clone().unwrap_or_else(|| {
            entry
                .path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| entry.path.display().to_string())
        })
    }

    /// Reads and resamples every entry; errors name the failing entry.
    pub fn load_entries(&self) -> Result<Vec<LoadedEntry>> {
        self.entries
            .iter()
            .map(|entry| {
                let name = self.entry_name(entry);
                let traj = read_trajectory(self.resolve(&entry.path))?;
                let trajectory = resample(&traj, self.samples)
                    .map_err(|e| Error::InvalidArgument(format!("entry '{name}': {e}")))?;
                Ok(LoadedEntry {
                    name,
                    label: entry.label.clone(),
                    trajectory,
                })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_names() {
        let m: RunManifest = toml::from_str(
            r#"
            [[entries]]
            path = "dir/a.csv"
            label = "line"

            [[entries]]
            path = "b.csv"
            label = "circle"
            name = "custom"
            "#,
        )
        .unwrap();
        assert_eq!(m.metric, MetricKind::Gmcc);
        assert_eq!(m.samples, 100);
        assert_eq!(m.threshold, 1.0);
        assert_eq!(m.entry_name(&m.entries[0]), "a");
        assert_eq!(m.entry_name(&m.entries[1]), "custom");
    }

    #[test]
    fn toml_round_trip() {
        let m = RunManifest::new(
            MetricKind::RvUncentered,
            64,
            9,
            0.25,
            vec![ManifestEntry {
                path: "x.csv".into(),
                label: "u-shape".into(),
                name: None,
            }],
        );
        let text = m.to_toml().unwrap();
        assert!(text.contains("metric = \"rv-uncentered\""));
        let back: RunManifest = toml::from_str(&text).unwrap();
        assert_eq!(back, m);
    }
}
