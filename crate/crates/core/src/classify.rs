//! Nearest-neighbour classification against a labelled gesture library.

use crate::error::{Error, Result};
use crate::metrics::MetricKind;
use crate::trajectory::{resample, Trajectory};

#[derive(Debug, Clone)]
pub struct LibraryEntry {
    pub label: String,
    pub trajectory: Trajectory,
}

/// Labelled trajectories, all resampled to a common sample count.
#[derive(Debug, Clone)]
pub struct GestureLibrary {
    entries: Vec<LibraryEntry>,
    samples: usize,
}

impl GestureLibrary {
    pub fn new<I, S>(entries: I, samples: usize) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Trajectory)>,
        S: Into<String>,
    {
        let entries = entries
            .into_iter()
            .map(|(label, traj)| {
                let label = label.into();
                if label.is_empty() {
                    return Err(Error::InvalidArgument("library labels must be non-empty".into()));
                }
                Ok(LibraryEntry {
                    label,
                    trajectory: resample(&traj, samples)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if entries.is_empty() {
            return Err(Error::InvalidArgument("gesture library is empty".into()));
        }
        Ok(Self { entries, samples })
    }

    pub fn entries(&self) -> &[LibraryEntry] {
        &self.entries
    }

    /// Canonical sample count every entry is resampled to.
    pub fn samples(&self) -> usize {
        self.samples
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub label: String,
    pub distance: f64,
    /// `distance <= threshold`.
    pub accepted: bool,
    /// Every `(label, distance)`, ascending by distance, ties in library order.
    pub ranking: Vec<(String, f64)>,
}

pub fn classify(
    traj: &Trajectory,
    lib: &GestureLibrary,
    metric: MetricKind,
    threshold: f64,
) -> Result<Classification> {
    if !(0.0..=1.0).contains(&threshold) {
        return Err(Error::InvalidArgument(format!(
            "threshold must lie in [0, 1], got {threshold}"
        )));
    }
    let query = resample(traj, lib.samples())?;
    let mut ranking = lib
        .entries
        .iter()
        .map(|e| Ok((e.label.clone(), metric.distance(&query, &e.trajectory)?)))
        .collect::<Result<Vec<_>>>()?;
    // stable: equal distances keep library order
    ranking.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (label, distance) = ranking[0].clone();
    Ok(Classification {
        label,
        distance,
        accepted: distance <= threshold,
        ranking,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::{generate, ShapeKind, ShapeSpec};

    fn library() -> GestureLibrary {
        let entries = [ShapeKind::Circle, ShapeKind::UShape, ShapeKind::Triangle]
            .map(|k| (k.name(), generate(&ShapeSpec::canonical(k, 80)).unwrap()));
        GestureLibrary::new(entries, 64).unwrap()
    }

    #[test]
    fn entry_as_query() {
        let lib = library();
        let q = generate(&ShapeSpec::canonical(ShapeKind::UShape, 80)).unwrap();
        let c = classify(&q, &lib, MetricKind::Gmcc, 0.1).unwrap();
        assert_eq!(c.label, "u-shape");
        assert!(c.distance < 1e-12);
        assert!(c.accepted);
        assert_eq!(c.ranking.len(), 3);
        assert!(c.ranking.windows(2).all(|w| w[0].1 <= w[1].1));
    }

    #[test]
    fn ties_follow_library_order() {
        let c = generate(&ShapeSpec::canonical(ShapeKind::Circle, 40)).unwrap();
        let lib = GestureLibrary::new([("first", c.clone()), ("second", c.clone())], 40).unwrap();
        let out = classify(&c, &lib, MetricKind::Rv, 1.0).unwrap();
        assert_eq!(out.label, "first");
    }

    #[test]
    fn rejects_bad_inputs() {
        let lib = library();
        let flat = Trajectory::from_rows(&[[1.0, 1.0]; 10]).unwrap();
        assert!(classify(&flat, &lib, MetricKind::Gmcc, 0.5).unwrap_err().is_degenerate());
        let q = generate(&ShapeSpec::canonical(ShapeKind::Circle, 30)).unwrap();
        assert!(classify(&q, &lib, MetricKind::Gmcc, 1.5).is_err());
        assert!(GestureLibrary::new(Vec::<(String, Trajectory)>::new(), 10).is_err());
        assert!(GestureLibrary::new([("", q)], 10).is_err());
    }
}
