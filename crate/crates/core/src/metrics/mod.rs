//! Correlation coefficients and the similarity distances built on them.
//!
//! Every distance is `1 - coefficient` and lies in `[0, 1]`. Results that
//! leave the unit interval by more than `1e-9` are reported as
//! [`Error::Inconsistent`] instead of being clamped silently.

mod correlation;
mod dcor;
mod gmcc;
mod rv;

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::trajectory::Trajectory;

pub use self::correlation::{correlation_vector, multiple_correlation, pearson, CorrelationVector};
pub use self::dcor::{dcor, dcor_distance, dcov_squared};
pub use self::gmcc::{generalized_r2, gmcc, gmcc_decomposed, gmcc_distance, gmcc_symmetric};
pub use self::rv::{rv, rv_distance};

const CLAMP_SLACK: f64 = 1e-9;

pub(crate) fn clamp_range(v: f64, lo: f64, hi: f64, what: &str) -> Result<f64> {
    if !v.is_finite() || v < lo - CLAMP_SLACK || v > hi + CLAMP_SLACK {
        return Err(Error::Inconsistent(format!("{what} = {v} outside [{lo}, {hi}]")));
    }
    Ok(v.clamp(lo, hi))
}

pub(crate) fn clamp_unit(v: f64, what: &str) -> Result<f64> {
    clamp_range(v, 0.0, 1.0, what)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MetricKind {
    Gmcc,
    Rv,
    RvUncentered,
    Dcor,
}

impl MetricKind {
    pub const ALL: [MetricKind; 4] = [
        MetricKind::Gmcc,
        MetricKind::Rv,
        MetricKind::RvUncentered,
        MetricKind::Dcor,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MetricKind::Gmcc => "gmcc",
            MetricKind::Rv => "rv",
            MetricKind::RvUncentered => "rv-uncentered",
            MetricKind::Dcor => "dcor",
        }
    }

    /// Similarity distance between two trajectories of equal length.
    pub fn distance(self, x: &Trajectory, y: &Trajectory) -> Result<f64> {
        match self {
            MetricKind::Gmcc => gmcc_distance(x, y),
            MetricKind::Rv => rv_distance(x, y, true),
            MetricKind::RvUncentered => rv_distance(x, y, false),
            MetricKind::Dcor => dcor_distance(x, y),
        }
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MetricKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gmcc" => Ok(MetricKind::Gmcc),
            "rv" => Ok(MetricKind::Rv),
            "rv-uncentered" | "rv_uncentered" => Ok(MetricKind::RvUncentered),
            "dcor" => Ok(MetricKind::Dcor),
            other => Err(Error::InvalidArgument(format!("unknown metric '{other}'"))),
        }
    }
}

/// Symmetric table of pairwise distances, tagged with its metric.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    values: DMatrix<f64>,
    metric: MetricKind,
    labels: Vec<String>,
}

const MATRIX_TOL: f64 = 1e-9;

impl DistanceMatrix {
    pub fn new(values: DMatrix<f64>, metric: MetricKind, labels: Vec<String>) -> Result<Self> {
        let m = values.nrows();
        if values.ncols() != m {
            return Err(Error::Dimension(format!(
                "distance matrix must be square, got {}x{}",
                m,
                values.ncols()
            )));
        }
        if labels.len() != m {
            return Err(Error::Dimension(format!(
                "{} labels for a {m}x{m} matrix",
                labels.len()
            )));
        }
        for i in 0..m {
            if values[(i, i)].abs() > MATRIX_TOL {
                return Err(Error::InvalidArgument(format!(
                    "diagonal entry {i} is {}",
                    values[(i, i)]
                )));
            }
            for j in 0..m {
                let v = values[(i, j)];
                if !v.is_finite() || !(0.0..=1.0 + MATRIX_TOL).contains(&v) {
                    return Err(Error::InvalidArgument(format!(
                        "entry ({i}, {j}) = {v} outside [0, 1]"
                    )));
                }
                if (v - values[(j, i)]).abs() > MATRIX_TOL {
                    return Err(Error::InvalidArgument(format!(
                        "matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Self {
            values,
            metric,
            labels,
        })
    }

    pub fn values(&self) -> &DMatrix<f64> {
        &self.values
    }

    pub fn metric(&self) -> MetricKind {
        self.metric
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[(i, j)]
    }
}

/// Pairwise distances with labels `"0"`, `"1"`, ...
pub fn distance_matrix(trajs: &[Trajectory], metric: MetricKind) -> Result<DistanceMatrix> {
    let labels: Vec<String> = (0..trajs.len()).map(|i| i.to_string()).collect();
    distance_matrix_labeled(trajs, &labels, metric)
}

/// Pairwise distances between equal-length trajectories. Entries are
/// computed in parallel; each one is independent, so the result does not
/// depend on scheduling.
pub fn distance_matrix_labeled(
    trajs: &[Trajectory],
    labels: &[String],
    metric: MetricKind,
) -> Result<DistanceMatrix> {
    let m = trajs.len();
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "a distance matrix needs at least 2 trajectories, got {m}"
        )));
    }
    if labels.len() != m {
        return Err(Error::Dimension(format!("{} labels for {m} trajectories", labels.len())));
    }
    let t = trajs[0].len();
    if let Some(i) = trajs.iter().position(|tr| tr.len() != t) {
        return Err(Error::Dimension(format!(
            "'{}' has {} samples, expected {t}; resample first",
            labels[i],
            trajs[i].len()
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| ((i + 1)..m).map(move |j| (i, j)))
        .collect();
    let results: Vec<Result<f64>> = pairs
        .par_iter()
        .map(|&(i, j)| metric.distance(&trajs[i], &trajs[j]))
        .collect();
    let mut values = DMatrix::zeros(m, m);
    for (&(i, j), res) in pairs.iter().zip(results) {
        let d = res.map_err(|e| Error::Pair {
            left: labels[i].clone(),
            right: labels[j].clone(),
            source: Box::new(e),
        })?;
        values[(i, j)] = d;
        values[(j, i)] = d;
    }
    DistanceMatrix::new(values, metric, labels.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(t: usize, r: f64) -> Trajectory {
        let rows: Vec<[f64; 2]> = (0..t)
            .map(|i| {
                let th = 2.0 * std::f64::consts::PI * i as f64 / t as f64;
                [r * th.cos(), r * th.sin()]
            })
            .collect();
        Trajectory::from_rows(&rows).unwrap()
    }

    #[test]
    fn metric_names_roundtrip() {
        for k in MetricKind::ALL {
            assert_eq!(k.name().parse::<MetricKind>().unwrap(), k);
        }
        assert!("dtw".parse::<MetricKind>().is_err());
    }

    #[test]
    fn identical_pair_is_zero_matrix() {
        let c = circle(20, 1.0);
        for k in MetricKind::ALL {
            let d = distance_matrix(&[c.clone(), c.clone()], k).unwrap();
            assert!(d.values().iter().all(|v| v.abs() < 1e-12), "{k}");
            assert_eq!(d.metric(), k);
        }
    }

    #[test]
    fn degenerate_pair_is_named() {
        let flat = Trajectory::from_rows(&[[1.0, 1.0]; 20]).unwrap();
        let labels = vec!["a".to_string(), "b".into(), "c".into()];
        let err = distance_matrix_labeled(&[circle(20, 1.0), circle(20, 2.0), flat], &labels, MetricKind::Gmcc)
            .unwrap_err();
        match err {
            Error::Pair { left, right, .. } => assert_eq!((left.as_str(), right.as_str()), ("a", "c")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unequal_lengths_rejected() {
        assert!(matches!(
            distance_matrix(&[circle(20, 1.0), circle(21, 1.0)], MetricKind::Rv),
            Err(Error::Dimension(_))
        ));
        assert!(distance_matrix(&[circle(20, 1.0)], MetricKind::Rv).is_err());
    }

    #[test]
    fn matrix_validation() {
        let bad = DMatrix::from_row_slice(2, 2, &[0.0, 0.5, 0.4, 0.0]);
        assert!(DistanceMatrix::new(bad, MetricKind::Gmcc, vec!["a".into(), "b".into()]).is_err());
        let diag = DMatrix::from_row_slice(2, 2, &[0.1, 0.5, 0.5, 0.0]);
        assert!(DistanceMatrix::new(diag, MetricKind::Gmcc, vec!["a".into(), "b".into()]).is_err());
    }

    #[test]
    fn clamp_behaviour() {
        assert_eq!(clamp_unit(-1e-12, "x").unwrap(), 0.0);
        assert_eq!(clamp_unit(1.0 + 1e-12, "x").unwrap(), 1.0);
        assert!(matches!(clamp_unit(-1e-6, "x"), Err(Error::Inconsistent(_))));
        assert!(clamp_unit(f64::NAN, "x").is_err());
    }
}
