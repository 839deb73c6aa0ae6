//! Trajectory representation shared by every other module.
//!
//! A trajectory is a `T x n` matrix: one row per time sample, one column per
//! spatial dimension. Samples are assumed to be uniformly spaced in time, so
//! there is no timestamp column.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    samples: DMatrix<f64>,
}

impl Trajectory {
    /// Wraps a `T x n` sample matrix. Requires `T >= 2`, `n >= 1` and finite entries.
    pub fn new(samples: DMatrix<f64>) -> Result<Self> {
        if samples.nrows() < 2 {
            return Err(Error::InvalidArgument(format!(
                "a trajectory needs at least 2 samples, got {}",
                samples.nrows()
            )));
        }
        if samples.ncols() < 1 {
            return Err(Error::InvalidArgument(
                "a trajectory needs at least 1 dimension".into(),
            ));
        }
        if let Some(pos) = samples.iter().position(|v| !v.is_finite()) {
            // column-major storage
            let (r, c) = (pos % samples.nrows(), pos / samples.nrows());
            return Err(Error::InvalidArgument(format!(
                "non-finite value at sample {r}, dimension {c}"
            )));
        }
        Ok(Self { samples })
    }

    /// Builds a trajectory from rows of equal length.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        if let Some(i) = rows.iter().position(|r| r.as_ref().len() != n) {
            return Err(Error::Dimension(format!(
                "row {i} has {} values, expected {n}",
                rows[i].as_ref().len()
            )));
        }
        let data = DMatrix::from_fn(rows.len(), n, |r, c| rows[r].as_ref()[c]);
        Self::new(data)
    }

    pub fn samples(&self) -> &DMatrix<f64> {
        &self.samples
    }

    pub fn into_samples(self) -> DMatrix<f64> {
        self.samples
    }

    /// Number of time samples `T`.
    pub fn len(&self) -> usize {
        self.samples.nrows()
    }

    /// Always false; a valid trajectory has at least two samples.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of spatial dimensions `n`.
    pub fn dim(&self) -> usize {
        self.samples.ncols()
    }

    pub fn row(&self, t: usize) -> Vec<f64> {
        self.samples.row(t).iter().copied().collect()
    }

    pub fn column(&self, i: usize) -> Vec<f64> {
        self.samples.column(i).iter().copied().collect()
    }

    pub fn mean(&self) -> DVector<f64> {
        column_means(&self.samples)
    }

    /// Indices of dimensions whose samples are all identical.
    pub fn constant_dims(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&c| {
                let col = self.samples.column(c);
                let first = col[0];
                col.iter().all(|&v| v == first)
            })
            .collect()
    }

    pub fn is_constant(&self) -> bool {
        self.constant_dims().len() == self.dim()
    }

    /// Adds `offset` to every sample.
    pub fn translate(&self, offset: &[f64]) -> Result<Self> {
        if offset.len() != self.dim() {
            return Err(Error::Dimension(format!(
                "offset has {} entries, trajectory has {} dimensions",
                offset.len(),
                self.dim()
            )));
        }
        let mut out = self.samples.clone();
        for (c, &o) in offset.iter().enumerate() {
            out.column_mut(c).add_scalar_mut(o);
        }
        Self::new(out)
    }
}

/// A trajectory with its per-dimension mean removed.
#[derive(Debug, Clone, PartialEq)]
pub struct CenteredTrajectory {
    pub centered: DMatrix<f64>,
    pub mean: DVector<f64>,
}

impl CenteredTrajectory {
    /// Adds the mean back.
    pub fn uncenter(&self) -> Result<Trajectory> {
        let mut out = self.centered.clone();
        for (c, &m) in self.mean.iter().enumerate() {
            out.column_mut(c).add_scalar_mut(m);
        }
        Trajectory::new(out)
    }
}

pub(crate) fn column_means(m: &DMatrix<f64>) -> DVector<f64> {
    let rows = m.nrows() as f64;
    DVector::from_iterator(m.ncols(), m.column_iter().map(|c| c.sum() / rows))
}

pub(crate) fn center_matrix(m: &DMatrix<f64>) -> (DMatrix<f64>, DVector<f64>) {
    let mean = column_means(m);
    let mut centered = m.clone();
    for (c, &mu) in mean.iter().enumerate() {
        centered.column_mut(c).add_scalar_mut(-mu);
    }
    (centered, mean)
}

pub fn center(traj: &Trajectory) -> CenteredTrajectory {
    let (centered, mean) = center_matrix(&traj.samples);
    CenteredTrajectory { centered, mean }
}

/// Piecewise-linear resampling to `m` samples at uniformly spaced index
/// parameters. Endpoints are copied exactly.
pub fn resample(traj: &Trajectory, m: usize) -> Result<Trajectory> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "resample target must be at least 2, got {m}"
        )));
    }
    let src = &traj.samples;
    let last = traj.len() - 1;
    let n = traj.dim();
    let mut out = DMatrix::zeros(m, n);
    for j in 0..m {
        let s = (j * last) as f64 / (m - 1) as f64;
        let lo = (s.floor() as usize).min(last);
        let frac = s - lo as f64;
        for c in 0..n {
            out[(j, c)] = if j == m - 1 {
                src[(last, c)]
            } else if frac == 0.0 {
                src[(lo, c)]
            } else {
                src[(lo, c)] * (1.0 - frac) + src[(lo + 1, c)] * frac
            };
        }
    }
    Trajectory::new(out)
}

/// Sum over dimensions of un-normalized squared deviations from the mean.
pub fn total_variance(traj: &Trajectory) -> f64 {
    let (centered, _) = center_matrix(&traj.samples);
    centered.iter().map(|v| v * v).sum()
}
