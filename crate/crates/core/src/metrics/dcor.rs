//! Distance correlation. Quadratic in the number of samples, both in time
//! and memory.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::metrics::clamp_unit;
use crate::trajectory::Trajectory;

/// Euclidean distances between every pair of samples, double centered.
fn double_centered_distances(traj: &Trajectory) -> DMatrix<f64> {
    let s = traj.samples();
    let t = traj.len();
    let mut a = DMatrix::zeros(t, t);
    for j in 0..t {
        for k in (j + 1)..t {
            let d = (s.row(j) - s.row(k)).norm();
            a[(j, k)] = d;
            a[(k, j)] = d;
        }
    }
    let row_means: Vec<f64> = a.row_iter().map(|r| r.sum() / t as f64).collect();
    let col_means: Vec<f64> = a.column_iter().map(|c| c.sum() / t as f64).collect();
    let grand = row_means.iter().sum::<f64>() / t as f64;
    for j in 0..t {
        for k in 0..t {
            a[(j, k)] += grand - row_means[j] - col_means[k];
        }
    }
    a
}

fn mean_product(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    let n = a.len() as f64;
    (a.iter().zip(b.iter()).map(|(p, q)| p * q).sum::<f64>() / n).max(0.0)
}

fn check_pair(x: &Trajectory, y: &Trajectory) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::Dimension(format!(
            "trajectories have {} and {} samples",
            x.len(),
            y.len()
        )));
    }
    if x.is_constant() || y.is_constant() {
        return Err(Error::ZeroVariance("distance correlation of a constant trajectory".into()));
    }
    Ok(())
}

/// Squared distance covariance, clamped at zero.
pub fn dcov_squared(x: &Trajectory, y: &Trajectory) -> Result<f64> {
    check_pair(x, y)?;
    Ok(mean_product(&double_centered_distances(x), &double_centered_distances(y)))
}

pub fn dcor(x: &Trajectory, y: &Trajectory) -> Result<f64> {
    check_pair(x, y)?;
    let a = double_centered_distances(x);
    let b = double_centered_distances(y);
    let dvar_x = mean_product(&a, &a).sqrt();
    let dvar_y = mean_product(&b, &b).sqrt();
    if dvar_x == 0.0 || dvar_y == 0.0 {
        return Err(Error::ZeroVariance("distance variance is zero".into()));
    }
    let dcov = mean_product(&a, &b).sqrt();
    clamp_unit(dcov / (dvar_x * dvar_y).sqrt(), "distance correlation")
}

pub fn dcor_distance(x: &Trajectory, y: &Trajectory) -> Result<f64> {
    clamp_unit(1.0 - dcor(x, y)?, "dCor distance")
}
