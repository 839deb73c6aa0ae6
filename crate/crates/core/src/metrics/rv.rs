//! RV coefficient.
//!
//! `RV = tr(XX'YY') / sqrt(tr((XX')^2) tr((YY')^2))`, evaluated through the
//! `n x n` cross products (`tr(XX'YY') = |X'Y|_F^2`) instead of the `T x T`
//! Gram matrices.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::metrics::clamp_unit;
use crate::trajectory::{center_matrix, Trajectory};

fn frobenius_sq(m: &DMatrix<f64>) -> f64 {
    m.iter().map(|v| v * v).sum()
}

/// `centered = true` removes column means first (the usual form);
/// `centered = false` uses the raw samples.
pub fn rv(x: &Trajectory, y: &Trajectory, centered: bool) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::Dimension(format!(
            "trajectories have {} and {} samples",
            x.len(),
            y.len()
        )));
    }
    let (xm, ym) = if centered {
        (center_matrix(x.samples()).0, center_matrix(y.samples()).0)
    } else {
        (x.samples().clone(), y.samples().clone())
    };
    let xx = frobenius_sq(&(xm.transpose() * &xm));
    let yy = frobenius_sq(&(ym.transpose() * &ym));
    if xx == 0.0 || yy == 0.0 {
        return Err(Error::ZeroVariance("RV Gram matrix has zero trace".into()));
    }
    let xy = frobenius_sq(&(xm.transpose() * &ym));
    clamp_unit(xy / (xx.sqrt() * yy.sqrt()), "RV coefficient")
}

pub fn rv_distance(x: &Trajectory, y: &Trajectory, centered: bool) -> Result<f64> {
    clamp_unit(1.0 - rv(x, y, centered)?, "RV distance")
}
