//! Generalized multiple correlation coefficient.
//!
//! `gmcc(X, Y)` is the square root of the generalized coefficient of
//! determination of `Y` under the optimal affine prediction from `X`. It is 1
//! whenever `Y = H X + b` for a nonsingular `H`, and it is directional; the
//! symmetric form averages both directions.

use crate::error::{Error, Result};
use crate::metrics::correlation::multiple_correlation;
use crate::metrics::{clamp_range, clamp_unit};
use crate::regression::{fit_least_squares, predict};
use crate::trajectory::{center_matrix, total_variance, Trajectory};

/// `sum_t |Yhat_t - mean(Y)|^2 / sum_t |Y_t - mean(Y)|^2`.
pub fn generalized_r2(y: &Trajectory, yhat: &Trajectory) -> Result<f64> {
    if y.samples().shape() != yhat.samples().shape() {
        return Err(Error::Dimension(format!(
            "response is {:?}, prediction is {:?}",
            y.samples().shape(),
            yhat.samples().shape()
        )));
    }
    let (yc, mean) = center_matrix(y.samples());
    let total: f64 = yc.iter().map(|v| v * v).sum();
    if total == 0.0 {
        return Err(Error::ZeroVariance("response trajectory is constant".into()));
    }
    let mut explained = 0.0;
    for (c, &mu) in mean.iter().enumerate() {
        explained += yhat.samples().column(c).iter().map(|v| (v - mu) * (v - mu)).sum::<f64>();
    }
    Ok(explained / total)
}

fn check_pair(x: &Trajectory, y: &Trajectory) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::Dimension(format!(
            "trajectories have {} and {} samples",
            x.len(),
            y.len()
        )));
    }
    if y.is_constant() {
        return Err(Error::ZeroVariance("response trajectory is constant".into()));
    }
    if x.is_constant() {
        return Err(Error::DegeneratePredictor);
    }
    Ok(())
}

/// Directional coefficient: how well `x` linearly predicts `y`.
pub fn gmcc(x: &Trajectory, y: &Trajectory) -> Result<f64> {
    check_pair(x, y)?;
    let model = fit_least_squares(x, y)?;
    let yhat = predict(&model, x)?;
    let r2 = clamp_unit(generalized_r2(y, &yhat)?, "generalized R^2")?;
    Ok(r2.sqrt())
}

/// The same coefficient through the variance-weighted sum of per-dimension
/// multiple correlations, `sqrt(sum_i R_i^2 var_i / var_total)`.
pub fn gmcc_decomposed(x: &Trajectory, y: &Trajectory) -> Result<f64> {
    check_pair(x, y)?;
    let total = total_variance(y);
    let mut r2 = 0.0;
    for c in 0..y.dim() {
        let col = y.column(c);
        let mean = col.iter().sum::<f64>() / col.len() as f64;
        let var: f64 = col.iter().map(|v| (v - mean) * (v - mean)).sum();
        if var == 0.0 {
            continue;
        }
        let r = multiple_correlation(x, &col)?;
        r2 += r * r * var / total;
    }
    Ok(clamp_range(r2, 0.0, 1.0, "decomposed R^2")?.sqrt())
}

pub fn gmcc_symmetric(x: &Trajectory, y: &Trajectory) -> Result<f64> {
    Ok((gmcc(x, y)? + gmcc(y, x)?) / 2.0)
}

/// `1 - gmcc_symmetric(x, y)`.
pub fn gmcc_distance(x: &Trajectory, y: &Trajectory) -> Result<f64> {
    clamp_unit(1.0 - gmcc_symmetric(x, y)?, "GMCC distance")
}
