//! Pearson correlation and the multiple correlation coefficient.
//!
//! Covariances and variances are un-normalized sums of products of
//! deviations; the shared `1/T` factor cancels in every ratio.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::metrics::clamp_range;
use crate::regression::pseudo_inverse;
use crate::trajectory::Trajectory;

fn deviations(v: &[f64]) -> Vec<f64> {
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    v.iter().map(|x| x - mean).collect()
}

fn pearson_deviations(dx: &[f64], dy: &[f64]) -> f64 {
    let sxy: f64 = dx.iter().zip(dy).map(|(a, b)| a * b).sum();
    let sxx: f64 = dx.iter().map(|a| a * a).sum();
    let syy: f64 = dy.iter().map(|b| b * b).sum();
    (sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0)
}

fn is_constant(v: &[f64]) -> bool {
    v.iter().all(|&x| x == v[0])
}

pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::Dimension(format!(
            "series lengths differ: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    if x.len() < 2 {
        return Err(Error::InvalidArgument("pearson needs at least 2 samples".into()));
    }
    if is_constant(x) || is_constant(y) {
        return Err(Error::ZeroVariance("pearson input series is constant".into()));
    }
    Ok(pearson_deviations(&deviations(x), &deviations(y)))
}

/// Correlations of a response with each predictor plus the predictor
/// correlation matrix. Constant predictor columns are left out.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationVector {
    pub c: DVector<f64>,
    pub rxx: DMatrix<f64>,
    /// Original indices of the predictor columns that were kept.
    pub columns: Vec<usize>,
}

impl CorrelationVector {
    /// `c' Rxx^+ c`.
    pub fn r_squared(&self) -> f64 {
        let pinv = pseudo_inverse(&self.rxx);
        (self.c.transpose() * pinv * &self.c)[(0, 0)]
    }
}

pub fn correlation_vector(x: &Trajectory, y: &[f64]) -> Result<CorrelationVector> {
    if x.len() != y.len() {
        return Err(Error::Dimension(format!(
            "predictor has {} samples, response has {}",
            x.len(),
            y.len()
        )));
    }
    if is_constant(y) {
        return Err(Error::ZeroVariance("response series is constant".into()));
    }
    let constant = x.constant_dims();
    let columns: Vec<usize> = (0..x.dim()).filter(|c| !constant.contains(c)).collect();
    if columns.is_empty() {
        return Err(Error::DegeneratePredictor);
    }
    let dev: Vec<Vec<f64>> = columns.iter().map(|&c| deviations(&x.column(c))).collect();
    let dy = deviations(y);
    let k = columns.len();
    let c = DVector::from_iterator(k, dev.iter().map(|d| pearson_deviations(d, &dy)));
    let rxx = DMatrix::from_fn(k, k, |i, j| {
        if i == j {
            1.0
        } else {
            pearson_deviations(&dev[i], &dev[j])
        }
    });
    Ok(CorrelationVector { c, rxx, columns })
}

/// `sqrt(c' Rxx^+ c)`, using the pseudoinverse when the predictors are collinear.
pub fn multiple_correlation(x: &Trajectory, y: &[f64]) -> Result<f64> {
    let cv = correlation_vector(x, y)?;
    Ok(clamp_range(cv.r_squared(), 0.0, 1.0, "multiple correlation R^2")?.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pearson_basic() {
        let x = [0.0, 1.0, 2.0, 3.0];
        assert_eq!(pearson(&x, &x).unwrap(), 1.0);
        let neg: Vec<f64> = x.iter().map(|v| -v).collect();
        assert_eq!(pearson(&x, &neg).unwrap(), -1.0);
        // deviations (-1.5,-.5,.5,1.5) and (-.5,.5,-.5,.5): sxy = 1, sxx = 5, syy = 1
        let r = pearson(&x, &[0.0, 1.0, 0.0, 1.0]).unwrap();
        assert!((r - 1.0 / 5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn pearson_errors() {
        assert!(matches!(pearson(&[1.0, 1.0], &[0.0, 1.0]), Err(Error::ZeroVariance(_))));
        assert!(matches!(pearson(&[1.0, 2.0], &[0.0]), Err(Error::Dimension(_))));
        assert!(pearson(&[1.0], &[1.0]).is_err());
    }

    #[test]
    fn mcc_perfect_column() {
        let x = Trajectory::from_rows(&[[0.0, 1.0], [1.0, -2.0], [2.0, 0.5], [3.0, 4.0]]).unwrap();
        let r = multiple_correlation(&x, &x.column(1)).unwrap();
        assert!((r - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mcc_uncorrelated_predictors_sum_of_squares() {
        // two orthogonal centered columns over a full period
        let t = 64;
        let rows: Vec<[f64; 2]> = (0..t)
            .map(|i| {
                let th = 2.0 * std::f64::consts::PI * i as f64 / t as f64;
                [th.cos(), th.sin()]
            })
            .collect();
        let x = Trajectory::from_rows(&rows).unwrap();
        let y: Vec<f64> = (0..t).map(|i| i as f64 + 0.3 * (i % 3) as f64).collect();
        let cv = correlation_vector(&x, &y).unwrap();
        assert!(cv.rxx[(0, 1)].abs() < 1e-12);
        let r = multiple_correlation(&x, &y).unwrap();
        let sum: f64 = cv.c.iter().map(|v| v * v).sum();
        assert!((r * r - sum).abs() < 1e-12);
    }

    #[test]
    fn mcc_drops_constant_columns_and_errors() {
        let x = Trajectory::from_rows(&[[0.0, 5.0], [1.0, 5.0], [3.0, 5.0]]).unwrap();
        let cv = correlation_vector(&x, &[1.0, 2.0, 2.5]).unwrap();
        assert_eq!(cv.columns, vec![0]);
        assert!(matches!(
            multiple_correlation(&x, &[1.0, 1.0, 1.0]),
            Err(Error::ZeroVariance(_))
        ));
        let flat = Trajectory::from_rows(&[[2.0], [2.0], [2.0]]).unwrap();
        assert!(matches!(
            multiple_correlation(&flat, &[1.0, 2.0, 3.0]),
            Err(Error::DegeneratePredictor)
        ));
    }

    #[test]
    fn mcc_collinear_predictors_use_pseudoinverse() {
        let rows: Vec<[f64; 2]> = (0..10).map(|i| [i as f64, 2.0 * i as f64 + 1.0]).collect();
        let x = Trajectory::from_rows(&rows).unwrap();
        let y: Vec<f64> = (0..10).map(|i| (i * i) as f64).collect();
        let single = Trajectory::from_rows(&rows.iter().map(|r| [r[0]]).collect::<Vec<_>>()).unwrap();
        let a = multiple_correlation(&x, &y).unwrap();
        let b = multiple_correlation(&single, &y).unwrap();
        assert!((a - b).abs() < 1e-9);
    }
}
