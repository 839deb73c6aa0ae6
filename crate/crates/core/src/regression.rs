//! Affine least-squares fitting used by the GMCC prediction step.
//!
//! Both sides are centered before solving and the offset is reattached
//! afterwards, so the fit is exact in the mean. The centered system is solved
//! through a checked singular value decomposition; singular values below
//! `1e-10 * sigma_max * max(T, n)` are treated as zero, which yields the
//! minimum-norm solution for rank-deficient predictors such as straight lines.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::trajectory::{center_matrix, Trajectory};

const RANK_CUTOFF: f64 = 1e-10;

/// Affine map `y = coefficients * x + offset`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearModel {
    /// `n_y x n_x`; row `i` maps predictor dimensions to response dimension `i`.
    pub coefficients: DMatrix<f64>,
    pub offset: DVector<f64>,
}

impl LinearModel {
    pub fn predictor_dim(&self) -> usize {
        self.coefficients.ncols()
    }

    pub fn response_dim(&self) -> usize {
        self.coefficients.nrows()
    }

    pub fn identity(n: usize) -> Self {
        Self {
            coefficients: DMatrix::identity(n, n),
            offset: DVector::zeros(n),
        }
    }
}

pub(crate) fn rank_tolerance(sigma_max: f64, rows: usize, cols: usize) -> f64 {
    RANK_CUTOFF * sigma_max * rows.max(cols) as f64
}

/// Thin factorization `m = u * diag(s) * v_t`.
pub(crate) struct Decomposition {
    pub u: DMatrix<f64>,
    pub s: DVector<f64>,
    pub v_t: DMatrix<f64>,
}

impl Decomposition {
    fn transposed(self) -> Self {
        Self {
            u: self.v_t.transpose(),
            s: self.s,
            v_t: self.u.transpose(),
        }
    }

    fn residual(&self, m: &DMatrix<f64>) -> f64 {
        (&self.u * DMatrix::from_diagonal(&self.s) * &self.v_t - m).norm()
    }
}

/// Singular value decomposition with a reconstruction check.
///
/// Tall inputs are reduced to their square triangular factor first. The
/// library SVD occasionally returns an invalid factorization for exactly
/// rank-deficient input; when the check fails the transpose is tried, then
/// the eigendecomposition of `m' m`.
pub(crate) fn decompose(m: &DMatrix<f64>) -> Decomposition {
    let (rows, cols) = m.shape();
    if rows > cols {
        let qr = m.clone().qr();
        let inner = decompose(&qr.r());
        return Decomposition {
            u: qr.q() * inner.u,
            s: inner.s,
            v_t: inner.v_t,
        };
    }
    if rows < cols {
        return decompose(&m.transpose()).transposed();
    }
    let limit = 1e-8 * m.norm().max(f64::MIN_POSITIVE);
    for transpose in [false, true] {
        let a = if transpose { m.transpose() } else { m.clone() };
        let svd = a.svd(true, true);
        if let (Some(u), Some(v_t)) = (svd.u, svd.v_t) {
            let d = Decomposition {
                u,
                s: svd.singular_values,
                v_t,
            };
            let d = if transpose { d.transposed() } else { d };
            if d.s.iter().all(|v| v.is_finite()) && d.residual(m) <= limit {
                return d;
            }
        }
    }
    let eig = (m.transpose() * m).symmetric_eigen();
    let s = eig.eigenvalues.map(|l| l.max(0.0).sqrt());
    let mut u = m * &eig.eigenvectors;
    for (j, &sj) in s.iter().enumerate() {
        if sj > 0.0 {
            u.column_mut(j).unscale_mut(sj);
        } else {
            u.column_mut(j).fill(0.0);
        }
    }
    Decomposition {
        u,
        s,
        v_t: eig.eigenvectors.transpose(),
    }
}

pub(crate) fn singular_values(m: &DMatrix<f64>) -> DVector<f64> {
    decompose(m).s
}

/// `v * diag(1/s) * u'` over the singular values above the rank cutoff.
fn truncated_inverse(m: &DMatrix<f64>) -> (Decomposition, DVector<f64>) {
    let d = decompose(m);
    let sigma_max = d.s.max();
    let tol = rank_tolerance(sigma_max, m.nrows(), m.ncols());
    let inv = d.s.map(|v| if sigma_max > 0.0 && v > tol { 1.0 / v } else { 0.0 });
    (d, inv)
}

/// Moore-Penrose pseudoinverse with the relative rank cutoff.
pub(crate) fn pseudo_inverse(m: &DMatrix<f64>) -> DMatrix<f64> {
    let (d, inv) = truncated_inverse(m);
    d.v_t.transpose() * DMatrix::from_diagonal(&inv) * d.u.transpose()
}

/// Minimum-norm solution of `a * x = b` in the least-squares sense.
pub(crate) fn solve_min_norm(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    let (d, inv) = truncated_inverse(a);
    d.v_t.transpose() * (DMatrix::from_diagonal(&inv) * (d.u.transpose() * b))
}

/// Fits the affine map from `x` to `y` minimizing the residual sum of squares.
pub fn fit_least_squares(x: &Trajectory, y: &Trajectory) -> Result<LinearModel> {
    if x.len() != y.len() {
        return Err(Error::Dimension(format!(
            "predictor has {} samples, response has {}",
            x.len(),
            y.len()
        )));
    }
    if x.is_constant() {
        return Err(Error::DegeneratePredictor);
    }
    let (xc, x_mean) = center_matrix(x.samples());
    let (yc, y_mean) = center_matrix(y.samples());
    // (n_x x n_y); constant predictor columns are zero after centering and
    // fall under the rank cutoff, which drops them.
    let solution = solve_min_norm(&xc, &yc);
    let coefficients = solution.transpose();
    let offset = &y_mean - &coefficients * &x_mean;
    if coefficients.iter().chain(offset.iter()).any(|v| !v.is_finite()) {
        return Err(Error::Inconsistent("non-finite regression coefficients".into()));
    }
    Ok(LinearModel {
        coefficients,
        offset,
    })
}

pub fn predict(model: &LinearModel, x: &Trajectory) -> Result<Trajectory> {
    if x.dim() != model.predictor_dim() {
        return Err(Error::Dimension(format!(
            "model expects {} predictor dimensions, trajectory has {}",
            model.predictor_dim(),
            x.dim()
        )));
    }
    let mut out = x.samples() * model.coefficients.transpose();
    for (c, &o) in model.offset.iter().enumerate() {
        out.column_mut(c).add_scalar_mut(o);
    }
    Trajectory::new(out)
}

/// `y - predict(model, x)` as a raw matrix.
pub fn residual(model: &LinearModel, x: &Trajectory, y: &Trajectory) -> Result<DMatrix<f64>> {
    let yhat = predict(model, x)?;
    if yhat.samples().shape() != y.samples().shape() {
        return Err(Error::Dimension("response shape does not match model output".into()));
    }
    Ok(y.samples() - yhat.samples())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(t: usize) -> Trajectory {
        let rows: Vec<[f64; 2]> = (0..t)
            .map(|i| {
                let th = 2.0 * std::f64::consts::PI * i as f64 / t as f64;
                [th.cos(), th.sin()]
            })
            .collect();
        Trajectory::from_rows(&rows).unwrap()
    }

    fn map(traj: &Trajectory, h: &DMatrix<f64>, b: &[f64]) -> Trajectory {
        let m = traj.samples() * h.transpose();
        Trajectory::new(m).unwrap().translate(b).unwrap()
    }

    #[test]
    fn self_fit_is_identity() {
        let x = circle(40);
        let model = fit_least_squares(&x, &x).unwrap();
        assert!((&model.coefficients - DMatrix::<f64>::identity(2, 2)).amax() < 1e-9);
        assert!(model.offset.amax() < 1e-9);
    }

    #[test]
    fn exact_affine_relation() {
        let x = Trajectory::from_rows(&[[0.0, 1.0], [1.0, 3.0], [2.0, -1.0], [4.0, 0.5]]).unwrap();
        let y = map(&x, &(DMatrix::identity(2, 2) * 2.0), &[1.0, 1.0]);
        let model = fit_least_squares(&x, &y).unwrap();
        assert!((&model.coefficients - DMatrix::<f64>::identity(2, 2) * 2.0).amax() < 1e-9);
        assert!((&model.offset - DVector::from_element(2, 1.0)).amax() < 1e-9);
        assert!(residual(&model, &x, &y).unwrap().amax() < 1e-9);
    }

    #[test]
    fn recovers_shear() {
        let x = circle(100);
        let h = DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.0, 1.0]);
        let y = map(&x, &h, &[0.0, 0.0]);
        let model = fit_least_squares(&x, &y).unwrap();
        assert!((&model.coefficients - &h).amax() < 1e-8);
        let back = predict(&model, &x).unwrap();
        assert!((back.samples() - y.samples()).amax() < 1e-8);
    }

    #[test]
    fn rank_deficient_line_still_exact() {
        let rows: Vec<[f64; 2]> = (0..20).map(|i| [i as f64, i as f64]).collect();
        let x = Trajectory::from_rows(&rows).unwrap();
        let h = DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]);
        let y = map(&x, &h, &[3.0, -2.0]);
        let model = fit_least_squares(&x, &y).unwrap();
        assert!(residual(&model, &x, &y).unwrap().amax() < 1e-9);
    }

    #[test]
    fn constant_predictor_column_is_ignored() {
        let x = Trajectory::from_rows(&[[0.0, 7.0], [1.0, 7.0], [2.0, 7.0]]).unwrap();
        let y = Trajectory::from_rows(&[[1.0], [3.0], [5.0]]).unwrap();
        let model = fit_least_squares(&x, &y).unwrap();
        assert!((model.coefficients[(0, 0)] - 2.0).abs() < 1e-12);
        assert!(model.coefficients[(0, 1)].abs() < 1e-12);
    }

    #[test]
    fn errors() {
        let x = circle(10);
        let y = circle(11);
        assert!(matches!(fit_least_squares(&x, &y), Err(Error::Dimension(_))));
        let flat = Trajectory::from_rows(&[[1.0, 1.0]; 10]).unwrap();
        assert!(matches!(fit_least_squares(&flat, &x), Err(Error::DegeneratePredictor)));
        let model = LinearModel::identity(3);
        assert!(matches!(predict(&model, &x), Err(Error::Dimension(_))));
    }

    #[test]
    fn identity_and_constant_models() {
        let x = circle(12);
        assert_eq!(predict(&LinearModel::identity(2), &x).unwrap(), x);
        let model = LinearModel {
            coefficients: DMatrix::zeros(2, 2),
            offset: DVector::from_vec(vec![4.0, -1.0]),
        };
        let out = predict(&model, &x).unwrap();
        assert!(out.column(0).iter().all(|&v| v == 4.0));
        assert!(out.column(1).iter().all(|&v| v == -1.0));
    }

    #[test]
    fn decomposition_of_scaled_diagonal_line() {
        // the plain library SVD mis-factors this exact matrix
        let line: Vec<[f64; 2]> = (0..100).map(|i| [i as f64 / 99.0; 2]).collect();
        let x = Trajectory::from_rows(&line).unwrap();
        let scaled = crate::synth::apply_transform(&x, &DMatrix::identity(2, 2).scale(2.0), true).unwrap();
        let (xc, _) = center_matrix(scaled.samples());
        let d = decompose(&xc);
        assert!(d.residual(&xc) < 1e-12 * xc.norm());
        assert!(d.s[1] < 1e-12 * d.s[0]);
        let model = fit_least_squares(&scaled, &x).unwrap();
        assert!((predict(&model, &scaled).unwrap().samples() - x.samples()).amax() < 1e-12);
    }

    #[test]
    fn pseudo_inverse_of_wide_and_zero() {
        let a = DMatrix::from_row_slice(1, 3, &[1.0, 2.0, 2.0]);
        let p = pseudo_inverse(&a);
        assert_eq!(p.shape(), (3, 1));
        assert!(((&a * &p)[(0, 0)] - 1.0).abs() < 1e-14);
        assert!((p[(1, 0)] - 2.0 / 9.0).abs() < 1e-14);
        assert_eq!(pseudo_inverse(&DMatrix::zeros(2, 3)), DMatrix::zeros(3, 2));
    }
}
