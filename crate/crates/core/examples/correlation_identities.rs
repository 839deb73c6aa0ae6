// Three routes to the same number for a multivariate response:
// regression R^2, variance-weighted per-dimension multiple correlations, and
// (for one response dimension) the classical multiple correlation.
//
// ```text
// cargo run --example correlation_identities
// ```

use gmcc::metrics::{gmcc, gmcc_decomposed, multiple_correlation, pearson};
use gmcc::synth::Sampler;
use gmcc::Trajectory;
use nalgebra::DMatrix;

fn main() {
    let mut s = Sampler::new(1);
    let x = DMatrix::from_fn(200, 3, |_, _| s.normal());
    let y = DMatrix::from_fn(200, 2, |t, c| {
        if c == 0 {
            x[(t, 0)] + 0.5 * x[(t, 1)] + 0.3 * s.normal()
        } else {
            (x[(t, 2)]).powi(2) + s.normal()
        }
    });
    let (xt, yt) = (Trajectory::new(x.clone()).unwrap(), Trajectory::new(y.clone()).unwrap());
    println!("gmcc via regression     {:.12}", gmcc(&xt, &yt).unwrap());
    println!("gmcc via decomposition  {:.12}", gmcc_decomposed(&xt, &yt).unwrap());

    let y0: Vec<f64> = y.column(0).iter().copied().collect();
    let y0t = Trajectory::new(DMatrix::from_column_slice(200, 1, &y0)).unwrap();
    println!("scalar response: gmcc {:.12}, multiple correlation {:.12}",
        gmcc(&xt, &y0t).unwrap(),
        multiple_correlation(&xt, &y0).unwrap());

    // one predictor: the multiple correlation is |pearson|
    let x0: Vec<f64> = x.column(0).iter().copied().collect();
    let x0t = Trajectory::new(DMatrix::from_column_slice(200, 1, &x0)).unwrap();
    println!("single predictor: {:.12} vs |r| {:.12}",
        multiple_correlation(&x0t, &y0).unwrap(),
        pearson(&x0, &y0).unwrap().abs());
}
