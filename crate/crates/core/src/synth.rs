//! Deterministic test shapes, Gaussian noise and planar linear transforms.
//!
//! Canonical shapes (before `scale` is applied), with `u = t / (T - 1)`:
//!
//! | kind       | definition |
//! |------------|------------|
//! | `Line`     | `(u, u)` |
//! | `Circle`   | `(cos th, sin th)`, `th = 2 pi t / T` (the endpoint is not repeated) |
//! | `UShape`   | thirds of `u`: left arm `(-1, 1) -> (-1, 0)`, lower half circle through `(0, -1)`, right arm `(1, 0) -> (1, 1)` |
//! | `SShape`   | halves of `u`: arc of radius 1 about `(0, 1)` from angle 0 to 3pi/2, then about `(0, -1)` from pi/2 down to -pi |
//! | `Triangle` | closed polyline `(0,0) -> (1,0) -> (1/2, sqrt(3)/2) -> (0,0)`, uniform in `u` over the three edges |
//! | `Scribble` | per axis `sum_{k=1..3} a_k sin(2 pi k u + phi_k)`, `a_k ~ U[0.5, 1] / k`, `phi_k ~ U[0, 2pi)` |
//!
//! Randomness comes from `ChaCha8Rng::seed_from_u64(seed)`. Uniform draws are
//! `rng.random::<f64>()` in `[0, 1)`; normal draws use the Box-Muller
//! transform on consecutive uniform pairs `(u1, u2)` with `u1` replaced by
//! `1 - u1`, emitting `r cos(2 pi u2)` then `r sin(2 pi u2)`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::trajectory::{column_means, Trajectory};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShapeKind {
    Line,
    Circle,
    UShape,
    SShape,
    Triangle,
    Scribble,
}

impl ShapeKind {
    pub const ALL: [ShapeKind; 6] = [
        ShapeKind::Line,
        ShapeKind::UShape,
        ShapeKind::SShape,
        ShapeKind::Circle,
        ShapeKind::Triangle,
        ShapeKind::Scribble,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ShapeKind::Line => "line",
            ShapeKind::Circle => "circle",
            ShapeKind::UShape => "u-shape",
            ShapeKind::SShape => "s-shape",
            ShapeKind::Triangle => "triangle",
            ShapeKind::Scribble => "scribble",
        }
    }
}

impl fmt::Display for ShapeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ShapeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "line" => Ok(ShapeKind::Line),
            "circle" => Ok(ShapeKind::Circle),
            "u" | "u-shape" | "ushape" => Ok(ShapeKind::UShape),
            "s" | "s-shape" | "sshape" => Ok(ShapeKind::SShape),
            "triangle" => Ok(ShapeKind::Triangle),
            "scribble" => Ok(ShapeKind::Scribble),
            other => Err(Error::InvalidArgument(format!("unknown shape '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapeSpec {
    pub kind: ShapeKind,
    pub samples: usize,
    pub scale: f64,
    /// Only used by `Scribble`.
    pub seed: u64,
}

impl ShapeSpec {
    /// Unit-scale shape with seed 0.
    pub fn canonical(kind: ShapeKind, samples: usize) -> Self {
        Self {
            kind,
            samples,
            scale: 1.0,
            seed: 0,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.samples < 2 {
            return Err(Error::InvalidArgument(format!(
                "shape needs at least 2 samples, got {}",
                self.samples
            )));
        }
        if !(self.scale > 0.0 && self.scale.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "shape scale must be positive, got {}",
                self.scale
            )));
        }
        Ok(())
    }
}

/// Seeded source of uniform and standard normal draws.
pub struct Sampler {
    rng: ChaCha8Rng,
    spare: Option<f64>,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            spare: None,
        }
    }

    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    pub fn next_seed(&mut self) -> u64 {
        self.rng.next_u64()
    }

    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let (s, c) = (2.0 * PI * u2).sin_cos();
        self.spare = Some(r * s);
        r * c
    }
}

fn polyline(vertices: &[[f64; 2]], u: f64) -> [f64; 2] {
    let segments = (vertices.len() - 1) as f64;
    let s = u * segments;
    let i = (s.floor() as usize).min(vertices.len() - 2);
    let f = s - i as f64;
    let (a, b) = (vertices[i], vertices[i + 1]);
    [a[0] + (b[0] - a[0]) * f, a[1] + (b[1] - a[1]) * f]
}

fn u_shape(u: f64) -> [f64; 2] {
    if u < 1.0 / 3.0 {
        [-1.0, 1.0 - 3.0 * u]
    } else if u < 2.0 / 3.0 {
        let p = 3.0 * u - 1.0;
        [-(PI * p).cos(), -(PI * p).sin()]
    } else {
        [1.0, 3.0 * u - 2.0]
    }
}

fn s_shape(u: f64) -> [f64; 2] {
    if u < 0.5 {
        let ang = 2.0 * u * 1.5 * PI;
        [ang.cos(), 1.0 + ang.sin()]
    } else {
        let ang = PI / 2.0 - (2.0 * u - 1.0) * 1.5 * PI;
        [ang.cos(), -1.0 + ang.sin()]
    }
}

pub fn generate(spec: &ShapeSpec) -> Result<Trajectory> {
    spec.validate()?;
    let t = spec.samples;
    let last = (t - 1) as f64;
    let tri = [[0.0, 0.0], [1.0, 0.0], [0.5, 3f64.sqrt() / 2.0], [0.0, 0.0]];
    let scribble = if spec.kind == ShapeKind::Scribble {
        let mut rng = Sampler::new(spec.seed);
        let mut terms = [[(0.0, 0.0); 3]; 2];
        for axis in terms.iter_mut() {
            for (k, term) in axis.iter_mut().enumerate() {
                let amp = rng.uniform_in(0.5, 1.0) / (k + 1) as f64;
                let phase = rng.uniform_in(0.0, 2.0 * PI);
                *term = (amp, phase);
            }
        }
        Some(terms)
    } else {
        None
    };
    let mut out = DMatrix::zeros(t, 2);
    for i in 0..t {
        let u = i as f64 / last;
        let p = match spec.kind {
            ShapeKind::Line => [u, u],
            ShapeKind::Circle => {
                let th = 2.0 * PI * i as f64 / t as f64;
                [th.cos(), th.sin()]
            }
            ShapeKind::UShape => u_shape(u),
            ShapeKind::SShape => s_shape(u),
            ShapeKind::Triangle => polyline(&tri, u),
            ShapeKind::Scribble => {
                let terms = scribble.as_ref().expect("scribble terms");
                let eval = |axis: &[(f64, f64); 3]| {
                    axis.iter()
                        .enumerate()
                        .map(|(k, (a, ph))| a * (2.0 * PI * (k + 1) as f64 * u + ph).sin())
                        .sum::<f64>()
                };
                [eval(&terms[0]), eval(&terms[1])]
            }
        };
        out[(i, 0)] = spec.scale * p[0];
        out[(i, 1)] = spec.scale * p[1];
    }
    Trajectory::new(out)
}

/// Adds i.i.d. `N(0, sigma^2)` to every coordinate. `sigma = 0` returns the input unchanged.
pub fn add_noise(traj: &Trajectory, sigma: f64, seed: u64) -> Result<Trajectory> {
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "noise sigma must be non-negative, got {sigma}"
        )));
    }
    if sigma == 0.0 {
        return Ok(traj.clone());
    }
    let mut rng = Sampler::new(seed);
    let mut out = traj.samples().clone();
    // row-major draw order: sample by sample, dimension by dimension
    for r in 0..out.nrows() {
        for c in 0..out.ncols() {
            out[(r, c)] += sigma * rng.normal();
        }
    }
    Trajectory::new(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TransformSpec {
    /// Counter-clockwise, radians.
    Rotation(f64),
    Scale(f64),
    /// Mirror across the given axis.
    Reflection(Axis),
    Shear(f64),
    /// `diag(k, 1/k)`.
    Squeeze(f64),
}

impl FromStr for TransformSpec {
    type Err = Error;

    /// `rotation:<radians>` (or `<degrees>deg`), `scale:<s>`,
    /// `reflection[:x|y]`, `shear:<k>`, `squeeze:<k>`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n.trim().to_ascii_lowercase(), Some(a.trim())),
            None => (s.trim().to_ascii_lowercase(), None),
        };
        let number = |a: Option<&str>| -> Result<f64> {
            let a = a.ok_or_else(|| Error::InvalidArgument(format!("transform '{s}' needs a parameter")))?;
            let (digits, factor) = match a.strip_suffix("deg") {
                Some(d) => (d, PI / 180.0),
                None => (a, 1.0),
            };
            digits
                .parse::<f64>()
                .map(|v| v * factor)
                .map_err(|_| Error::InvalidArgument(format!("bad transform parameter '{a}'")))
        };
        match name.as_str() {
            "rotation" | "rotate" => Ok(TransformSpec::Rotation(number(arg)?)),
            "scale" => Ok(TransformSpec::Scale(number(arg)?)),
            "shear" => Ok(TransformSpec::Shear(number(arg)?)),
            "squeeze" => Ok(TransformSpec::Squeeze(number(arg)?)),
            "reflection" | "reflect" => match arg.map(|a| a.to_ascii_lowercase()).as_deref() {
                None | Some("x") => Ok(TransformSpec::Reflection(Axis::X)),
                Some("y") => Ok(TransformSpec::Reflection(Axis::Y)),
                Some(other) => Err(Error::InvalidArgument(format!("unknown reflection axis '{other}'"))),
            },
            other => Err(Error::InvalidArgument(format!("unknown transform '{other}'"))),
        }
    }
}

pub fn make_transform(spec: &TransformSpec) -> Result<DMatrix<f64>> {
    let m = match *spec {
        TransformSpec::Rotation(theta) => {
            let (s, c) = theta.sin_cos();
            DMatrix::from_row_slice(2, 2, &[c, -s, s, c])
        }
        TransformSpec::Scale(s) => {
            if s == 0.0 || !s.is_finite() {
                return Err(Error::InvalidArgument(format!("scale factor must be nonzero, got {s}")));
            }
            DMatrix::from_diagonal_element(2, 2, s)
        }
        TransformSpec::Reflection(Axis::X) => DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, -1.0])),
        TransformSpec::Reflection(Axis::Y) => DMatrix::from_diagonal(&DVector::from_vec(vec![-1.0, 1.0])),
        TransformSpec::Shear(k) => {
            if !k.is_finite() {
                return Err(Error::InvalidArgument(format!("shear factor must be finite, got {k}")));
            }
            DMatrix::from_row_slice(2, 2, &[1.0, k, 0.0, 1.0])
        }
        TransformSpec::Squeeze(k) => {
            if !(k > 0.0 && k.is_finite()) {
                return Err(Error::InvalidArgument(format!("squeeze factor must be positive, got {k}")));
            }
            DMatrix::from_diagonal(&DVector::from_vec(vec![k, 1.0 / k]))
        }
    };
    Ok(m)
}

fn condition_number(m: &DMatrix<f64>) -> f64 {
    let sv = crate::regression::singular_values(m);
    let (max, min) = (sv.max(), sv.min());
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// Maps every sample `x_t` to `M x_t`, about the trajectory mean when
/// `about_centroid` is set and about the origin otherwise.
pub fn apply_transform(traj: &Trajectory, m: &DMatrix<f64>, about_centroid: bool) -> Result<Trajectory> {
    let n = traj.dim();
    if m.shape() != (n, n) {
        return Err(Error::Dimension(format!(
            "transform is {:?}, trajectory has {n} dimensions",
            m.shape()
        )));
    }
    if condition_number(m) > 1e12 {
        return Err(Error::InvalidArgument("transform matrix is singular".into()));
    }
    let mut x = traj.samples().clone();
    let mean = column_means(&x);
    if about_centroid {
        for (c, &mu) in mean.iter().enumerate() {
            x.column_mut(c).add_scalar_mut(-mu);
        }
    }
    let mut out = x * m.transpose();
    if about_centroid {
        for (c, &mu) in mean.iter().enumerate() {
            out.column_mut(c).add_scalar_mut(mu);
        }
    }
    Trajectory::new(out)
}

/// Haar-distributed orthogonal matrix (QR of a Gaussian matrix with sign-fixed diagonal).
pub fn random_orthogonal(n: usize, rng: &mut Sampler) -> DMatrix<f64> {
    let g = DMatrix::from_fn(n, n, |_, _| rng.normal());
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for c in 0..n {
        if r[(c, c)] < 0.0 {
            q.column_mut(c).neg_mut();
        }
    }
    q
}

/// Seeded `n x n` matrix with condition number at most `max_condition`.
///
/// Built as `U diag(s) V'` with Haar-like orthogonal factors and singular
/// values `s_i = max_condition^{u_i}`, `u_i ~ U[0, 1)`; draws whose computed
/// condition number exceeds the bound (beyond `1e-9` relative round-off) are
/// rejected and redrawn.
pub fn random_nonsingular(n: usize, seed: u64, max_condition: f64) -> Result<DMatrix<f64>> {
    if n == 0 {
        return Err(Error::InvalidArgument("matrix size must be positive".into()));
    }
    if !(max_condition >= 1.0 && max_condition.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "max condition must be at least 1, got {max_condition}"
        )));
    }
    let mut rng = Sampler::new(seed);
    let log_kappa = max_condition.ln();
    loop {
        let u = random_orthogonal(n, &mut rng);
        let v = random_orthogonal(n, &mut rng);
        let s = DVector::from_fn(n, |_, _| (rng.uniform() * log_kappa).exp());
        let h = &u * DMatrix::from_diagonal(&s) * v.transpose();
        if condition_number(&h) <= max_condition * (1.0 + 1e-9) {
            return Ok(h);
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledTrajectory {
    pub label: String,
    pub trajectory: Trajectory,
}

/// Per-demonstration perturbations applied by [`make_dataset_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DatasetConfig {
    /// Rotate by an angle drawn from `[0, 2 pi)`.
    pub rotate: bool,
    /// Scale factors drawn from this range.
    pub scale_range: (f64, f64),
    /// Draw one scale factor per axis instead of a single uniform factor.
    pub anisotropic: bool,
    /// Translation components drawn from `[-t, t]`.
    pub translation: f64,
    pub noise_sigma: f64,
}

impl Default for DatasetConfig {
    fn default() -> Self {
        Self {
            rotate: true,
            scale_range: (0.5, 2.0),
            anisotropic: true,
            translation: 1.0,
            noise_sigma: 0.01,
        }
    }
}

impl DatasetConfig {
    /// No perturbation at all: every demonstration is the base shape.
    pub fn identity() -> Self {
        Self {
            rotate: false,
            scale_range: (1.0, 1.0),
            anisotropic: false,
            translation: 0.0,
            noise_sigma: 0.0,
        }
    }
}

pub fn make_dataset(classes: &[ShapeSpec], demos_per_class: usize, seed: u64) -> Result<Vec<LabeledTrajectory>> {
    make_dataset_with(classes, demos_per_class, seed, &DatasetConfig::default())
}

/// Each demonstration is the class shape mapped by `R(angle) diag(sx, sy)`
/// about its centroid, translated, then perturbed with Gaussian noise.
/// Draw order per demo: angle, sx, sy, tx, ty, noise seed.
pub fn make_dataset_with(
    classes: &[ShapeSpec],
    demos_per_class: usize,
    seed: u64,
    config: &DatasetConfig,
) -> Result<Vec<LabeledTrajectory>> {
    if demos_per_class < 1 {
        return Err(Error::InvalidArgument("need at least one demonstration per class".into()));
    }
    let (lo, hi) = config.scale_range;
    if !(lo > 0.0 && hi >= lo) {
        return Err(Error::InvalidArgument(format!("bad scale range ({lo}, {hi})")));
    }
    let mut rng = Sampler::new(seed);
    let mut out = Vec::with_capacity(classes.len() * demos_per_class);
    for spec in classes {
        let base = generate(spec)?;
        for _ in 0..demos_per_class {
            let angle = if config.rotate { rng.uniform_in(0.0, 2.0 * PI) } else { 0.0 };
            let sx = rng.uniform_in(lo, hi);
            let sy = if config.anisotropic { rng.uniform_in(lo, hi) } else { sx };
            let tx = rng.uniform_in(-config.translation, config.translation);
            let ty = rng.uniform_in(-config.translation, config.translation);
            let noise_seed = rng.next_seed();

            let m = make_transform(&TransformSpec::Rotation(angle))?
                * DMatrix::from_diagonal(&DVector::from_vec(vec![sx, sy]));
            let mut demo = if m == DMatrix::identity(2, 2) {
                base.clone()
            } else {
                apply_transform(&base, &m, true)?
            };
            if tx != 0.0 || ty != 0.0 {
                demo = demo.translate(&[tx, ty])?;
            }
            demo = add_noise(&demo, config.noise_sigma, noise_seed)?;
            out.push(LabeledTrajectory {
                label: spec.kind.name().to_string(),
                trajectory: demo,
            });
        }
    }
    Ok(out)
}
