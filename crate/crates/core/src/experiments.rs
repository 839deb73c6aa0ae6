//! The comparison studies: noise robustness, transform invariance, line
//! versus circle, and clustering of a synthetic gesture set.
//!
//! Canonical parameters: `T = 100` samples, unit-scale shapes, transforms
//! applied about the centroid with rotation `pi/3`, scale `2`, reflection
//! across the x axis, shear `0.5` and squeeze `2`. Each study returns its
//! table plus the threshold checks it is expected to satisfy.

use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::cluster::{agglomerate, cut, purity, ClusterAssignment, Dendrogram};
use crate::error::Result;
use crate::metrics::{distance_matrix_labeled, DistanceMatrix, MetricKind};
use crate::synth::{
    add_noise, apply_transform, generate, make_dataset, make_transform, Sampler, ShapeKind, ShapeSpec, TransformSpec,
};
use crate::trajectory::Trajectory;

pub const CANONICAL_SAMPLES: usize = 100;
pub const NOISE_LEVELS: [f64; 3] = [0.01, 0.02, 0.04];
pub const DEFAULT_SEED: u64 = 7;
pub const DEMOS_PER_CLASS: usize = 5;

/// Noise cells must stay below this distance.
pub const NOISE_LIMIT: f64 = 0.05;
/// GMCC distance to a linearly transformed copy must stay below this.
pub const INVARIANCE_LIMIT: f64 = 1e-6;
pub const CIRCLE_SHEAR_DCOR_MIN: f64 = 0.01;
pub const LINE_SHEAR_RV_MIN: f64 = 0.1;
pub const LINE_CIRCLE_GMCC_MIN: f64 = 0.5;
pub const CLUSTER_PURITY_MIN: f64 = 0.88;

/// Metrics shown in every table, in column order.
pub const TABLE_METRICS: [MetricKind; 4] = [MetricKind::Dcor, MetricKind::Rv, MetricKind::RvUncentered, MetricKind::Gmcc];

pub fn canonical(kind: ShapeKind) -> Result<Trajectory> {
    generate(&ShapeSpec::canonical(kind, CANONICAL_SAMPLES))
}

pub fn canonical_transforms() -> [(&'static str, TransformSpec); 5] {
    [
        ("rotation", TransformSpec::Rotation(PI / 3.0)),
        ("scale", TransformSpec::Scale(2.0)),
        ("reflection", TransformSpec::Reflection(crate::synth::Axis::X)),
        ("shear", TransformSpec::Shear(0.5)),
        ("squeeze", TransformSpec::Squeeze(2.0)),
    ]
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub name: String,
    /// One distance per entry of [`TABLE_METRICS`].
    pub distances: [f64; 4],
}

impl Row {
    fn measure(name: impl Into<String>, x: &Trajectory, y: &Trajectory) -> Result<Self> {
        let mut distances = [0.0; 4];
        for (d, metric) in distances.iter_mut().zip(TABLE_METRICS) {
            *d = metric.distance(x, y)?;
        }
        Ok(Self {
            name: name.into(),
            distances,
        })
    }

    pub fn get(&self, metric: MetricKind) -> f64 {
        let i = TABLE_METRICS.iter().position(|&m| m == metric).expect("metric in table");
        self.distances[i]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub description: String,
    pub value: f64,
    pub passed: bool,
}

impl Check {
    fn below(description: impl Into<String>, value: f64, limit: f64) -> Self {
        Self {
            description: format!("{} < {limit:e}", description.into()),
            value,
            passed: value < limit,
        }
    }

    fn above(description: impl Into<String>, value: f64, limit: f64) -> Self {
        Self {
            description: format!("{} > {limit}", description.into()),
            value,
            passed: value > limit,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub title: String,
    pub rows: Vec<Row>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    /// Fixed six-decimal table followed by one PASS/FAIL line per check.
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}", self.title);
        if !self.rows.is_empty() {
            let _ = write!(s, "{:<16}", "case");
            for m in TABLE_METRICS {
                let _ = write!(s, " {:>14}", m.name());
            }
            s.push('\n');
            for row in &self.rows {
                let _ = write!(s, "{:<16}", row.name);
                for d in row.distances {
                    let _ = write!(s, " {d:>14.6}");
                }
                s.push('\n');
            }
        }
        for c in &self.checks {
            let _ = writeln!(
                s,
                "[{}] {} (value {:.6})",
                if c.passed { "PASS" } else { "FAIL" },
                c.description,
                c.value
            );
        }
        s
    }
}

/// Distances between the clean canonical line/circle and noisy copies.
pub fn noise_table(seed: u64) -> Result<Report> {
    let mut seeds = Sampler::new(seed);
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    for kind in [ShapeKind::Line, ShapeKind::Circle] {
        let clean = canonical(kind)?;
        for sigma in NOISE_LEVELS {
            let noisy = add_noise(&clean, sigma, seeds.next_seed())?;
            let row = Row::measure(format!("{kind} {sigma}"), &clean, &noisy)?;
            for m in [MetricKind::Dcor, MetricKind::Rv, MetricKind::Gmcc] {
                checks.push(Check::below(format!("{} {m}", row.name), row.get(m), NOISE_LIMIT));
            }
            rows.push(row);
        }
    }
    Ok(Report {
        title: format!("noise robustness (sigma = standard deviation, seed {seed})"),
        rows,
        checks,
    })
}

/// Distances between a canonical shape and its five transformed copies.
pub fn transform_table(kind: ShapeKind) -> Result<Report> {
    let base = canonical(kind)?;
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    for (name, spec) in canonical_transforms() {
        let moved = apply_transform(&base, &make_transform(&spec)?, true)?;
        let row = Row::measure(name, &base, &moved)?;
        checks.push(Check::below(format!("{kind} {name} gmcc"), row.get(MetricKind::Gmcc), INVARIANCE_LIMIT));
        match (kind, name) {
            (ShapeKind::Circle, "shear") => checks.push(Check::above(
                "circle shear dcor",
                row.get(MetricKind::Dcor),
                CIRCLE_SHEAR_DCOR_MIN,
            )),
            (ShapeKind::Line, "shear") => {
                checks.push(Check::above("line shear rv", row.get(MetricKind::Rv), LINE_SHEAR_RV_MIN))
            }
            _ => {}
        }
        rows.push(row);
    }
    Ok(Report {
        title: format!("{kind} under linear transforms (about the centroid)"),
        rows,
        checks,
    })
}

pub fn line_vs_circle() -> Result<Report> {
    let row = Row::measure("line vs circle", &canonical(ShapeKind::Line)?, &canonical(ShapeKind::Circle)?)?;
    let (g, d) = (row.get(MetricKind::Gmcc), row.get(MetricKind::Dcor));
    let checks = vec![
        Check::above("gmcc - dcor", g - d, 0.0),
        Check::above("dcor", d, 0.0),
        Check::above("gmcc", g, LINE_CIRCLE_GMCC_MIN),
    ];
    Ok(Report {
        title: "line versus circle".into(),
        rows: vec![row],
        checks,
    })
}

/// One metric's share of the clustering study.
#[derive(Debug, Clone)]
pub struct ClusteringResult {
    pub metric: MetricKind,
    pub matrix: DistanceMatrix,
    pub dendrogram: Dendrogram,
    pub assignment: ClusterAssignment,
    pub purity: f64,
}

#[derive(Debug, Clone)]
pub struct ClusteringStudy {
    pub names: Vec<String>,
    pub truth: Vec<String>,
    pub results: Vec<ClusteringResult>,
    pub report: Report,
}

impl ClusteringStudy {
    pub fn result(&self, metric: MetricKind) -> Option<&ClusteringResult> {
        self.results.iter().find(|r| r.metric == metric)
    }
}

/// The five non-scribble classes used by the clustering study.
pub fn clustering_classes() -> Vec<ShapeSpec> {
    [ShapeKind::Line, ShapeKind::UShape, ShapeKind::SShape, ShapeKind::Circle, ShapeKind::Triangle]
        .into_iter()
        .map(|k| ShapeSpec::canonical(k, CANONICAL_SAMPLES))
        .collect()
}

/// Generates the dataset, builds a distance matrix per metric, cuts the
/// average-linkage dendrogram into one cluster per class and scores purity.
pub fn clustering(classes: &[ShapeSpec], seed: u64) -> Result<ClusteringStudy> {
    let data = make_dataset(classes, DEMOS_PER_CLASS, seed)?;
    let mut counters = std::collections::HashMap::<&str, usize>::new();
    let names: Vec<String> = data
        .iter()
        .map(|d| {
            let n = counters.entry(d.label.as_str()).or_default();
            *n += 1;
            format!("{}_{}", d.label, *n - 1)
        })
        .collect();
    let truth: Vec<String> = data.iter().map(|d| d.label.clone()).collect();
    let trajs: Vec<Trajectory> = data.into_iter().map(|d| d.trajectory).collect();
    let k = classes.len();

    let mut results = Vec::new();
    let mut rows = Vec::new();
    for metric in [MetricKind::Dcor, MetricKind::Rv, MetricKind::Gmcc] {
        let matrix = distance_matrix_labeled(&trajs, &names, metric)?;
        let dendrogram = agglomerate(&matrix)?;
        let assignment = cut(&dendrogram, k)?;
        let p = purity(&assignment, &truth)?;
        rows.push((metric, p));
        results.push(ClusteringResult {
            metric,
            matrix,
            dendrogram,
            assignment,
            purity: p,
        });
    }
    let get = |m: MetricKind| rows.iter().find(|(x, _)| *x == m).map(|(_, p)| *p).unwrap_or(0.0);
    let (g, r, d) = (get(MetricKind::Gmcc), get(MetricKind::Rv), get(MetricKind::Dcor));
    let mut checks = vec![
        Check {
            description: format!("gmcc purity >= {CLUSTER_PURITY_MIN}"),
            value: g,
            passed: g >= CLUSTER_PURITY_MIN,
        },
        Check::above("gmcc purity - rv purity", g - r, 0.0),
        Check::above("gmcc purity - dcor purity", g - d, 0.0),
    ];
    for (metric, p) in &rows {
        checks.push(Check {
            description: format!("{metric} purity (informational)"),
            value: *p,
            passed: true,
        });
    }
    let report = Report {
        title: format!(
            "clustering {} classes x {DEMOS_PER_CLASS} demos, average linkage, k = {k}, seed {seed}",
            classes.len()
        ),
        rows: Vec::new(),
        checks,
    };
    Ok(ClusteringStudy {
        names,
        truth,
        results,
        report,
    })
}
