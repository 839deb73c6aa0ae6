//! Average-linkage agglomerative clustering.
//!
//! Cluster ids follow the usual convention: leaves are `0..m`, and the
//! cluster created by merge `s` gets id `m + s`. Inter-cluster distances are
//! maintained with the size-weighted update
//! `d(a+b, k) = (|a| d(a, k) + |b| d(b, k)) / (|a| + |b|)`, which equals the
//! mean over all leaf pairs. Ties go to the lexicographically smallest
//! `(smaller id, larger id)` pair.

use std::collections::HashMap;
use std::hash::Hash;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::DistanceMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Merge {
    pub left: usize,
    pub right: usize,
    pub height: f64,
    /// Number of leaves under the new cluster.
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dendrogram {
    pub merges: Vec<Merge>,
    pub labels: Vec<String>,
}

impl Dendrogram {
    pub fn leaf_count(&self) -> usize {
        self.labels.len()
    }

    /// Checks merge count, id ranges, sizes, and that every cluster is consumed at most once.
    pub fn validate(&self) -> Result<()> {
        let m = self.leaf_count();
        if m < 2 || self.merges.len() != m - 1 {
            return Err(Error::InvalidArgument(format!(
                "{} merges for {m} leaves",
                self.merges.len()
            )));
        }
        let mut sizes: Vec<usize> = vec![1; m];
        let mut used = vec![false; 2 * m - 1];
        for (s, mg) in self.merges.iter().enumerate() {
            let id = m + s;
            for c in [mg.left, mg.right] {
                if c >= id || used[c] {
                    return Err(Error::InvalidArgument(format!(
                        "merge {s} references unavailable cluster {c}"
                    )));
                }
                used[c] = true;
            }
            if mg.left == mg.right || !mg.height.is_finite() {
                return Err(Error::InvalidArgument(format!("merge {s} is malformed")));
            }
            let size = sizes[mg.left] + sizes[mg.right];
            if size != mg.size {
                return Err(Error::InvalidArgument(format!(
                    "merge {s} records size {}, expected {size}",
                    mg.size
                )));
            }
            sizes.push(size);
        }
        Ok(())
    }

    /// Sorted leaf indices under every merge, in merge order.
    pub fn merged_leaf_sets(&self) -> Vec<Vec<usize>> {
        let m = self.leaf_count();
        let mut members: Vec<Vec<usize>> = (0..m).map(|i| vec![i]).collect();
        let mut out = Vec::with_capacity(self.merges.len());
        for mg in &self.merges {
            let mut set = members[mg.left].clone();
            set.extend_from_slice(&members[mg.right]);
            set.sort_unstable();
            members.push(set.clone());
            out.push(set);
        }
        out
    }
}

pub fn agglomerate(d: &DistanceMatrix) -> Result<Dendrogram> {
    agglomerate_values(d.values(), d.labels().to_vec())
}

/// Same as [`agglomerate`] for any symmetric, non-negative, zero-diagonal
/// dissimilarity matrix, without the `[0, 1]` range restriction.
pub fn agglomerate_values(values: &DMatrix<f64>, labels: Vec<String>) -> Result<Dendrogram> {
    let m = values.nrows();
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "clustering needs at least 2 leaves, got {m}"
        )));
    }
    if values.ncols() != m || labels.len() != m {
        return Err(Error::Dimension(format!(
            "{}x{} matrix with {} labels",
            m,
            values.ncols(),
            labels.len()
        )));
    }
    for i in 0..m {
        for j in 0..m {
            let v = values[(i, j)];
            if !v.is_finite() || v < 0.0 || (v - values[(j, i)]).abs() > 1e-9 || (i == j && v.abs() > 1e-9) {
                return Err(Error::InvalidArgument(format!(
                    "entry ({i}, {j}) = {v} breaks symmetry, sign or zero diagonal"
                )));
            }
        }
    }
    let total = 2 * m - 1;
    let mut dist = vec![vec![0.0; total]; total];
    for i in 0..m {
        for j in 0..m {
            dist[i][j] = values[(i, j)];
        }
    }
    let mut size = vec![0usize; total];
    size[..m].fill(1);
    let mut active: Vec<usize> = (0..m).collect();
    let mut merges = Vec::with_capacity(m - 1);

    for step in 0..m - 1 {
        // `active` stays sorted, so scanning i < j gives lexicographic tie-breaking.
        let mut best = (f64::INFINITY, 0, 0);
        for (ai, &a) in active.iter().enumerate() {
            for &b in &active[ai + 1..] {
                if dist[a][b] < best.0 {
                    best = (dist[a][b], a, b);
                }
            }
        }
        let (height, a, b) = best;
        let id = m + step;
        let (na, nb) = (size[a] as f64, size[b] as f64);
        for &k in &active {
            if k != a && k != b {
                let v = (na * dist[a][k] + nb * dist[b][k]) / (na + nb);
                dist[id][k] = v;
                dist[k][id] = v;
            }
        }
        size[id] = size[a] + size[b];
        active.retain(|&k| k != a && k != b);
        active.push(id);
        merges.push(Merge {
            left: a,
            right: b,
            height,
            size: size[id],
        });
    }
    Ok(Dendrogram { merges, labels })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterAssignment {
    pub labels: Vec<usize>,
    pub k: usize,
}

/// Flat clustering into `k` groups by undoing the last `k - 1` merges.
/// Cluster ids are numbered by their smallest leaf index.
pub fn cut(dend: &Dendrogram, k: usize) -> Result<ClusterAssignment> {
    let m = dend.leaf_count();
    if k < 1 || k > m {
        return Err(Error::InvalidArgument(format!("k = {k} outside [1, {m}]")));
    }
    let mut parent: Vec<usize> = (0..2 * m - 1).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (s, mg) in dend.merges.iter().take(m - k).enumerate() {
        let id = m + s;
        parent[mg.left] = id;
        parent[mg.right] = id;
    }
    let mut ids: HashMap<usize, usize> = HashMap::new();
    let labels = (0..m)
        .map(|leaf| {
            let root = find(&mut parent, leaf);
            let next = ids.len();
            *ids.entry(root).or_insert(next)
        })
        .collect();
    Ok(ClusterAssignment { labels, k })
}

/// Fraction of items that fall in their cluster's majority class.
pub fn purity<L: Eq + Hash>(assign: &ClusterAssignment, truth: &[L]) -> Result<f64> {
    if assign.labels.len() != truth.len() {
        return Err(Error::Dimension(format!(
            "{} assignments for {} truth labels",
            assign.labels.len(),
            truth.len()
        )));
    }
    if truth.is_empty() {
        return Err(Error::InvalidArgument("purity of an empty assignment".into()));
    }
    let mut counts: HashMap<(usize, &L), usize> = HashMap::new();
    for (&c, l) in assign.labels.iter().zip(truth) {
        *counts.entry((c, l)).or_default() += 1;
    }
    let mut best = vec![0usize; assign.k];
    for ((c, _), n) in counts {
        best[c] = best[c].max(n);
    }
    Ok(best.iter().sum::<usize>() as f64 / truth.len() as f64)
}
