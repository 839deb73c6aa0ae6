//! Static SVG figures.
//!
//! Heatmap: 14 px cells, 90 px label margins on the left and top, and a
//! linear ramp from `#08306b` (distance 0) to `#f7fbff` (distance 1).
//! Dendrogram: 16 px leaf pitch, 260 px tree height, leaves along the bottom
//! in tree order, rectilinear links.

use std::fmt::Write as _;
use std::path::Path;

use crate::cluster::Dendrogram;
use crate::error::Result;
use crate::io::write_text;
use crate::metrics::DistanceMatrix;

const CELL: f64 = 14.0;
const MARGIN: f64 = 90.0;
const RAMP_LO: [f64; 3] = [8.0, 48.0, 107.0];
const RAMP_HI: [f64; 3] = [247.0, 251.0, 255.0];

const LEAF_PITCH: f64 = 16.0;
const TREE_HEIGHT: f64 = 260.0;
const PAD: f64 = 20.0;
const LABEL_SPACE: f64 = 90.0;

pub enum Figure<'a> {
    Matrix(&'a DistanceMatrix),
    Dendrogram(&'a Dendrogram),
}

impl<'a> From<&'a DistanceMatrix> for Figure<'a> {
    fn from(d: &'a DistanceMatrix) -> Self {
        Figure::Matrix(d)
    }
}

impl<'a> From<&'a Dendrogram> for Figure<'a> {
    fn from(d: &'a Dendrogram) -> Self {
        Figure::Dendrogram(d)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Hex color for a distance in `[0, 1]`; values outside are clamped.
pub fn ramp_color(v: f64) -> String {
    let v = if v.is_nan() { 0.0 } else { v.clamp(0.0, 1.0) };
    let c: Vec<u8> = (0..3)
        .map(|i| (RAMP_LO[i] + (RAMP_HI[i] - RAMP_LO[i]) * v).round() as u8)
        .collect();
    format!("#{:02x}{:02x}{:02x}", c[0], c[1], c[2])
}

pub fn matrix_svg(d: &DistanceMatrix) -> String {
    let m = d.len();
    let size = MARGIN + CELL * m as f64 + 10.0;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    let _ = writeln!(s, r#"<rect width="{size}" height="{size}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="4" y="14" font-family="sans-serif" font-size="11">{} distance</text>"#,
        d.metric()
    );
    for (i, label) in d.labels().iter().enumerate() {
        let y = MARGIN + CELL * i as f64 + CELL * 0.75;
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{y}" font-family="sans-serif" font-size="9" text-anchor="end">{}</text>"#,
            MARGIN - 4.0,
            escape(label)
        );
        let x = MARGIN + CELL * i as f64 + CELL * 0.75;
        let _ = writeln!(
            s,
            r#"<text x="{x}" y="{}" font-family="sans-serif" font-size="9" transform="rotate(-90 {x} {})">{}</text>"#,
            MARGIN - 4.0,
            MARGIN - 4.0,
            escape(label)
        );
    }
    for i in 0..m {
        for j in 0..m {
            let _ = writeln!(
                s,
                r#"<rect x="{}" y="{}" width="{CELL}" height="{CELL}" fill="{}"/>"#,
                MARGIN + CELL * j as f64,
                MARGIN + CELL * i as f64,
                ramp_color(d.get(i, j))
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

pub fn dendrogram_svg(dend: &Dendrogram) -> String {
    let m = dend.leaf_count();
    let root = 2 * m - 2;
    let max_h = dend.merges.iter().map(|mg| mg.height).fold(0.0f64, f64::max);
    let scale = if max_h > 0.0 { TREE_HEIGHT / max_h } else { 0.0 };
    let base = PAD + TREE_HEIGHT;
    let width = 2.0 * PAD + LEAF_PITCH * m as f64;
    let height = base + LABEL_SPACE;

    // leaf order by depth-first traversal, left child first
    let mut order = Vec::with_capacity(m);
    let mut stack = vec![root];
    while let Some(id) = stack.pop() {
        if id < m {
            order.push(id);
        } else {
            let mg = &dend.merges[id - m];
            stack.push(mg.right);
            stack.push(mg.left);
        }
    }
    let mut x = vec![0.0; 2 * m - 1];
    let mut y = vec![base; 2 * m - 1];
    for (pos, &leaf) in order.iter().enumerate() {
        x[leaf] = PAD + LEAF_PITCH * (pos as f64 + 0.5);
    }
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(s, r#"<rect width="{width}" height="{height}" fill="white"/>"#);
    for (k, mg) in dend.merges.iter().enumerate() {
        let id = m + k;
        x[id] = (x[mg.left] + x[mg.right]) / 2.0;
        y[id] = base - mg.height * scale;
        let _ = writeln!(
            s,
            r#"<path d="M{} {} V{} H{} V{}" fill="none" stroke="black" stroke-width="1"/>"#,
            x[mg.left], y[mg.left], y[id], x[mg.right], y[mg.right]
        );
    }
    for &leaf in &order {
        let ly = base + 6.0;
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{ly}" font-family="sans-serif" font-size="9" transform="rotate(90 {} {ly})">{}</text>"#,
            x[leaf],
            x[leaf],
            escape(&dend.labels[leaf])
        );
    }
    s.push_str("</svg>\n");
    s
}

pub fn render_svg<'a>(input: impl Into<Figure<'a>>, path: impl AsRef<Path>) -> Result<()> {
    let text = match input.into() {
        Figure::Matrix(d) => matrix_svg(d),
        Figure::Dendrogram(d) => dendrogram_svg(d),
    };
    write_text(path.as_ref(), &text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::agglomerate;
    use crate::metrics::MetricKind;
    use nalgebra::DMatrix;

    #[test]
    fn ramp_is_monotone() {
        assert_eq!(ramp_color(0.0), "#08306b");
        assert_eq!(ramp_color(1.0), "#f7fbff");
        let lum = |c: &str| -> u32 { (1..7).step_by(2).map(|i| u32::from_str_radix(&c[i..i + 2], 16).unwrap()).sum() };
        let mut prev = 0;
        for k in 0..=20 {
            let l = lum(&ramp_color(k as f64 / 20.0));
            assert!(l >= prev);
            prev = l;
        }
    }

    #[test]
    fn zero_matrix_cells_share_color() {
        let d = DistanceMatrix::new(DMatrix::zeros(2, 2), MetricKind::Gmcc, vec!["a".into(), "b".into()]).unwrap();
        let svg = matrix_svg(&d);
        assert_eq!(svg.matches(r##"fill="#08306b""##).count(), 4);
        assert_eq!(svg, matrix_svg(&d));
    }

    #[test]
    fn dendrogram_has_one_link_per_merge() {
        let v = DMatrix::from_row_slice(3, 3, &[0.0, 0.2, 0.6, 0.2, 0.0, 0.5, 0.6, 0.5, 0.0]);
        let d = DistanceMatrix::new(v, MetricKind::Rv, vec!["a".into(), "b<".into(), "c".into()]).unwrap();
        let dend = agglomerate(&d).unwrap();
        let svg = dendrogram_svg(&dend);
        assert_eq!(svg.matches("<path").count(), 2);
        assert!(svg.contains("b&lt;"));
    }
}
