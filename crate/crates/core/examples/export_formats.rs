// Writes every supported file format: trajectories, a TOML run manifest,
// distance matrices (CSV, JSON), dendrograms (JSON, Newick) and SVG figures.
// The resulting directory can be fed straight to the `gmcc` binary:
//
// ```text
// cargo run --example export_formats -- data/
// gmcc matrix data/run.toml --out data/m.csv
// gmcc cluster data/m.csv --k 6 --manifest data/run.toml
// ```

use std::path::PathBuf;

use gmcc::cluster::agglomerate;
use gmcc::io::{
    format_dendrogram_newick, render_svg, write_dendrogram, write_distance_matrix, write_trajectory, DataFormat,
    ManifestEntry, RunManifest,
};
use gmcc::metrics::distance_matrix_labeled;
use gmcc::synth::{make_dataset, ShapeKind, ShapeSpec};
use gmcc::MetricKind;

fn main() {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("gmcc-export"));
    std::fs::create_dir_all(&dir).unwrap();

    let classes: Vec<ShapeSpec> = ShapeKind::ALL.iter().map(|&k| ShapeSpec::canonical(k, 100)).collect();
    let data = make_dataset(&classes, 2, 3).unwrap();
    let mut entries = Vec::new();
    let mut names = Vec::new();
    for (i, d) in data.iter().enumerate() {
        let name = format!("{}_{}", d.label, i % 2);
        let file = format!("{name}.csv");
        write_trajectory(&d.trajectory, dir.join(&file), Some(&["x", "y"])).unwrap();
        entries.push(ManifestEntry {
            path: file.into(),
            label: d.label.clone(),
            name: None,
        });
        names.push(name);
    }
    RunManifest::new(MetricKind::Gmcc, 100, 3, 0.3, entries)
        .save(dir.join("run.toml"))
        .unwrap();

    let trajs: Vec<_> = data.into_iter().map(|d| d.trajectory).collect();
    let d = distance_matrix_labeled(&trajs, &names, MetricKind::Gmcc).unwrap();
    let tree = agglomerate(&d).unwrap();
    write_distance_matrix(&d, dir.join("matrix.csv"), DataFormat::Csv).unwrap();
    write_distance_matrix(&d, dir.join("matrix.json"), DataFormat::Json).unwrap();
    write_dendrogram(&tree, dir.join("tree.json"), DataFormat::Json).unwrap();
    write_dendrogram(&tree, dir.join("tree.nwk"), DataFormat::Newick).unwrap();
    render_svg(&d, dir.join("matrix.svg")).unwrap();
    render_svg(&tree, dir.join("tree.svg")).unwrap();
    print!("{}", format_dendrogram_newick(&tree).unwrap());
    println!("wrote {}", dir.display());
}
