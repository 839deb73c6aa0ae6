// Average-linkage clustering of a synthetic gesture set under each metric.
//
// Five classes, five randomly rotated, scaled, translated and noised demos
// each; the dendrogram is cut into five clusters and scored by purity. SVG
// figures go to the directory given as the first argument (default: the
// system temp dir).
//
// ```text
// cargo run --example clustering -- out/
// ```

use std::path::PathBuf;

use gmcc::experiments::{clustering, clustering_classes, DEFAULT_SEED};
use gmcc::io::render_svg;

fn main() {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("gmcc-clustering"));
    std::fs::create_dir_all(&dir).unwrap();

    let study = clustering(&clustering_classes(), DEFAULT_SEED).unwrap();
    for r in &study.results {
        println!("{:<6} purity {:.2}", r.metric.name(), r.purity);
        let mut clusters: Vec<Vec<&str>> = vec![Vec::new(); r.assignment.k];
        for (i, &c) in r.assignment.labels.iter().enumerate() {
            clusters[c].push(&study.names[i]);
        }
        for (c, members) in clusters.iter().enumerate() {
            println!("  {c}: {}", members.join(" "));
        }
        render_svg(&r.matrix, dir.join(format!("{}_matrix.svg", r.metric))).unwrap();
        render_svg(&r.dendrogram, dir.join(format!("{}_dendrogram.svg", r.metric))).unwrap();
    }
    println!("figures in {}", dir.display());
}
