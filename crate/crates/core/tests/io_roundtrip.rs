use gmcc::cluster::agglomerate;
use gmcc::io::{
    read_dendrogram, read_distance_matrix, read_trajectory, write_dendrogram, write_distance_matrix,
    write_trajectory, DataFormat, ManifestEntry, RunManifest,
};
use gmcc::metrics::distance_matrix_labeled;
use gmcc::synth::{add_noise, generate, ShapeKind, ShapeSpec};
use gmcc::MetricKind;

fn noisy(kind: ShapeKind, seed: u64) -> gmcc::Trajectory {
    add_noise(&generate(&ShapeSpec::canonical(kind, 40)).unwrap(), 0.05, seed).unwrap()
}

#[test]
fn trajectory_file_is_bit_exact() {
    let dir = tempfile::tempdir().unwrap();
    let t = noisy(ShapeKind::Scribble, 3);
    let p = dir.path().join("t.csv");
    write_trajectory(&t, &p, Some(&["x", "y"])).unwrap();
    assert_eq!(read_trajectory(&p).unwrap(), t);
    let bare = dir.path().join("bare.csv");
    write_trajectory(&t, &bare, None).unwrap();
    assert_eq!(read_trajectory(&bare).unwrap(), t);
}

#[test]
fn matrix_and_dendrogram_files_are_bit_exact() {
    let dir = tempfile::tempdir().unwrap();
    let trajs: Vec<_> = ShapeKind::ALL.iter().enumerate().map(|(i, &k)| noisy(k, i as u64)).collect();
    let names: Vec<String> = ShapeKind::ALL.iter().map(|k| format!("{k} demo")).collect();
    for metric in MetricKind::ALL {
        let d = distance_matrix_labeled(&trajs, &names, metric).unwrap();
        for (ext, format) in [("csv", DataFormat::Csv), ("json", DataFormat::Json)] {
            let p = dir.path().join(format!("m_{metric}.{ext}"));
            write_distance_matrix(&d, &p, format).unwrap();
            assert_eq!(DataFormat::from_path(&p), format);
            let back = read_distance_matrix(&p, format).unwrap();
            assert_eq!(back.values(), d.values());
            assert_eq!(back.labels(), d.labels());
            assert_eq!(back.metric(), metric);
        }
        let dend = agglomerate(&d).unwrap();
        let json = dir.path().join("d.json");
        write_dendrogram(&dend, &json, DataFormat::Json).unwrap();
        assert_eq!(read_dendrogram(&json, DataFormat::Json).unwrap(), dend);

        // Newick stores branch lengths, so heights come back up to round-off.
        let nwk = dir.path().join("d.nwk");
        write_dendrogram(&dend, &nwk, DataFormat::Newick).unwrap();
        let back = read_dendrogram(&nwk, DataFormat::Newick).unwrap();
        // Leaves come back in tree order, so compare clusters by label.
        let named = |t: &gmcc::cluster::Dendrogram| -> Vec<Vec<String>> {
            t.merged_leaf_sets()
                .iter()
                .map(|set| {
                    let mut v: Vec<String> = set.iter().map(|&i| t.labels[i].clone()).collect();
                    v.sort();
                    v
                })
                .collect()
        };
        assert_eq!(named(&back), named(&dend));
        for (a, b) in back.merges.iter().zip(&dend.merges) {
            assert!((a.height - b.height).abs() < 1e-12);
        }
    }
}

#[test]
fn manifest_save_load_resolves_relative_paths() {
    let dir = tempfile::tempdir().unwrap();
    let sub = dir.path().join("data");
    std::fs::create_dir(&sub).unwrap();
    let mut entries = Vec::new();
    for (i, kind) in [ShapeKind::Line, ShapeKind::Circle].into_iter().enumerate() {
        let file = format!("{kind}.csv");
        write_trajectory(&noisy(kind, i as u64), sub.join(&file), None).unwrap();
        entries.push(ManifestEntry {
            path: format!("data/{file}").into(),
            label: kind.name().into(),
            name: None,
        });
    }
    let m = RunManifest::new(MetricKind::Dcor, 25, 5, 0.4, entries);
    let p = dir.path().join("run.toml");
    m.save(&p).unwrap();
    let loaded = RunManifest::load(&p).unwrap();
    let e = loaded.load_entries().unwrap();
    assert_eq!(e.iter().map(|e| e.name.as_str()).collect::<Vec<_>>(), ["line", "circle"]);
    assert!(e.iter().all(|e| e.trajectory.len() == 25));
    assert_eq!(loaded.metric, MetricKind::Dcor);
}
