use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use gmcc::io::read_trajectory;

fn gmcc(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gmcc"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn synth(dir: &Path, file: &str, extra: &[&str]) {
    let mut args = vec!["synth", "--out", file];
    args.extend_from_slice(extra);
    let o = gmcc(dir, &args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

fn write_manifest(dir: &Path, name: &str, head: &str, entries: &[(&str, &str)]) {
    let mut text = head.to_string();
    for (path, label) in entries {
        text.push_str(&format!("\n[[entries]]\npath = \"{path}\"\nlabel = \"{label}\"\n"));
    }
    fs::write(dir.join(name), text).unwrap();
}

#[test]
fn synth_writes_requested_shape() {
    let dir = tempfile::tempdir().unwrap();
    synth(dir.path(), "c.csv", &["--shape", "circle", "--samples", "100"]);
    let t = read_trajectory(dir.path().join("c.csv")).unwrap();
    assert_eq!((t.len(), t.dim()), (100, 2));
    assert_eq!(t.row(0), vec![1.0, 0.0]);
}

#[test]
fn synth_with_noise_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    for f in ["a.csv", "b.csv"] {
        synth(dir.path(), f, &["--shape", "line", "--noise", "0.02", "--seed", "7"]);
    }
    synth(dir.path(), "c.csv", &["--shape", "line", "--noise", "0.02", "--seed", "8"]);
    let read = |f: &str| fs::read(dir.path().join(f)).unwrap();
    assert_eq!(read("a.csv"), read("b.csv"));
    assert_ne!(read("a.csv"), read("c.csv"));
}

#[test]
fn dist_prints_six_decimals() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    synth(d, "l.csv", &["--shape", "line"]);
    synth(d, "lr.csv", &["--shape", "line", "--transform", "rotation:90deg"]);
    synth(d, "c.csv", &["--shape", "circle"]);
    synth(d, "cs.csv", &["--shape", "circle", "--transform", "shear:0.5"]);
    assert_eq!(stdout(&gmcc(d, &["dist", "l.csv", "l.csv"])), "0.000000\n");
    assert_eq!(stdout(&gmcc(d, &["dist", "--metric", "gmcc", "l.csv", "lr.csv"])), "0.000000\n");
    assert_eq!(stdout(&gmcc(d, &["dist", "c.csv", "cs.csv"])), "0.000000\n");
    let dc: f64 = stdout(&gmcc(d, &["dist", "--metric", "dcor", "c.csv", "cs.csv"])).trim().parse().unwrap();
    assert!(dc > 0.01);
    let lc = stdout(&gmcc(d, &["dist", "--metric", "gmcc", "l.csv", "c.csv"]));
    assert_eq!(lc.trim().split('.').nth(1).unwrap().len(), 6);
}

#[test]
fn dist_resamples_mismatched_lengths() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    synth(d, "a.csv", &["--shape", "u-shape", "--samples", "50"]);
    synth(d, "b.csv", &["--shape", "u-shape", "--samples", "80"]);
    assert_eq!(gmcc(d, &["dist", "a.csv", "b.csv"]).status.code(), Some(2));
    let o = gmcc(d, &["dist", "a.csv", "b.csv", "--resample", "60"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim().parse::<f64>().unwrap() < 0.01);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(gmcc(d, &[]).status.code(), Some(1));
    assert_eq!(gmcc(d, &["synth", "--shape", "hexagon", "--out", "x.csv"]).status.code(), Some(1));
    assert_eq!(gmcc(d, &["synth", "--shape", "line", "--samples", "1", "--out", "x.csv"]).status.code(), Some(1));
    assert_eq!(gmcc(d, &["--help"]).status.code(), Some(0));

    fs::write(d.join("flat.csv"), "x,y\n1,1\n1,1\n1,1\n").unwrap();
    fs::write(d.join("bad.csv"), "x,y\n1,2\n3,oops\n").unwrap();
    synth(d, "c.csv", &["--shape", "circle", "--samples", "3"]);
    assert_eq!(gmcc(d, &["dist", "c.csv", "missing.csv"]).status.code(), Some(2));
    let bad = gmcc(d, &["dist", "c.csv", "bad.csv"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("bad.csv:3"));
    let flat = gmcc(d, &["dist", "c.csv", "flat.csv"]);
    assert_eq!(flat.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&flat.stderr).contains("zero variance"));
    assert_eq!(gmcc(d, &["repro", "--table", "line-vs-circle"]).status.code(), Some(4));
}

#[test]
fn matrix_cluster_classify_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let mut entries = Vec::new();
    for (shape, transforms) in [("line", "scale:2"), ("circle", "shear:0.3"), ("triangle", "rotation:1")] {
        for (i, t) in ["rotation:0", transforms].iter().enumerate() {
            let file = format!("{shape}{i}.csv");
            synth(d, &file, &["--shape", shape, "--samples", "70", "--transform", t]);
            entries.push((file, shape));
        }
    }
    let refs: Vec<(&str, &str)> = entries.iter().map(|(f, l)| (f.as_str(), *l)).collect();
    write_manifest(d, "run.toml", "samples = 50\nthreshold = 0.3\n", &refs);

    let o = gmcc(d, &["matrix", "run.toml", "--out", "m.json", "--svg", "m.svg"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(fs::read_to_string(d.join("m.svg")).unwrap().starts_with("<svg"));
    let csv = stdout(&gmcc(d, &["matrix", "run.toml"]));
    assert!(csv.starts_with("gmcc,line0,line1,circle0"));

    let o = gmcc(d, &[
        "cluster", "m.json", "--k", "3", "--out-dendrogram", "tree.nwk", "--out-assignments", "a.csv",
        "--manifest", "run.toml",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), "purity 1.000000\n");
    let a = fs::read_to_string(d.join("a.csv")).unwrap();
    assert_eq!(a.lines().next(), Some("name,cluster,label"));
    assert!(fs::read_to_string(d.join("tree.nwk")).unwrap().trim_end().ends_with(';'));
    let single = stdout(&gmcc(d, &["cluster", "m.json", "--k", "1"]));
    assert!(single.lines().skip(1).all(|l| l.ends_with(",0")));
    assert_eq!(gmcc(d, &["cluster", "m.json", "--k", "7"]).status.code(), Some(1));

    let hit = stdout(&gmcc(d, &["classify", "run.toml", "circle0.csv"]));
    assert!(hit.starts_with("label circle\ndistance 0.000000\naccepted true\n"), "{hit}");
    synth(d, "q.csv", &["--shape", "triangle", "--samples", "90", "--transform", "squeeze:1.7"]);
    let moved = stdout(&gmcc(d, &["classify", "run.toml", "q.csv"]));
    assert!(moved.starts_with("label triangle\n"), "{moved}");
    assert_eq!(moved.lines().count(), 3 + entries.len());

    write_manifest(d, "lines.toml", "", &[("line0.csv", "line"), ("line1.csv", "line")]);
    let miss = stdout(&gmcc(d, &["classify", "lines.toml", "circle0.csv", "--threshold", "0.3"]));
    assert!(miss.contains("accepted false"), "{miss}");
}

#[test]
fn manifest_errors_name_the_entry() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    synth(d, "a.csv", &["--shape", "line"]);
    write_manifest(d, "run.toml", "", &[("a.csv", "line"), ("gone.csv", "circle")]);
    let o = gmcc(d, &["matrix", "run.toml"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("'gone'"));
}

#[test]
fn repro_writes_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let o = gmcc(d, &["repro", "--table", "clustering", "--out-dir", "out"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    for f in ["clustering.txt", "clustering_gmcc_matrix.csv", "clustering_rv_dendrogram.nwk", "clustering_dcor_matrix.svg"] {
        assert!(d.join("out").join(f).is_file(), "{f}");
    }
    let noise = gmcc(d, &["repro", "--table", "noise"]);
    assert_eq!(noise.status.code(), Some(0));
    assert!(!stdout(&noise).contains("FAIL"));
}
