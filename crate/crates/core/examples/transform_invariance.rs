// Distances between the canonical circle and its linear images.
//
// GMCC stays at zero for every nonsingular map; RV and dCor only ignore the
// similarity transforms.
//
// ```text
// cargo run --example transform_invariance
// ```

use gmcc::experiments::{canonical, canonical_transforms, TABLE_METRICS};
use gmcc::synth::{apply_transform, make_transform, ShapeKind};

fn main() {
    let circle = canonical(ShapeKind::Circle).unwrap();
    print!("{:<12}", "transform");
    for m in TABLE_METRICS {
        print!(" {:>14}", m.name());
    }
    println!();
    for (name, spec) in canonical_transforms() {
        let moved = apply_transform(&circle, &make_transform(&spec).unwrap(), true).unwrap();
        print!("{name:<12}");
        for m in TABLE_METRICS {
            print!(" {:>14.6}", m.distance(&circle, &moved).unwrap());
        }
        println!();
    }

    // a random map with condition number up to 1e3, plus a translation
    let h = gmcc::synth::random_nonsingular(2, 42, 1e3).unwrap();
    let moved = apply_transform(&circle, &h, false).unwrap().translate(&[4.0, -2.0]).unwrap();
    let d = gmcc::metrics::gmcc_distance(&circle, &moved).unwrap();
    println!("random affine map: gmcc distance {d:.3e}");
}
