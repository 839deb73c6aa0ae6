// Nearest-neighbour recognition of transformed gestures against a library
// of canonical shapes, with a rejection threshold for unknown commands.
//
// ```text
// cargo run --example gesture_classification
// ```

use gmcc::classify::{classify, GestureLibrary};
use gmcc::synth::{add_noise, apply_transform, generate, make_transform, ShapeKind, ShapeSpec, TransformSpec};
use gmcc::MetricKind;

fn main() {
    let known = [ShapeKind::UShape, ShapeKind::SShape, ShapeKind::Circle, ShapeKind::Triangle];
    let library = GestureLibrary::new(
        known.map(|k| (k.name(), generate(&ShapeSpec::canonical(k, 120)).unwrap())),
        100,
    )
    .unwrap();

    let queries = [
        (ShapeKind::Triangle, TransformSpec::Shear(0.8)),
        (ShapeKind::UShape, TransformSpec::Squeeze(2.5)),
        (ShapeKind::Circle, TransformSpec::Scale(3.0)),
        (ShapeKind::SShape, TransformSpec::Rotation(2.0)),
        (ShapeKind::Scribble, TransformSpec::Rotation(0.0)),
    ];
    let threshold = 0.1;
    for (i, (kind, t)) in queries.into_iter().enumerate() {
        let spec = ShapeSpec {
            seed: 5,
            ..ShapeSpec::canonical(kind, 90)
        };
        let q = apply_transform(&generate(&spec).unwrap(), &make_transform(&t).unwrap(), true).unwrap();
        let q = add_noise(&q, 0.01, i as u64).unwrap();
        for metric in [MetricKind::Gmcc, MetricKind::Rv] {
            let c = classify(&q, &library, metric, threshold).unwrap();
            println!(
                "{:<9} {:<16} {:<5} -> {:<9} {:.4} {}",
                kind.name(),
                format!("{t:?}"),
                metric.name(),
                c.label,
                c.distance,
                if c.accepted { "accepted" } else { "rejected" }
            );
        }
    }
}
