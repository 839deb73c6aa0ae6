// Line versus circle under every metric, and both directions of the
// directional GMCC coefficient.
//
// ```text
// cargo run --example line_vs_circle
// ```

use gmcc::experiments::canonical;
use gmcc::metrics::gmcc;
use gmcc::synth::ShapeKind;
use gmcc::MetricKind;

fn main() {
    let line = canonical(ShapeKind::Line).unwrap();
    let circle = canonical(ShapeKind::Circle).unwrap();
    for m in MetricKind::ALL {
        println!("{:<14} {:.6}", m.name(), m.distance(&line, &circle).unwrap());
    }
    // the coefficient is directional
    println!("gmcc line -> circle  {:.6}", gmcc(&line, &circle).unwrap());
    println!("gmcc circle -> line  {:.6}", gmcc(&circle, &line).unwrap());
}
