// Clean line and circle against Gaussian-noise copies at three noise levels.
//
// ```text
// cargo run --example noise_robustness -- 11
// ```

use gmcc::experiments::{noise_table, DEFAULT_SEED};

fn main() {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED);
    let report = noise_table(seed).unwrap();
    print!("{}", report.render());
}
