//! Recomputes the frozen sketch and ReLU constants from their calibration
//! suites and compares them with the values shipped in the library.
//!
//! ```text
//! cargo run --release --example calibrate_constants
//! ```

use regcover::sketch::Distribution;
use regcover::verify::{
    calibrate_sketch_constant, Ensemble, CALIBRATED_RELU_CONSTANT, CALIBRATED_SKETCH_CONSTANT,
};
use regcover::RngSeed;

fn main() -> regcover::Result<()> {
    let t = std::time::Instant::now();
    let c = calibrate_sketch_constant(Ensemble::SubGaussian(Distribution::Gaussian), RngSeed(20240601))?;
    println!(
        "sub-Gaussian sketch constant: calibrated {c}, frozen {CALIBRATED_SKETCH_CONSTANT} ({:.1?})",
        t.elapsed()
    );
    println!("ReLU Rademacher constant: frozen {CALIBRATED_RELU_CONSTANT}");
    Ok(())
}
