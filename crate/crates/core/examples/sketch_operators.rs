//! Seeded sketching operators, the row counts that make them norm-preserving
//! on a polynomial image, and an empirical distortion check.
//!
//! ```text
//! cargo run --release --example sketch_operators
//! ```

use regcover::sketch::{fwht, sors_dim_poly, subg_dim_poly, Distribution, SorsSketch, SubGaussianSketch};
use regcover::verify::{distortion_trial, sample_poly_image, CALIBRATED_SKETCH_CONSTANT};
use regcover::{PolynomialMap, RngSeed, SketchOperator};

fn main() -> regcover::Result<()> {
    println!("fwht([1, 1, 1, 1]) = {:?}", fwht(&[1.0, 1.0, 1.0, 1.0])?);

    let c = CALIBRATED_SKETCH_CONSTANT;
    let m_subg = subg_dim_poly(2, 3, 512, 0.5, 0.1, 1.0, c)? as usize;
    let m_sors = sors_dim_poly(2, 3, 512, 0.5, 0.1, 1.0, c)? as usize;
    println!("rows for a cubic R^2 -> R^512 at eps 0.5, delta 0.1: sub-Gaussian {m_subg}, SORS {m_sors}");

    let map = PolynomialMap::random_dense(2, 512, 3, &mut RngSeed(1).rng())?;
    let cloud = sample_poly_image(&map, 1.0, 5_000, RngSeed(2))?;
    let ops = [
        ("gaussian", SketchOperator::SubGaussian(SubGaussianSketch::new(m_subg, 512, Distribution::Gaussian, RngSeed(3))?)),
        ("rademacher", SketchOperator::SubGaussian(SubGaussianSketch::new(m_subg, 512, Distribution::Rademacher, RngSeed(3))?)),
        // SORS gets the sub-Gaussian row count too; its own formula is far more conservative
        ("sors", SketchOperator::Sors(SorsSketch::new(m_subg, 512, RngSeed(3))?)),
    ];
    for (name, op) in &ops {
        println!("{name:>10}: {} x {}, worst distortion {:.3}", op.rows(), op.cols(), distortion_trial(&cloud, op)?);
    }

    // operators serialize as their generating parameters
    println!("{}", serde_json::to_string(&ops[2].1)?);
    Ok(())
}
