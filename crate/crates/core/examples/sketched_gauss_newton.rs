//! Gauss-Newton on an overdetermined random quadratic system, with and
//! without a sub-Gaussian sketch of the residual.
//!
//! ```text
//! cargo run --release --example sketched_gauss_newton
//! ```

use std::time::Instant;

use rand::Rng;
use regcover::polyopt::{gauss_newton, sketched_gauss_newton, GNOptions};
use regcover::sketch::{subg_dim_poly, Distribution, SubGaussianSketch};
use regcover::verify::CALIBRATED_SKETCH_CONSTANT;
use regcover::{PolynomialMap, RngSeed, SketchOperator};

fn main() -> regcover::Result<()> {
    let (n, big_n) = (10, 2000);
    let mut rng = RngSeed(7).rng();
    let map = PolynomialMap::random_dense(n, big_n, 2, &mut rng)?;
    let x0: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
    let opts = GNOptions::default();

    let t = Instant::now();
    let plain = gauss_newton(&map, &x0, &opts)?;
    println!(
        "plain:    objective {:.6} after {} iterations ({:?}, {:.1?})",
        plain.objective, plain.iterations, plain.stop_reason, t.elapsed()
    );

    let m = subg_dim_poly(n, 2, big_n, 0.5, 0.1, 1.0, CALIBRATED_SKETCH_CONSTANT)? as usize;
    let op = SketchOperator::SubGaussian(SubGaussianSketch::new(m, big_n, Distribution::Gaussian, RngSeed(8))?);
    let t = Instant::now();
    let sketched = sketched_gauss_newton(&map, &op, &x0, &opts)?;
    println!(
        "sketched: objective {:.6} (sketched {:.6}) with m = {m} after {} iterations ({:.1?})",
        sketched.objective,
        sketched.sketched_objective.unwrap_or(f64::NAN),
        sketched.iterations,
        t.elapsed()
    );
    println!("ratio {:.4} (guarantee: at most 3)", sketched.objective / plain.objective);
    Ok(())
}
