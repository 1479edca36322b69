//! Checks the covering and tube bounds for the twisted cubic against
//! sampled nets and a Monte-Carlo tube probe.
//!
//! ```text
//! cargo run --release --example verify_moment_curve
//! ```

use regcover::verify::{covering_check, tube_probe, TubeProbeConfig};
use regcover::{PolynomialMap, RngSeed};

fn main() -> regcover::Result<()> {
    let curve = PolynomialMap::moment_curve(3);

    for eps in [0.5, 0.2, 0.1, 0.05] {
        let r = covering_check(&curve, 1.0, 3f64.sqrt(), eps, 100_000, RngSeed(1))?;
        println!(
            "cover eps {eps:<5} ln(net) {:.3} <= {:.3}: {}",
            r.empirical,
            r.bound.value,
            if r.pass() { "pass" } else { "FAIL" }
        );
    }

    for eps in [0.05, 0.1] {
        let cfg = TubeProbeConfig {
            box_radius: 1.0,
            center: vec![0.0; 3],
            sigma: 1.0,
            eps,
            mc_samples: 1_000_000,
            grid_density: 401,
            c: 3.0,
        };
        let r = tube_probe(&curve, &cfg, RngSeed(2))?;
        println!(
            "tube eps {eps:<5} ln P {:.3} (se {:.3}) <= {:.3}: {}",
            r.empirical,
            r.std_error.unwrap_or(f64::NAN),
            r.bound.value,
            if r.pass() { "pass" } else { "FAIL" }
        );
    }
    Ok(())
}
