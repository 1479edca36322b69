//! CP-rank covering numbers and the probability that a Gaussian tensor lies
//! within a small angle of the low-rank cone.
//!
//! ```text
//! cargo run --example cp_tensor_angle
//! ```

use std::f64::consts::PI;

use regcover::tensor::{cp_angle_probability_log, cp_covering_log_general, cp_covering_log_lowrank, CpSet, TensorShape};

fn main() -> regcover::Result<()> {
    let shape = TensorShape::new(vec![100, 100, 100])?;
    for k in [6.0, 7.0, 8.0] {
        let b = cp_angle_probability_log(&shape, 30, PI / k, 3.0, 3.0)?;
        println!("P(angle to rank 30 <= pi/{k}) <= e^{:.1}", b.value);
    }

    let small = TensorShape::new(vec![4, 4, 4])?;
    for eps in [0.5, 0.1, 0.01] {
        let general = cp_covering_log_general(&small, 2, CpSet::Ball { t: 1.0 }, eps, 3.0)?;
        let lowrank = cp_covering_log_lowrank(&small, 2, CpSet::Ball { t: 1.0 }, eps, 3.0, 3.0)?;
        let sphere = cp_covering_log_lowrank(&small, 2, CpSet::Sphere, eps, 3.0, 3.0)?;
        println!(
            "rank-2 4x4x4, eps {eps}: general {:.2}, low-rank {:.2}, sphere {:.2}",
            general.value, lowrank.value, sphere.value
        );
    }
    Ok(())
}
