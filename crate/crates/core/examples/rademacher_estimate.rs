//! Monte-Carlo empirical Rademacher complexity of sampled ReLU networks
//! next to the analytic bound for their class.
//!
//! ```text
//! cargo run --release --example rademacher_estimate
//! ```

use regcover::nnbound::NetArchitecture;
use regcover::verify::{relu_rademacher_check, ReluCheckConfig, CALIBRATED_RELU_CONSTANT};
use regcover::RngSeed;

fn main() -> regcover::Result<()> {
    for (dims, omegas) in [(vec![2, 2, 2], vec![2.0, 2.0]), (vec![3, 4, 4, 2], vec![2.0, 3.0, 2.0])] {
        let arch = NetArchitecture::relu(dims.clone(), omegas)?;
        for n in [50, 200, 1000] {
            let cfg = ReluCheckConfig {
                arch: arch.clone(),
                hypotheses: 200,
                n_samples: n,
                sigma_draws: 10_000,
                c: CALIBRATED_RELU_CONSTANT,
            };
            let r = relu_rademacher_check(&cfg, RngSeed(n as u64))?;
            println!(
                "dims {dims:?}, n {n:>4}: estimate {:.4} (se {:.4}) <= bound {:.4}",
                r.empirical,
                r.std_error.unwrap_or(f64::NAN),
                r.bound.value
            );
        }
    }
    Ok(())
}
