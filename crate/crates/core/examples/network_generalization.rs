//! Rademacher and generalization bounds for rational and ReLU networks.
//!
//! ```text
//! cargo run --example network_generalization
//! ```

use regcover::nnbound::{
    generalization_bound, ratnn_covering_log, ratnn_degree, ratnn_rademacher_bound, relu_approx_degree,
    relu_rademacher_bound, relu_target_accuracy, LossSpec, NetArchitecture,
};

fn main() -> regcover::Result<()> {
    let rational = NetArchitecture::ratnn(vec![8, 16, 16, 4], 3, true, 1.0)?;
    let loss = LossSpec::cross_entropy(&rational);
    println!(
        "rational net: {} parameters, ln degree {:.3}, loss lip {:.3}, range {:.3}",
        rational.num_params(),
        ratnn_degree(rational.hidden_dims(), 3, rational.depth(), true)?.ln(),
        loss.lip,
        loss.h
    );
    println!("ln N(F(X), 0.1) on 1000 samples: {:.1}", ratnn_covering_log(&rational, 1000, 0.1, 1.0)?.value);

    let relu = NetArchitecture::relu(vec![4, 8, 8, 2], vec![2.0, 2.0, 2.0])?;
    let unit = LossSpec::new(1.0, 1.0)?;
    println!("{:>9} {:>12} {:>12} {:>12}", "n", "rational R", "ReLU R", "ReLU gen");
    for n in [1_000, 10_000, 100_000, 1_000_000] {
        let r_rat = ratnn_rademacher_bound(&rational, n, loss, 1.0)?.value;
        let r_relu = relu_rademacher_bound(&relu, n, unit, 1.0)?.value;
        let g = generalization_bound(r_relu, 0.05, n)?;
        println!("{n:>9} {r_rat:>12.4} {r_relu:>12.4} {g:>12.4}");
    }

    let eps = relu_target_accuracy(1.0, 1.0, 10_000)?;
    println!("rational surrogate of the ReLU net at accuracy {eps}: ln degree {:.3}", relu_approx_degree(&relu, eps)?.ln());
    Ok(())
}
