//! Empirical Rademacher complexity over finite hypothesis grids.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Comparison, VerifyReport};
use crate::error::{ensure, Result};
use crate::nnbound::{relu_rademacher_bound, LossSpec, NetArchitecture};
use crate::seed::RngSeed;

const BLOCK: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RademacherEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub draws: usize,
}

/// Monte-Carlo estimate of `E_sigma max_f (1/n) sum_i sigma_i l_f(i)`,
/// where row `f` of `values` holds the losses of hypothesis `f` on the `n`
/// samples. Sign vectors are drawn in blocks of 1024, block `b` from
/// `seed.derive(b)`.
pub fn rademacher_mc(values: &DMatrix<f64>, sigma_draws: usize, seed: RngSeed) -> Result<RademacherEstimate> {
    const REF: &str = "Rademacher estimate";
    let (h, n) = values.shape();
    ensure(h >= 1 && n >= 1, REF, || "need at least one hypothesis and one sample".into())?;
    ensure(sigma_draws >= 1, REF, || "need sigma_draws >= 1".into())?;
    let blocks = sigma_draws.div_ceil(BLOCK);
    let sums: Vec<(f64, f64)> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let size = BLOCK.min(sigma_draws - b * BLOCK);
            let mut rng = seed.derive(b as u64).rng();
            let signs = DMatrix::from_fn(n, size, |_, _| if rng.random::<bool>() { 1.0 } else { -1.0 });
            let scores = values * signs;
            scores.column_iter().fold((0.0, 0.0), |(s, s2), col| {
                let m = col.max() / n as f64;
                (s + m, s2 + m * m)
            })
        })
        .collect();
    let (s, s2) = sums.iter().fold((0.0, 0.0), |a, b| (a.0 + b.0, a.1 + b.1));
    let k = sigma_draws as f64;
    let mean = s / k;
    let var = if sigma_draws > 1 { ((s2 - k * mean * mean) / (k - 1.0)).max(0.0) } else { 0.0 };
    Ok(RademacherEstimate {
        mean,
        std_error: (var / k).sqrt(),
        draws: sigma_draws,
    })
}

/// A ReLU network with ReLU after every layer.
#[derive(Clone, Debug, PartialEq)]
pub struct ReluNetwork {
    layers: Vec<(DMatrix<f64>, DVector<f64>)>,
}

impl ReluNetwork {
    /// Random member of the class `||(A_i | b_i)||_inf <= w_i`: entries
    /// uniform in `[-1, 1]`, each row then rescaled to absolute sum
    /// `w_i u` with `u` uniform in `(0, 1]`.
    pub fn sample<R: Rng + ?Sized>(arch: &NetArchitecture, rng: &mut R) -> Self {
        let layers = arch
            .dims
            .windows(2)
            .zip(&arch.omegas)
            .map(|(w, &omega)| {
                let (fan_in, fan_out) = (w[0], w[1]);
                let mut ab = DMatrix::from_fn(fan_out, fan_in + 1, |_, _| 2.0 * rng.random::<f64>() - 1.0);
                for mut row in ab.row_iter_mut() {
                    let l1: f64 = row.iter().map(|v| v.abs()).sum();
                    let target = omega * (1.0 - rng.random::<f64>());
                    row *= target / l1;
                }
                let a = ab.columns(0, fan_in).into_owned();
                let b = ab.column(fan_in).into_owned();
                (a, b)
            })
            .collect();
        ReluNetwork { layers }
    }

    pub fn forward(&self, x: &[f64]) -> Vec<f64> {
        let mut h = DVector::from_column_slice(x);
        for (a, b) in &self.layers {
            h = (a * h + b).map(|v| v.max(0.0));
        }
        h.iter().copied().collect()
    }

    /// `max_i ||(A_i | b_i)||_inf`-style row sums, one per layer.
    pub fn layer_norms(&self) -> Vec<f64> {
        self.layers
            .iter()
            .map(|(a, b)| {
                (0..a.nrows())
                    .map(|i| a.row(i).iter().map(|v| v.abs()).sum::<f64>() + b[i].abs())
                    .fold(0.0, f64::max)
            })
            .collect()
    }
}

/// Loss matrix `min(1, ||f(x_i) - y_i||)` for every network and sample.
pub fn relu_hypothesis_losses(nets: &[ReluNetwork], xs: &[Vec<f64>], ys: &[Vec<f64>]) -> DMatrix<f64> {
    DMatrix::from_fn(nets.len(), xs.len(), |f, i| {
        let out = nets[f].forward(&xs[i]);
        let d: f64 = out.iter().zip(&ys[i]).map(|(a, b)| (a - b) * (a - b)).sum();
        d.sqrt().min(1.0)
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReluCheckConfig {
    pub arch: NetArchitecture,
    pub hypotheses: usize,
    pub n_samples: usize,
    pub sigma_draws: usize,
    pub c: f64,
}

/// Draws `hypotheses` networks from the class, `n_samples` inputs in
/// `[-1, 1]^{d_0}` with labels in `[0, 1]^{d_L}`, and compares the
/// Rademacher estimate of the loss `min(1, ||f(x) - y||)` with the ReLU
/// bound (`lip = 1`, `H = 1`).
///
/// Data, networks and signs use `seed.derive(0)`, `seed.derive(1)` and
/// `seed.derive(2)`.
pub fn relu_rademacher_check(cfg: &ReluCheckConfig, seed: RngSeed) -> Result<VerifyReport> {
    ensure(cfg.hypotheses >= 1, "ReLU Rademacher check", || "need at least one hypothesis".into())?;
    let loss = LossSpec::new(1.0, 1.0)?;
    let bound = relu_rademacher_bound(&cfg.arch, cfg.n_samples, loss, cfg.c)?;
    let (d0, dl) = (cfg.arch.dims[0], cfg.arch.output_dim());
    let mut rng = seed.derive(0).rng();
    let xs: Vec<Vec<f64>> = (0..cfg.n_samples)
        .map(|_| (0..d0).map(|_| 2.0 * rng.random::<f64>() - 1.0).collect())
        .collect();
    let ys: Vec<Vec<f64>> = (0..cfg.n_samples)
        .map(|_| (0..dl).map(|_| rng.random::<f64>()).collect())
        .collect();
    let mut rng = seed.derive(1).rng();
    let nets: Vec<ReluNetwork> = (0..cfg.hypotheses).map(|_| ReluNetwork::sample(&cfg.arch, &mut rng)).collect();
    let values = relu_hypothesis_losses(&nets, &xs, &ys);
    let est = rademacher_mc(&values, cfg.sigma_draws, seed.derive(2))?;
    Ok(
        VerifyReport::new(est.mean, bound, Comparison::AtMost, cfg.sigma_draws, seed.0)
            .with_std_error(est.std_error),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singleton_class_is_centered() {
        let mut rng = RngSeed(3).rng();
        let v = DMatrix::from_fn(1, 50, |_, _| rng.random::<f64>());
        let est = rademacher_mc(&v, 100_000, RngSeed(9)).unwrap();
        assert!(est.mean.abs() <= 3.0 * est.std_error, "{est:?}");
    }

    #[test]
    fn mirrored_pair_has_value_one_half() {
        let v = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, -1.0, -1.0]);
        let est = rademacher_mc(&v, 100_000, RngSeed(1)).unwrap();
        assert!((est.mean - 0.5).abs() <= 4.0 * est.std_error, "{est:?}");
    }

    #[test]
    fn constant_losses_give_zero_in_expectation() {
        let v = DMatrix::from_element(3, 4, 0.7);
        let est = rademacher_mc(&v, 50_000, RngSeed(2)).unwrap();
        assert!(est.mean.abs() <= 4.0 * est.std_error);
    }

    #[test]
    fn estimates_do_not_depend_on_thread_count() {
        let v = DMatrix::from_fn(5, 20, |i, j| ((i * 7 + j * 3) % 11) as f64 / 11.0);
        let a = rademacher_mc(&v, 10_000, RngSeed(4)).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| rademacher_mc(&v, 10_000, RngSeed(4)).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn sampled_networks_respect_the_caps() {
        let arch = NetArchitecture::relu(vec![3, 4, 2], vec![2.0, 3.0]).unwrap();
        let mut rng = RngSeed(5).rng();
        for _ in 0..50 {
            let net = ReluNetwork::sample(&arch, &mut rng);
            for (norm, cap) in net.layer_norms().iter().zip(&arch.omegas) {
                assert!(*norm <= cap + 1e-12);
            }
            let out = net.forward(&[1.0, -1.0, 0.5]);
            assert!(out.iter().all(|&v| (0.0..=6.0 * 4.0).contains(&v)));
        }
    }

    #[test]
    fn empty_inputs_are_rejected() {
        assert!(rademacher_mc(&DMatrix::zeros(0, 3), 10, RngSeed(0)).is_err());
        assert!(rademacher_mc(&DMatrix::zeros(2, 3), 0, RngSeed(0)).is_err());
    }
}
