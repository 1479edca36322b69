//! Monte-Carlo probe of tube hit probabilities.

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Comparison, VerifyReport};
use crate::bounds::tube_hit_probability_log;
use crate::error::{ensure, Error, Result};
use crate::poly::PolynomialMap;
use crate::polyopt::ls_solve;
use crate::seed::RngSeed;

const BLOCK: usize = 4096;
const MAX_GRID: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TubeProbeConfig {
    /// Parameters range over `[-box_radius, box_radius]^n`.
    pub box_radius: f64,
    pub center: Vec<f64>,
    pub sigma: f64,
    pub eps: f64,
    pub mc_samples: usize,
    /// Grid points per parameter axis.
    pub grid_density: usize,
    /// Constant of the hit-probability bound.
    pub c: f64,
}

struct Grid {
    params: Vec<Vec<f64>>,
    images: Vec<f64>,
    // bound on how far a true distance can sit below the grid distance
    margin: f64,
}

fn build_grid(map: &PolynomialMap, r: f64, density: usize) -> Result<Grid> {
    let n = map.input_dim();
    let total = (0..n).try_fold(1usize, |acc, _| acc.checked_mul(density));
    let total = match total {
        Some(t) if t <= MAX_GRID => t,
        _ => {
            return Err(Error::invalid(
                "tube probe",
                format!("grid of {density}^{n} points is too large; lower grid_density"),
            ))
        }
    };
    let axis: Vec<f64> = if density == 1 {
        vec![0.0]
    } else {
        (0..density).map(|i| -r + 2.0 * r * i as f64 / (density - 1) as f64).collect()
    };
    let h = if density == 1 { 2.0 * r } else { 2.0 * r / (density - 1) as f64 };
    let params: Vec<Vec<f64>> = (0..total)
        .map(|mut k| {
            (0..n)
                .map(|_| {
                    let v = axis[k % density];
                    k /= density;
                    v
                })
                .collect()
        })
        .collect();
    let evals: Vec<(Vec<f64>, f64)> = params
        .par_iter()
        .map(|u| {
            let (f, j) = map.eval_and_jacobian(u)?;
            Ok((f, j.norm()))
        })
        .collect::<Result<_>>()?;
    let lip = evals.iter().map(|e| e.1).fold(0.0, f64::max);
    let images = evals.into_iter().flat_map(|e| e.0).collect();
    Ok(Grid {
        params,
        images,
        margin: 2.0 * lip * h * (n as f64).sqrt(),
    })
}

fn dist_sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

// Local Gauss-Newton on ||p(u) - x|| inside the parameter box.
fn polish(map: &PolynomialMap, x: &[f64], u0: &[f64], r: f64) -> Result<f64> {
    let mut u = u0.to_vec();
    let resid = |u: &[f64]| -> Result<Vec<f64>> { Ok(map.eval(u)?.iter().zip(x).map(|(a, b)| a - b).collect()) };
    let mut res = resid(&u)?;
    let mut best = dist_sq(&res, &vec![0.0; res.len()]);
    for _ in 0..30 {
        let j: DMatrix<f64> = map.jacobian(&u)?;
        let step = ls_solve(&j, &res, 1e-12)?;
        let mut alpha = 1.0;
        let mut improved = false;
        for _ in 0..20 {
            let trial: Vec<f64> = u.iter().zip(&step).map(|(a, s)| (a + alpha * s).clamp(-r, r)).collect();
            let tr = resid(&trial)?;
            let d = dist_sq(&tr, &vec![0.0; tr.len()]);
            if d < best {
                u = trial;
                res = tr;
                best = d;
                improved = true;
                break;
            }
            alpha *= 0.5;
        }
        if !improved {
            break;
        }
    }
    Ok(best)
}

/// Estimates `ln P(dist(x, p([-r, r]^n)) <= eps)` for `x` uniform in
/// `B(center, sigma)` and compares it with the hit-probability bound.
///
/// Distances come from a parameter grid, refined by local Gauss-Newton
/// whenever the grid alone cannot decide. Samples are drawn in blocks of
/// 4096, block `b` from `seed.derive(b)`.
pub fn tube_probe(map: &PolynomialMap, cfg: &TubeProbeConfig, seed: RngSeed) -> Result<VerifyReport> {
    const REF: &str = "tube probe";
    let big_n = map.output_dim();
    if cfg.center.len() != big_n {
        return Err(Error::DimensionMismatch {
            expected: big_n,
            got: cfg.center.len(),
        });
    }
    ensure(cfg.mc_samples >= 1 && cfg.grid_density >= 1, REF, || {
        "need mc_samples >= 1 and grid_density >= 1".into()
    })?;
    ensure(cfg.box_radius.is_finite() && cfg.box_radius >= 0.0, REF, || "box radius must be >= 0".into())?;
    let n = map.input_dim().min(big_n);
    let bound = tube_hit_probability_log(big_n, n, map.degree().max(1), cfg.eps, cfg.sigma, cfg.c)?;
    let grid = build_grid(map, cfg.box_radius, cfg.grid_density)?;
    let eps_sq = cfg.eps * cfg.eps;

    let blocks = cfg.mc_samples.div_ceil(BLOCK);
    let hits: usize = (0..blocks)
        .into_par_iter()
        .map(|b| -> Result<usize> {
            let mut rng = seed.derive(b as u64).rng();
            let size = BLOCK.min(cfg.mc_samples - b * BLOCK);
            let mut x = vec![0.0; big_n];
            let mut count = 0;
            for _ in 0..size {
                for xi in x.iter_mut() {
                    *xi = rng.sample(StandardNormal);
                }
                let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
                let radius = cfg.sigma * rng.random::<f64>().powf(1.0 / big_n as f64);
                for (xi, ci) in x.iter_mut().zip(&cfg.center) {
                    *xi = ci + *xi * radius / norm;
                }
                let (k, d) = grid
                    .images
                    .chunks_exact(big_n)
                    .enumerate()
                    .map(|(k, img)| (k, dist_sq(img, &x)))
                    .fold((0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a });
                let hit = if d <= eps_sq {
                    true
                } else if d.sqrt() - grid.margin > cfg.eps {
                    false
                } else {
                    polish(map, &x, &grid.params[k], cfg.box_radius)? <= eps_sq
                };
                count += hit as usize;
            }
            Ok(count)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .sum();

    let total = cfg.mc_samples as f64;
    let p = hits as f64 / total;
    let mut report = VerifyReport::new(p.ln(), bound, Comparison::AtMost, cfg.mc_samples, seed.0)
        .with_note_hits(hits);
    if hits > 0 {
        report = report.with_std_error(((1.0 - p) / (p * total)).sqrt());
    } else {
        report = report.with_warning("no sample landed in the tube; empirical log-probability is -inf");
    }
    Ok(report)
}

impl VerifyReport {
    fn with_note_hits(mut self, hits: usize) -> Self {
        self.constants_used.insert("hits".into(), hits as f64);
        self
    }
}
