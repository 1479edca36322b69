//! Sketch distortion on sampled images.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{sample_poly_image, Comparison, SampleCloud, VerifyReport};
use crate::bounds::BoundReport;
use crate::error::{ensure, Error, Result};
use crate::poly::PolynomialMap;
use crate::seed::RngSeed;
use crate::sketch::{
    sors_dim_poly, subg_dim_poly, Distribution, SketchOperator, SorsSketch, SubGaussianSketch,
};

const CHUNK: usize = 256;

/// `max |‖S x‖ / ‖x‖ - 1|` over the nonzero points of the cloud.
pub fn distortion_trial(cloud: &SampleCloud, op: &SketchOperator) -> Result<f64> {
    if op.cols() != cloud.dim() {
        return Err(Error::DimensionMismatch {
            expected: cloud.dim(),
            got: op.cols(),
        });
    }
    let points = cloud.matrix();
    let starts: Vec<usize> = (0..cloud.len()).step_by(CHUNK).collect();
    let per_chunk: Vec<Option<f64>> = starts
        .par_iter()
        .map(|&s| -> Result<Option<f64>> {
            let width = CHUNK.min(cloud.len() - s);
            let block = points.columns(s, width).into_owned();
            let sketched = op.apply_columns(&block)?;
            Ok(block
                .column_iter()
                .zip(sketched.column_iter())
                .filter(|(x, _)| x.norm() > 0.0)
                .map(|(x, y)| (y.norm() / x.norm() - 1.0).abs())
                .reduce(f64::max))
        })
        .collect::<Result<_>>()?;
    per_chunk
        .into_iter()
        .flatten()
        .reduce(f64::max)
        .ok_or_else(|| Error::invalid("sketch distortion", "every point of the cloud is zero"))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ensemble {
    SubGaussian(Distribution),
    Sors,
}

/// How many rows the trial operators get.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowCount {
    /// From the sketching-dimension formula of the ensemble with this
    /// leading constant.
    Formula { c: f64 },
    Fixed(usize),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuccessRateConfig {
    pub box_radius: f64,
    pub ensemble: Ensemble,
    pub eps: f64,
    pub delta: f64,
    pub trials: usize,
    pub count: usize,
    pub rows: RowCount,
}

impl SuccessRateConfig {
    /// Rows the operators will have for `map`.
    pub fn rows_for(&self, map: &PolynomialMap) -> Result<usize> {
        let (n, d, big_n) = (map.input_dim(), map.degree().max(1), map.output_dim());
        Ok(match (self.rows, self.ensemble) {
            (RowCount::Fixed(m), _) => m,
            (RowCount::Formula { c }, Ensemble::SubGaussian(_)) => {
                subg_dim_poly(n, d, big_n, self.eps, self.delta, 1.0, c)? as usize
            }
            (RowCount::Formula { c }, Ensemble::Sors) => sors_dim_poly(n, d, big_n, self.eps, self.delta, 1.0, c)? as usize,
        })
    }
}

/// Fraction of `trials` independent operators whose distortion on one
/// sampled image stays within `eps`; passes when it reaches `1 - delta`.
///
/// The cloud uses `seed.derive(0)` and trial `i` uses `seed.derive(i + 1)`.
pub fn sketch_success_rate(map: &PolynomialMap, cfg: &SuccessRateConfig, seed: RngSeed) -> Result<VerifyReport> {
    const REF: &str = "sketch success rate";
    ensure(cfg.trials >= 1, REF, || "need trials >= 1".into())?;
    ensure(cfg.eps > 0.0 && cfg.eps < 1.0, REF, || format!("eps must lie in (0, 1), got {}", cfg.eps))?;
    ensure(cfg.delta > 0.0 && cfg.delta < 1.0, REF, || format!("delta must lie in (0, 1), got {}", cfg.delta))?;
    let m = cfg.rows_for(map)?;
    ensure(m >= 1, REF, || "need at least one row".into())?;
    let cloud = sample_poly_image(map, cfg.box_radius, cfg.count, seed.derive(0))?;
    let big_m = map.output_dim();
    let distortions: Vec<f64> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| {
            let s = seed.derive(i as u64 + 1);
            let op = match cfg.ensemble {
                Ensemble::SubGaussian(dist) => SketchOperator::SubGaussian(SubGaussianSketch::new(m, big_m, dist, s)?),
                Ensemble::Sors => SketchOperator::Sors(SorsSketch::new(m, big_m, s)?),
            };
            distortion_trial(&cloud, &op)
        })
        .collect::<Result<_>>()?;
    let ok = distortions.iter().filter(|&&d| d <= cfg.eps).count();
    let rate = ok as f64 / cfg.trials as f64;
    let mut bound = BoundReport::linear(1.0 - cfg.delta, "required success fraction 1 - delta").with_constant("m", m as f64);
    if let RowCount::Formula { c } = cfg.rows {
        bound = bound.with_constant("c", c);
    }
    let worst = distortions.iter().copied().fold(0.0, f64::max);
    let se = (rate * (1.0 - rate) / cfg.trials as f64).sqrt();
    Ok(VerifyReport::new(rate, bound, Comparison::AtLeast, cfg.trials, seed.0)
        .with_std_error(se)
        .with_note_constant("worst_distortion", worst))
}

impl VerifyReport {
    fn with_note_constant(mut self, name: &str, value: f64) -> Self {
        self.constants_used.insert(name.to_owned(), value);
        self
    }
}

/// The fixed instances used to calibrate the sketch constant: a random
/// cubic `R^2 -> R^256` and a random quadratic `R^3 -> R^64`, both on the
/// unit box.
pub fn calibration_suite() -> Vec<PolynomialMap> {
    let mut rng = RngSeed(0xCA1B).rng();
    vec![
        PolynomialMap::random_dense(2, 256, 3, &mut rng).expect("valid sizes"),
        PolynomialMap::random_dense(3, 64, 2, &mut rng).expect("valid sizes"),
    ]
}

/// Smallest integer `c` in `1..=16` for which [`sketch_success_rate`]
/// passes on every instance of [`calibration_suite`] at `eps = 0.5`,
/// `delta = 0.1`, 50 trials and `10^4` samples.
pub fn calibrate_sketch_constant(ensemble: Ensemble, seed: RngSeed) -> Result<f64> {
    let suite = calibration_suite();
    for c in 1..=16 {
        let cfg = SuccessRateConfig {
            box_radius: 1.0,
            ensemble,
            eps: 0.5,
            delta: 0.1,
            trials: 50,
            count: 10_000,
            rows: RowCount::Formula { c: c as f64 },
        };
        let mut all = true;
        for (k, map) in suite.iter().enumerate() {
            if !sketch_success_rate(map, &cfg, seed.derive(k as u64))?.pass() {
                all = false;
                break;
            }
        }
        if all {
            return Ok(c as f64);
        }
    }
    Err(Error::invalid("sketch constant calibration", "no constant in 1..=16 passes the calibration suite"))
}
