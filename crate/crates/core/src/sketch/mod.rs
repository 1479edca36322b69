//! Random sketching operators and their dimension formulas.
//!
//! Two ensembles are provided:
//!
//! * [`SubGaussianSketch`]: `S = G / sqrt(m)` with i.i.d. Gaussian or
//!   Rademacher entries of unit variance.
//! * [`SorsSketch`]: `S = sqrt(M/m) P H D`, a row sampler (with
//!   replacement) applied to the orthonormal Walsh-Hadamard transform of a
//!   randomly sign-flipped input. Inputs are zero-padded to the next power
//!   of two, which preserves norms.
//!
//! Operators are fully determined by `(kind, m, M, seed, distribution)`;
//! that tuple is also their JSON form, and matrices are regenerated from it.

mod dims;
mod fwht;

pub use dims::{
    effective_dim, sors_dim_lipschitz, sors_dim_poly, subg_dim_lipschitz, subg_dim_poly, LipschitzResidual,
};
pub use fwht::{fwht, fwht_in_place};

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};
use crate::seed::RngSeed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Distribution {
    Gaussian,
    Rademacher,
}

impl std::str::FromStr for Distribution {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gaussian" => Ok(Distribution::Gaussian),
            "rademacher" => Ok(Distribution::Rademacher),
            other => Err(Error::invalid("sketch distribution", format!("unknown distribution {other:?}"))),
        }
    }
}

fn rademacher<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    if rng.random::<bool>() {
        1.0
    } else {
        -1.0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubGaussianSketch {
    m: usize,
    big_m: usize,
    distribution: Distribution,
    seed: RngSeed,
    matrix: DMatrix<f64>,
}

impl SubGaussianSketch {
    pub fn new(m: usize, big_m: usize, distribution: Distribution, seed: RngSeed) -> Result<Self> {
        ensure(m >= 1 && big_m >= 1, "sub-Gaussian sketch", || {
            format!("need m, M >= 1, got m = {m}, M = {big_m}")
        })?;
        let mut rng = seed.rng();
        // entries are drawn row by row
        let entries: Vec<f64> = (0..m * big_m)
            .map(|_| match distribution {
                Distribution::Gaussian => rng.sample(StandardNormal),
                Distribution::Rademacher => rademacher(&mut rng),
            })
            .collect();
        let matrix = DMatrix::from_row_slice(m, big_m, &entries) / (m as f64).sqrt();
        Ok(SubGaussianSketch {
            m,
            big_m,
            distribution,
            seed,
            matrix,
        })
    }

    pub fn scale(&self) -> f64 {
        1.0 / (self.m as f64).sqrt()
    }

    /// The scaled `m x M` matrix.
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        let y = &self.matrix * DVector::from_column_slice(x);
        y.iter().copied().collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowSampling {
    /// `m` uniform draws with replacement.
    WithReplacement,
    /// Every row of `H` exactly once (`m = M_pad`); a deterministic test hook.
    All,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SorsSketch {
    m: usize,
    big_m: usize,
    m_pad: usize,
    seed: RngSeed,
    sampling: RowSampling,
    row_indices: Vec<usize>,
    signs: Vec<f64>,
}

impl SorsSketch {
    pub fn new(m: usize, big_m: usize, seed: RngSeed) -> Result<Self> {
        Self::build(m, big_m, seed, RowSampling::WithReplacement)
    }

    /// `m = M_pad` with rows `0..M_pad` in order, so `S` is orthogonal.
    pub fn full_sampling(big_m: usize, seed: RngSeed) -> Result<Self> {
        Self::build(big_m.next_power_of_two(), big_m, seed, RowSampling::All)
    }

    fn build(m: usize, big_m: usize, seed: RngSeed, sampling: RowSampling) -> Result<Self> {
        ensure(m >= 1 && big_m >= 1, "subsampled Hadamard sketch", || {
            format!("need m, M >= 1, got m = {m}, M = {big_m}")
        })?;
        let m_pad = big_m.next_power_of_two();
        let mut rng = seed.rng();
        let signs = (0..m_pad).map(|_| rademacher(&mut rng)).collect();
        let row_indices = match sampling {
            RowSampling::WithReplacement => (0..m).map(|_| rng.random_range(0..m_pad)).collect(),
            RowSampling::All => {
                ensure(m == m_pad, "subsampled Hadamard sketch", || {
                    format!("full sampling needs m = M_pad = {m_pad}, got {m}")
                })?;
                (0..m_pad).collect()
            }
        };
        Ok(SorsSketch {
            m,
            big_m,
            m_pad,
            seed,
            sampling,
            row_indices,
            signs,
        })
    }

    pub fn padded_dim(&self) -> usize {
        self.m_pad
    }

    pub fn row_indices(&self) -> &[usize] {
        &self.row_indices
    }

    pub fn scale(&self) -> f64 {
        (self.m_pad as f64 / self.m as f64).sqrt()
    }

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut buf = vec![0.0; self.m_pad];
        for ((b, &v), &s) in buf.iter_mut().zip(x).zip(&self.signs) {
            *b = v * s;
        }
        fwht_in_place(&mut buf).expect("padded length is a power of two");
        let s = self.scale();
        self.row_indices.iter().map(|&r| s * buf[r]).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SketchSpec", into = "SketchSpec")]
pub enum SketchOperator {
    SubGaussian(SubGaussianSketch),
    Sors(SorsSketch),
    /// `S = I`; lets the sketched solvers reproduce the unsketched ones.
    Identity { dim: usize },
}

/// Serialized form: the generating parameters, never the matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SketchSpec {
    pub kind: String,
    pub m: usize,
    #[serde(rename = "M")]
    pub big_m: usize,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distribution: Option<Distribution>,
}

impl TryFrom<SketchSpec> for SketchOperator {
    type Error = Error;
    fn try_from(spec: SketchSpec) -> Result<Self> {
        let seed = RngSeed(spec.seed);
        match spec.kind.as_str() {
            "subgaussian" | "sub_gaussian" => Ok(SketchOperator::SubGaussian(SubGaussianSketch::new(
                spec.m,
                spec.big_m,
                spec.distribution.unwrap_or(Distribution::Gaussian),
                seed,
            )?)),
            "sors" => Ok(SketchOperator::Sors(SorsSketch::new(spec.m, spec.big_m, seed)?)),
            "sors_full" => {
                let op = SorsSketch::full_sampling(spec.big_m, seed)?;
                ensure(op.m == spec.m, "subsampled Hadamard sketch", || {
                    format!("sors_full needs m = M_pad = {}, got {}", op.m, spec.m)
                })?;
                Ok(SketchOperator::Sors(op))
            }
            "identity" => {
                ensure(spec.m == spec.big_m, "identity sketch", || "identity sketch needs m = M".into())?;
                Ok(SketchOperator::Identity { dim: spec.m })
            }
            other => Err(Error::invalid(
                "sketch kind",
                format!("unknown sketch kind {other:?}; expected subgaussian, sors, sors_full or identity"),
            )),
        }
    }
}

impl From<SketchOperator> for SketchSpec {
    fn from(op: SketchOperator) -> Self {
        match op {
            SketchOperator::SubGaussian(s) => SketchSpec {
                kind: "subgaussian".into(),
                m: s.m,
                big_m: s.big_m,
                seed: s.seed.0,
                distribution: Some(s.distribution),
            },
            SketchOperator::Sors(s) => SketchSpec {
                kind: match s.sampling {
                    RowSampling::WithReplacement => "sors".into(),
                    RowSampling::All => "sors_full".into(),
                },
                m: s.m,
                big_m: s.big_m,
                seed: s.seed.0,
                distribution: None,
            },
            SketchOperator::Identity { dim } => SketchSpec {
                kind: "identity".into(),
                m: dim,
                big_m: dim,
                seed: 0,
                distribution: None,
            },
        }
    }
}

impl SketchOperator {
    /// Number of output rows `m`.
    pub fn rows(&self) -> usize {
        match self {
            SketchOperator::SubGaussian(s) => s.m,
            SketchOperator::Sors(s) => s.m,
            SketchOperator::Identity { dim } => *dim,
        }
    }

    /// Input dimension `M` (before any padding).
    pub fn cols(&self) -> usize {
        match self {
            SketchOperator::SubGaussian(s) => s.big_m,
            SketchOperator::Sors(s) => s.big_m,
            SketchOperator::Identity { dim } => *dim,
        }
    }

    /// `S x`.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.cols() {
            return Err(Error::DimensionMismatch {
                expected: self.cols(),
                got: x.len(),
            });
        }
        Ok(match self {
            SketchOperator::SubGaussian(s) => s.apply(x),
            SketchOperator::Sors(s) => s.apply(x),
            SketchOperator::Identity { .. } => x.to_vec(),
        })
    }

    /// `S A`, column by column.
    pub fn apply_columns(&self, a: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        if a.nrows() != self.cols() {
            return Err(Error::DimensionMismatch {
                expected: self.cols(),
                got: a.nrows(),
            });
        }
        match self {
            SketchOperator::Identity { .. } => return Ok(a.clone()),
            SketchOperator::SubGaussian(s) => return Ok(s.matrix() * a),
            SketchOperator::Sors(_) => {}
        }
        let mut out = DMatrix::zeros(self.rows(), a.ncols());
        for (j, col) in a.column_iter().enumerate() {
            let y = self.apply(col.as_slice())?;
            out.column_mut(j).copy_from_slice(&y);
        }
        Ok(out)
    }

    /// Dense `m x M` realization.
    pub fn to_matrix(&self) -> DMatrix<f64> {
        match self {
            SketchOperator::SubGaussian(s) => s.matrix().clone(),
            _ => self
                .apply_columns(&DMatrix::identity(self.cols(), self.cols()))
                .expect("identity has matching rows"),
        }
    }
}
