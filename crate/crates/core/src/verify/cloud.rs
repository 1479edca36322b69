//! Sampled images, greedy nets and packings.

use nalgebra::DMatrix;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Comparison, VerifyReport};
use crate::bounds::covering_bound_log;
use crate::error::{ensure, Error, Result};
use crate::poly::PolynomialMap;
use crate::regularity::{profile_poly_image, SetVariant};
use crate::seed::RngSeed;

/// Everything needed to regenerate a [`SampleCloud`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub map: PolynomialMap,
    pub box_radius: f64,
    pub count: usize,
    pub seed: u64,
}

/// A finite point set in `R^N`, stored as the columns of an `N x count`
/// matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleCloud {
    points: DMatrix<f64>,
    provenance: Option<Provenance>,
}

impl SampleCloud {
    /// A cloud from explicit points (no provenance).
    pub fn from_points(points: &[Vec<f64>]) -> Result<Self> {
        ensure(!points.is_empty(), "sample cloud", || "cloud must contain at least one point".into())?;
        let dim = points[0].len();
        if let Some(bad) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: bad.len(),
            });
        }
        let flat: Vec<f64> = points.iter().flatten().copied().collect();
        Ok(SampleCloud {
            points: DMatrix::from_column_slice(dim, points.len(), &flat),
            provenance: None,
        })
    }

    pub fn len(&self) -> usize {
        self.points.ncols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dim(&self) -> usize {
        self.points.nrows()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        let d = self.dim();
        &self.points.as_slice()[i * d..(i + 1) * d]
    }

    /// The `N x count` matrix of points.
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.points
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    fn dist_sq(&self, i: usize, j: usize) -> f64 {
        self.point(i).iter().zip(self.point(j)).map(|(a, b)| (a - b) * (a - b)).sum()
    }
}

/// `count` points `p(u)` with `u` uniform in `[-r, r]^n`.
pub fn sample_poly_image(map: &PolynomialMap, box_radius: f64, count: usize, seed: RngSeed) -> Result<SampleCloud> {
    ensure(count >= 1, "image sampling", || "count must be >= 1".into())?;
    ensure(box_radius.is_finite() && box_radius >= 0.0, "image sampling", || {
        format!("box radius must be finite and >= 0, got {box_radius}")
    })?;
    let n = map.input_dim();
    let mut rng = seed.rng();
    let params: Vec<f64> = (0..count * n)
        .map(|_| box_radius * (2.0 * rng.random::<f64>() - 1.0))
        .collect();
    let big_n = map.output_dim();
    let mut flat = vec![0.0; count * big_n];
    flat.par_chunks_mut(big_n)
        .zip(params.par_chunks(n))
        .try_for_each(|(out, u)| -> Result<()> {
            out.copy_from_slice(&map.eval(u)?);
            Ok(())
        })?;
    Ok(SampleCloud {
        points: DMatrix::from_vec(big_n, count, flat),
        provenance: Some(Provenance {
            map: map.clone(),
            box_radius,
            count,
            seed: seed.0,
        }),
    })
}

fn check_eps(cloud: &SampleCloud, eps: f64) -> Result<()> {
    ensure(!cloud.is_empty(), "greedy net", || "cloud is empty".into())?;
    ensure(eps.is_finite() && eps > 0.0, "greedy net", || format!("eps must be positive, got {eps}"))
}

// (value, index) maximum with ties going to the smaller index, so parallel
// reductions are deterministic
fn argmax(values: &[f64]) -> (usize, f64) {
    values
        .par_iter()
        .enumerate()
        .map(|(i, &v)| (i, v))
        .reduce(
            || (usize::MAX, f64::NEG_INFINITY),
            |a, b| {
                if b.1 > a.1 || (b.1 == a.1 && b.0 < a.0) {
                    b
                } else {
                    a
                }
            },
        )
}

// Deterministic starting samples: the one nearest the centroid, the one
// farthest from it, and a few evenly spaced indices.
fn starts(cloud: &SampleCloud) -> Vec<usize> {
    let centroid: Vec<f64> = cloud.points.column_mean().iter().copied().collect();
    let to_centroid: Vec<f64> = (0..cloud.len())
        .into_par_iter()
        .map(|i| cloud.point(i).iter().zip(&centroid).map(|(a, b)| (a - b) * (a - b)).sum::<f64>())
        .collect();
    let neg: Vec<f64> = to_centroid.iter().map(|v| -v).collect();
    let mut out = vec![argmax(&neg).0, argmax(&to_centroid).0];
    let spread = 6.min(cloud.len());
    out.extend((0..spread).map(|k| k * cloud.len() / spread));
    out.dedup();
    out
}

// Farthest-point traversal from `start`, stopped once every sample lies
// within eps. Consecutive additions are more than eps from all earlier
// ones, so the result is eps-separated.
fn farthest_point(cloud: &SampleCloud, eps_sq: f64, start: usize) -> Vec<usize> {
    let mut net = vec![start];
    let mut dist: Vec<f64> = (0..cloud.len()).into_par_iter().map(|i| cloud.dist_sq(i, start)).collect();
    loop {
        let (far, d) = argmax(&dist);
        if d <= eps_sq {
            break;
        }
        net.push(far);
        dist.par_iter_mut().enumerate().for_each(|(i, di)| {
            let d = cloud.dist_sq(i, far);
            if d < *di {
                *di = d;
            }
        });
    }
    net
}

// Drops centres whose samples are all covered by another centre, latest
// additions first.
fn prune(cloud: &SampleCloud, net: &[usize], eps_sq: f64) -> Vec<usize> {
    let near: Vec<Vec<usize>> = net
        .par_iter()
        .map(|&c| (0..cloud.len()).filter(|&i| cloud.dist_sq(i, c) <= eps_sq).collect())
        .collect();
    let mut cover = vec![0u32; cloud.len()];
    for list in &near {
        for &i in list {
            cover[i] += 1;
        }
    }
    let mut keep = vec![true; net.len()];
    for k in (0..net.len()).rev() {
        if near[k].iter().all(|&i| cover[i] >= 2) {
            keep[k] = false;
            for &i in &near[k] {
                cover[i] -= 1;
            }
        }
    }
    net.iter().zip(keep).filter(|(_, k)| *k).map(|(&c, _)| c).collect()
}

/// Greedy eps-net of the cloud, as indices into it.
///
/// Runs farthest-point traversal from a handful of deterministic starts
/// (nearest to and farthest from the centroid, and evenly spaced samples),
/// removes redundant centres from each, and returns the smallest result.
/// Every sample lies within `eps` of the returned net.
pub fn greedy_net(cloud: &SampleCloud, eps: f64) -> Result<Vec<usize>> {
    check_eps(cloud, eps)?;
    let eps_sq = eps * eps;
    let best = starts(cloud)
        .into_iter()
        .map(|s| prune(cloud, &farthest_point(cloud, eps_sq, s), eps_sq))
        .min_by_key(|net| net.len())
        .expect("at least one start");
    Ok(best)
}

fn greedy_separated(cloud: &SampleCloud, order: impl Iterator<Item = usize>, eps_sq: f64) -> usize {
    let mut chosen: Vec<usize> = Vec::new();
    for i in order {
        if chosen.iter().all(|&j| cloud.dist_sq(i, j) > eps_sq) {
            chosen.push(i);
        }
    }
    chosen.len()
}

/// Size of a large eps-separated subset (pairwise distances `> eps`).
///
/// Takes the best of several greedy maximal subsets: sample order,
/// lexicographic order, and the farthest-point orders behind
/// [`greedy_net`]. Together with the net this gives the exact sandwich
/// `packing_count(2 eps) <= |greedy_net(eps)| <= packing_count(eps)`.
pub fn packing_count(cloud: &SampleCloud, eps: f64) -> Result<usize> {
    check_eps(cloud, eps)?;
    let eps_sq = eps * eps;
    let mut lex: Vec<usize> = (0..cloud.len()).collect();
    lex.sort_by(|&a, &b| {
        cloud
            .point(a)
            .iter()
            .zip(cloud.point(b))
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    let (in_order, by_lex) = rayon::join(
        || greedy_separated(cloud, 0..cloud.len(), eps_sq),
        || greedy_separated(cloud, lex.into_iter(), eps_sq),
    );
    let farthest = starts(cloud)
        .into_iter()
        .map(|s| farthest_point(cloud, eps_sq, s).len())
        .max()
        .expect("at least one start");
    Ok(in_order.max(by_lex).max(farthest))
}

/// Largest nearest-neighbour distance from up to `probes` evenly spaced
/// samples to the rest of the cloud.
fn probe_spacing(cloud: &SampleCloud, probes: usize) -> f64 {
    if cloud.len() < 2 {
        return 0.0;
    }
    let step = (cloud.len() / probes.max(1)).max(1);
    (0..cloud.len())
        .step_by(step)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&i| {
            (0..cloud.len())
                .filter(|&j| j != i)
                .map(|j| cloud.dist_sq(i, j))
                .fold(f64::INFINITY, f64::min)
                .sqrt()
        })
        .reduce(|| 0.0, f64::max)
}

/// Compares `ln |greedy net|` of a sampled image with the covering bound
/// for the image of a ball under a degree-`d` map.
pub fn covering_check(
    map: &PolynomialMap,
    box_radius: f64,
    t: f64,
    eps: f64,
    count: usize,
    seed: RngSeed,
) -> Result<VerifyReport> {
    let cloud = sample_poly_image(map, box_radius, count, seed)?;
    let net = greedy_net(&cloud, eps)?;
    let profile = profile_poly_image(map.input_dim(), map.degree().max(1), SetVariant::Ball)?;
    let bound = covering_bound_log(&profile, map.output_dim(), t, eps)?;
    let mut report = VerifyReport::new((net.len() as f64).ln(), bound, Comparison::AtMost, count, seed.0);
    let spacing = probe_spacing(&cloud, 256);
    if spacing > eps / 2.0 {
        report = report.with_warning(format!(
            "undersampled: nearest-neighbour spacing {spacing:.3e} exceeds eps/2 = {:.3e}; the net size underestimates",
            eps / 2.0
        ));
    }
    let reach = cloud.matrix().amax();
    if reach > t {
        report = report.with_warning(format!(
            "sampled image reaches |x_i| = {reach:.4} > t = {t}; the bound assumes the set fits in [-t, t]^N"
        ));
    }
    Ok(report)
}
