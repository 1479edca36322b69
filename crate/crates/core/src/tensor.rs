//! Covering bounds for tensors of low CP rank and the probability that a
//! Gaussian tensor lies at a small angle from such a tensor.

use serde::{Deserialize, Serialize};

use crate::bounds::BoundReport;
use crate::error::{ensure, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct TensorShape {
    dims: Vec<usize>,
}

impl TryFrom<Vec<usize>> for TensorShape {
    type Error = crate::Error;
    fn try_from(dims: Vec<usize>) -> Result<Self> {
        TensorShape::new(dims)
    }
}

impl From<TensorShape> for Vec<usize> {
    fn from(s: TensorShape) -> Self {
        s.dims
    }
}

impl TensorShape {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        ensure(dims.len() >= 2, "tensor shape", || {
            format!("tensor order must be >= 2, got {}", dims.len())
        })?;
        ensure(dims.iter().all(|&d| d >= 2), "tensor shape", || {
            format!("every mode size must be >= 2, got {dims:?}")
        })?;
        Ok(TensorShape { dims })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `d`, the number of modes.
    pub fn order(&self) -> usize {
        self.dims.len()
    }

    /// Average mode size `n̄`.
    pub fn mean_dim(&self) -> f64 {
        self.dims.iter().sum::<usize>() as f64 / self.order() as f64
    }

    /// `ln N` where `N` is the number of entries.
    pub fn log_num_entries(&self) -> f64 {
        self.dims.iter().map(|&d| (d as f64).ln()).sum()
    }

    /// Number of entries as a float (exact up to 2^53).
    pub fn num_entries(&self) -> f64 {
        self.dims.iter().map(|&d| d as f64).product()
    }

    pub fn min_dim(&self) -> usize {
        *self.dims.iter().min().expect("order >= 2")
    }

    // r d n̄ = r * sum(n_i), the number of parameters of a rank-r CP model
    fn cp_params(&self, r: usize) -> f64 {
        (r * self.dims.iter().sum::<usize>()) as f64
    }
}

/// Which set of rank-`<= r` tensors is being covered.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum CpSet {
    /// Intersection with the Frobenius ball of radius `t`.
    Ball { t: f64 },
    /// Radial projection onto the unit sphere.
    Sphere,
}

impl CpSet {
    fn radius(self) -> f64 {
        match self {
            CpSet::Ball { t } => t,
            CpSet::Sphere => 1.0,
        }
    }

    // the cone drops one dimension from the coefficient of the eps term
    fn leading(self, params: f64) -> f64 {
        match self {
            CpSet::Ball { .. } => params,
            CpSet::Sphere => params - 1.0,
        }
    }
}

const SPHERE_NOTE: &str = "sphere variant: only the coefficient of the log(./eps) term is lowered by one";

fn check_eps(set: CpSet, eps: f64, reference: &'static str) -> Result<f64> {
    let t = set.radius();
    ensure(t.is_finite() && t > 0.0, reference, || format!("t must be positive, got {t}"))?;
    ensure(eps > 0.0 && eps <= 2.0 * t, reference, || format!("need 0 < eps <= 2t = {}, got {eps}", 2.0 * t))?;
    Ok(t)
}

fn finish(report: BoundReport, set: CpSet) -> BoundReport {
    match set {
        CpSet::Ball { .. } => report,
        CpSet::Sphere => report.with_note(SPHERE_NOTE),
    }
}

/// `r d n̄ ln(t/eps) + c r d n̄ sum_i ln n_i`, valid for every rank.
pub fn cp_covering_log_general(shape: &TensorShape, r: usize, set: CpSet, eps: f64, c: f64) -> Result<BoundReport> {
    const REF: &str = "CP-rank covering bound (any rank)";
    ensure(r >= 1, REF, || "rank r must be >= 1".into())?;
    ensure(c > 0.0, REF, || "constant c must be positive".into())?;
    let t = check_eps(set, eps, REF)?;
    let p = shape.cp_params(r);
    let v = set.leading(p) * (t / eps).ln() + c * p * shape.log_num_entries();
    Ok(finish(BoundReport::log(v, REF).with_constant("c", c), set))
}

/// `r d n̄ ln(c1 d t/eps) + c2 d^2 r^2 ln r - d r^2 ln c1`, for `r <= min_i n_i`.
pub fn cp_covering_log_lowrank(
    shape: &TensorShape,
    r: usize,
    set: CpSet,
    eps: f64,
    c1: f64,
    c2: f64,
) -> Result<BoundReport> {
    const REF: &str = "CP-rank covering bound (r <= min_i n_i)";
    ensure(r >= 1 && r <= shape.min_dim(), REF, || {
        format!("needs 1 <= r <= min_i n_i = {}, got r = {r}", shape.min_dim())
    })?;
    ensure(c1 >= 1.0 && c2 >= 1.0, REF, || format!("needs c1, c2 >= 1, got c1 = {c1}, c2 = {c2}"))?;
    let t = check_eps(set, eps, REF)?;
    let (d, rf) = (shape.order() as f64, r as f64);
    let p = shape.cp_params(r);
    let v = set.leading(p) * (c1 * d * t / eps).ln() + c2 * d * d * rf * rf * rf.ln() - d * rf * rf * c1.ln();
    Ok(finish(
        BoundReport::log(v, REF).with_constant("c1", c1).with_constant("c2", c2),
        set,
    ))
}

/// Bound on `ln P(angle(T, rank <= r) <= eps)` for a standard Gaussian tensor:
///
/// `(N-1) ln sin 2eps - (r d n̄ - 1) ln eps + r d n̄ ln(c1 d) + c2 d^2 r^2 ln r
///  - ln(N)/2 - d r^2 ln c1`.
pub fn cp_angle_probability_log(shape: &TensorShape, r: usize, eps: f64, c1: f64, c2: f64) -> Result<BoundReport> {
    const REF: &str = "angle of a Gaussian tensor to the CP-rank-r cone";
    ensure(r >= 1 && r <= shape.min_dim(), REF, || {
        format!("needs 1 <= r <= min_i n_i = {}, got r = {r}", shape.min_dim())
    })?;
    ensure(eps > 0.0 && eps <= std::f64::consts::FRAC_PI_6 * (1.0 + 1e-15), REF, || {
        format!("needs 0 < eps <= pi/6, got {eps}")
    })?;
    ensure(shape.num_entries() >= 8.0, REF, || {
        format!("needs N = prod n_i >= 8, got {}", shape.num_entries())
    })?;
    ensure(c1 >= 1.0 && c2 >= 1.0, REF, || format!("needs c1, c2 >= 1, got c1 = {c1}, c2 = {c2}"))?;
    let (d, rf) = (shape.order() as f64, r as f64);
    let p = shape.cp_params(r);
    let big_n = shape.num_entries();
    let v = (big_n - 1.0) * (2.0 * eps).sin().ln() - (p - 1.0) * eps.ln() + p * (c1 * d).ln()
        + c2 * d * d * rf * rf * rf.ln()
        - 0.5 * shape.log_num_entries()
        - d * rf * rf * c1.ln();
    Ok(BoundReport::log(v, REF).with_constant("c1", c1).with_constant("c2", c2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn shape(d: &[usize]) -> TensorShape {
        TensorShape::new(d.to_vec()).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn shape_invariants() {
        let s = shape(&[2, 3, 4]);
        assert_eq!(s.order(), 3);
        assert_eq!(s.mean_dim(), 3.0);
        assert_eq!(s.num_entries(), 24.0);
        assert!(TensorShape::new(vec![1, 3]).is_err());
        assert!(TensorShape::new(vec![3]).is_err());
        assert!(serde_json::from_str::<TensorShape>("[2,1]").is_err());
    }

    #[test]
    fn general_examples() {
        let s = shape(&[2, 2, 2]);
        let ball = CpSet::Ball { t: 1.0 };
        assert!(close(cp_covering_log_general(&s, 1, ball, 0.5, 3.0).unwrap().value, 60.0 * 2f64.ln(), 1e-9));
        assert!(close(cp_covering_log_general(&s, 1, ball, 1.0, 3.0).unwrap().value, 54.0 * 2f64.ln(), 1e-9));
        let v = cp_covering_log_general(&shape(&[3, 3]), 2, CpSet::Ball { t: 2.0 }, 0.5, 3.0).unwrap().value;
        assert!(close(v, 12.0 * 4f64.ln() + 72.0 * 3f64.ln(), 1e-9));
        assert!(cp_covering_log_general(&s, 1, ball, 2.5, 3.0).is_err());
    }

    #[test]
    fn lowrank_examples() {
        let s = shape(&[2, 2, 2]);
        let ball = CpSet::Ball { t: 1.0 };
        let v = cp_covering_log_lowrank(&s, 1, ball, 0.5, 3.0, 3.0).unwrap().value;
        assert!(close(v, 14.0464, 1e-4));
        let v = cp_covering_log_lowrank(&s, 1, ball, 0.5, 1.0, 3.0).unwrap().value;
        assert!(close(v, 6.0 * 6f64.ln(), 1e-12));
        let v = cp_covering_log_lowrank(&shape(&[4, 4]), 2, ball, 0.1, 3.0, 3.0).unwrap().value;
        assert!(close(v, 89.9917, 1e-4));
        let err = cp_covering_log_lowrank(&s, 3, ball, 0.5, 3.0, 3.0).unwrap_err();
        assert!(err.to_string().contains("min_i n_i"));
    }

    #[test]
    fn sphere_variant_lowers_only_the_eps_coefficient() {
        let s = shape(&[3, 3, 3]);
        let ball = cp_covering_log_general(&s, 1, CpSet::Ball { t: 1.0 }, 0.1, 3.0).unwrap();
        let sph = cp_covering_log_general(&s, 1, CpSet::Sphere, 0.1, 3.0).unwrap();
        assert!(close(ball.value - sph.value, (1.0f64 / 0.1).ln(), 1e-12));
        assert_eq!(sph.notes.len(), 1);
        assert!(ball.notes.is_empty());
    }

    #[test]
    fn angle_probability_reference_values() {
        let s = shape(&[100, 100, 100]);
        let v6 = cp_angle_probability_log(&s, 30, PI / 6.0, 3.0, 3.0).unwrap().value;
        assert!((-38600.0..=-38550.0).contains(&v6), "{v6}");
        let v7 = cp_angle_probability_log(&s, 30, PI / 7.0, 3.0, 3.0).unwrap().value;
        assert!((v7 + 139455.0).abs() <= 20.0, "{v7}");
        let small = cp_angle_probability_log(&shape(&[2, 2, 2]), 1, PI / 6.0, 1.0, 1.0).unwrap().value;
        assert!(close(small, 7.7802, 1e-3), "{small}");
    }

    #[test]
    fn angle_probability_hypotheses() {
        let s = shape(&[2, 2, 2]);
        assert!(cp_angle_probability_log(&s, 1, PI / 5.0, 3.0, 3.0).is_err());
        assert!(cp_angle_probability_log(&shape(&[2, 2]), 1, PI / 6.0, 3.0, 3.0).is_err());
        assert!(cp_angle_probability_log(&s, 3, PI / 6.0, 3.0, 3.0).is_err());
        assert!(cp_angle_probability_log(&s, 1, PI / 6.0, 0.5, 3.0).is_err());
    }
}
