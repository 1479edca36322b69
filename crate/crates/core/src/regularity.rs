//! `(K, n)` regularity profiles of polynomially defined sets.
//!
//! A set is `(K, n)` regular when generic affine sections of codimension
//! at most `n` have at most `K` path components and sections of larger
//! codimension are empty. The profiles below are all derived from the
//! Petrovskii-Oleinik-Milnor-Thom component count. `K` is stored as `ln K`.

use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};
use crate::logreal::LogReal;
use crate::tensor::TensorShape;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegularityProfile {
    pub log_k: LogReal,
    pub n: usize,
}

impl RegularityProfile {
    pub fn new(log_k: f64, n: usize) -> Result<Self> {
        ensure(log_k.is_finite() && log_k >= 0.0, "regular set definition", || {
            format!("log K must be finite and >= 0 (K >= 1), got {log_k}")
        })?;
        Ok(RegularityProfile {
            log_k: LogReal::from_ln(log_k).expect("finite"),
            n,
        })
    }

    /// A single point: `K = 1`, `n = 0`.
    pub fn point() -> Self {
        RegularityProfile {
            log_k: LogReal::ONE,
            n: 0,
        }
    }

    pub fn log_k(&self) -> f64 {
        self.log_k.ln()
    }

    /// Weakens the profile to `(K', n')`. Regularity is upward closed, so
    /// this only ever succeeds for `K' >= K` and `n' >= n`.
    pub fn relax(&self, log_k: f64, n: usize) -> Result<Self> {
        ensure(log_k >= self.log_k() && n >= self.n, "upward closure of regularity", || {
            format!(
                "({log_k}, {n}) does not dominate ({}, {})",
                self.log_k(),
                self.n
            )
        })?;
        RegularityProfile::new(log_k, n)
    }
}

/// Which piece of the set the profile describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SetVariant {
    /// The set itself.
    Full,
    /// Intersection with a centered ball.
    Ball,
    /// Radial projection onto the unit sphere.
    Sphere,
    /// Radial projection of a cone; one dimension lower than `Sphere`.
    SphereCone,
}

impl std::str::FromStr for SetVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(SetVariant::Full),
            "ball" => Ok(SetVariant::Ball),
            "sphere" => Ok(SetVariant::Sphere),
            "sphere_cone" | "sphere-cone" => Ok(SetVariant::SphereCone),
            other => Err(Error::invalid(
                "set variant",
                format!("unknown variant {other:?}; expected full, ball, sphere or sphere_cone"),
            )),
        }
    }
}

/// `ln(d (2d-1)^(N-1))`, the component bound for a degree-`d` system in `R^N`.
pub fn pomt_components_log(d: u32, big_n: usize) -> Result<LogReal> {
    ensure(d >= 1 && big_n >= 1, "component count bound", || {
        format!("need d >= 1 and N >= 1, got d = {d}, N = {big_n}")
    })?;
    let d = d as f64;
    let v = d.ln() + (big_n as f64 - 1.0) * (2.0 * d - 1.0).ln();
    Ok(LogReal::from_ln(v).expect("finite"))
}

fn lowered(n: usize, variant: SetVariant, reference: &'static str) -> Result<usize> {
    match variant {
        SetVariant::SphereCone => n
            .checked_sub(1)
            .ok_or_else(|| Error::invalid(reference, "sphere_cone needs dimension n >= 1")),
        _ => Ok(n),
    }
}

/// Profile of `im(p)` for `p: R^n -> R^N` with coordinates of degree `<= d`.
pub fn profile_poly_image(n: usize, d: u32, variant: SetVariant) -> Result<RegularityProfile> {
    const REF: &str = "regularity of polynomial images";
    ensure(n >= 1 && d >= 1, REF, || format!("need n >= 1 and d >= 1, got n = {n}, d = {d}"))?;
    let (nf, df) = (n as f64, d as f64);
    let log_k = match variant {
        SetVariant::Full => nf * (2.0 * df).ln(),
        SetVariant::Ball => (nf + 1.0) * (4.0 * df).ln(),
        SetVariant::Sphere | SetVariant::SphereCone => (nf + 1.0) * (4.0 * df + 1.0).ln(),
    };
    RegularityProfile::new(log_k, lowered(n, variant, REF)?)
}

/// Profile of a variety in `R^N` of dimension `<= n` cut out by degree-`d`
/// equations. The underlying component count needs `d >= 2`.
pub fn profile_variety(big_n: usize, n: usize, d: u32, variant: SetVariant) -> Result<RegularityProfile> {
    const REF: &str = "regularity of varieties (requires d >= 2)";
    ensure(d >= 2, REF, || format!("varieties need defining degree d >= 2, got {d}"))?;
    ensure(n <= big_n, REF, || format!("dimension n = {n} exceeds ambient N = {big_n}"))?;
    let (bn, df) = (big_n as f64, d as f64);
    let log_k = match variant {
        SetVariant::Full => bn * (2.0 * df).ln(),
        SetVariant::Ball => (bn + 1.0) * (2.0 * df).ln(),
        SetVariant::Sphere | SetVariant::SphereCone => (bn + 1.0) * (2.0 * df + 1.0).ln(),
    };
    RegularityProfile::new(log_k, lowered(n, variant, REF)?)
}

/// Profile of the image of a rational map `R^n -> R^N` whose coordinates
/// are ratios of degree-`d` polynomials.
pub fn profile_rational_image(n: usize, big_n: usize, d: u32) -> Result<RegularityProfile> {
    const REF: &str = "regularity of rational images";
    ensure(n >= 1 && big_n >= 1 && d >= 1, REF, || {
        format!("need n, N, d >= 1, got n = {n}, N = {big_n}, d = {d}")
    })?;
    let log_k = (n as f64 + 1.0) * (2.0 * big_n as f64 * d as f64 + 1.0).ln();
    RegularityProfile::new(log_k, n)
}

/// Profile of a basic semialgebraic set in `R^N` of dimension `<= n` given
/// by degree-`d` polynomials with `b` inequality constraints.
///
/// The `(c b^2)^N` branch has no published constant and only takes part
/// when `third_term_constant` is supplied.
pub fn profile_semialgebraic(
    big_n: usize,
    n: usize,
    d: u32,
    b: u32,
    third_term_constant: Option<f64>,
) -> Result<RegularityProfile> {
    const REF: &str = "regularity of semialgebraic sets";
    ensure(d >= 1, REF, || format!("need d >= 1, got {d}"))?;
    ensure(big_n >= 1, REF, || "need N >= 1".into())?;
    ensure(n <= big_n, REF, || format!("dimension n = {n} exceeds ambient N = {big_n}"))?;
    if let Some(c) = third_term_constant {
        ensure(c.is_finite() && c > 0.0, REF, || format!("third-branch constant must be positive, got {c}"))?;
    }
    let (bn, df, bf) = (big_n as f64, d as f64, b as f64);
    let base = bn * (2.0 * df).ln();
    let extra = if b == 0 {
        0.0
    } else {
        let mut m = (bf * (2.0 * df).ln()).min(bf * 7f64.ln() + bn.ln());
        if let Some(c) = third_term_constant {
            m = m.min(bn * (c * bf * bf).ln());
        }
        m.max(0.0)
    };
    RegularityProfile::new(base + extra, n)
}

/// Union of a `(K1, n1)` and a `(K2, n2)` regular set is `(K1 + K2, max n)` regular.
pub fn profile_union(a: RegularityProfile, b: RegularityProfile) -> RegularityProfile {
    RegularityProfile {
        log_k: a.log_k + b.log_k,
        n: a.n.max(b.n),
    }
}

/// Ball or sphere shape for sets of tensors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BallOrSphere {
    Ball,
    Sphere,
}

/// Tensors of CP rank `<= r` are the image of a degree-`order` polynomial in
/// `r * sum(n_i)` variables. They form a cone, so the sphere variant drops a
/// dimension.
pub fn profile_cp_tensor(shape: &TensorShape, r: usize, variant: BallOrSphere) -> Result<RegularityProfile> {
    ensure(r >= 1, "CP tensors as polynomial images", || "rank r must be >= 1".into())?;
    let n = r * shape.dims().iter().sum::<usize>();
    let d = shape.order() as u32;
    match variant {
        BallOrSphere::Ball => profile_poly_image(n, d, SetVariant::Ball),
        BallOrSphere::Sphere => profile_poly_image(n, d, SetVariant::SphereCone),
    }
}
