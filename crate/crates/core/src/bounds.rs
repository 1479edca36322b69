//! Covering-number, tubular-volume and Gaussian-width bounds for regular sets.
//!
//! Everything that can overflow is returned in nats. The only linear-domain
//! outputs are the width bound and the Dudley closed form, which are
//! moderate in size.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{ensure, Result};
use crate::logreal::LogReal;
use crate::regularity::RegularityProfile;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValueDomain {
    /// `value` is a natural logarithm.
    LogNats,
    /// `value` is the quantity itself.
    Linear,
}

/// A computed bound together with every absolute constant that fed into it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub value: f64,
    pub domain: ValueDomain,
    pub constants_used: BTreeMap<String, f64>,
    pub reference: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl BoundReport {
    pub fn log(value: f64, reference: &str) -> Self {
        BoundReport {
            value,
            domain: ValueDomain::LogNats,
            constants_used: BTreeMap::new(),
            reference: reference.to_owned(),
            notes: Vec::new(),
        }
    }

    pub fn linear(value: f64, reference: &str) -> Self {
        BoundReport {
            domain: ValueDomain::Linear,
            ..BoundReport::log(value, reference)
        }
    }

    pub fn with_constant(mut self, name: &str, value: f64) -> Self {
        self.constants_used.insert(name.to_owned(), value);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// The bound as a [`LogReal`], if it is reported in nats.
    pub fn log_value(&self) -> Option<LogReal> {
        match self.domain {
            ValueDomain::LogNats => LogReal::from_ln(self.value),
            ValueDomain::Linear => None,
        }
    }
}

const COVER_REF: &str = "covering-number bound for (K, n)-regular sets";

fn check_cover_inputs(profile: &RegularityProfile, big_n: usize, t: f64, eps: f64) -> Result<()> {
    ensure(t.is_finite() && t > 0.0, COVER_REF, || format!("t must be positive, got {t}"))?;
    ensure(eps.is_finite() && eps > 0.0, COVER_REF, || format!("eps must be positive, got {eps}"))?;
    ensure(big_n >= 1, COVER_REF, || "ambient dimension N must be >= 1".into())?;
    ensure(profile.n <= big_n, COVER_REF, || {
        format!("regularity dimension n = {} exceeds N = {big_n}", profile.n)
    })?;
    let envelope = 2.0 * t * (big_n as f64).sqrt();
    ensure(eps <= envelope * (1.0 + 1e-12), COVER_REF, || {
        format!("eps = {eps} exceeds the diameter envelope 2 t sqrt(N) = {envelope}")
    })?;
    Ok(())
}

/// `ln N(V, eps) <= n ln(2 t n N^{3/2} / eps) + ln 2K` for a `(K, n)`-regular
/// `V` in `R^N` that fits in a rotated cube of half-side `t`.
pub fn covering_bound_log(profile: &RegularityProfile, big_n: usize, t: f64, eps: f64) -> Result<BoundReport> {
    check_cover_inputs(profile, big_n, t, eps)?;
    let n = profile.n as f64;
    let mut v = 2f64.ln() + profile.log_k();
    if profile.n >= 1 {
        v += n * (2.0 * t * n * (big_n as f64).powf(1.5) / eps).ln();
    }
    Ok(BoundReport::log(v, COVER_REF))
}

/// `ln vol(B^N) = (N/2) ln pi - ln Gamma(N/2 + 1)`.
pub fn log_unit_ball_volume(big_n: usize) -> f64 {
    let h = big_n as f64 / 2.0;
    h * PI.ln() - libm::lgamma(h + 1.0)
}

/// Upper bound on `ln vol T(V, eps)`, the volume of the eps-tube around a
/// `(K, n)`-regular set. `c` is the unspecified absolute constant.
pub fn tube_volume_log(profile: &RegularityProfile, big_n: usize, t: f64, eps: f64, c: f64) -> Result<BoundReport> {
    const REF: &str = "tubular-volume bound for regular sets";
    check_cover_inputs(profile, big_n, t, eps)?;
    ensure(c.is_finite() && c > 0.0, REF, || format!("constant c must be positive, got {c}"))?;
    let (bn, n) = (big_n as f64, profile.n as f64);
    let mut v = log_unit_ball_volume(big_n) + bn * 2f64.ln() + (bn - n) * eps.ln() + profile.log_k();
    if profile.n >= 1 {
        v += n * (c * t * bn.powf(1.5) * n).ln();
    }
    Ok(BoundReport::log(v, REF).with_constant("c", c))
}

/// Bound on `ln P(dist(x, V) <= eps)` for `x` uniform in a ball of radius
/// `sigma` and `V` the image of a degree-`d` map of dimension `<= n`.
pub fn tube_hit_probability_log(
    big_n: usize,
    n: usize,
    d: u32,
    eps: f64,
    sigma: f64,
    c: f64,
) -> Result<BoundReport> {
    const REF: &str = "tube hit-probability bound for polynomial images";
    ensure(sigma.is_finite() && sigma > 0.0, REF, || format!("sigma must be positive, got {sigma}"))?;
    ensure(eps > 0.0 && eps <= sigma, REF, || format!("need 0 < eps <= sigma, got eps = {eps}, sigma = {sigma}"))?;
    ensure(n >= 1 && n <= big_n, REF, || format!("need 1 <= n <= N, got n = {n}, N = {big_n}"))?;
    ensure(d >= 1, REF, || "degree d must be >= 1".into())?;
    ensure(c.is_finite() && c > 0.0, REF, || format!("constant c must be positive, got {c}"))?;
    let (bn, nf) = (big_n as f64, n as f64);
    let v = (bn - nf) * (eps / sigma).ln() + bn * 2f64.ln() + c * (nf * (d as f64).ln() + nf * bn.ln());
    Ok(BoundReport::log(v, REF).with_constant("c", c))
}

// eps * sqrt(ln(c / eps)), with the value 0 at eps = 0
fn boundary(eps: f64, c: f64) -> f64 {
    if eps == 0.0 {
        0.0
    } else {
        eps * (c / eps).ln().max(0.0).sqrt()
    }
}

/// Upper bound `b sqrt(pi) + [eps sqrt(ln(c/eps))]_a^b` on
/// `int_a^b sqrt(ln(c/eps)) d eps`, for `0 <= a <= b <= c`.
pub fn dudley_term(a: f64, b: f64, c: f64) -> Result<f64> {
    ensure(c > 0.0 && 0.0 <= a && a <= b && b <= c, "entropy-integral closed form", || {
        format!("need 0 <= a <= b <= c and c > 0, got a = {a}, b = {b}, c = {c}")
    })?;
    Ok(b * PI.sqrt() + boundary(b, c) - boundary(a, c))
}

/// Bound on the Gaussian width of a `(K, n)`-regular set via the entropy
/// integral `2 int_0^diam sqrt(ln N(V, eps)) d eps` and the covering bound.
///
/// The integration range stops at `min(2 t sqrt(N), c0 e^{kappa/n})`, past
/// which the covering bound's logarithm would turn negative.
pub fn width_bound_regular(profile: &RegularityProfile, big_n: usize, t: f64) -> Result<BoundReport> {
    const REF: &str = "entropy-integral width bound for regular sets";
    ensure(t.is_finite() && t > 0.0, REF, || format!("t must be positive, got {t}"))?;
    ensure(profile.n <= big_n && big_n >= 1, REF, || {
        format!("regularity dimension n = {} exceeds N = {big_n}", profile.n)
    })?;
    let diam = 2.0 * t * (big_n as f64).sqrt();
    let kappa = 2f64.ln() + profile.log_k();
    let value = if profile.n == 0 {
        2.0 * diam * kappa.sqrt()
    } else {
        let n = profile.n as f64;
        let c0 = 2.0 * t * n * (big_n as f64).powf(1.5);
        let cutoff = c0 * (kappa / n).exp();
        let upper = diam.min(cutoff);
        2.0 * n.sqrt() * dudley_term(0.0, upper, cutoff)?
    };
    Ok(BoundReport::linear(value, REF))
}

/// Rows needed so that a sub-Gaussian `m x M` matrix has operator norm
/// below `alpha u` with probability `1 - delta`:
/// `ceil((c1 u^2 - c2)^{-1} (c2 M + ln(1/delta)))`.
pub fn subg_norm_dim(big_m: usize, delta: f64, u: f64, c1: f64, c2: f64) -> Result<u64> {
    const REF: &str = "operator norm of sub-Gaussian matrices";
    ensure(delta > 0.0 && delta < 1.0, REF, || format!("delta must lie in (0, 1), got {delta}"))?;
    ensure(c1 > 0.0 && c2 > 0.0, REF, || "c1 and c2 must be positive".into())?;
    let denom = c1 * u * u - c2;
    ensure(denom > 0.0, REF, || format!("need c1 u^2 > c2, got c1 u^2 - c2 = {denom}"))?;
    Ok(((c2 * big_m as f64 + (1.0 / delta).ln()) / denom).ceil() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    fn prof(log_k: f64, n: usize) -> RegularityProfile {
        RegularityProfile::new(log_k, n).unwrap()
    }

    #[test]
    fn covering_examples() {
        let r = covering_bound_log(&prof(6f64.ln(), 1), 3, 1.0, 0.1).unwrap();
        assert!(close(r.value, 7.1286, 1e-4), "{}", r.value);
        let r = covering_bound_log(&prof(0.0, 1), 1, 1.0, 2.0).unwrap();
        assert!(close(r.value, 2f64.ln(), 1e-12));
        let r = covering_bound_log(&prof(4f64.ln(), 1), 2, 1.0, 0.1).unwrap();
        assert!(close(r.value, 6.1151, 1e-4), "{}", r.value);
    }

    #[test]
    fn covering_preconditions() {
        let p = prof(1.0, 1);
        assert!(covering_bound_log(&p, 3, 1.0, 0.0).is_err());
        assert!(covering_bound_log(&p, 3, 0.0, 0.1).is_err());
        assert!(covering_bound_log(&p, 3, 1.0, 3.5).is_err());
        assert!(covering_bound_log(&prof(1.0, 4), 3, 1.0, 0.1).is_err());
    }

    #[test]
    fn finite_sets_do_not_depend_on_eps() {
        let p = prof(3.0, 0);
        let a = covering_bound_log(&p, 4, 1.0, 0.01).unwrap().value;
        let b = covering_bound_log(&p, 4, 1.0, 3.0).unwrap().value;
        assert_eq!(a, b);
    }

    #[test]
    fn tube_volume_examples() {
        let r = tube_volume_log(&prof(4f64.ln(), 1), 2, 1.0, 0.1, 3.0).unwrap();
        assert!(close(r.value, 3.7531, 1e-4), "{}", r.value);
        assert_eq!(r.constants_used["c"], 3.0);
        let r = tube_volume_log(&prof(0.0, 0), 2, 1.0, 0.1, 3.0).unwrap();
        assert!(close(r.value, -2.0742, 1e-4), "{}", r.value);
    }

    #[test]
    fn unit_ball_volumes() {
        assert!(close(log_unit_ball_volume(1), 2f64.ln(), 1e-14));
        assert!(close(log_unit_ball_volume(2), PI.ln(), 1e-14));
        assert!(close(log_unit_ball_volume(3), (4.0 * PI / 3.0).ln(), 1e-14));
        // stays finite far past where vol(B^N) underflows
        assert!(log_unit_ball_volume(100_000).is_finite());
    }

    #[test]
    fn hit_probability_examples() {
        let r = tube_hit_probability_log(3, 1, 3, 0.01, 1.0, 3.0).unwrap();
        assert!(close(r.value, -0.5392, 1e-3), "{}", r.value);
        let r = tube_hit_probability_log(3, 1, 3, 0.001, 1.0, 3.0).unwrap();
        assert!(close(r.value, -5.1440, 1e-4), "{}", r.value);
        let r = tube_hit_probability_log(2, 2, 1, 0.5, 1.0, 3.0).unwrap();
        assert!(close(r.value, 5.5452, 1e-4));
        assert!(tube_hit_probability_log(3, 1, 3, 2.0, 1.0, 3.0).is_err());
        assert!(tube_hit_probability_log(3, 0, 3, 0.1, 1.0, 3.0).is_err());
    }

    #[test]
    fn dudley_examples() {
        assert!(close(dudley_term(0.0, 1.0, 1.0).unwrap(), PI.sqrt(), 1e-14));
        assert!(close(dudley_term(0.0, 1.0, std::f64::consts::E).unwrap(), PI.sqrt() + 1.0, 1e-14));
        assert!(close(dudley_term(0.5, 0.5, 1.0).unwrap(), 0.5 * PI.sqrt(), 1e-14));
        assert!(dudley_term(0.6, 0.5, 1.0).is_err());
        assert!(dudley_term(0.0, 2.0, 1.0).is_err());
    }

    #[test]
    fn width_examples() {
        let w = width_bound_regular(&RegularityProfile::point(), 1, 1.0).unwrap();
        assert!(close(w.value, 4.0 * 2f64.ln().sqrt(), 1e-12));
        assert_eq!(w.domain, ValueDomain::Linear);
        let w = width_bound_regular(&prof(6f64.ln(), 1), 3, 1.0).unwrap();
        assert!(close(w.value, 25.34, 5e-3), "{}", w.value);
        let w2 = width_bound_regular(&prof(6f64.ln(), 1), 3, 2.0).unwrap();
        assert!(w2.value > w.value);
    }

    #[test]
    fn subg_norm_examples() {
        assert_eq!(subg_norm_dim(10, 0.01, 2f64.sqrt(), 1.0, 1.0).unwrap(), 15);
        assert_eq!(subg_norm_dim(1, 0.5, 2.0, 1.0, 1.0).unwrap(), 1);
        assert!(subg_norm_dim(10, 0.01, 1.0, 1.0, 1.0).is_err());
    }
}
