//! Rademacher and generalization bounds for rational and ReLU networks.
//!
//! Rational networks (dense or convolutional, fixed or trainable
//! activations of numerator/denominator degree `s`) have images that are
//! rational maps of the parameters, so their covering numbers follow from
//! the regular-set bound. ReLU networks with `||(A_i | b_i)||_inf <= w_i`
//! are handled by approximating every ReLU with a rational function.
//!
//! Covering numbers are in nats; Rademacher and generalization bounds are
//! linear-domain reports.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::bounds::BoundReport;
use crate::error::{ensure, Error, Result};
use crate::logreal::LogReal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NetKind {
    Ratnn,
    Ratcnn,
    Relu,
}

/// A network hypothesis class.
///
/// `dims` lists `d_0..d_L`. `channels` (`c_0..c_L`) and `kernel` are only
/// used by convolutional classes, `s` and `trainable` only by rational
/// ones, `omegas` (`w_1..w_L`) only by ReLU ones.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawArchitecture")]
pub struct NetArchitecture {
    pub kind: NetKind,
    pub dims: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub channels: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<u32>,
    #[serde(default)]
    pub trainable: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub omegas: Vec<f64>,
    /// Bound on the final activation range `[-t, t]`.
    pub t: f64,
}

#[derive(Deserialize)]
struct RawArchitecture {
    kind: NetKind,
    dims: Vec<usize>,
    #[serde(default)]
    channels: Vec<usize>,
    #[serde(default)]
    kernel: Option<usize>,
    #[serde(default)]
    s: Option<u32>,
    #[serde(default)]
    trainable: bool,
    #[serde(default)]
    omegas: Vec<f64>,
    #[serde(default = "default_t")]
    t: f64,
}

fn default_t() -> f64 {
    1.0
}

impl TryFrom<RawArchitecture> for NetArchitecture {
    type Error = Error;
    fn try_from(r: RawArchitecture) -> Result<Self> {
        let arch = NetArchitecture {
            kind: r.kind,
            dims: r.dims,
            channels: r.channels,
            kernel: r.kernel,
            s: r.s,
            trainable: r.trainable,
            omegas: r.omegas,
            t: r.t,
        };
        arch.validate()?;
        Ok(arch)
    }
}

const ARCH_REF: &str = "network architecture";

impl NetArchitecture {
    pub fn ratnn(dims: Vec<usize>, s: u32, trainable: bool, t: f64) -> Result<Self> {
        let arch = NetArchitecture {
            kind: NetKind::Ratnn,
            dims,
            channels: Vec::new(),
            kernel: None,
            s: Some(s),
            trainable,
            omegas: Vec::new(),
            t,
        };
        arch.validate()?;
        Ok(arch)
    }

    pub fn ratcnn(dims: Vec<usize>, channels: Vec<usize>, kernel: usize, s: u32, trainable: bool, t: f64) -> Result<Self> {
        let arch = NetArchitecture {
            kind: NetKind::Ratcnn,
            dims,
            channels,
            kernel: Some(kernel),
            s: Some(s),
            trainable,
            omegas: Vec::new(),
            t,
        };
        arch.validate()?;
        Ok(arch)
    }

    /// ReLU class; `t` is set to the output envelope `prod w_i`.
    pub fn relu(dims: Vec<usize>, omegas: Vec<f64>) -> Result<Self> {
        let t = omegas.iter().product();
        let arch = NetArchitecture {
            kind: NetKind::Relu,
            dims,
            channels: Vec::new(),
            kernel: None,
            s: None,
            trainable: false,
            omegas,
            t,
        };
        arch.validate()?;
        Ok(arch)
    }

    pub fn validate(&self) -> Result<()> {
        ensure(self.dims.len() >= 2, ARCH_REF, || "need d_0..d_L with L >= 1".into())?;
        ensure(self.dims.iter().all(|&d| d >= 1), ARCH_REF, || "all widths must be >= 1".into())?;
        ensure(self.t.is_finite() && self.t > 0.0, ARCH_REF, || format!("t must be positive, got {}", self.t))?;
        let l = self.depth();
        match self.kind {
            NetKind::Ratnn | NetKind::Ratcnn => {
                ensure(self.s.is_some_and(|s| s >= 1), ARCH_REF, || "rational classes need s >= 1".into())?;
            }
            NetKind::Relu => {
                ensure(self.dims.iter().all(|&d| d >= 2), ARCH_REF, || "ReLU classes need every d_i >= 2".into())?;
                ensure(self.omegas.len() == l, ARCH_REF, || {
                    format!("need {l} weight caps, got {}", self.omegas.len())
                })?;
                ensure(self.omegas.iter().all(|&w| w >= 2.0 && w.is_finite()), ARCH_REF, || {
                    "ReLU classes need every omega_i >= 2".into()
                })?;
            }
        }
        if self.kind == NetKind::Ratcnn {
            ensure(self.channels.len() == l + 1, ARCH_REF, || {
                format!("need channels c_0..c_{l}, got {} entries", self.channels.len())
            })?;
            ensure(self.channels.iter().all(|&c| c >= 1), ARCH_REF, || "channels must be >= 1".into())?;
            ensure(self.kernel.is_some_and(|k| k >= 2), ARCH_REF, || "convolution kernel size must be >= 2".into())?;
        }
        Ok(())
    }

    /// Depth `L`.
    pub fn depth(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn output_dim(&self) -> usize {
        self.dims[self.dims.len() - 1]
    }

    /// `d_1..d_{L-1}`.
    pub fn hidden_dims(&self) -> &[usize] {
        &self.dims[1..self.dims.len() - 1]
    }

    /// Number of trainable parameters `N`.
    pub fn num_params(&self) -> usize {
        let l = self.depth();
        let mut n: usize = match self.kind {
            NetKind::Ratnn | NetKind::Relu => (1..=l).map(|i| self.dims[i] * (self.dims[i - 1] + 1)).sum(),
            NetKind::Ratcnn => {
                let k = self.kernel.unwrap_or(1);
                (1..=l)
                    .map(|i| self.channels[i] * self.channels[i - 1] * k * k + self.dims[i])
                    .sum()
            }
        };
        if self.trainable && self.kind != NetKind::Relu {
            n += 2 * (self.s.unwrap_or(0) as usize + 1) * l;
        }
        n
    }
}

/// Loss with Lipschitz constant `lip` and range `[0, h]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LossSpec {
    pub lip: f64,
    #[serde(rename = "H")]
    pub h: f64,
}

impl LossSpec {
    pub fn new(lip: f64, h: f64) -> Result<Self> {
        let loss = LossSpec { lip, h };
        loss.validate()?;
        Ok(loss)
    }

    /// Softmax cross-entropy on outputs in `[-t, t]^{d_L}`:
    /// `lip = sqrt(d_L)` and `H = 2t + ln d_L`.
    pub fn cross_entropy(arch: &NetArchitecture) -> Self {
        let dl = arch.output_dim() as f64;
        LossSpec {
            lip: dl.sqrt(),
            h: 2.0 * arch.t + dl.ln(),
        }
    }

    fn validate(&self) -> Result<()> {
        ensure(self.lip > 0.0 && self.lip.is_finite(), "loss specification", || {
            format!("lip must be positive, got {}", self.lip)
        })?;
        ensure(self.h > 0.0 && self.h.is_finite(), "loss specification", || {
            format!("H must be positive, got {}", self.h)
        })
    }
}

/// `max(0, ln x)`, with `log_plus(x) = 0` for `x <= 0`.
pub fn log_plus(x: f64) -> f64 {
    if x > 1.0 {
        x.ln()
    } else {
        0.0
    }
}

fn six_over_pi_sq() -> f64 {
    6.0 / (PI * PI)
}

/// Degree sufficient for a rational `eps`-approximation of ReLU on
/// `[-t, t]`: `(6/pi^2) log_+^2(4t/eps)`.
pub fn rat_approx_degree(t: f64, eps: f64) -> Result<f64> {
    ensure(t > 0.0 && eps > 0.0 && t.is_finite() && eps.is_finite(), "rational ReLU approximation", || {
        format!("t and eps must be positive, got t = {t}, eps = {eps}")
    })?;
    Ok(six_over_pi_sq() * log_plus(4.0 * t / eps).powi(2))
}

fn trainable_factor(s: u32, trainable: bool) -> f64 {
    if trainable {
        (1.0 + 1.0 / s as f64).ln()
    } else {
        0.0
    }
}

/// Log of the coordinate degree `2 d_1...d_{L-1} s^L` of a dense rational
/// network as a function of its parameters (times `1 + 1/s` if the
/// activations are trainable).
pub fn ratnn_degree(hidden: &[usize], s: u32, depth: usize, trainable: bool) -> Result<LogReal> {
    const REF: &str = "degree of dense rational networks";
    ensure(depth >= 1 && hidden.len() == depth - 1, REF, || {
        format!("depth {depth} needs {} hidden widths, got {}", depth.saturating_sub(1), hidden.len())
    })?;
    ensure(s >= 1, REF, || "s must be >= 1".into())?;
    ensure(hidden.iter().all(|&d| d >= 2), REF, || "hidden widths must be >= 2".into())?;
    let v = 2f64.ln()
        + hidden.iter().map(|&d| (d as f64).ln()).sum::<f64>()
        + depth as f64 * (s as f64).ln()
        + trainable_factor(s, trainable);
    Ok(LogReal::from_ln(v).expect("finite"))
}

/// Convolutional analogue: `2 c_1...c_{L-1} s^L k^{2(L-1)}`.
pub fn ratcnn_degree(hidden_channels: &[usize], k: usize, s: u32, depth: usize, trainable: bool) -> Result<LogReal> {
    const REF: &str = "degree of convolutional rational networks";
    ensure(depth >= 1 && hidden_channels.len() == depth - 1, REF, || {
        format!(
            "depth {depth} needs {} hidden channel counts, got {}",
            depth.saturating_sub(1),
            hidden_channels.len()
        )
    })?;
    ensure(k >= 2, REF, || format!("kernel size must be >= 2, got {k}"))?;
    ensure(s >= 1, REF, || "s must be >= 1".into())?;
    ensure(hidden_channels.iter().all(|&c| c >= 1), REF, || "channels must be >= 1".into())?;
    let v = 2f64.ln()
        + hidden_channels.iter().map(|&c| (c as f64).ln()).sum::<f64>()
        + depth as f64 * (s as f64).ln()
        + 2.0 * (depth as f64 - 1.0) * (k as f64).ln()
        + trainable_factor(s, trainable);
    Ok(LogReal::from_ln(v).expect("finite"))
}

/// `ln W` for the rational classes, where
/// `W = c N (n d_L)^{5/2} s^L prod_{j<L} d_j` (dense) or
/// `W = c N (n d_L)^{5/2} s^L k^{2(L-1)} prod_{j<L} c_j` (convolutional).
fn rational_log_w(arch: &NetArchitecture, n_samples: usize, c: f64) -> Result<f64> {
    ensure(arch.kind != NetKind::Relu, "rational network covering", || {
        "expected a rational network class (ratnn or ratcnn)".into()
    })?;
    ensure(n_samples >= 1, "rational network covering", || "need n_samples >= 1".into())?;
    ensure(c > 0.0 && c.is_finite(), "rational network covering", || format!("c must be positive, got {c}"))?;
    let l = arch.depth();
    let s = arch.s.expect("validated") as f64;
    let mut v = c.ln()
        + (arch.num_params() as f64).ln()
        + 2.5 * ((n_samples * arch.output_dim()) as f64).ln()
        + l as f64 * s.ln();
    match arch.kind {
        NetKind::Ratnn => v += arch.hidden_dims().iter().map(|&d| (d as f64).ln()).sum::<f64>(),
        NetKind::Ratcnn => {
            let k = arch.kernel.expect("validated") as f64;
            v += 2.0 * (l as f64 - 1.0) * k.ln();
            v += arch.channels[1..l].iter().map(|&c| (c as f64).ln()).sum::<f64>();
        }
        NetKind::Relu => unreachable!(),
    }
    Ok(v)
}

/// Bound on `ln N(F(X), eps)` for a rational network class evaluated on
/// `n_samples` inputs: `N ln(t/eps) + (N + 1) ln W`.
pub fn ratnn_covering_log(arch: &NetArchitecture, n_samples: usize, eps: f64, c: f64) -> Result<BoundReport> {
    const REF: &str = "rational network covering bound";
    let log_w = rational_log_w(arch, n_samples, c)?;
    let diam = 2.0 * arch.t * ((n_samples * arch.output_dim()) as f64).sqrt();
    ensure(eps > 0.0 && eps <= diam * (1.0 + 1e-12), REF, || {
        format!("eps must lie in (0, {diam}], got {eps}")
    })?;
    let n = arch.num_params() as f64;
    let v = n * (arch.t / eps).ln() + (n + 1.0) * log_w;
    Ok(BoundReport::log(v, REF)
        .with_constant("c", c)
        .with_note("the bound is on log N(F(X), eps), in nats"))
}

/// `c alpha sqrt(N/n) (sqrt(pi) + sqrt(log_+(t W lip / (alpha sqrt(n)))))`
/// with `alpha = min(H, t lip sqrt(d_L))`.
pub fn ratnn_rademacher_bound(arch: &NetArchitecture, n_samples: usize, loss: LossSpec, c: f64) -> Result<BoundReport> {
    const REF: &str = "rational network Rademacher bound";
    loss.validate()?;
    // the covering constant and the outer constant share one slot
    let log_w = rational_log_w(arch, n_samples, c)?;
    let n = n_samples as f64;
    let alpha = loss.h.min(arch.t * loss.lip * (arch.output_dim() as f64).sqrt());
    let inner = arch.t.ln() + log_w + loss.lip.ln() - alpha.ln() - 0.5 * n.ln();
    let v = c * alpha * (arch.num_params() as f64 / n).sqrt() * (PI.sqrt() + inner.max(0.0).sqrt());
    Ok(BoundReport::linear(v, REF).with_constant("c", c).with_constant("alpha", alpha))
}

/// ReLU class bound:
/// `c alpha sqrt(N/n) (ln beta + ln n + sum ln d_i + L log_+log_+(beta sqrt(n/d_L)))^{1/2}`.
pub fn relu_rademacher_bound(arch: &NetArchitecture, n_samples: usize, loss: LossSpec, c: f64) -> Result<BoundReport> {
    const REF: &str = "ReLU network Rademacher bound";
    ensure(arch.kind == NetKind::Relu, REF, || "expected a ReLU network class".into())?;
    loss.validate()?;
    ensure(n_samples >= 1, REF, || "need n_samples >= 1".into())?;
    ensure(c > 0.0 && c.is_finite(), REF, || format!("c must be positive, got {c}"))?;
    let n = n_samples as f64;
    let dl = arch.output_dim() as f64;
    let envelope = loss.lip * dl.sqrt() * arch.omegas.iter().product::<f64>();
    let alpha = loss.h.min(envelope);
    let beta = envelope / alpha;
    let l = arch.depth() as f64;
    let inner = beta.ln()
        + n.ln()
        + arch.dims[1..].iter().map(|&d| (d as f64).ln()).sum::<f64>()
        + l * log_plus(log_plus(beta * (n / dl).sqrt()));
    let v = c * alpha * (arch.num_params() as f64 / n).sqrt() * inner.sqrt();
    Ok(BoundReport::linear(v, REF)
        .with_constant("c", c)
        .with_constant("alpha", alpha)
        .with_constant("beta", beta))
}

/// `2 R + 3 sqrt(ln(2/delta) / (2n))`.
pub fn generalization_bound(rademacher: f64, delta: f64, n_samples: usize) -> Result<f64> {
    const REF: &str = "generalization bound";
    ensure(delta > 0.0 && delta < 1.0, REF, || format!("delta must lie in (0, 1), got {delta}"))?;
    ensure(n_samples >= 1, REF, || "need n_samples >= 1".into())?;
    ensure(rademacher.is_finite() && rademacher >= 0.0, REF, || {
        format!("Rademacher complexity must be finite and >= 0, got {rademacher}")
    })?;
    Ok(2.0 * rademacher + 3.0 * ((2.0 / delta).ln() / (2.0 * n_samples as f64)).sqrt())
}

/// Target accuracy of the rational surrogate on the network output,
/// `alpha / (lip sqrt(n))`.
pub fn relu_target_accuracy(alpha: f64, lip: f64, n_samples: usize) -> Result<f64> {
    ensure(alpha > 0.0 && lip > 0.0 && n_samples >= 1, "ReLU surrogate accuracy", || {
        "alpha, lip and n_samples must be positive".into()
    })?;
    Ok(alpha / (lip * (n_samples as f64).sqrt()))
}

/// Log of the degree `theta_L` of the rational surrogate of a ReLU network
/// whose output must be accurate to `eps_final`.
///
/// The first-layer tolerance is `eps = eps_final / prod_{i>=2}(1 + w_i)`;
/// errors then grow as `delta_i = (1 + w_i) delta_{i-1}` with `delta_1 = eps`.
/// Layer `i` sees inputs bounded by `lambda_{i-1} = prod_{j<i} w_j` and is
/// approximated to degree `Delta_i = (6/pi^2) log_+^2(4 w_i lambda_{i-1} / delta_{i-1})`,
/// where `delta_0 = eps`. The result is
/// `sum ln(1 + Delta_i) + sum_{j<L} ln(1 + d_j)`.
pub fn relu_approx_degree(arch: &NetArchitecture, eps_final: f64) -> Result<LogReal> {
    const REF: &str = "ReLU rational surrogate degree";
    ensure(arch.kind == NetKind::Relu, REF, || "expected a ReLU network class".into())?;
    ensure(eps_final > 0.0 && eps_final.is_finite(), REF, || {
        format!("eps_final must be positive, got {eps_final}")
    })?;
    let w = &arch.omegas;
    let growth: f64 = w[1..].iter().map(|wi| 1.0 + wi).product();
    let eps = eps_final / growth;
    let mut lambda_prev = 1.0;
    let mut delta_prev = eps;
    let mut log_theta = 0.0;
    for (i, &wi) in w.iter().enumerate() {
        let deg = six_over_pi_sq() * log_plus(4.0 * wi * lambda_prev / delta_prev).powi(2);
        log_theta += deg.ln_1p();
        lambda_prev *= wi;
        if i > 0 {
            delta_prev *= 1.0 + wi;
        }
    }
    log_theta += arch.hidden_dims().iter().map(|&d| (d as f64).ln_1p()).sum::<f64>();
    Ok(LogReal::from_ln(log_theta).expect("finite"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn approx_degree_examples() {
        assert_eq!(rat_approx_degree(1.0, 4.0).unwrap(), 0.0);
        assert!(close(rat_approx_degree(1.0, 0.1).unwrap(), 8.27257, 1e-5));
        assert!(close(rat_approx_degree(1.0, 0.01).unwrap(), 21.82315, 1e-5));
        assert!(rat_approx_degree(0.0, 1.0).is_err());
    }

    #[test]
    fn degree_examples() {
        assert!(close(ratnn_degree(&[4], 3, 2, false).unwrap().ln(), 72f64.ln(), 1e-14));
        assert!(close(ratnn_degree(&[4], 3, 2, true).unwrap().ln(), 96f64.ln(), 1e-14));
        assert!(close(ratnn_degree(&[], 3, 1, false).unwrap().ln(), 6f64.ln(), 1e-14));
        assert!(ratnn_degree(&[1], 3, 2, false).is_err());
        assert!(close(ratcnn_degree(&[2], 3, 2, 2, false).unwrap().ln(), 144f64.ln(), 1e-14));
        assert!(close(ratcnn_degree(&[], 3, 2, 1, false).unwrap().ln(), 4f64.ln(), 1e-14));
        assert!(close(ratcnn_degree(&[2], 3, 2, 2, true).unwrap().ln(), 216f64.ln(), 1e-14));
        assert!(ratcnn_degree(&[2], 1, 2, 2, false).is_err());
    }

    #[test]
    fn param_counts() {
        let a = NetArchitecture::ratnn(vec![1, 2, 1], 2, false, 1.0).unwrap();
        assert_eq!(a.num_params(), 7);
        let a = NetArchitecture::ratnn(vec![1, 2, 1], 2, true, 1.0).unwrap();
        assert_eq!(a.num_params(), 7 + 12);
        let c = NetArchitecture::ratcnn(vec![4, 2, 1], vec![1, 2, 1], 2, 2, false, 1.0).unwrap();
        assert_eq!(c.num_params(), 19);
        let r = NetArchitecture::relu(vec![2, 2, 2], vec![2.0, 2.0]).unwrap();
        assert_eq!(r.num_params(), 12);
        assert!(NetArchitecture::relu(vec![2, 1, 2], vec![2.0, 2.0]).is_err());
        assert!(NetArchitecture::relu(vec![2, 2, 2], vec![1.5, 2.0]).is_err());
    }

    #[test]
    fn covering_examples() {
        let a = NetArchitecture::ratnn(vec![1, 2, 1], 2, false, 1.0).unwrap();
        let v = ratnn_covering_log(&a, 1, 0.1, 1.0).unwrap().value;
        assert!(close(v, 7.0 * 10f64.ln() + 8.0 * 56f64.ln(), 1e-12));
        let v = ratnn_covering_log(&a, 1, 1.0, 1.0).unwrap().value;
        assert!(close(v, 8.0 * 56f64.ln(), 1e-12));
        let c = NetArchitecture::ratcnn(vec![4, 2, 1], vec![1, 2, 1], 2, 2, false, 1.0).unwrap();
        let v = ratnn_covering_log(&c, 1, 0.1, 1.0).unwrap().value;
        assert!(close(v, 171.9526, 1e-6));
        let r = NetArchitecture::relu(vec![2, 2, 2], vec![2.0, 2.0]).unwrap();
        assert!(ratnn_covering_log(&r, 1, 0.1, 1.0).is_err());
    }

    #[test]
    fn rademacher_examples() {
        let a = NetArchitecture::ratnn(vec![1, 2, 1], 2, false, 1.0).unwrap();
        let loss = LossSpec::new(1.0, 1.0).unwrap();
        assert!(close(ratnn_rademacher_bound(&a, 100, loss, 1.0).unwrap().value, 1.43150, 1e-5));
        assert!(close(ratnn_rademacher_bound(&a, 10_000, loss, 1.0).unwrap().value, 0.172243, 1e-5));
        let tiny = LossSpec::new(1.0, 1e-300).unwrap();
        assert!(ratnn_rademacher_bound(&a, 100, tiny, 1.0).unwrap().value < 1e-290);

        let r = NetArchitecture::relu(vec![2, 2, 2], vec![2.0, 2.0]).unwrap();
        assert!(close(relu_rademacher_bound(&r, 100, loss, 1.0).unwrap().value, 1.11364, 1e-5));
        assert!(close(relu_rademacher_bound(&r, 10_000, loss, 1.0).unwrap().value, 0.138175, 1e-5));
    }

    #[test]
    fn generalization_examples() {
        assert!(close(generalization_bound(0.1, 0.05, 100).unwrap(), 0.607430, 1e-5));
        assert!(close(generalization_bound(0.0, 0.5, 2).unwrap(), 1.766115, 1e-5));
        assert!(generalization_bound(0.0, 0.99, 100_000_000).unwrap() < 2e-4);
        assert!(generalization_bound(0.0, 1.0, 2).is_err());
    }

    #[test]
    fn surrogate_degree_examples() {
        let one = NetArchitecture::relu(vec![2, 2], vec![2.0]).unwrap();
        assert!(close(relu_approx_degree(&one, 2.0).unwrap().ln(), 0.773953, 1e-5));
        assert_eq!(relu_approx_degree(&one, 8.0).unwrap().ln(), 0.0);

        let two = NetArchitecture::relu(vec![2, 2, 2], vec![2.0, 2.0]).unwrap();
        let eps_final = relu_target_accuracy(1.0, 1.0, 100).unwrap();
        assert!(close(relu_approx_degree(&two, eps_final).unwrap().ln(), 7.241847, 1e-5));
    }

    #[test]
    fn cross_entropy_substitution() {
        let a = NetArchitecture::ratnn(vec![3, 4, 10], 2, false, 1.5).unwrap();
        let loss = LossSpec::cross_entropy(&a);
        assert!(close(loss.lip, 10f64.sqrt(), 1e-15));
        assert!(close(loss.h, 3.0 + 10f64.ln(), 1e-15));
    }

    #[test]
    fn architecture_json() {
        let a: NetArchitecture =
            serde_json::from_str(r#"{"kind": "relu", "dims": [2, 2, 2], "omegas": [2, 2], "t": 4}"#).unwrap();
        assert_eq!(a.num_params(), 12);
        assert!(serde_json::from_str::<NetArchitecture>(r#"{"kind": "ratnn", "dims": [2]}"#).is_err());
    }
}
