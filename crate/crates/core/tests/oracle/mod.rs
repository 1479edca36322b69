//! Straight-line reference formulas, written against std only.
//!
//! Nothing here touches the library: every function restates one closed form
//! with plain `f64` arithmetic so the acceptance suite can compare the two
//! implementations.

#![allow(dead_code)]

use std::f64::consts::PI;

fn ln(x: f64) -> f64 {
    x.ln()
}

fn log_plus(x: f64) -> f64 {
    if x > 1.0 {
        x.ln()
    } else {
        0.0
    }
}

// ---- regularity ----------------------------------------------------------

pub fn pomt(d: f64, big_n: f64) -> f64 {
    ln(d) + (big_n - 1.0) * ln(2.0 * d - 1.0)
}

/// `(log K, n)` for the polynomial image of `R^n` under degree `d`.
pub fn poly_image(n: f64, d: f64, variant: &str) -> (f64, f64) {
    match variant {
        "full" => (n * ln(2.0 * d), n),
        "ball" => ((n + 1.0) * ln(4.0 * d), n),
        "sphere" => ((n + 1.0) * ln(4.0 * d + 1.0), n),
        "sphere_cone" => ((n + 1.0) * ln(4.0 * d + 1.0), n - 1.0),
        _ => panic!("variant"),
    }
}

pub fn variety(big_n: f64, n: f64, d: f64, variant: &str) -> (f64, f64) {
    match variant {
        "full" => (big_n * ln(2.0 * d), n),
        "ball" => ((big_n + 1.0) * ln(2.0 * d), n),
        "sphere" => ((big_n + 1.0) * ln(2.0 * d + 1.0), n),
        _ => panic!("variant"),
    }
}

pub fn rational_image(n: f64, big_n: f64, d: f64) -> (f64, f64) {
    ((n + 1.0) * ln(2.0 * big_n * d + 1.0), n)
}

pub fn semialgebraic(big_n: f64, n: f64, d: f64, b: f64) -> (f64, f64) {
    let extra = if b == 0.0 {
        0.0
    } else {
        let a = b * ln(2.0 * d);
        let c = b * ln(7.0) + ln(big_n);
        if a < c {
            a
        } else {
            c
        }
    };
    (big_n * ln(2.0 * d) + extra, n)
}

pub fn union(k1: f64, n1: f64, k2: f64, n2: f64) -> (f64, f64) {
    ((k1.exp() + k2.exp()).ln(), if n1 > n2 { n1 } else { n2 })
}

pub fn cp_profile(shape: &[f64], r: f64, sphere: bool) -> (f64, f64) {
    let total: f64 = shape.iter().sum();
    let n = r * total;
    let d = shape.len() as f64;
    if sphere {
        poly_image(n, d, "sphere_cone")
    } else {
        poly_image(n, d, "ball")
    }
}

// ---- bounds --------------------------------------------------------------

pub fn covering(log_k: f64, n: f64, big_n: f64, t: f64, eps: f64) -> f64 {
    let head = if n >= 1.0 {
        n * ln(2.0 * t * n * big_n.powf(1.5) / eps)
    } else {
        0.0
    };
    head + ln(2.0) + log_k
}

// volume of the unit ball via V_N = 2 pi / N * V_{N-2}
fn unit_ball_volume(big_n: u32) -> f64 {
    let mut v = if big_n.is_multiple_of(2) { 1.0 } else { 2.0 };
    let mut k = if big_n.is_multiple_of(2) { 2 } else { 3 };
    while k <= big_n {
        v *= 2.0 * PI / k as f64;
        k += 2;
    }
    v
}

pub fn tube_volume(log_k: f64, n: f64, big_n: u32, t: f64, eps: f64, c: f64) -> f64 {
    let nn = big_n as f64;
    let mut v = ln(unit_ball_volume(big_n)) + nn * ln(2.0) + (nn - n) * ln(eps) + log_k;
    if n >= 1.0 {
        v += n * ln(c * t * nn.powf(1.5) * n);
    }
    v
}

pub fn hit_probability(big_n: f64, n: f64, d: f64, eps: f64, sigma: f64, c: f64) -> f64 {
    (big_n - n) * ln(eps / sigma) + big_n * ln(2.0) + c * (n * ln(d) + n * ln(big_n))
}

pub fn dudley(a: f64, b: f64, c: f64) -> f64 {
    let term = |e: f64| if e == 0.0 { 0.0 } else { e * ln(c / e).sqrt() };
    b * PI.sqrt() + term(b) - term(a)
}

pub fn width(log_k: f64, n: f64, big_n: f64, t: f64) -> f64 {
    let diam = 2.0 * t * big_n.sqrt();
    let kappa = ln(2.0) + log_k;
    if n == 0.0 {
        return 2.0 * diam * kappa.sqrt();
    }
    let c0 = 2.0 * t * n * big_n.powf(1.5);
    let top = c0 * (kappa / n).exp();
    let upper = if diam < top { diam } else { top };
    2.0 * n.sqrt() * dudley(0.0, upper, top)
}

pub fn subg_norm_dim(big_m: f64, delta: f64, u: f64, c1: f64, c2: f64) -> f64 {
    ((c2 * big_m + ln(1.0 / delta)) / (c1 * u * u - c2)).ceil()
}

// ---- tensors -------------------------------------------------------------

pub fn cp_general(shape: &[f64], r: f64, t: f64, eps: f64, c: f64) -> f64 {
    let d = shape.len() as f64;
    let nbar = shape.iter().sum::<f64>() / d;
    let p = r * d * nbar;
    p * ln(t / eps) + c * p * shape.iter().map(|&x| ln(x)).sum::<f64>()
}

pub fn cp_lowrank(shape: &[f64], r: f64, t: f64, eps: f64, c1: f64, c2: f64) -> f64 {
    let d = shape.len() as f64;
    let nbar = shape.iter().sum::<f64>() / d;
    r * d * nbar * ln(c1 * d * t / eps) + c2 * d * d * r * r * ln(r) - d * r * r * ln(c1)
}

pub fn cp_angle(shape: &[f64], r: f64, eps: f64, c1: f64, c2: f64) -> f64 {
    let d = shape.len() as f64;
    let nbar = shape.iter().sum::<f64>() / d;
    let entries: f64 = shape.iter().product();
    let p = r * d * nbar;
    (entries - 1.0) * ln((2.0 * eps).sin()) - (p - 1.0) * ln(eps) + p * ln(c1 * d) + c2 * d * d * r * r * ln(r)
        - 0.5 * ln(entries)
        - d * r * r * ln(c1)
}

// ---- sketching -----------------------------------------------------------

fn n_prime(n: f64, d: f64, big_n: f64) -> f64 {
    let p = n.powf(d);
    if p < big_n {
        p
    } else {
        big_n
    }
}

pub fn subg_dim_poly(n: f64, d: f64, big_n: f64, eps: f64, delta: f64, alpha: f64, c: f64) -> f64 {
    let np = n_prime(n, d, big_n);
    (c * alpha * alpha / (eps * eps) * (n * ln(n * d * np) + ln(1.0 / delta))).ceil()
}

fn sors_rows(c: f64, cap: f64, tail: f64) -> f64 {
    let sq = if cap > std::f64::consts::E { ln(cap) * ln(cap) } else { 1.0 };
    let m = (c * cap * sq * tail).ceil();
    if m < 1.0 {
        1.0
    } else {
        m
    }
}

pub fn sors_dim_poly(n: f64, d: f64, big_n: f64, eps: f64, delta: f64, beta: f64, c: f64) -> f64 {
    let np = n_prime(n, d, big_n);
    let cap = beta * beta / (eps * eps) * n * ln(n * d * np) * ln(1.0 / delta);
    sors_rows(c, cap, ln(np / delta))
}

#[allow(clippy::too_many_arguments)]
pub fn subg_dim_lip(
    n: f64,
    d: f64,
    big_n: f64,
    big_m: f64,
    t: f64,
    lip: f64,
    tau: f64,
    eps: f64,
    delta: f64,
    alpha: f64,
    c: f64,
    c_lambda: f64,
) -> f64 {
    let raw = d * big_n * t * lip / tau;
    let lam = if raw > c_lambda { raw } else { c_lambda };
    let arg = lam * alpha + lam * eps * ((big_m + ln(1.0 / delta)) / n).sqrt();
    (c * alpha * alpha / (eps * eps) * (n * ln(arg) + ln(1.0 / delta))).ceil()
}

#[allow(clippy::too_many_arguments)]
pub fn sors_dim_lip(
    n: f64,
    d: f64,
    big_n: f64,
    big_m: f64,
    t: f64,
    lip: f64,
    tau: f64,
    eps: f64,
    delta: f64,
    beta: f64,
    c: f64,
    c_lambda: f64,
) -> f64 {
    let raw = d * big_n * t * lip / tau;
    let lam = if raw > c_lambda { raw } else { c_lambda };
    let cap = beta * beta / (eps * eps) * n * ln(lam * big_m.sqrt()) * ln(1.0 / delta);
    sors_rows(c, cap, ln(big_n / delta))
}

/// Dense Walsh-Hadamard matrix product, `H_M x / sqrt(M)`.
pub fn hadamard(x: &[f64]) -> Vec<f64> {
    let m = x.len();
    let scale = 1.0 / (m as f64).sqrt();
    (0..m)
        .map(|i| {
            let s: f64 = (0..m)
                .map(|j| if (i & j).count_ones() % 2 == 0 { x[j] } else { -x[j] })
                .sum();
            s * scale
        })
        .collect()
}

// ---- least squares -------------------------------------------------------

/// Minimum-norm solution of `min ||A x + b||` for a one-column or one-row `A`.
pub fn ls_column(a: &[f64], b: &[f64]) -> f64 {
    let num: f64 = a.iter().zip(b).map(|(x, y)| -x * y).sum();
    let den: f64 = a.iter().map(|x| x * x).sum();
    num / den
}

pub fn ls_row(a: &[f64], b: f64) -> Vec<f64> {
    let den: f64 = a.iter().map(|x| x * x).sum();
    a.iter().map(|x| -b * x / den).collect()
}

// ---- networks ------------------------------------------------------------

pub fn rat_approx_degree(t: f64, eps: f64) -> f64 {
    6.0 / (PI * PI) * log_plus(4.0 * t / eps).powi(2)
}

pub fn ratnn_degree(hidden: &[f64], s: f64, depth: f64, trainable: bool) -> f64 {
    let mut v = ln(2.0) + hidden.iter().map(|&d| ln(d)).sum::<f64>() + depth * ln(s);
    if trainable {
        v += ln(1.0 + 1.0 / s);
    }
    v
}

pub fn ratcnn_degree(channels: &[f64], k: f64, s: f64, depth: f64, trainable: bool) -> f64 {
    let mut v = ln(2.0) + channels.iter().map(|&c| ln(c)).sum::<f64>() + depth * ln(s) + 2.0 * (depth - 1.0) * ln(k);
    if trainable {
        v += ln(1.0 + 1.0 / s);
    }
    v
}

/// Parameter count of a dense network `d_0 -> ... -> d_L`.
pub fn dense_params(dims: &[f64]) -> f64 {
    (1..dims.len()).map(|i| dims[i] * (dims[i - 1] + 1.0)).sum()
}

/// `W` for a dense rational network without trainable activations.
pub fn ratnn_w(dims: &[f64], s: f64, n_samples: f64, c: f64) -> f64 {
    let l = dims.len() - 1;
    let dl = dims[l];
    let hidden: f64 = dims[1..l].iter().product();
    c * dense_params(dims) * (n_samples * dl).powf(2.5) * s.powi(l as i32) * hidden
}

/// `W` for a convolutional rational network with kernel `k`.
pub fn ratcnn_w(dims: &[f64], channels: &[f64], k: f64, s: f64, n_samples: f64, c: f64) -> f64 {
    let l = dims.len() - 1;
    let params: f64 = (1..=l).map(|i| channels[i] * channels[i - 1] * k * k + dims[i]).sum();
    let hidden: f64 = channels[1..l].iter().product();
    c * params * (n_samples * dims[l]).powf(2.5) * s.powi(l as i32) * k.powi(2 * (l as i32 - 1)) * hidden
}

pub fn ratcnn_params(dims: &[f64], channels: &[f64], k: f64) -> f64 {
    (1..dims.len()).map(|i| channels[i] * channels[i - 1] * k * k + dims[i]).sum()
}

pub fn rat_cover(params: f64, w: f64, t: f64, eps: f64) -> f64 {
    params * ln(t / eps) + (params + 1.0) * ln(w)
}

#[allow(clippy::too_many_arguments)]
pub fn rat_rademacher(params: f64, w: f64, t: f64, d_out: f64, n: f64, lip: f64, h: f64, c: f64) -> f64 {
    let env = t * lip * d_out.sqrt();
    let alpha = if h < env { h } else { env };
    let inner = ln(t * w * lip / (alpha * n.sqrt()));
    let inner = if inner > 0.0 { inner } else { 0.0 };
    c * alpha * (params / n).sqrt() * (PI.sqrt() + inner.sqrt())
}

pub fn relu_rademacher(dims: &[f64], omegas: &[f64], n: f64, lip: f64, h: f64, c: f64) -> f64 {
    let l = dims.len() - 1;
    let dl = dims[l];
    let env = lip * dl.sqrt() * omegas.iter().product::<f64>();
    let alpha = if h < env { h } else { env };
    let beta = env / alpha;
    let inner = ln(beta) + ln(n) + dims[1..].iter().map(|&d| ln(d)).sum::<f64>()
        + l as f64 * log_plus(log_plus(beta * (n / dl).sqrt()));
    c * alpha * (dense_params(dims) / n).sqrt() * inner.sqrt()
}

pub fn generalization(r: f64, delta: f64, n: f64) -> f64 {
    2.0 * r + 3.0 * (ln(2.0 / delta) / (2.0 * n)).sqrt()
}

/// Degree recursion for the rational surrogate of a ReLU network.
pub fn relu_degree(dims: &[f64], omegas: &[f64], eps_final: f64) -> f64 {
    let growth: f64 = omegas[1..].iter().map(|w| 1.0 + w).product();
    let eps = eps_final / growth;
    let mut out = 0.0;
    let mut lam = 1.0;
    let mut delta = eps;
    for (i, &w) in omegas.iter().enumerate() {
        out += ln(1.0 + 6.0 / (PI * PI) * log_plus(4.0 * w * lam / delta).powi(2));
        lam *= w;
        if i >= 1 {
            delta *= 1.0 + w;
        }
    }
    out + dims[1..dims.len() - 1].iter().map(|&d| ln(1.0 + d)).sum::<f64>()
}
