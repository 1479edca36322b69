//! Command-line front end: every operation as a subcommand with JSON output.
//!
//! [`dispatch`] parses an argument vector, runs the command and returns the
//! exit code together with the JSON document to print. Exit codes are `0`
//! on success, `1` for input errors and `2` when a `verify` check fails.
//!
//! Any subcommand accepts `--config PATH` naming a JSON object whose keys
//! are flag names (`box_radius` and `box-radius` both work); flags given on
//! the command line win over the file.

use std::f64::consts::PI;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::bounds::{self, BoundReport};
use crate::error::{Error, Result};
use crate::nnbound::{self, LossSpec, NetArchitecture, NetKind};
use crate::poly::PolynomialMap;
use crate::polyopt::{self, GNOptions, LineSearch};
use crate::regularity::{self, RegularityProfile, SetVariant};
use crate::seed::RngSeed;
use crate::sketch::{self, Distribution, SketchOperator, SketchSpec};
use crate::tensor::{self, CpSet, TensorShape};
use crate::verify::{self, Ensemble, RowCount, SuccessRateConfig, TubeProbeConfig};

#[derive(Clone, Debug, PartialEq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub payload: Value,
}

#[derive(Parser, Debug)]
#[command(name = "regcover", version, about = "Covering, sketching and generalization bounds for polynomial sets")]
struct Cli {
    #[command(subcommand)]
    group: Group,
}

#[derive(Subcommand, Debug)]
enum Group {
    /// Covering, tube and width bounds for regular sets.
    #[command(subcommand)]
    Bound(BoundCmd),
    /// CP-rank tensor bounds.
    #[command(subcommand)]
    Tensor(TensorCmd),
    /// Sketching dimensions and operators.
    #[command(subcommand)]
    Sketch(SketchCmd),
    /// Gauss-Newton on polynomial maps.
    #[command(subcommand)]
    Opt(OptCmd),
    /// Network Rademacher and generalization bounds.
    #[command(subcommand)]
    Nn(NnCmd),
    /// Monte-Carlo checks of the bounds.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

fn parse_angle(s: &str) -> std::result::Result<f64, String> {
    if let Some(k) = s.trim().strip_prefix("pi/") {
        let k: f64 = k.parse().map_err(|_| format!("bad angle {s:?}"))?;
        return Ok(PI / k);
    }
    s.parse().map_err(|_| format!("bad number {s:?}"))
}

fn parse_vec(s: &str) -> std::result::Result<Vec<f64>, String> {
    let t = s.trim();
    if t.starts_with('[') {
        serde_json::from_str(t).map_err(|e| e.to_string())
    } else {
        t.split(',')
            .filter(|p| !p.trim().is_empty())
            .map(|p| p.trim().parse::<f64>().map_err(|e| e.to_string()))
            .collect()
    }
}

fn parse_dims(s: &str) -> std::result::Result<Vec<usize>, String> {
    s.trim()
        .trim_start_matches('[')
        .trim_end_matches(']')
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|e| e.to_string()))
        .collect()
}

/// Inline JSON or a path to a JSON file.
fn load_json<T: serde::de::DeserializeOwned>(arg: &str) -> Result<T> {
    let t = arg.trim();
    if t.starts_with('{') || t.starts_with('[') {
        Ok(serde_json::from_str(t)?)
    } else {
        Ok(serde_json::from_str(&std::fs::read_to_string(t)?)?)
    }
}

#[derive(Args, Debug)]
struct CoverTail {
    #[arg(long = "N", value_name = "N")]
    big_n: usize,
    #[arg(long)]
    t: f64,
    #[arg(long)]
    eps: f64,
}

#[derive(Subcommand, Debug)]
enum BoundCmd {
    /// Covering bound for a (K, n)-regular set given ln K.
    Regular {
        #[arg(long)]
        log_k: f64,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        tail: CoverTail,
    },
    /// Covering bound for the image of a polynomial map.
    PolyImage {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        #[arg(long, default_value = "full")]
        variant: SetVariant,
        #[command(flatten)]
        tail: CoverTail,
    },
    /// Covering bound for a variety.
    Variety {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        #[arg(long, default_value = "full")]
        variant: SetVariant,
        #[command(flatten)]
        tail: CoverTail,
    },
    /// Covering bound for a semialgebraic set.
    Semialgebraic {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        third_const: Option<f64>,
        #[command(flatten)]
        tail: CoverTail,
    },
    /// Covering bound for the image of a rational map.
    Rational {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        #[command(flatten)]
        tail: CoverTail,
    },
    /// Tubular-volume bound for a (K, n)-regular set.
    Tube {
        #[arg(long)]
        log_k: f64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = crate::DEFAULT_CONSTANT)]
        c: f64,
        #[command(flatten)]
        tail: CoverTail,
    },
    /// Probability bound for hitting the eps-tube of a polynomial image.
    TubeProb {
        #[arg(long = "N", value_name = "N")]
        big_n: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        sigma: f64,
        #[arg(long, default_value_t = crate::DEFAULT_CONSTANT)]
        c: f64,
    },
    /// Gaussian-width bound for a (K, n)-regular set.
    Width {
        #[arg(long)]
        log_k: f64,
        #[arg(long)]
        n: usize,
        #[arg(long = "N", value_name = "N")]
        big_n: usize,
        #[arg(long)]
        t: f64,
    },
}

#[derive(Subcommand, Debug)]
enum TensorCmd {
    /// Covering bound for CP-rank-r tensors, any rank.
    Cover {
        #[arg(long, value_parser = parse_dims)]
        shape: ::std::vec::Vec<usize>,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value = "ball")]
        set: String,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[arg(long, value_parser = parse_angle)]
        eps: f64,
        #[arg(long, default_value_t = crate::DEFAULT_CONSTANT)]
        c: f64,
    },
    /// Covering bound for CP-rank-r tensors with r <= min_i n_i.
    CoverLowrank {
        #[arg(long, value_parser = parse_dims)]
        shape: ::std::vec::Vec<usize>,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value = "ball")]
        set: String,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[arg(long, value_parser = parse_angle)]
        eps: f64,
        #[arg(long, default_value_t = crate::DEFAULT_CONSTANT)]
        c1: f64,
        #[arg(long, default_value_t = crate::DEFAULT_CONSTANT)]
        c2: f64,
    },
    /// Bound on the probability that a Gaussian tensor is within angle eps
    /// of the CP-rank-r cone.
    AngleProb {
        #[arg(long, value_parser = parse_dims)]
        shape: ::std::vec::Vec<usize>,
        #[arg(long)]
        r: usize,
        #[arg(long, value_parser = parse_angle)]
        eps: f64,
        #[arg(long, default_value_t = crate::DEFAULT_CONSTANT)]
        c1: f64,
        #[arg(long, default_value_t = crate::DEFAULT_CONSTANT)]
        c2: f64,
    },
}

#[derive(Args, Debug)]
struct PolyDimArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: u32,
    #[arg(long = "N", value_name = "N")]
    big_n: usize,
    #[arg(long)]
    eps: f64,
    #[arg(long)]
    delta: f64,
    #[arg(long, default_value_t = 1.0)]
    c: f64,
}

#[derive(Args, Debug)]
struct LipDimArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: u32,
    #[arg(long = "N", value_name = "N")]
    big_n: usize,
    #[arg(long = "M", value_name = "M")]
    big_m: usize,
    #[arg(long)]
    t: f64,
    #[arg(long)]
    lip: f64,
    #[arg(long)]
    tau: f64,
    #[arg(long)]
    eps: f64,
    #[arg(long)]
    delta: f64,
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    #[arg(long, default_value_t = 1.0)]
    c_lambda: f64,
}

impl LipDimArgs {
    fn problem(&self) -> sketch::LipschitzResidual {
        sketch::LipschitzResidual {
            n: self.n,
            d: self.d,
            big_n: self.big_n,
            big_m: self.big_m,
            t: self.t,
            lip: self.lip,
            tau: self.tau,
        }
    }
}

#[derive(Args, Debug)]
struct OperatorArgs {
    /// subgaussian, sors, sors_full or identity.
    #[arg(long, default_value = "subgaussian")]
    kind: String,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    distribution: Option<Distribution>,
    #[arg(long, required = true)]
    seed: u64,
}

impl OperatorArgs {
    fn build(&self, big_m: usize) -> Result<SketchOperator> {
        SketchOperator::try_from(SketchSpec {
            kind: self.kind.clone(),
            m: self.m,
            big_m,
            seed: self.seed,
            distribution: self.distribution,
        })
    }
}

#[derive(Subcommand, Debug)]
enum SketchCmd {
    /// Sub-Gaussian rows for a polynomial image.
    DimSubg {
        #[command(flatten)]
        args: PolyDimArgs,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
    },
    /// Subsampled-Hadamard rows for a polynomial image.
    DimSors {
        #[command(flatten)]
        args: PolyDimArgs,
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
    },
    /// Sub-Gaussian rows for a Lipschitz residual.
    DimSubgLip {
        #[command(flatten)]
        args: LipDimArgs,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
    },
    /// Subsampled-Hadamard rows for a Lipschitz residual.
    DimSorsLip {
        #[command(flatten)]
        args: LipDimArgs,
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
    },
    /// Apply a seeded sketch to a vector.
    Apply {
        #[command(flatten)]
        op: OperatorArgs,
        #[arg(long, value_parser = parse_vec)]
        input: ::std::vec::Vec<f64>,
    },
    /// Orthonormal Walsh-Hadamard transform.
    Fwht {
        #[arg(long, value_parser = parse_vec)]
        input: ::std::vec::Vec<f64>,
    },
}

#[derive(Args, Debug)]
struct GnArgs {
    /// PolynomialMap as inline JSON or a file path.
    #[arg(long)]
    map: String,
    #[arg(long, value_parser = parse_vec)]
    x0: ::std::vec::Vec<f64>,
    #[arg(long)]
    max_iters: Option<usize>,
    #[arg(long)]
    grad_tol: Option<f64>,
    #[arg(long)]
    step_tol: Option<f64>,
    #[arg(long)]
    damping: Option<f64>,
    /// none or backtracking.
    #[arg(long)]
    line_search: Option<String>,
    #[arg(long)]
    ls_factor: Option<f64>,
    #[arg(long)]
    ls_steps: Option<u32>,
}

impl GnArgs {
    fn options(&self) -> Result<GNOptions> {
        let mut o = GNOptions::default();
        if let Some(v) = self.max_iters {
            o.max_iters = v;
        }
        if let Some(v) = self.grad_tol {
            o.grad_tol = v;
        }
        if let Some(v) = self.step_tol {
            o.step_tol = v;
        }
        if let Some(v) = self.damping {
            o.damping = v;
        }
        let (mut factor, mut steps) = (0.5, 20);
        if let LineSearch::Backtracking { factor: f, max_steps } = o.line_search {
            factor = self.ls_factor.unwrap_or(f);
            steps = self.ls_steps.unwrap_or(max_steps);
        }
        o.line_search = match self.line_search.as_deref() {
            None | Some("backtracking") => LineSearch::Backtracking {
                factor,
                max_steps: steps,
            },
            Some("none") => LineSearch::None,
            Some(other) => {
                return Err(Error::invalid(
                    "GN options",
                    format!("unknown line search {other:?}; expected none or backtracking"),
                ))
            }
        };
        o.validate()?;
        Ok(o)
    }
}

#[derive(Subcommand, Debug)]
enum OptCmd {
    /// Plain Gauss-Newton.
    Gn {
        #[command(flatten)]
        gn: GnArgs,
    },
    /// Gauss-Newton on a fixed seeded sketch of the residual.
    GnSketched {
        #[command(flatten)]
        gn: GnArgs,
        #[command(flatten)]
        op: OperatorArgs,
    },
}

#[derive(Args, Debug)]
struct LossArgs {
    #[arg(long, default_value_t = 1.0)]
    lip: f64,
    #[arg(long = "H", value_name = "H", default_value_t = 1.0)]
    h: f64,
    /// Use softmax cross-entropy (lip = sqrt(d_L), H = 2t + ln d_L).
    #[arg(long)]
    cross_entropy: bool,
}

impl LossArgs {
    fn loss(&self, arch: &NetArchitecture) -> Result<LossSpec> {
        if self.cross_entropy {
            Ok(LossSpec::cross_entropy(arch))
        } else {
            LossSpec::new(self.lip, self.h)
        }
    }
}

#[derive(Subcommand, Debug)]
enum NnCmd {
    /// Covering bound for a rational network class.
    RatCover {
        /// NetArchitecture as inline JSON or a file path.
        #[arg(long)]
        arch: String,
        #[arg(long)]
        n_samples: usize,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
    },
    /// Rademacher bound for a rational network class.
    RatRademacher {
        #[arg(long)]
        arch: String,
        #[arg(long)]
        n_samples: usize,
        #[command(flatten)]
        loss: LossArgs,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
    },
    /// Rademacher bound for a ReLU network class.
    ReluRademacher {
        #[arg(long)]
        arch: String,
        #[arg(long)]
        n_samples: usize,
        #[command(flatten)]
        loss: LossArgs,
        #[arg(long, default_value_t = verify::CALIBRATED_RELU_CONSTANT)]
        c: f64,
    },
    /// Generalization bound from a Rademacher complexity.
    GenBound {
        #[arg(long)]
        rademacher: f64,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        n_samples: usize,
    },
    /// Parameter-space degree of a network class, or with `--t --eps` and
    /// no architecture, the rational ReLU approximation degree.
    Degree {
        #[arg(long)]
        arch: Option<String>,
        /// ReLU only: accuracy required of the rational surrogate.
        #[arg(long)]
        eps_final: Option<f64>,
        /// ReLU only: derive eps_final as alpha / (lip sqrt(n)).
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        lip: Option<f64>,
        #[arg(long)]
        n_samples: Option<usize>,
        #[arg(long)]
        t: Option<f64>,
        #[arg(long)]
        eps: Option<f64>,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// Greedy-net size of a sampled image against the covering bound.
    Cover {
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 1.0)]
        box_radius: f64,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 100_000)]
        count: usize,
        #[arg(long, required = true)]
        seed: u64,
    },
    /// Sketch success rate on a sampled image.
    Distortion {
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 1.0)]
        box_radius: f64,
        /// gaussian, rademacher or sors.
        #[arg(long, default_value = "gaussian")]
        ensemble: String,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        delta: f64,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 10_000)]
        count: usize,
        #[arg(long, default_value_t = verify::CALIBRATED_SKETCH_CONSTANT)]
        c: f64,
        /// Fixed row count instead of the formula.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, required = true)]
        seed: u64,
    },
    /// Monte-Carlo tube hit probability against its bound.
    Tube {
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 1.0)]
        box_radius: f64,
        /// Defaults to the origin.
        #[arg(long, value_parser = parse_vec)]
        center: Option<::std::vec::Vec<f64>>,
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 1_000_000)]
        samples: usize,
        #[arg(long, default_value_t = 401)]
        grid_density: usize,
        #[arg(long, default_value_t = crate::DEFAULT_CONSTANT)]
        c: f64,
        #[arg(long, required = true)]
        seed: u64,
    },
    /// Rademacher estimate over sampled ReLU networks against the bound.
    Rademacher {
        #[arg(long)]
        arch: String,
        #[arg(long, default_value_t = 200)]
        hypotheses: usize,
        #[arg(long, default_value_t = 50)]
        n_samples: usize,
        #[arg(long, default_value_t = 10_000)]
        draws: usize,
        #[arg(long, default_value_t = verify::CALIBRATED_RELU_CONSTANT)]
        c: f64,
        #[arg(long, required = true)]
        seed: u64,
    },
}

/// Parses and runs one command. `argv[0]` is the program name.
pub fn dispatch<I, S>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let argv = match merge_config(argv) {
        Ok(a) => a,
        Err(e) => return error_result(&e),
    };
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    CommandResult {
                        exit_code: if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand { 1 } else { 0 },
                        payload: Value::String(e.to_string()),
                    }
                }
                _ => CommandResult {
                    exit_code: 1,
                    payload: json!({"code": "usage", "message": e.to_string().trim(), "reference": "command line"}),
                },
            };
        }
    };
    match run(cli.group) {
        Ok((payload, pass)) => CommandResult {
            exit_code: if pass { 0 } else { 2 },
            payload: round_numbers(payload),
        },
        Err(e) => error_result(&e),
    }
}

fn error_result(e: &Error) -> CommandResult {
    CommandResult {
        exit_code: 1,
        payload: json!({"code": e.code(), "message": e.to_string(), "reference": e.reference()}),
    }
}

/// Appends `--key value` for every config entry whose flag is not already
/// on the command line.
fn merge_config(mut argv: Vec<String>) -> Result<Vec<String>> {
    let pos = argv.iter().position(|a| a == "--config" || a.starts_with("--config="));
    let Some(pos) = pos else { return Ok(argv) };
    let path = if let Some(p) = argv[pos].strip_prefix("--config=") {
        let p = p.to_owned();
        argv.remove(pos);
        p
    } else {
        if pos + 1 >= argv.len() {
            return Err(Error::invalid("command line", "--config needs a path"));
        }
        let p = argv.remove(pos + 1);
        argv.remove(pos);
        p
    };
    let config: Map<String, Value> = serde_json::from_str(&std::fs::read_to_string(&path)?)?;
    for (key, value) in config {
        let flag = format!("--{}", key.replace('_', "-"));
        let present = argv.iter().any(|a| *a == flag || a.starts_with(&format!("{flag}=")));
        if present {
            continue;
        }
        match value {
            Value::Bool(true) => argv.push(flag),
            Value::Bool(false) | Value::Null => {}
            Value::String(s) => argv.extend([flag, s]),
            Value::Number(n) => argv.extend([flag, n.to_string()]),
            Value::Array(items) if items.iter().all(Value::is_number) => {
                let joined = items.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
                argv.extend([flag, joined]);
            }
            other => argv.extend([flag, other.to_string()]),
        }
    }
    Ok(argv)
}

/// Rounds every non-integer number to 10 significant digits.
fn round_numbers(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64");
            let r: f64 = format!("{x:.9e}").parse().expect("formatted float parses");
            serde_json::Number::from_f64(r).map(Value::Number).unwrap_or(Value::Null)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_numbers).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_numbers(v))).collect()),
        other => other,
    }
}

fn report_json(key: &str, report: &BoundReport) -> Result<Value> {
    let mut v = serde_json::to_value(report)?;
    let obj = v.as_object_mut().expect("report is an object");
    let value = obj.remove("value").expect("report has a value");
    obj.insert(key.to_owned(), value);
    Ok(v)
}

fn with_profile(mut v: Value, profile: &RegularityProfile) -> Value {
    v["profile"] = json!({"log_k": profile.log_k(), "n": profile.n});
    v
}

fn to_value<T: Serialize>(x: &T) -> Result<Value> {
    Ok(serde_json::to_value(x)?)
}

fn cp_set(kind: &str, t: f64) -> Result<CpSet> {
    match kind {
        "ball" => Ok(CpSet::Ball { t }),
        "sphere" => Ok(CpSet::Sphere),
        other => Err(Error::invalid("CP set", format!("unknown set {other:?}; expected ball or sphere"))),
    }
}

fn run(group: Group) -> Result<(Value, bool)> {
    let ok = |v: Value| Ok((v, true));
    match group {
        Group::Bound(cmd) => {
            let cover = |profile: RegularityProfile, tail: &CoverTail| -> Result<(Value, bool)> {
                let r = bounds::covering_bound_log(&profile, tail.big_n, tail.t, tail.eps)?;
                Ok((with_profile(report_json("log_bound", &r)?, &profile), true))
            };
            match cmd {
                BoundCmd::Regular { log_k, n, tail } => cover(RegularityProfile::new(log_k, n)?, &tail),
                BoundCmd::PolyImage { n, d, variant, tail } => cover(regularity::profile_poly_image(n, d, variant)?, &tail),
                BoundCmd::Variety { n, d, variant, tail } => {
                    cover(regularity::profile_variety(tail.big_n, n, d, variant)?, &tail)
                }
                BoundCmd::Semialgebraic {
                    n,
                    d,
                    b,
                    third_const,
                    tail,
                } => cover(regularity::profile_semialgebraic(tail.big_n, n, d, b, third_const)?, &tail),
                BoundCmd::Rational { n, d, tail } => cover(regularity::profile_rational_image(n, tail.big_n, d)?, &tail),
                BoundCmd::Tube { log_k, n, c, tail } => {
                    let profile = RegularityProfile::new(log_k, n)?;
                    let r = bounds::tube_volume_log(&profile, tail.big_n, tail.t, tail.eps, c)?;
                    ok(with_profile(report_json("log_volume_bound", &r)?, &profile))
                }
                BoundCmd::TubeProb {
                    big_n,
                    n,
                    d,
                    eps,
                    sigma,
                    c,
                } => ok(report_json(
                    "log_prob_bound",
                    &bounds::tube_hit_probability_log(big_n, n, d, eps, sigma, c)?,
                )?),
                BoundCmd::Width { log_k, n, big_n, t } => {
                    let profile = RegularityProfile::new(log_k, n)?;
                    ok(report_json("width_bound", &bounds::width_bound_regular(&profile, big_n, t)?)?)
                }
            }
        }
        Group::Tensor(cmd) => match cmd {
            TensorCmd::Cover {
                shape,
                r,
                set,
                t,
                eps,
                c,
            } => {
                let shape = TensorShape::new(shape)?;
                ok(report_json(
                    "log_bound",
                    &tensor::cp_covering_log_general(&shape, r, cp_set(&set, t)?, eps, c)?,
                )?)
            }
            TensorCmd::CoverLowrank {
                shape,
                r,
                set,
                t,
                eps,
                c1,
                c2,
            } => {
                let shape = TensorShape::new(shape)?;
                ok(report_json(
                    "log_bound",
                    &tensor::cp_covering_log_lowrank(&shape, r, cp_set(&set, t)?, eps, c1, c2)?,
                )?)
            }
            TensorCmd::AngleProb { shape, r, eps, c1, c2 } => {
                let shape = TensorShape::new(shape)?;
                ok(report_json(
                    "log_prob_bound",
                    &tensor::cp_angle_probability_log(&shape, r, eps, c1, c2)?,
                )?)
            }
        },
        Group::Sketch(cmd) => match cmd {
            SketchCmd::DimSubg { args: a, alpha } => {
                ok(json!({"m": sketch::subg_dim_poly(a.n, a.d, a.big_n, a.eps, a.delta, alpha, a.c)?, "c": a.c}))
            }
            SketchCmd::DimSors { args: a, beta } => {
                ok(json!({"m": sketch::sors_dim_poly(a.n, a.d, a.big_n, a.eps, a.delta, beta, a.c)?, "c": a.c}))
            }
            SketchCmd::DimSubgLip { args: a, alpha } => ok(json!({
                "m": sketch::subg_dim_lipschitz(&a.problem(), a.eps, a.delta, alpha, a.c, a.c_lambda)?,
                "lambda": a.problem().lambda(a.c_lambda),
                "c": a.c,
            })),
            SketchCmd::DimSorsLip { args: a, beta } => ok(json!({
                "m": sketch::sors_dim_lipschitz(&a.problem(), a.eps, a.delta, beta, a.c, a.c_lambda)?,
                "lambda": a.problem().lambda(a.c_lambda),
                "c": a.c,
            })),
            SketchCmd::Apply { op, input } => {
                let operator = op.build(input.len())?;
                let out = operator.apply(&input)?;
                ok(json!({"output": out, "operator": to_value(&operator)?}))
            }
            SketchCmd::Fwht { input } => ok(to_value(&sketch::fwht(&input)?)?),
        },
        Group::Opt(cmd) => match cmd {
            OptCmd::Gn { gn } => {
                let map: PolynomialMap = load_json(&gn.map)?;
                ok(to_value(&polyopt::gauss_newton(&map, &gn.x0, &gn.options()?)?)?)
            }
            OptCmd::GnSketched { gn, op } => {
                let map: PolynomialMap = load_json(&gn.map)?;
                let operator = op.build(map.output_dim())?;
                let res = polyopt::sketched_gauss_newton(&map, &operator, &gn.x0, &gn.options()?)?;
                let mut v = to_value(&res)?;
                v["operator"] = to_value(&operator)?;
                ok(v)
            }
        },
        Group::Nn(cmd) => match cmd {
            NnCmd::RatCover { arch, n_samples, eps, c } => {
                let arch: NetArchitecture = load_json(&arch)?;
                let mut v = report_json("log_bound", &nnbound::ratnn_covering_log(&arch, n_samples, eps, c)?)?;
                v["num_params"] = json!(arch.num_params());
                ok(v)
            }
            NnCmd::RatRademacher {
                arch,
                n_samples,
                loss,
                c,
            } => {
                let arch: NetArchitecture = load_json(&arch)?;
                let loss = loss.loss(&arch)?;
                ok(report_json("bound", &nnbound::ratnn_rademacher_bound(&arch, n_samples, loss, c)?)?)
            }
            NnCmd::ReluRademacher {
                arch,
                n_samples,
                loss,
                c,
            } => {
                let arch: NetArchitecture = load_json(&arch)?;
                let loss = loss.loss(&arch)?;
                ok(report_json("bound", &nnbound::relu_rademacher_bound(&arch, n_samples, loss, c)?)?)
            }
            NnCmd::GenBound {
                rademacher,
                delta,
                n_samples,
            } => ok(json!({"bound": nnbound::generalization_bound(rademacher, delta, n_samples)?})),
            NnCmd::Degree {
                arch,
                eps_final,
                alpha,
                lip,
                n_samples,
                t,
                eps,
            } => {
                let Some(arch) = arch else {
                    let (Some(t), Some(eps)) = (t, eps) else {
                        return Err(Error::invalid("nn degree", "give --arch, or --t and --eps"));
                    };
                    return ok(json!({"degree": nnbound::rat_approx_degree(t, eps)?}));
                };
                let arch: NetArchitecture = load_json(&arch)?;
                let l = arch.depth();
                let s = arch.s.unwrap_or(1);
                let log_degree = match arch.kind {
                    NetKind::Ratnn => nnbound::ratnn_degree(arch.hidden_dims(), s, l, arch.trainable)?,
                    NetKind::Ratcnn => nnbound::ratcnn_degree(
                        &arch.channels[1..l],
                        arch.kernel.unwrap_or(0),
                        s,
                        l,
                        arch.trainable,
                    )?,
                    NetKind::Relu => {
                        let target = match (eps_final, alpha, lip, n_samples) {
                            (Some(e), _, _, _) => e,
                            (None, Some(a), Some(lp), Some(n)) => nnbound::relu_target_accuracy(a, lp, n)?,
                            _ => {
                                return Err(Error::invalid(
                                    "nn degree",
                                    "ReLU classes need --eps-final, or --alpha, --lip and --n-samples",
                                ))
                            }
                        };
                        nnbound::relu_approx_degree(&arch, target)?
                    }
                };
                ok(json!({"log_degree": log_degree.ln()}))
            }
        },
        Group::Verify(cmd) => {
            let report = match cmd {
                VerifyCmd::Cover {
                    map,
                    box_radius,
                    t,
                    eps,
                    count,
                    seed,
                } => {
                    let map: PolynomialMap = load_json(&map)?;
                    verify::covering_check(&map, box_radius, t, eps, count, RngSeed(seed))?
                }
                VerifyCmd::Distortion {
                    map,
                    box_radius,
                    ensemble,
                    eps,
                    delta,
                    trials,
                    count,
                    c,
                    m,
                    seed,
                } => {
                    let map: PolynomialMap = load_json(&map)?;
                    let ensemble = match ensemble.as_str() {
                        "sors" => Ensemble::Sors,
                        other => Ensemble::SubGaussian(other.parse()?),
                    };
                    let cfg = SuccessRateConfig {
                        box_radius,
                        ensemble,
                        eps,
                        delta,
                        trials,
                        count,
                        rows: m.map_or(RowCount::Formula { c }, RowCount::Fixed),
                    };
                    verify::sketch_success_rate(&map, &cfg, RngSeed(seed))?
                }
                VerifyCmd::Tube {
                    map,
                    box_radius,
                    center,
                    sigma,
                    eps,
                    samples,
                    grid_density,
                    c,
                    seed,
                } => {
                    let map: PolynomialMap = load_json(&map)?;
                    let cfg = TubeProbeConfig {
                        box_radius,
                        center: center.unwrap_or_else(|| vec![0.0; map.output_dim()]),
                        sigma,
                        eps,
                        mc_samples: samples,
                        grid_density,
                        c,
                    };
                    verify::tube_probe(&map, &cfg, RngSeed(seed))?
                }
                VerifyCmd::Rademacher {
                    arch,
                    hypotheses,
                    n_samples,
                    draws,
                    c,
                    seed,
                } => {
                    let arch: NetArchitecture = load_json(&arch)?;
                    let cfg = verify::ReluCheckConfig {
                        arch,
                        hypotheses,
                        n_samples,
                        sigma_draws: draws,
                        c,
                    };
                    verify::relu_rademacher_check(&cfg, RngSeed(seed))?
                }
            };
            let pass = report.pass();
            Ok((to_value(&report)?, pass))
        }
    }
}
