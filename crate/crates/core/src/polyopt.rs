//! Gauss-Newton for `min ||p(x)||` over polynomial maps, plain and sketched.
//!
//! The sketched variant solves `argmin ||S J dx + S p(x)||` with one fixed
//! operator `S` reused at every iteration. Both solvers share a single
//! loop, so an identity sketch reproduces the plain solver bit for bit.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};
use crate::poly::PolynomialMap;
use crate::sketch::SketchOperator;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LineSearch {
    None,
    Backtracking { factor: f64, max_steps: u32 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GNOptions {
    pub max_iters: usize,
    pub grad_tol: f64,
    pub step_tol: f64,
    /// Levenberg term added to the least-squares subproblem.
    pub damping: f64,
    pub line_search: LineSearch,
}

impl Default for GNOptions {
    fn default() -> Self {
        GNOptions {
            max_iters: 200,
            grad_tol: 1e-8,
            step_tol: 1e-12,
            damping: 1e-10,
            line_search: LineSearch::Backtracking {
                factor: 0.5,
                max_steps: 20,
            },
        }
    }
}

impl GNOptions {
    pub fn validate(&self) -> Result<()> {
        ensure(self.grad_tol > 0.0 && self.step_tol > 0.0, "GN options", || {
            format!("tolerances must be positive, got grad_tol = {}, step_tol = {}", self.grad_tol, self.step_tol)
        })?;
        ensure(self.damping >= 0.0 && self.damping.is_finite(), "GN options", || {
            format!("damping must be finite and >= 0, got {}", self.damping)
        })?;
        if let LineSearch::Backtracking { factor, .. } = self.line_search {
            ensure(factor > 0.0 && factor < 1.0, "GN options", || {
                format!("backtracking factor must lie in (0, 1), got {factor}")
            })?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    Gradient,
    Step,
    MaxIters,
    /// Backtracking found no decrease within its step budget.
    LineSearch,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GNResult {
    pub x_final: Vec<f64>,
    /// `||p(x_final)||`, always unsketched.
    pub objective: f64,
    /// `||S p(x_final)||` for the sketched solver.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sketched_objective: Option<f64>,
    pub iterations: usize,
    pub converged: bool,
    pub stop_reason: StopReason,
    /// Objective actually minimized, starting with the value at `x0`.
    pub trace: Vec<f64>,
}

/// Minimizer of `||A z + b||^2 + damping ||z||^2`.
///
/// Solved through an SVD of the stacked system `[A; sqrt(damping) I]`.
/// Singular values below the usual rank tolerance are dropped, so a
/// rank-deficient `A` with zero damping yields the minimum-norm minimizer.
pub fn ls_solve(a: &DMatrix<f64>, b: &[f64], damping: f64) -> Result<Vec<f64>> {
    if a.nrows() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            got: b.len(),
        });
    }
    ensure(damping >= 0.0 && damping.is_finite(), "least-squares solve", || {
        format!("damping must be finite and >= 0, got {damping}")
    })?;
    let (m, k) = a.shape();
    if k == 0 {
        return Ok(Vec::new());
    }
    let (stacked, rhs) = if damping > 0.0 {
        let mut s = DMatrix::zeros(m + k, k);
        s.view_mut((0, 0), (m, k)).copy_from(a);
        s.view_mut((m, 0), (k, k)).fill_diagonal(damping.sqrt());
        let mut r = DVector::zeros(m + k);
        r.rows_mut(0, m).copy_from_slice(b);
        (s, -r)
    } else {
        (a.clone(), -DVector::from_column_slice(b))
    };
    let svd = stacked.svd(true, true);
    let smax = svd.singular_values.max();
    let tol = smax * (m.max(k) as f64) * f64::EPSILON;
    let z = svd
        .solve(&rhs, tol)
        .map_err(|e| Error::invalid("least-squares solve", e.to_string()))?;
    Ok(z.iter().copied().collect())
}

// false for NaN, so a blown-up trial is always rejected
fn no_worse(trial: f64, current: f64) -> bool {
    trial <= current
}

/// Plain Gauss-Newton on `||p(x)||`.
pub fn gauss_newton(map: &PolynomialMap, x0: &[f64], opts: &GNOptions) -> Result<GNResult> {
    run(map, None, x0, opts)
}

/// Gauss-Newton on `||S p(x)||` with the same `S` at every iteration.
pub fn sketched_gauss_newton(
    map: &PolynomialMap,
    op: &SketchOperator,
    x0: &[f64],
    opts: &GNOptions,
) -> Result<GNResult> {
    if op.cols() != map.output_dim() {
        return Err(Error::DimensionMismatch {
            expected: map.output_dim(),
            got: op.cols(),
        });
    }
    run(map, Some(op), x0, opts)
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn residual(map: &PolynomialMap, op: Option<&SketchOperator>, x: &[f64]) -> Result<Vec<f64>> {
    let f = map.eval(x)?;
    match op {
        Some(s) => s.apply(&f),
        None => Ok(f),
    }
}

fn residual_and_jacobian(
    map: &PolynomialMap,
    op: Option<&SketchOperator>,
    x: &[f64],
) -> Result<(Vec<f64>, DMatrix<f64>)> {
    let (f, j) = map.eval_and_jacobian(x)?;
    match op {
        Some(s) => Ok((s.apply(&f)?, s.apply_columns(&j)?)),
        None => Ok((f, j)),
    }
}

fn run(map: &PolynomialMap, op: Option<&SketchOperator>, x0: &[f64], opts: &GNOptions) -> Result<GNResult> {
    opts.validate()?;
    if x0.len() != map.input_dim() {
        return Err(Error::DimensionMismatch {
            expected: map.input_dim(),
            got: x0.len(),
        });
    }
    let mut x = x0.to_vec();
    let (mut f, mut jac) = residual_and_jacobian(map, op, &x)?;
    let mut obj = norm(&f);
    let mut trace = vec![obj];
    let mut iterations = 0;
    let mut stop = StopReason::MaxIters;

    while iterations < opts.max_iters {
        let grad = jac.tr_mul(&DVector::from_column_slice(&f));
        if grad.norm() <= opts.grad_tol {
            stop = StopReason::Gradient;
            break;
        }
        let dx = ls_solve(&jac, &f, opts.damping)?;
        if norm(&dx) <= opts.step_tol {
            stop = StopReason::Step;
            break;
        }

        let mut alpha = 1.0;
        let mut trial: Vec<f64> = x.iter().zip(&dx).map(|(a, b)| a + b).collect();
        let mut f_trial = residual(map, op, &trial)?;
        let mut obj_trial = norm(&f_trial);
        if let LineSearch::Backtracking { factor, max_steps } = opts.line_search {
            let mut steps = 0;
            while !no_worse(obj_trial, obj) && steps < max_steps {
                alpha *= factor;
                trial = x.iter().zip(&dx).map(|(a, b)| a + alpha * b).collect();
                f_trial = residual(map, op, &trial)?;
                obj_trial = norm(&f_trial);
                steps += 1;
            }
            if !no_worse(obj_trial, obj) {
                stop = StopReason::LineSearch;
                break;
            }
        }

        x = trial;
        iterations += 1;
        (f, jac) = residual_and_jacobian(map, op, &x)?;
        obj = norm(&f);
        trace.push(obj);
        if alpha * norm(&dx) <= opts.step_tol {
            stop = StopReason::Step;
            break;
        }
    }

    let objective = match op {
        Some(_) => norm(&map.eval(&x)?),
        None => obj,
    };
    Ok(GNResult {
        x_final: x,
        objective,
        sketched_objective: op.map(|_| obj),
        iterations,
        converged: stop != StopReason::MaxIters && stop != StopReason::LineSearch,
        stop_reason: stop,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Term;

    fn scalar(terms: &[(f64, u32)]) -> PolynomialMap {
        PolynomialMap::new(1, vec![terms.iter().map(|&(c, e)| Term::new(c, vec![e])).collect()]).unwrap()
    }

    #[test]
    fn ls_solve_examples() {
        let z = ls_solve(&DMatrix::identity(2, 2), &[-1.0, -2.0], 0.0).unwrap();
        assert!((z[0] - 1.0).abs() < 1e-14 && (z[1] - 2.0).abs() < 1e-14);
        let z = ls_solve(&DMatrix::from_row_slice(2, 1, &[1.0, 1.0]), &[-1.0, -3.0], 0.0).unwrap();
        assert!((z[0] - 2.0).abs() < 1e-14);
        let z = ls_solve(&DMatrix::from_row_slice(1, 2, &[1.0, 1.0]), &[-2.0], 0.0).unwrap();
        assert!((z[0] - 1.0).abs() < 1e-14 && (z[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn damping_shrinks_the_step() {
        let a = DMatrix::identity(1, 1);
        let z = ls_solve(&a, &[-2.0], 1.0).unwrap();
        assert!((z[0] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn linear_residual_converges_in_one_step() {
        let a = DMatrix::from_row_slice(3, 2, &[1.0, 0.0, 0.0, 1.0, 1.0, 1.0]);
        let b = [1.0, 2.0, 0.0];
        let map = PolynomialMap::affine(&a, &b.map(|v: f64| -v)).unwrap();
        let res = gauss_newton(&map, &[5.0, -3.0], &GNOptions::default()).unwrap();
        assert_eq!(res.iterations, 1);
        assert!(res.converged);
        // normal equations: [[2,1],[1,2]] x = (1, 2)
        assert!((res.x_final[0] - 0.0).abs() < 1e-8 && (res.x_final[1] - 1.0).abs() < 1e-8);
    }

    #[test]
    fn square_root_of_four() {
        let res = gauss_newton(&scalar(&[(1.0, 2), (-4.0, 0)]), &[1.0], &GNOptions::default()).unwrap();
        assert!((res.x_final[0] - 2.0).abs() < 1e-8);
        assert!(res.objective < 1e-8);
        assert!(res.trace.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn parabola_without_zero_off_origin() {
        let map = PolynomialMap::new(1, vec![vec![Term::new(1.0, vec![1])], vec![Term::new(1.0, vec![2])]]).unwrap();
        let res = gauss_newton(&map, &[1.0], &GNOptions::default()).unwrap();
        assert!(res.x_final[0].abs() < 1e-8);
        assert!(res.objective < 1e-8);
    }

    #[test]
    fn zero_map_takes_no_steps() {
        let map = PolynomialMap::new(2, vec![vec![], vec![]]).unwrap();
        let res = gauss_newton(&map, &[0.3, 0.4], &GNOptions::default()).unwrap();
        assert_eq!(res.iterations, 0);
        assert_eq!(res.x_final, vec![0.3, 0.4]);
        assert_eq!(res.objective, 0.0);
    }

    #[test]
    fn identity_sketch_bit_matches() {
        let map = PolynomialMap::moment_curve(3);
        let shifted = PolynomialMap::new(
            1,
            map.coords()
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let mut c = c.clone();
                    c.push(Term::new(-0.5 * (i as f64 + 1.0), vec![0]));
                    c
                })
                .collect(),
        )
        .unwrap();
        let opts = GNOptions::default();
        let plain = gauss_newton(&shifted, &[2.0], &opts).unwrap();
        let sk = sketched_gauss_newton(&shifted, &SketchOperator::Identity { dim: 3 }, &[2.0], &opts).unwrap();
        assert_eq!(plain.x_final, sk.x_final);
        assert_eq!(plain.trace, sk.trace);
        assert_eq!(plain.objective, sk.objective);
        assert!(sketched_gauss_newton(&shifted, &SketchOperator::Identity { dim: 4 }, &[2.0], &opts).is_err());
    }

    #[test]
    fn bad_options_are_rejected() {
        let opts = GNOptions {
            grad_tol: 0.0,
            ..GNOptions::default()
        };
        assert!(gauss_newton(&scalar(&[(1.0, 1)]), &[0.0], &opts).is_err());
    }
}
