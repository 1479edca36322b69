//! Explicit polynomial maps `p: R^n -> R^N` in the monomial basis.
//!
//! Each output coordinate is a dense list of terms `c * x_1^{e_1} ... x_n^{e_n}`.
//! Evaluation and the analytic Jacobian both work off a power table built
//! once per point, so a coordinate costs one multiply per nonzero exponent.

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    #[serde(rename = "c")]
    pub coeff: f64,
    #[serde(rename = "e")]
    pub exponents: Vec<u32>,
}

impl Term {
    pub fn new(coeff: f64, exponents: Vec<u32>) -> Self {
        Term { coeff, exponents }
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct RawMap {
    n: usize,
    #[serde(rename = "N")]
    big_n: usize,
    coords: Vec<Vec<Term>>,
}

/// Sparse view of one term: `(variable, exponent)` pairs with exponent > 0.
#[derive(Clone, Debug, PartialEq)]
struct Compiled {
    coeff: f64,
    factors: Vec<(usize, u32)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMap", into = "RawMap")]
pub struct PolynomialMap {
    n: usize,
    big_n: usize,
    coords: Vec<Vec<Term>>,
    degree: u32,
    max_exponent: Vec<u32>,
    compiled: Vec<Vec<Compiled>>,
}

impl TryFrom<RawMap> for PolynomialMap {
    type Error = Error;
    fn try_from(raw: RawMap) -> Result<Self> {
        ensure(raw.coords.len() == raw.big_n, "polynomial map schema", || {
            format!("N = {} but {} coordinate lists were given", raw.big_n, raw.coords.len())
        })?;
        PolynomialMap::new(raw.n, raw.coords)
    }
}

impl From<PolynomialMap> for RawMap {
    fn from(map: PolynomialMap) -> Self {
        RawMap {
            n: map.n,
            big_n: map.big_n,
            coords: map.coords,
        }
    }
}

impl PolynomialMap {
    /// Builds a map with `coords.len()` output coordinates over `n` inputs.
    pub fn new(n: usize, coords: Vec<Vec<Term>>) -> Result<Self> {
        ensure(n >= 1, "polynomial map schema", || "input dimension n must be positive".into())?;
        ensure(!coords.is_empty(), "polynomial map schema", || "output dimension N must be positive".into())?;
        let mut degree = 0;
        let mut max_exponent = vec![0u32; n];
        for (i, coord) in coords.iter().enumerate() {
            for term in coord {
                if term.exponents.len() != n {
                    return Err(Error::invalid(
                        "polynomial map schema",
                        format!(
                            "coordinate {i}: exponent list has length {} but n = {n}",
                            term.exponents.len()
                        ),
                    ));
                }
                ensure(term.coeff.is_finite(), "polynomial map schema", || {
                    format!("coordinate {i}: non-finite coefficient")
                })?;
                degree = degree.max(term.degree());
                for (m, &e) in max_exponent.iter_mut().zip(&term.exponents) {
                    *m = (*m).max(e);
                }
            }
        }
        let compiled = coords
            .iter()
            .map(|coord| {
                coord
                    .iter()
                    .map(|t| Compiled {
                        coeff: t.coeff,
                        factors: t
                            .exponents
                            .iter()
                            .enumerate()
                            .filter(|(_, &e)| e > 0)
                            .map(|(j, &e)| (j, e))
                            .collect(),
                    })
                    .collect()
            })
            .collect();
        Ok(PolynomialMap {
            n,
            big_n: coords.len(),
            coords,
            degree,
            max_exponent,
            compiled,
        })
    }

    /// The map `x -> A x + b`.
    pub fn affine(a: &DMatrix<f64>, b: &[f64]) -> Result<Self> {
        if b.len() != a.nrows() {
            return Err(Error::DimensionMismatch {
                expected: a.nrows(),
                got: b.len(),
            });
        }
        let n = a.ncols();
        let coords = (0..a.nrows())
            .map(|i| {
                let mut terms: Vec<Term> = (0..n)
                    .map(|j| {
                        let mut e = vec![0; n];
                        e[j] = 1;
                        Term::new(a[(i, j)], e)
                    })
                    .collect();
                terms.push(Term::new(b[i], vec![0; n]));
                terms
            })
            .collect();
        PolynomialMap::new(n, coords)
    }

    /// Every coordinate carries every monomial of total degree `<= degree`
    /// with an independent standard normal coefficient.
    pub fn random_dense<R: Rng + ?Sized>(n: usize, big_n: usize, degree: u32, rng: &mut R) -> Result<Self> {
        let monomials = monomials_up_to(n, degree);
        let coords = (0..big_n)
            .map(|_| {
                monomials
                    .iter()
                    .map(|e| Term::new(rng.sample(StandardNormal), e.clone()))
                    .collect()
            })
            .collect();
        PolynomialMap::new(n, coords)
    }

    /// The moment curve `t -> (t, t^2, ..., t^k)`.
    pub fn moment_curve(k: usize) -> Self {
        let coords = (1..=k).map(|p| vec![Term::new(1.0, vec![p as u32])]).collect();
        PolynomialMap::new(1, coords).expect("moment curve is well formed")
    }

    /// Input dimension `n`.
    pub fn input_dim(&self) -> usize {
        self.n
    }

    /// Output dimension `N`.
    pub fn output_dim(&self) -> usize {
        self.big_n
    }

    /// Maximum total degree over all terms.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coords(&self) -> &[Vec<Term>] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().flatten().all(|t| t.coeff == 0.0)
    }

    fn check_point(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        Ok(())
    }

    // powers[j][k] = x_j^k for k up to the largest exponent of x_j
    fn power_table(&self, x: &[f64]) -> Vec<Vec<f64>> {
        x.iter()
            .zip(&self.max_exponent)
            .map(|(&xj, &m)| {
                let mut row = Vec::with_capacity(m as usize + 1);
                let mut acc = 1.0;
                row.push(acc);
                for _ in 0..m {
                    acc *= xj;
                    row.push(acc);
                }
                row
            })
            .collect()
    }

    pub fn eval(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_point(x)?;
        let pw = self.power_table(x);
        Ok(self.eval_with_table(&pw))
    }

    fn eval_with_table(&self, pw: &[Vec<f64>]) -> Vec<f64> {
        self.compiled
            .iter()
            .map(|coord| {
                coord
                    .iter()
                    .map(|t| t.factors.iter().fold(t.coeff, |acc, &(j, e)| acc * pw[j][e as usize]))
                    .sum()
            })
            .collect()
    }

    /// `N x n` matrix of partial derivatives, by exponent lowering.
    pub fn jacobian(&self, x: &[f64]) -> Result<DMatrix<f64>> {
        self.check_point(x)?;
        let pw = self.power_table(x);
        Ok(self.jacobian_with_table(&pw))
    }

    fn jacobian_with_table(&self, pw: &[Vec<f64>]) -> DMatrix<f64> {
        let mut jac = DMatrix::zeros(self.big_n, self.n);
        for (i, coord) in self.compiled.iter().enumerate() {
            for t in coord {
                for (k, &(j, e)) in t.factors.iter().enumerate() {
                    let mut v = t.coeff * e as f64 * pw[j][e as usize - 1];
                    for (l, &(jj, ee)) in t.factors.iter().enumerate() {
                        if l != k {
                            v *= pw[jj][ee as usize];
                        }
                    }
                    jac[(i, j)] += v;
                }
            }
        }
        jac
    }

    /// Value and Jacobian sharing one power table.
    pub fn eval_and_jacobian(&self, x: &[f64]) -> Result<(Vec<f64>, DMatrix<f64>)> {
        self.check_point(x)?;
        let pw = self.power_table(x);
        Ok((self.eval_with_table(&pw), self.jacobian_with_table(&pw)))
    }
}

/// All exponent vectors in `n` variables with total degree `<= degree`,
/// graded then lexicographic.
pub fn monomials_up_to(n: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(prefix: &mut Vec<u32>, n: usize, remaining: u32, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for e in 0..=remaining {
            prefix.push(e);
            rec(prefix, n, remaining - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(n), n, degree, &mut out);
    out.sort_by_key(|e| e.iter().sum::<u32>());
    out
}
