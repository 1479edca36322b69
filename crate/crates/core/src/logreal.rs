//! Natural-log representation of nonnegative quantities.
//!
//! Covering numbers, regularity constants and probabilities in this crate
//! routinely leave the range of `f64` (`e^{-38567}`, `(2d)^N` with `N` in the
//! thousands), so they are carried as logarithms and never exponentiated.

use std::fmt;
use std::ops::{Add, Mul};

use serde::{Deserialize, Serialize};

/// `ln(x)` for some `x >= 0`; `x = 0` is `-inf`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LogReal(f64);

impl LogReal {
    pub const ZERO: LogReal = LogReal(f64::NEG_INFINITY);
    pub const ONE: LogReal = LogReal(0.0);

    /// Wraps a value already in nats. NaN is rejected.
    pub fn from_ln(ln: f64) -> Option<Self> {
        (!ln.is_nan()).then_some(LogReal(ln))
    }

    /// `ln(x)` for a linear-domain `x >= 0`.
    pub fn from_linear(x: f64) -> Option<Self> {
        (x >= 0.0).then(|| LogReal(x.ln()))
    }

    #[inline]
    pub fn ln(self) -> f64 {
        self.0
    }

    /// The linear value. Overflows to `inf` or underflows to `0` for large
    /// magnitudes; use only for display or small quantities.
    pub fn to_linear(self) -> f64 {
        self.0.exp()
    }

    /// `ln(e^a + e^b)` without leaving the log domain.
    pub fn ln_add(self, other: LogReal) -> LogReal {
        let (hi, lo) = if self.0 >= other.0 { (self.0, other.0) } else { (other.0, self.0) };
        if hi == f64::NEG_INFINITY {
            return LogReal::ZERO;
        }
        if hi == f64::INFINITY {
            return LogReal(f64::INFINITY);
        }
        LogReal(hi + (lo - hi).exp().ln_1p())
    }

    /// `ln(x^k)`.
    pub fn powf(self, k: f64) -> LogReal {
        if k == 0.0 {
            return LogReal::ONE;
        }
        LogReal(self.0 * k)
    }
}

/// Addition in the linear domain.
impl Add for LogReal {
    type Output = LogReal;
    fn add(self, rhs: LogReal) -> LogReal {
        self.ln_add(rhs)
    }
}

/// Multiplication in the linear domain.
impl Mul for LogReal {
    type Output = LogReal;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: LogReal) -> LogReal {
        LogReal(self.0 + rhs.0)
    }
}

impl fmt::Display for LogReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exp({})", self.0)
    }
}
