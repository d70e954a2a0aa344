//! Scalar special-function kernels.
//!
//! Every series evaluator in this module shares one stopping rule: a sum is
//! accepted once three consecutive terms are at most `tol × |partial sum|`
//! (or below an absolute floor of `1e-300`), with a budget of
//! [`MAX_TERMS`] terms.

mod bessel;
mod gamma;
mod hypergeometric;

pub use bessel::{
    bessel_j, normalized_bessel, normalized_bessel_complex, normalized_bessel_limit, BESSEL_MAX_ARG,
};
pub use gamma::{gamma, gamma_real, pochhammer, recip_gamma};
pub use hypergeometric::{confluent_1f1, confluent_limit, gauss_2f1};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default relative tolerance for the scalar kernels.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Maximum number of terms any series evaluation may consume.
pub const MAX_TERMS: usize = 10_000;

/// Terms below this magnitude count as negligible regardless of the sum.
pub const ABS_FLOOR: f64 = 1e-300;

/// Value of a truncated series together with how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    pub value: Complex64,
    pub terms_used: usize,
    /// Magnitude of the last accepted term, scaled like `value`.
    pub tail_estimate: f64,
}

impl SeriesResult {
    pub(crate) fn exact(value: Complex64) -> Self {
        SeriesResult {
            value,
            terms_used: 1,
            tail_estimate: 0.0,
        }
    }
}

/// Parameters `(a, b, c)` of `₂F₁`, or `(a, c)` of `₁F₁` when `b` is absent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypParams {
    a: Complex64,
    b: Option<Complex64>,
    c: Complex64,
}

impl HypParams {
    pub fn new(a: Complex64, b: Complex64, c: Complex64) -> Result<Self> {
        check_not_pole(c)?;
        Ok(HypParams { a, b: Some(b), c })
    }

    pub fn confluent(a: Complex64, c: Complex64) -> Result<Self> {
        check_not_pole(c)?;
        Ok(HypParams { a, b: None, c })
    }

    pub fn real(a: f64, b: f64, c: f64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into())
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Option<Complex64> {
        self.b
    }

    pub fn c(&self) -> Complex64 {
        self.c
    }
}

/// Order `μ` of a Bessel function of the first kind.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct BesselOrder(f64);

impl BesselOrder {
    pub fn new(mu: f64) -> Result<Self> {
        if mu.is_finite() {
            Ok(BesselOrder(mu))
        } else {
            Err(Error::domain(format!(
                "Bessel order must be finite, got {mu}"
            )))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `Some(n)` when the order is an integer.
    pub fn as_integer(self) -> Option<i64> {
        (self.0.fract() == 0.0).then_some(self.0 as i64)
    }
}

/// Convention for the normalized Bessel function `𝒥_μ` at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BesselMode {
    /// `𝒥_μ(0) = 0` by definition.
    PaperLiteral,
    /// `𝒥_μ(0)` is the `z → 0` limit `Γ(μ+½)Γ(½)/(2Γ(μ+1))`.
    #[default]
    Continuous,
}

pub(crate) fn is_nonpositive_integer(x: Complex64) -> bool {
    x.im == 0.0 && x.re <= 0.0 && x.re.fract() == 0.0
}

fn check_not_pole(c: Complex64) -> Result<()> {
    if is_nonpositive_integer(c) {
        Err(Error::Pole(c))
    } else {
        Ok(())
    }
}

/// Tracks the "three consecutive small terms" acceptance rule.
#[derive(Debug)]
pub(crate) struct StopRule {
    tol: f64,
    small_run: usize,
}

impl StopRule {
    pub(crate) fn new(tol: f64) -> Self {
        StopRule { tol, small_run: 0 }
    }

    /// Feed the magnitude of the newest term and of the partial sum that
    /// includes it; returns `true` once the series may stop.
    pub(crate) fn accept(&mut self, term: f64, sum: f64) -> bool {
        if term <= self.tol * sum || term <= ABS_FLOOR {
            self.small_run += 1;
        } else {
            self.small_run = 0;
        }
        self.small_run >= 3
    }
}

pub(crate) fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "tolerance must be positive, got {tol}"
        )))
    }
}
