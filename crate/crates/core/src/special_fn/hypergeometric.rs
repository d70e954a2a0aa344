use std::cmp::Ordering;

use num_complex::Complex64;

use super::{check_tol, is_nonpositive_integer, HypParams, SeriesResult, StopRule, MAX_TERMS};
use crate::error::{Error, Result};

/// Gauss hypergeometric function `₂F₁(a, b; c; z)`.
///
/// The power series is summed directly for `|z| < 1`. On the negative real
/// axis Pfaff's transformation
/// `F(a, b; c; z) = (1−z)^{−a} F(a, c−b; c; z/(z−1))` maps the argument into
/// `[0, 1)`, which also covers `z ≤ −1`. Terminating series (`a` or `b` a
/// nonpositive integer) are summed as polynomials for any `z`.
///
/// `a` and `b` are put into a canonical order before anything else, so the
/// result is bitwise symmetric under swapping them.
pub fn gauss_2f1(p: &HypParams, z: Complex64, tol: f64) -> Result<SeriesResult> {
    check_tol(tol)?;
    let b = p
        .b()
        .ok_or_else(|| Error::domain("₂F₁ needs a `b` parameter"))?;
    let (a, b) = canonical_pair(p.a(), b);
    let c = p.c();

    if z == Complex64::new(0.0, 0.0) {
        return Ok(SeriesResult::exact(Complex64::new(1.0, 0.0)));
    }
    if is_nonpositive_integer(a) || is_nonpositive_integer(b) {
        return sum_2f1(a, b, c, z, tol);
    }
    if z.im == 0.0 && z.re < 0.0 {
        let w = Complex64::new(z.re / (z.re - 1.0), 0.0);
        // (1 − z)^{−a} with 1 − z real and > 1
        let prefactor = (-a * (-z.re).ln_1p()).exp();
        let inner = sum_2f1(a, c - b, c, w, tol)?;
        return Ok(SeriesResult {
            value: prefactor * inner.value,
            terms_used: inner.terms_used,
            tail_estimate: prefactor.norm() * inner.tail_estimate,
        });
    }
    if z.norm() < 1.0 {
        return sum_2f1(a, b, c, z, tol);
    }
    Err(Error::domain(format!(
        "₂F₁ argument {z} is outside the unit disk and the negative real axis"
    )))
}

fn canonical_pair(a: Complex64, b: Complex64) -> (Complex64, Complex64) {
    let order = a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im));
    if order == Ordering::Greater {
        (b, a)
    } else {
        (a, b)
    }
}

fn sum_2f1(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    z: Complex64,
    tol: f64,
) -> Result<SeriesResult> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut rule = StopRule::new(tol);
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        sum += term;
        if rule.accept(term.norm(), sum.norm()) {
            return Ok(SeriesResult {
                value: sum,
                terms_used: k + 2,
                tail_estimate: term.norm(),
            });
        }
    }
    Err(Error::SeriesNonConvergence { terms: MAX_TERMS })
}

/// Kummer's confluent hypergeometric function `₁F₁(a; c; z)`.
///
/// For `Re z < 0` the series is summed after Kummer's transformation
/// `₁F₁(a; c; z) = e^z ₁F₁(c−a; c; −z)`, whose terms do not alternate.
pub fn confluent_1f1(a: Complex64, c: Complex64, z: Complex64, tol: f64) -> Result<SeriesResult> {
    check_tol(tol)?;
    if is_nonpositive_integer(c) {
        return Err(Error::Pole(c));
    }
    if z == Complex64::new(0.0, 0.0) {
        return Ok(SeriesResult::exact(Complex64::new(1.0, 0.0)));
    }
    if z.re < 0.0 && !is_nonpositive_integer(a) {
        let scale = z.exp();
        let inner = sum_1f1(c - a, c, -z, tol)?;
        return Ok(SeriesResult {
            value: scale * inner.value,
            terms_used: inner.terms_used,
            tail_estimate: scale.norm() * inner.tail_estimate,
        });
    }
    sum_1f1(a, c, z, tol)
}

fn sum_1f1(a: Complex64, c: Complex64, z: Complex64, tol: f64) -> Result<SeriesResult> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut rule = StopRule::new(tol);
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) / ((c + kf) * (kf + 1.0)) * z;
        sum += term;
        if rule.accept(term.norm(), sum.norm()) {
            return Ok(SeriesResult {
                value: sum,
                terms_used: k + 2,
                tail_estimate: term.norm(),
            });
        }
    }
    Err(Error::SeriesNonConvergence { terms: MAX_TERMS })
}

/// Deviation of `F(a, b, c; z/b)` from its confluent limit `₁F₁(a; c; z)`
/// for each `b` in `b_values`. The `b` stored in `p` (if any) is ignored.
pub fn confluent_limit(p: &HypParams, z: Complex64, b_values: &[f64]) -> Result<Vec<(f64, f64)>> {
    let tol = 1e-14;
    let limit = confluent_1f1(p.a(), p.c(), z, tol)?.value;
    b_values
        .iter()
        .map(|&b| {
            let arg = z / b;
            if !(arg.norm() < 1.0) {
                return Err(Error::domain(format!(
                    "|z/b| = {} is not < 1 for b = {b}",
                    arg.norm()
                )));
            }
            let params = HypParams::new(p.a(), Complex64::new(b, 0.0), p.c())?;
            let value = gauss_2f1(&params, arg, tol)?.value;
            Ok((b, (value - limit).norm()))
        })
        .collect()
}
