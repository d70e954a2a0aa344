use std::f64::consts::PI;

use num_complex::Complex64;
use twofloat::TwoFloat;

use super::gamma::gamma_real;
use super::{check_tol, BesselMode, BesselOrder, SeriesResult, StopRule, MAX_TERMS};
use crate::error::{Error, Result};

/// Largest argument accepted by the power series.
pub const BESSEL_MAX_ARG: f64 = 40.0;

// Complex arguments are summed in plain f64, so keep them where cancellation
// stays below ~1e-12.
const COMPLEX_MAX_ARG: f64 = 10.0;

/// Bessel function of the first kind `J_μ(x)` for `x ≥ 0` from its power
/// series `Σ (−1)^k (x/2)^{μ+2k} / (k! Γ(μ+k+1))`.
///
/// The alternating sum is accumulated in double-double arithmetic: the
/// largest terms grow like `e^x/x`, so plain f64 summation would lose all
/// significance well inside `[0, 40]`.
pub fn bessel_j(mu: BesselOrder, x: f64, tol: f64) -> Result<SeriesResult> {
    check_tol(tol)?;
    if !(x >= 0.0) {
        return Err(Error::domain(format!("bessel_j needs x >= 0, got {x}")));
    }
    if x > BESSEL_MAX_ARG {
        return Err(Error::Cancellation {
            x,
            max: BESSEL_MAX_ARG,
        });
    }
    let order = mu.value();
    // J_{−n} = (−1)^n J_n falls out of the series: the first n terms vanish
    // with 1/Γ(k−n+1), and reindexing leaves the order-n series.
    let (nu, sign) = match mu.as_integer() {
        Some(n) if n < 0 => (-order, if n % 2 == 0 { 1.0 } else { -1.0 }),
        _ => (order, 1.0),
    };
    if x == 0.0 {
        let value = if nu == 0.0 {
            1.0
        } else if nu > 0.0 {
            0.0
        } else {
            return Err(Error::domain(format!("J_{order}(0) is infinite")));
        };
        return Ok(SeriesResult::exact(Complex64::new(sign * value, 0.0)));
    }
    let prefactor = sign * (0.5 * x).powf(nu) / gamma_real(nu + 1.0)?;
    let quarter_sq = TwoFloat::new_mul(x, x) / 4.0;
    let (sum, terms, last) = reduced_series(nu, quarter_sq, tol)?;
    Ok(SeriesResult {
        value: Complex64::new(prefactor * sum, 0.0),
        terms_used: terms,
        tail_estimate: (prefactor * last).abs(),
    })
}

/// `Σ_k (−q)^k / (k! (ν+1)_k)`, returning the sum, the number of terms, and
/// the magnitude of the last term.
fn reduced_series(nu: f64, q: TwoFloat, tol: f64) -> Result<(f64, usize, f64)> {
    let mut term = TwoFloat::from(1.0);
    let mut sum = term;
    let mut rule = StopRule::new(tol);
    for k in 0..MAX_TERMS {
        let next = (k + 1) as f64;
        let denom = (TwoFloat::from(nu) + next) * next;
        term = -div_dd(term * q, denom);
        sum += term;
        let (t, s) = (f64::from(term).abs(), f64::from(sum).abs());
        if rule.accept(t, s) {
            return Ok((f64::from(sum), k + 2, t));
        }
    }
    Err(Error::SeriesNonConvergence { terms: MAX_TERMS })
}

// twofloat's double-double quotient is only f64-accurate (no FMA in the
// reciprocal refinement), so divide by the leading word and correct once.
fn div_dd(num: TwoFloat, den: TwoFloat) -> TwoFloat {
    let first = num / den.hi();
    let residual = num - first * den;
    first + residual / den.hi()
}

/// `Γ(μ+½)Γ(½) / (2Γ(μ+1))`, the `z → 0` limit of `𝒥_μ(z)`.
pub fn normalized_bessel_limit(mu: BesselOrder) -> Result<f64> {
    let m = mu.value();
    if m <= -0.5 {
        return Err(Error::domain(format!(
            "normalized Bessel needs μ > −½, got {m}"
        )));
    }
    Ok(gamma_real(m + 0.5)? * PI.sqrt() / (2.0 * gamma_real(m + 1.0)?))
}

/// Normalized Bessel function
/// `𝒥_μ(z) = J_μ(z) z^{−μ} Γ(μ+½) Γ(½) 2^{μ−1}` for real `z ≥ 0`.
///
/// Evaluated through the even series in `z²` so that small `z` does not
/// divide two vanishing quantities. At `z = 0` the mode decides between the
/// literal value `0` and the continuous limit.
pub fn normalized_bessel(mu: BesselOrder, z: f64, mode: BesselMode) -> Result<f64> {
    if !(z >= 0.0) {
        return Err(Error::domain(format!(
            "normalized Bessel needs z >= 0, got {z}"
        )));
    }
    if z > BESSEL_MAX_ARG {
        return Err(Error::Cancellation {
            x: z,
            max: BESSEL_MAX_ARG,
        });
    }
    let limit = normalized_bessel_limit(mu)?;
    if z == 0.0 {
        return Ok(match mode {
            BesselMode::PaperLiteral => 0.0,
            BesselMode::Continuous => limit,
        });
    }
    let (sum, _, _) = reduced_series(mu.value(), TwoFloat::new_mul(z, z) / 4.0, 1e-16)?;
    Ok(limit * sum)
}

/// `𝒥_μ` at a complex argument. It is an even entire function, so this
/// depends on `z` only through `z²`; real arguments of either sign go
/// through [`normalized_bessel`] at `|z|`.
pub fn normalized_bessel_complex(
    mu: BesselOrder,
    z: Complex64,
    mode: BesselMode,
) -> Result<Complex64> {
    if z.im == 0.0 {
        return normalized_bessel(mu, z.re.abs(), mode).map(Complex64::from);
    }
    if z.norm() > COMPLEX_MAX_ARG {
        return Err(Error::Cancellation {
            x: z.norm(),
            max: COMPLEX_MAX_ARG,
        });
    }
    let limit = normalized_bessel_limit(mu)?;
    let q = z * z / 4.0;
    let nu = mu.value();
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut rule = StopRule::new(1e-16);
    for k in 0..MAX_TERMS {
        let next = (k + 1) as f64;
        term = -term * q / ((nu + next) * next);
        sum += term;
        if rule.accept(term.norm(), sum.norm()) {
            return Ok(limit * sum);
        }
    }
    Err(Error::SeriesNonConvergence { terms: MAX_TERMS })
}
