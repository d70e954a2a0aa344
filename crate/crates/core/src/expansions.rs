//! Stanton–Tomas expansion
//! `φ_λ(t) ≈ c₀ [t^{n−1}/D(t)]^{1/2} Σ_{m≤M} t^{2m} a_m(t) 𝒥_{(n−2)/2+m}(λt)`,
//! its small-`t` error order, and the confluent spherical function `φ^σ_λ`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::{c0_constant, hyp_params, unit_normalized_c0, GroupRank1, SpectralParam};
use crate::radial_ode::to_hypergeometric_z;
use crate::special_fn::{gauss_2f1, normalized_bessel_complex, BesselMode, BesselOrder};

/// A coefficient `a_m(t)` for `m ≥ 1`. Only `a₀ ≡ 1` is known in closed form.
pub type Coefficient = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Choice of the leading constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    /// `c₀ = π^{1/2} 2^{q/2−2} Γ((n−1)/2)/Γ(n/2)`.
    PaperConstant,
    /// The constant for which the leading term tends to `1 = φ_λ(e)` as
    /// `t → 0⁺` in the continuous `𝒥` convention.
    #[default]
    UnitAtOrigin,
}

pub const DEFAULT_R0: f64 = 1.0;

#[derive(Clone)]
pub struct StExpansion {
    group: GroupRank1,
    coeffs: Vec<Coefficient>,
    r0: f64,
    mode: BesselMode,
    normalization: Normalization,
}

impl fmt::Debug for StExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StExpansion")
            .field("group", &self.group)
            .field("order", &self.order())
            .field("r0", &self.r0)
            .field("mode", &self.mode)
            .field("normalization", &self.normalization)
            .finish()
    }
}

impl StExpansion {
    /// The `M = 0` truncation with default radius, mode and normalization.
    pub fn new(group: GroupRank1) -> Self {
        StExpansion {
            group,
            coeffs: Vec::new(),
            r0: DEFAULT_R0,
            mode: BesselMode::default(),
            normalization: Normalization::default(),
        }
    }

    /// Appends `a_{M+1}`.
    pub fn with_coefficient(mut self, a: Coefficient) -> Self {
        self.coeffs.push(a);
        self
    }

    pub fn with_r0(mut self, r0: f64) -> Result<Self> {
        if !(r0 > 0.0 && r0.is_finite()) {
            return Err(Error::domain(format!(
                "validity radius must be positive, got {r0}"
            )));
        }
        self.r0 = r0;
        Ok(self)
    }

    pub fn with_mode(mut self, mode: BesselMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_normalization(mut self, normalization: Normalization) -> Self {
        self.normalization = normalization;
        self
    }

    pub fn group(&self) -> &GroupRank1 {
        &self.group
    }

    /// Truncation order `M`.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn r0(&self) -> f64 {
        self.r0
    }

    pub fn mode(&self) -> BesselMode {
        self.mode
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn constant(&self) -> Result<f64> {
        match self.normalization {
            Normalization::PaperConstant => c0_constant(&self.group),
            Normalization::UnitAtOrigin => unit_normalized_c0(&self.group),
        }
    }

    /// `c [t^{n−1}/D(t)]^{1/2}`.
    pub fn prefactor(&self, t: f64) -> Result<f64> {
        Ok(self.constant()? * jacobian_ratio(&self.group, t)?.sqrt())
    }

    fn check_t(&self, t: f64) -> Result<()> {
        if t >= 0.0 && t <= self.r0 {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "t = {t} outside the expansion range [0, {}]",
                self.r0
            )))
        }
    }

    fn sum(&self, arg: Complex64, t: f64) -> Result<Complex64> {
        let base = (f64::from(self.group.n()) - 2.0) / 2.0;
        let mut total = normalized_bessel_complex(BesselOrder::new(base)?, arg, self.mode)?;
        let t2 = t * t;
        let mut power = 1.0;
        for (i, a) in self.coeffs.iter().enumerate() {
            power *= t2;
            let order = BesselOrder::new(base + (i + 1) as f64)?;
            total += normalized_bessel_complex(order, arg, self.mode)? * (power * a(t));
        }
        Ok(total)
    }
}

/// `t^{n−1}/D(t) = e^{2ρ₀t} (t/(e^{2t}−1))^p (t/(e^{4t}−1))^q`, with its
/// limit `2^{−2ρ₀}` at `t = 0`.
pub fn jacobian_ratio(g: &GroupRank1, t: f64) -> Result<f64> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::domain(format!("t must be finite and >= 0, got {t}")));
    }
    if t == 0.0 {
        return Ok(2f64.powf(-2.0 * g.rho0()));
    }
    Ok((2.0 * g.rho0() * t).exp()
        * (t / (2.0 * t).exp_m1()).powi(g.p() as i32)
        * (t / (4.0 * t).exp_m1()).powi(g.q() as i32))
}

/// Truncated expansion through `M`, without the remainder.
pub fn st_evaluate(e: &StExpansion, lam: SpectralParam, t: f64) -> Result<Complex64> {
    e.check_t(t)?;
    Ok(e.sum(lam.0 * t, t)? * e.prefactor(t)?)
}

/// `φ^σ_λ`: the expansion with Bessel argument `|λ| t`.
pub fn confluent_spherical_with(e: &StExpansion, lam: SpectralParam, t: f64) -> Result<Complex64> {
    e.check_t(t)?;
    Ok(e.sum(Complex64::new(lam.0.norm() * t, 0.0), t)? * e.prefactor(t)?)
}

/// `φ^σ_λ` at `M = 0` with the default radius and normalization.
pub fn confluent_spherical(
    g: &GroupRank1,
    lam: SpectralParam,
    t: f64,
    mode: BesselMode,
) -> Result<Complex64> {
    confluent_spherical_with(&StExpansion::new(g.clone()).with_mode(mode), lam, t)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorOrderFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual of the log-log fit.
    pub residual: f64,
    pub threshold: f64,
    pub samples: Vec<(f64, f64)>,
}

impl ErrorOrderFit {
    pub fn passed(&self) -> bool {
        self.slope >= self.threshold
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ErrorOrder {
    Fitted(ErrorOrderFit),
    Skipped { reason: String },
}

pub const MIN_FIT_POINTS: usize = 4;
pub const MAX_FIT_T: f64 = 0.1;

/// `t = t_start · 2^{−k}`, `k = 0..points`.
pub fn halving_sequence(t_start: f64, points: usize) -> Vec<f64> {
    (0..points)
        .map(|k| t_start * 0.5f64.powi(k as i32))
        .collect()
}

/// Fits the exponent of `|φ_λ − truncation|` against `t` on a geometric
/// sequence, using the Gauss series as the reference.
pub fn error_order_check(
    e: &StExpansion,
    lam: SpectralParam,
    t_values: &[f64],
) -> Result<ErrorOrder> {
    if t_values.len() < MIN_FIT_POINTS {
        return Err(Error::domain(format!(
            "error-order fit needs at least {MIN_FIT_POINTS} points, got {}",
            t_values.len()
        )));
    }
    for &t in t_values {
        if !(t > 0.0 && t <= MAX_FIT_T) {
            return Err(Error::domain(format!(
                "fit points must lie in (0, {MAX_FIT_T}], got {t}"
            )));
        }
        if lam.0.norm() * t > 1.0 {
            return Err(Error::domain(format!(
                "|λt| = {} exceeds 1 at t = {t}",
                lam.0.norm() * t
            )));
        }
    }
    let ratio = t_values[1] / t_values[0];
    if t_values
        .windows(2)
        .any(|w| ((w[1] / w[0]) / ratio - 1.0).abs() > 1e-9)
        || ratio == 1.0
    {
        return Err(Error::domain("fit points must form a geometric sequence"));
    }

    let params = hyp_params(e.group(), lam);
    let mut samples = Vec::with_capacity(t_values.len());
    for &t in t_values {
        let reference =
            gauss_2f1(&params, Complex64::new(to_hypergeometric_z(t), 0.0), 1e-15)?.value;
        let approx = st_evaluate(e, lam, t)?;
        samples.push((t, (reference - approx).norm()));
    }
    if let Some(&(t, _)) = samples.iter().find(|(_, err)| *err == 0.0) {
        return Ok(ErrorOrder::Skipped {
            reason: format!("deviation is exactly zero at t = {t}"),
        });
    }

    let n = samples.len() as f64;
    let xs: Vec<f64> = samples.iter().map(|(t, _)| t.ln()).collect();
    let ys: Vec<f64> = samples.iter().map(|(_, err)| err.ln()).collect();
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    Ok(ErrorOrder::Fitted(ErrorOrderFit {
        slope,
        intercept,
        residual,
        threshold: 2.0 * (e.order() as f64 + 1.0) - 0.2,
        samples,
    }))
}
