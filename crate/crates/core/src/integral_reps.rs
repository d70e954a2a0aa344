//! Quadrature of the two `SL(2, ℝ)` integral representations:
//!
//! * `(1/2π) ∫₀^{2π} (cosh t + sinh t cos θ)^{λ−1/2} dθ = P_{λ−1/2}(cosh t)`,
//! * `c ∫₀^t cos(λs) (cosh t − cosh s)^{−1/2} ds`, whose constant `c` is
//!   calibrated against the first.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::{GroupRank1, Model, SpectralParam};
use crate::special_fn::gauss_2f1;

pub const MIN_NODES: usize = 16;
pub const DEFAULT_MAX_NODES: usize = 4096;
/// Relative change under node doubling accepted as converged.
pub const DOUBLING_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub nodes: usize,
    /// `|Q_N − Q_{N/2}|` at the accepted `N`.
    pub change: f64,
}

/// Fixed-`N` periodic trapezoid rule for the Harish-Chandra integral.
pub fn hc_trapezoid(lam: SpectralParam, t: f64, nodes: usize) -> Complex64 {
    let exponent = lam.0 - 0.5;
    let (e, s) = ((-t).exp(), t.sinh());
    let step = 2.0 * PI / nodes as f64;
    let sum: Complex64 = (0..nodes)
        .map(|j| {
            let half = 0.5 * step * j as f64;
            // cosh t + sinh t cos θ without cancellation near θ = π
            let base = e + 2.0 * s * half.cos().powi(2);
            (exponent * base.ln()).exp()
        })
        .sum();
    sum / nodes as f64
}

fn doubling<F>(max_nodes: usize, rule: F) -> Result<QuadratureResult>
where
    F: Fn(usize) -> Complex64,
{
    if max_nodes < 2 * MIN_NODES {
        return Err(Error::domain(format!(
            "need at least {} nodes, got {max_nodes}",
            2 * MIN_NODES
        )));
    }
    let mut nodes = MIN_NODES;
    let mut prev = rule(nodes);
    let mut change = f64::INFINITY;
    while 2 * nodes <= max_nodes {
        nodes *= 2;
        let next = rule(nodes);
        change = (next - prev).norm();
        prev = next;
        if change <= DOUBLING_TOL * next.norm().max(1.0) {
            return Ok(QuadratureResult {
                value: next,
                nodes,
                change,
            });
        }
    }
    Err(Error::QuadratureNonConvergence { nodes, change })
}

/// `(1/2π) ∫₀^{2π} (cosh t + sinh t cos θ)^{λ−1/2} dθ`, doubling the node
/// count from 16 up to `max_nodes`.
pub fn hc_integral(lam: SpectralParam, t: f64, max_nodes: usize) -> Result<QuadratureResult> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::domain(format!(
            "integral representation needs t >= 0, got {t}"
        )));
    }
    if t == 0.0 {
        return Ok(QuadratureResult {
            value: Complex64::new(1.0, 0.0),
            nodes: 1,
            change: 0.0,
        });
    }
    doubling(max_nodes, |n| hc_trapezoid(lam, t, n))
}

/// `∫₀^t cos(λs)(cosh t − cosh s)^{−1/2} ds` after `s = t sin u`, which
/// leaves a smooth integrand that is even about both ends of `[0, π/2]`; the
/// midpoint rule is then spectrally accurate.
pub fn contour_midpoint(lam: SpectralParam, t: f64, nodes: usize) -> Complex64 {
    let step = FRAC_PI_2 / nodes as f64;
    let sum: Complex64 = (0..nodes)
        .map(|j| {
            let u = step * (j as f64 + 0.5);
            let (x, cu) = (u.sin(), u.cos());
            // cosh t − cosh s = 2 sinh(t(1+x)/2) sinh(t(1−x)/2), 1 − x = cos²u/(1+x)
            let gap = 2.0 * (0.5 * t * (1.0 + x)).sinh() * (0.5 * t * cu * cu / (1.0 + x)).sinh();
            (lam.0 * (t * x)).cos() * (t * cu / gap.sqrt())
        })
        .sum();
    sum * step
}

/// `c ∫₀^t cos(λs)(cosh t − cosh s)^{−1/2} ds` with node doubling. At `t = 0`
/// the `t → 0⁺` limit `c π/√2` is returned.
pub fn contour_integral(
    lam: SpectralParam,
    t: f64,
    c_cal: f64,
    max_nodes: usize,
) -> Result<QuadratureResult> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::domain(format!(
            "integral representation needs t >= 0, got {t}"
        )));
    }
    if t == 0.0 {
        return Ok(QuadratureResult {
            value: Complex64::new(c_cal * PI / SQRT_2, 0.0),
            nodes: 0,
            change: 0.0,
        });
    }
    let raw = doubling(max_nodes, |n| contour_midpoint(lam, t, n))?;
    Ok(QuadratureResult {
        value: raw.value * c_cal,
        nodes: raw.nodes,
        change: raw.change * c_cal.abs(),
    })
}

/// How the spectral index of the contour form is matched to the
/// Harish-Chandra form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContourConvention {
    /// contour at `λ` against `hc` at `λ`.
    Literal,
    /// contour at `λ` against `hc` at `iλ` (Mehler–Fock).
    Rotated,
}

impl ContourConvention {
    pub fn hc_index(self, lam: SpectralParam) -> SpectralParam {
        match self {
            ContourConvention::Literal => lam,
            ContourConvention::Rotated => SpectralParam(lam.0 * Complex64::i()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContourCalibration {
    pub constant: f64,
    pub convention: ContourConvention,
    /// Largest `|contour − hc|` over the validation points.
    pub validation_max_error: f64,
    pub validation_points: Vec<(f64, f64)>,
}

pub const CALIBRATION_VALIDATION_TOL: f64 = 1e-5;

/// `(λ, t)` validation points; the reference point is skipped if present.
const VALIDATION_GRID: [(f64, f64); 6] = [
    (0.5, 0.3),
    (1.0, 0.7),
    (2.0, 0.2),
    (0.8, 1.0),
    (1.5, 0.5),
    (0.3, 0.9),
];

/// Fits `c` at `(λ_ref, t_ref)` under each convention and keeps the one that
/// validates at the remaining points.
pub fn calibrate_contour_constant(
    t_ref: f64,
    lam_ref: SpectralParam,
) -> Result<ContourCalibration> {
    if !(t_ref > 0.0 && t_ref <= 1.0) {
        return Err(Error::domain(format!(
            "reference t must lie in (0, 1], got {t_ref}"
        )));
    }
    if lam_ref.0.im != 0.0 || !lam_ref.is_finite() {
        return Err(Error::domain("reference λ must be real"));
    }
    let points: Vec<(f64, f64)> = VALIDATION_GRID
        .iter()
        .copied()
        .filter(|&(l, t)| (l, t) != (lam_ref.0.re, t_ref))
        .collect();

    let mut best: Option<ContourCalibration> = None;
    for convention in [ContourConvention::Literal, ContourConvention::Rotated] {
        let target = hc_integral(convention.hc_index(lam_ref), t_ref, DEFAULT_MAX_NODES)?.value;
        let raw = contour_integral(lam_ref, t_ref, 1.0, DEFAULT_MAX_NODES)?.value;
        let constant = target.re / raw.re;
        let mut worst: f64 = 0.0;
        for &(l, t) in &points {
            let lam = SpectralParam::real(l);
            let hc = hc_integral(convention.hc_index(lam), t, DEFAULT_MAX_NODES)?.value;
            let ct = contour_integral(lam, t, constant, DEFAULT_MAX_NODES)?.value;
            worst = worst.max((hc - ct).norm());
        }
        let candidate = ContourCalibration {
            constant,
            convention,
            validation_max_error: worst,
            validation_points: points.clone(),
        };
        if best.as_ref().is_none_or(|b| worst < b.validation_max_error) {
            best = Some(candidate);
        }
    }
    let best = best.expect("two conventions tried");
    if best.validation_max_error <= CALIBRATION_VALIDATION_TOL {
        Ok(best)
    } else {
        Err(Error::CalibrationFailed {
            max_error: best.validation_max_error,
        })
    }
}

/// One candidate identification of the Harish-Chandra integral with a
/// hypergeometric model: `hc(λ, t)` against `model(λ·lambda_scale, t·time_scale)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrespondenceCandidate {
    pub model: String,
    pub time_scale: f64,
    pub lambda_scale: f64,
    pub max_error: f64,
}

impl CorrespondenceCandidate {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_error <= tol
    }
}

/// Tries every model × time scale `{1, 2, ½}` × index scale `{1, 2, ½}` on
/// the given `(λ, t)` grid.
pub fn correspondence_survey(lams: &[f64], ts: &[f64]) -> Result<Vec<CorrespondenceCandidate>> {
    let models = [
        Model::Sl2rSec2,
        Model::Group(GroupRank1::sl2r_sec4()),
        Model::Group(GroupRank1::new("rank1-p1", 1, 0)?),
    ];
    let scales = [1.0, 2.0, 0.5];
    let mut out = Vec::new();
    for model in &models {
        for &time_scale in &scales {
            for &lambda_scale in &scales {
                let mut max_error: f64 = 0.0;
                for &l in lams {
                    for &t in ts {
                        let hc = hc_integral(SpectralParam::real(l), t, DEFAULT_MAX_NODES)?.value;
                        let params = model.hyp_params(SpectralParam::real(l * lambda_scale));
                        let s = (t * time_scale).sinh();
                        let hyp = gauss_2f1(&params, Complex64::new(-s * s, 0.0), 1e-14)?.value;
                        max_error = max_error.max((hc - hyp).norm());
                    }
                }
                out.push(CorrespondenceCandidate {
                    model: model.name().to_string(),
                    time_scale,
                    lambda_scale,
                    max_error,
                });
            }
        }
    }
    Ok(out)
}
