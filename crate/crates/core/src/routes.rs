//! One entry point for every evaluation route of `φ_λ(t)` on a model.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::expansions::{
    confluent_spherical_with, st_evaluate, Normalization, StExpansion, DEFAULT_R0,
};
use crate::group::{Model, SpectralParam};
use crate::integral_reps::{
    calibrate_contour_constant, contour_integral, hc_integral, ContourCalibration,
    ContourConvention, DEFAULT_MAX_NODES,
};
use crate::radial_ode::{integrate_with, to_hypergeometric_z, IntegrateOptions, RadialOperator};
use crate::special_fn::{gauss_2f1, BesselMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Route {
    Hyp,
    Ode,
    IntegralHc,
    IntegralContour,
    StantonTomas,
    Confluent,
}

impl Route {
    pub const ALL: [Route; 6] = [
        Route::Hyp,
        Route::Ode,
        Route::IntegralHc,
        Route::IntegralContour,
        Route::StantonTomas,
        Route::Confluent,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Route::Hyp => "hyp",
            Route::Ode => "ode",
            Route::IntegralHc => "integral-hc",
            Route::IntegralContour => "integral-contour",
            Route::StantonTomas => "stanton-tomas",
            Route::Confluent => "confluent",
        }
    }

    /// Whether the route can evaluate this model at all.
    pub fn supports(self, model: &Model) -> bool {
        match self {
            Route::Hyp | Route::Ode => true,
            Route::IntegralHc | Route::IntegralContour => matches!(model, Model::Sl2rSec2),
            Route::StantonTomas | Route::Confluent => matches!(model, Model::Group(_)),
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Route {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Route::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::domain(format!("unknown route {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RouteConfig {
    pub series_tol: f64,
    pub ode: IntegrateOptions,
    pub max_nodes: usize,
    pub mode: BesselMode,
    pub normalization: Normalization,
    pub r0: f64,
}

impl Default for RouteConfig {
    fn default() -> Self {
        RouteConfig {
            series_tol: 1e-14,
            ode: IntegrateOptions::with_tol(1e-10),
            max_nodes: DEFAULT_MAX_NODES,
            mode: BesselMode::Continuous,
            normalization: Normalization::UnitAtOrigin,
            r0: DEFAULT_R0,
        }
    }
}

/// Route-specific information accompanying a value.
#[derive(Debug, Clone, PartialEq)]
pub enum Diagnostics {
    Series {
        terms_used: usize,
        tail_estimate: f64,
    },
    Ode {
        residual_max: f64,
        steps: usize,
    },
    Quadrature {
        nodes: usize,
        change: f64,
        mapped_lambda: Complex64,
        mapped_t: f64,
        constant: Option<f64>,
    },
    Expansion {
        order: usize,
        prefactor: f64,
    },
    Origin,
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostics::Series {
                terms_used,
                tail_estimate,
            } => {
                write!(f, "terms_used={terms_used} tail_estimate={tail_estimate:e}")
            }
            Diagnostics::Ode {
                residual_max,
                steps,
            } => write!(f, "residual_max={residual_max:e} steps={steps}"),
            Diagnostics::Quadrature {
                nodes,
                change,
                mapped_lambda,
                mapped_t,
                constant,
            } => {
                write!(
                    f,
                    "nodes={nodes} change={change:e} evaluated_at=(lambda={}, t={mapped_t})",
                    SpectralParam(*mapped_lambda)
                )?;
                if let Some(c) = constant {
                    write!(f, " c={c}")?;
                }
                Ok(())
            }
            Diagnostics::Expansion { order, prefactor } => {
                write!(f, "order={order} prefactor={prefactor}")
            }
            Diagnostics::Origin => f.write_str("t=0 normalization"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RouteValue {
    pub value: Complex64,
    pub diagnostics: Diagnostics,
}

pub const CONTOUR_REFERENCE: (f64, f64) = (0.5, 1.2);

/// Contour constant calibrated once per process at `(t, λ) = (0.5, 1.2)`.
pub fn contour_calibration() -> Result<&'static ContourCalibration> {
    static CELL: OnceLock<Result<ContourCalibration>> = OnceLock::new();
    CELL.get_or_init(|| {
        calibrate_contour_constant(
            CONTOUR_REFERENCE.0,
            SpectralParam::real(CONTOUR_REFERENCE.1),
        )
    })
    .as_ref()
    .map_err(Clone::clone)
}

fn check_point(model: &Model, route: Route, t: f64) -> Result<()> {
    if !t.is_finite() {
        return Err(Error::domain(format!("t must be finite, got {t}")));
    }
    if t < 0.0 && route != Route::Hyp {
        return Err(Error::domain(format!(
            "route {route} needs t >= 0, got {t}"
        )));
    }
    if !route.supports(model) {
        let needs = match route {
            Route::IntegralHc | Route::IntegralContour => "the sl2r-sec2 model",
            _ => "a (p, q) group",
        };
        return Err(Error::domain(format!(
            "route {route} needs {needs}, got {}",
            model.name()
        )));
    }
    Ok(())
}

fn expansion(model: &Model, cfg: &RouteConfig) -> Result<StExpansion> {
    let g = model
        .group()
        .ok_or_else(|| Error::domain("expansion routes need a (p, q) group"))?;
    StExpansion::new(g.clone())
        .with_mode(cfg.mode)
        .with_normalization(cfg.normalization)
        .with_r0(cfg.r0)
}

/// Evaluates `φ_λ(t)` on `model` by `route`.
///
/// The integral representations are stated for `SL(2, ℝ)` in the time
/// normalization where they equal `P_{λ−1/2}(cosh t)`; on `sl2r-sec2` they
/// are evaluated at `(λ/2, 2t)`, which the diagnostics report.
pub fn evaluate(
    model: &Model,
    route: Route,
    lam: SpectralParam,
    t: f64,
    cfg: &RouteConfig,
) -> Result<RouteValue> {
    check_point(model, route, t)?;
    match route {
        Route::Hyp => {
            let r = gauss_2f1(
                &model.hyp_params(lam),
                Complex64::new(to_hypergeometric_z(t), 0.0),
                cfg.series_tol,
            )?;
            Ok(RouteValue {
                value: r.value,
                diagnostics: Diagnostics::Series {
                    terms_used: r.terms_used,
                    tail_estimate: r.tail_estimate,
                },
            })
        }
        Route::Ode => evaluate_grid(model, route, lam, &[t], cfg)
            .pop()
            .expect("one point"),
        Route::IntegralHc => {
            let (mapped_lambda, mapped_t) = (lam.0 / 2.0, 2.0 * t);
            let r = hc_integral(SpectralParam(mapped_lambda), mapped_t, cfg.max_nodes)?;
            Ok(RouteValue {
                value: r.value,
                diagnostics: Diagnostics::Quadrature {
                    nodes: r.nodes,
                    change: r.change,
                    mapped_lambda,
                    mapped_t,
                    constant: None,
                },
            })
        }
        Route::IntegralContour => {
            let cal = contour_calibration()?;
            let mapped_lambda = match cal.convention {
                ContourConvention::Literal => lam.0 / 2.0,
                ContourConvention::Rotated => -Complex64::i() * lam.0 / 2.0,
            };
            let mapped_t = 2.0 * t;
            let r = contour_integral(
                SpectralParam(mapped_lambda),
                mapped_t,
                cal.constant,
                cfg.max_nodes,
            )?;
            Ok(RouteValue {
                value: r.value,
                diagnostics: Diagnostics::Quadrature {
                    nodes: r.nodes,
                    change: r.change,
                    mapped_lambda,
                    mapped_t,
                    constant: Some(cal.constant),
                },
            })
        }
        Route::StantonTomas | Route::Confluent => {
            let e = expansion(model, cfg)?;
            let value = if route == Route::StantonTomas {
                st_evaluate(&e, lam, t)?
            } else {
                confluent_spherical_with(&e, lam, t)?
            };
            Ok(RouteValue {
                value,
                diagnostics: Diagnostics::Expansion {
                    order: e.order(),
                    prefactor: e.prefactor(t)?,
                },
            })
        }
    }
}

/// Evaluates a set of `t` values; the ODE route integrates once over the
/// sorted distinct points.
pub fn evaluate_grid(
    model: &Model,
    route: Route,
    lam: SpectralParam,
    ts: &[f64],
    cfg: &RouteConfig,
) -> Vec<Result<RouteValue>> {
    if route != Route::Ode {
        return ts
            .iter()
            .map(|&t| evaluate(model, route, lam, t, cfg))
            .collect();
    }
    let op = RadialOperator::for_model(model);
    let mu = op.effective_mu(lam);
    let mut positive: Vec<f64> = ts
        .iter()
        .copied()
        .filter(|t| t.is_finite() && *t > 0.0)
        .collect();
    positive.sort_by(f64::total_cmp);
    positive.dedup();
    let solved = integrate_with(&op, mu, &positive, &cfg.ode);
    let index: BTreeMap<u64, usize> = positive
        .iter()
        .enumerate()
        .map(|(i, t)| (t.to_bits(), i))
        .collect();

    ts.iter()
        .map(|&t| {
            check_point(model, route, t)?;
            if t == 0.0 {
                return Ok(RouteValue {
                    value: Complex64::new(1.0, 0.0),
                    diagnostics: Diagnostics::Origin,
                });
            }
            let sol = solved.as_ref().map_err(Clone::clone)?;
            Ok(RouteValue {
                value: sol.values[index[&t.to_bits()]],
                diagnostics: Diagnostics::Ode {
                    residual_max: sol.residual_max,
                    steps: sol.steps,
                },
            })
        })
        .collect()
}
