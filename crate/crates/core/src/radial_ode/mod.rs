//! Radial Casimir operators, their integration from the regular singular
//! point `t = 0`, and the Legendre form of the `SL(2, ℝ)` equation.

mod dopri;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::{GroupRank1, Model, SpectralParam};
use dopri::{solve, State, StepControl};

/// Which radial operator is being integrated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorModel {
    /// `d²/dt² + ((p+q) coth t + q tanh t) d/dt`.
    General { p: u32, q: u32 },
    /// `d²/dt² + 2 coth(2t) d/dt + 1`.
    Sl2rSec2,
}

/// A radial operator `f'' + drift(t) f' + potential(t) f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RadialOperator {
    model: OperatorModel,
}

impl RadialOperator {
    pub fn general(g: &GroupRank1) -> Self {
        RadialOperator {
            model: OperatorModel::General { p: g.p(), q: g.q() },
        }
    }

    pub fn sl2r_sec2() -> Self {
        RadialOperator {
            model: OperatorModel::Sl2rSec2,
        }
    }

    pub fn for_model(model: &Model) -> Self {
        match model {
            Model::Sl2rSec2 => Self::sl2r_sec2(),
            Model::Group(g) => Self::general(g),
        }
    }

    pub fn model(&self) -> OperatorModel {
        self.model
    }

    pub fn drift(&self, t: f64) -> f64 {
        match self.model {
            OperatorModel::General { p, q } => {
                f64::from(p + q) / t.tanh() + f64::from(q) * t.tanh()
            }
            OperatorModel::Sl2rSec2 => 2.0 / (2.0 * t).tanh(),
        }
    }

    pub fn potential(&self, _t: f64) -> f64 {
        match self.model {
            OperatorModel::General { .. } => 0.0,
            OperatorModel::Sl2rSec2 => 1.0,
        }
    }

    /// Right-hand side `μ` of `f'' + drift·f' = μ f` for the spherical
    /// function of index `λ`. The potential of the `SL(2, ℝ)` form is moved
    /// across, giving `λ² − 1`; the general form gives `λ² − ρ₀²`.
    pub fn effective_mu(&self, lam: SpectralParam) -> Complex64 {
        let sq = lam.0 * lam.0;
        match self.model {
            OperatorModel::General { p, q } => {
                let rho = f64::from(p + 2 * q) / 2.0;
                sq - rho * rho
            }
            OperatorModel::Sl2rSec2 => sq - 1.0,
        }
    }

    /// `drift(t) = k/t + d₁ t + O(t³)`; returns `(k, d₁)`.
    fn drift_expansion(&self) -> (f64, f64) {
        match self.model {
            OperatorModel::General { p, q } => (f64::from(p + q), f64::from(p + 4 * q) / 3.0),
            OperatorModel::Sl2rSec2 => (1.0, 4.0 / 3.0),
        }
    }
}

/// Coefficients `(α, β)` of the regular solution `f = 1 + α t² + β t⁴ + …`
/// normalized by `f(0) = 1`.
pub fn start_coefficients(op: &RadialOperator, mu: Complex64) -> (Complex64, Complex64) {
    let (k, d1) = op.drift_expansion();
    let alpha = mu / (2.0 * (k + 1.0));
    let beta = alpha * (mu - 2.0 * d1) / (4.0 * (k + 3.0));
    (alpha, beta)
}

pub const MAX_START_OFFSET: f64 = 1e-2;

/// `(f(t0), f'(t0))` from the second-order local expansion.
pub fn singular_start(
    op: &RadialOperator,
    mu: Complex64,
    t0: f64,
) -> Result<(Complex64, Complex64)> {
    singular_start_order(op, mu, t0, 2)
}

/// As [`singular_start`] with expansion order 2 or 4.
pub fn singular_start_order(
    op: &RadialOperator,
    mu: Complex64,
    t0: f64,
    order: u32,
) -> Result<(Complex64, Complex64)> {
    if !(t0 > 0.0 && t0 <= MAX_START_OFFSET) {
        return Err(Error::domain(format!(
            "start offset must lie in (0, {MAX_START_OFFSET}], got {t0}"
        )));
    }
    let [f, df, _] = local_jet(op, mu, t0, order)?;
    Ok((f, df))
}

/// `[f, f', f'']` of the truncated local expansion.
fn local_jet(op: &RadialOperator, mu: Complex64, t: f64, order: u32) -> Result<[Complex64; 3]> {
    let (alpha, beta) = start_coefficients(op, mu);
    let beta = match order {
        2 => Complex64::default(),
        4 => beta,
        _ => {
            return Err(Error::domain(format!(
                "expansion order must be 2 or 4, got {order}"
            )))
        }
    };
    let t2 = t * t;
    Ok([
        1.0 + alpha * t2 + beta * t2 * t2,
        alpha * (2.0 * t) + beta * (4.0 * t2 * t),
        alpha * 2.0 + beta * (12.0 * t2),
    ])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrateOptions {
    pub tol: f64,
    /// Offset of the series start from the singular point.
    pub t0: f64,
    /// Order of the local expansion at `t0` (2 or 4).
    pub expansion_order: u32,
    pub max_step: f64,
    pub max_steps: usize,
}

impl Default for IntegrateOptions {
    fn default() -> Self {
        IntegrateOptions {
            tol: 1e-10,
            t0: 1e-3,
            expansion_order: 2,
            max_step: f64::INFINITY,
            max_steps: 200_000,
        }
    }
}

impl IntegrateOptions {
    pub fn with_tol(tol: f64) -> Self {
        IntegrateOptions {
            tol,
            ..Self::default()
        }
    }
}

/// Solution sampled on a grid, with the residual of the equation evaluated
/// from the dense output.
#[derive(Debug, Clone, PartialEq)]
pub struct OdeSolution {
    pub grid: Vec<f64>,
    pub values: Vec<Complex64>,
    pub derivative_values: Vec<Complex64>,
    pub residual_max: f64,
    pub steps: usize,
}

impl OdeSolution {
    pub fn last_value(&self) -> Option<Complex64> {
        self.values.last().copied()
    }
}

fn check_grid(grid: &[f64], lower: f64, what: &str) -> Result<()> {
    if grid.iter().any(|x| !x.is_finite() || *x < lower) {
        return Err(Error::domain(format!(
            "{what} grid points must be finite and >= {lower}"
        )));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::domain(format!(
            "{what} grid must be strictly ascending"
        )));
    }
    Ok(())
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "tolerance must be positive, got {tol}"
        )))
    }
}

pub fn integrate(
    op: &RadialOperator,
    mu: Complex64,
    t_grid: &[f64],
    tol: f64,
) -> Result<OdeSolution> {
    integrate_with(op, mu, t_grid, &IntegrateOptions::with_tol(tol))
}

/// Integrates `f'' + drift·f' = μ f` with `f(0) = 1`, `f'(0) = 0`. Grid
/// points below `t0` are taken from the local expansion (order 4).
pub fn integrate_with(
    op: &RadialOperator,
    mu: Complex64,
    t_grid: &[f64],
    opts: &IntegrateOptions,
) -> Result<OdeSolution> {
    check_tol(opts.tol)?;
    check_grid(t_grid, f64::MIN_POSITIVE, "t")?;
    let (f0, df0) = singular_start_order(op, mu, opts.t0, opts.expansion_order)?;

    let split = t_grid.partition_point(|&t| t < opts.t0);
    let mut values = Vec::with_capacity(t_grid.len());
    let mut derivs = Vec::with_capacity(t_grid.len());
    let mut residual_max: f64 = 0.0;
    let residual = |t: f64, f: Complex64, df: Complex64, d2f: Complex64| {
        (d2f + op.drift(t) * df - mu * f).norm()
    };

    for &t in &t_grid[..split] {
        let [f, df, d2f] = local_jet(op, mu, t, 4)?;
        residual_max = residual_max.max(residual(t, f, df, d2f));
        values.push(f);
        derivs.push(df);
    }

    let rhs = |t: f64, y: &State| [y[1], mu * y[0] - op.drift(t) * y[1]];
    let ctl = StepControl {
        tol: opts.tol,
        initial_step: 0.1 * opts.t0,
        max_step: opts.max_step,
        max_steps: opts.max_steps,
    };
    let run = solve(rhs, opts.t0, [f0, df0], &t_grid[split..], ctl)?;
    for ((&t, y), dy) in t_grid[split..].iter().zip(&run.values).zip(&run.rates) {
        residual_max = residual_max.max(residual(t, y[0], y[1], dy[1]));
        values.push(y[0]);
        derivs.push(y[1]);
    }

    Ok(OdeSolution {
        grid: t_grid.to_vec(),
        values,
        derivative_values: derivs,
        residual_max,
        steps: run.steps,
    })
}

/// `z = −sinh²t`, the argument of the Gauss series.
pub fn to_hypergeometric_z(t: f64) -> f64 {
    let s = t.sinh();
    -(s * s)
}

/// Inverse of [`to_hypergeometric_z`] on `t ≥ 0`.
pub fn from_hypergeometric_z(z: f64) -> f64 {
    (-z).sqrt().asinh()
}

/// `z = cosh 2t`, the Legendre variable.
pub fn to_legendre_z(t: f64) -> f64 {
    (2.0 * t).cosh()
}

/// Offset from `z = 1` where the Legendre integration starts.
pub const LEGENDRE_START: f64 = 1e-3;
const LEGENDRE_TERMS: usize = 8;

/// Coefficients `c_k` of the regular solution `Φ = Σ c_k (z − 1)^k` of
/// `(1 − z²)Φ'' − 2zΦ' + κΦ = 0`, `κ = (λ² − 1)/4`, with `c₀ = 1`.
pub fn legendre_start_coefficients(lam: SpectralParam, count: usize) -> Vec<Complex64> {
    let kappa = (lam.0 * lam.0 - 1.0) / 4.0;
    let mut c = Vec::with_capacity(count);
    let mut ck = Complex64::new(1.0, 0.0);
    for k in 0..count {
        c.push(ck);
        let kf = k as f64;
        ck *= (kappa - kf * (kf + 1.0)) / (2.0 * (kf + 1.0) * (kf + 1.0));
    }
    c
}

fn legendre_jet(coeffs: &[Complex64], w: f64) -> [Complex64; 3] {
    let mut jet = [Complex64::default(); 3];
    for &c in coeffs.iter().rev() {
        jet[2] = jet[2] * w + jet[1] * 2.0;
        jet[1] = jet[1] * w + jet[0];
        jet[0] = jet[0] * w + c;
    }
    jet
}

/// Regular Legendre solution `Φ(1) = 1` on an ascending grid of `z ≥ 1`.
pub fn legendre_solve(lam: SpectralParam, z_grid: &[f64], tol: f64) -> Result<OdeSolution> {
    check_tol(tol)?;
    check_grid(z_grid, 1.0, "z")?;
    let kappa = (lam.0 * lam.0 - 1.0) / 4.0;
    let coeffs = legendre_start_coefficients(lam, LEGENDRE_TERMS);
    let w_grid: Vec<f64> = z_grid.iter().map(|z| z - 1.0).collect();
    let residual = |w: f64, jet: [Complex64; 3]| {
        let z = 1.0 + w;
        (jet[2] * (-w * (w + 2.0)) - jet[1] * (2.0 * z) + kappa * jet[0]).norm()
    };

    let split = w_grid.partition_point(|&w| w < LEGENDRE_START);
    let mut values = Vec::with_capacity(z_grid.len());
    let mut derivs = Vec::with_capacity(z_grid.len());
    let mut residual_max: f64 = 0.0;
    for &w in &w_grid[..split] {
        let jet = legendre_jet(&coeffs, w);
        residual_max = residual_max.max(residual(w, jet));
        values.push(jet[0]);
        derivs.push(jet[1]);
    }

    let start = legendre_jet(&coeffs, LEGENDRE_START);
    let rhs = |w: f64, y: &State| {
        [
            y[1],
            (kappa * y[0] - y[1] * (2.0 * (1.0 + w))) / (w * (w + 2.0)),
        ]
    };
    let ctl = StepControl {
        tol,
        initial_step: 0.1 * LEGENDRE_START,
        max_step: f64::INFINITY,
        max_steps: 200_000,
    };
    let run = solve(
        rhs,
        LEGENDRE_START,
        [start[0], start[1]],
        &w_grid[split..],
        ctl,
    )?;
    for ((&w, y), dy) in w_grid[split..].iter().zip(&run.values).zip(&run.rates) {
        residual_max = residual_max.max(residual(w, [y[0], y[1], dy[1]]));
        values.push(y[0]);
        derivs.push(y[1]);
    }

    Ok(OdeSolution {
        grid: z_grid.to_vec(),
        values,
        derivative_values: derivs,
        residual_max,
        steps: run.steps,
    })
}
