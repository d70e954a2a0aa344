//! Dormand–Prince 5(4) with Hairer's continuous extension, for a
//! two-component complex state.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub(crate) type State = [Complex64; 2];

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

#[derive(Debug, Clone, Copy)]
pub(crate) struct StepControl {
    pub tol: f64,
    pub initial_step: f64,
    pub max_step: f64,
    pub max_steps: usize,
}

/// Interpolated state and its time derivative at each requested point.
#[derive(Debug, Clone)]
pub(crate) struct DenseSamples {
    pub values: Vec<State>,
    pub rates: Vec<State>,
    pub steps: usize,
}

fn comb(y: &State, h: f64, terms: &[(f64, &State)]) -> State {
    let mut out = *y;
    for (coef, k) in terms {
        for i in 0..2 {
            out[i] += k[i] * (h * coef);
        }
    }
    out
}

struct Dense {
    t_old: f64,
    h: f64,
    r: [State; 5],
}

impl Dense {
    fn sample(&self, t: f64) -> (State, State) {
        let th = (t - self.t_old) / self.h;
        let th1 = 1.0 - th;
        let [r1, r2, r3, r4, r5] = &self.r;
        let mut y = [Complex64::default(); 2];
        let mut dy = [Complex64::default(); 2];
        for i in 0..2 {
            y[i] = r1[i] + (r2[i] + (r3[i] + (r4[i] + r5[i] * th1) * th) * th1) * th;
            let d = r2[i]
                + r3[i] * (1.0 - 2.0 * th)
                + r4[i] * (th * (2.0 - 3.0 * th))
                + r5[i] * (2.0 * th * th1 * (1.0 - 2.0 * th));
            dy[i] = d / self.h;
        }
        (y, dy)
    }
}

/// Integrates `y' = rhs(t, y)` from `(t0, y0)` and samples the dense output at
/// the ascending points `grid` (all `≥ t0`). Local error per unit step is
/// held below `tol · (1 + |y|)` componentwise.
pub(crate) fn solve<F>(
    rhs: F,
    t0: f64,
    y0: State,
    grid: &[f64],
    ctl: StepControl,
) -> Result<DenseSamples>
where
    F: Fn(f64, &State) -> State,
{
    let mut values = Vec::with_capacity(grid.len());
    let mut rates = Vec::with_capacity(grid.len());
    let Some(&t_end) = grid.last() else {
        return Ok(DenseSamples {
            values,
            rates,
            steps: 0,
        });
    };

    let mut next = 0;
    while next < grid.len() && grid[next] == t0 {
        values.push(y0);
        rates.push(rhs(t0, &y0));
        next += 1;
    }

    let mut t = t0;
    let mut y = y0;
    let mut k1 = rhs(t, &y);
    let mut h = ctl.initial_step.min(ctl.max_step);
    let mut steps = 0;
    let mut last_reject = false;

    while next < grid.len() {
        if steps >= ctl.max_steps {
            return Err(Error::StepBudget { steps, t });
        }
        let remaining = t_end - t;
        if h >= remaining * (1.0 - 1e-12) {
            h = remaining;
        }
        if h < 1e-14 * t.abs().max(1.0) {
            return Err(Error::StepUnderflow { t });
        }

        let k2 = rhs(t + C2 * h, &comb(&y, h, &[(A21, &k1)]));
        let k3 = rhs(t + C3 * h, &comb(&y, h, &[(A31, &k1), (A32, &k2)]));
        let k4 = rhs(
            t + C4 * h,
            &comb(&y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]),
        );
        let k5 = rhs(
            t + C5 * h,
            &comb(&y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
        );
        let t_new = if h == remaining { t_end } else { t + h };
        let k6 = rhs(
            t_new,
            &comb(
                &y,
                h,
                &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
            ),
        );
        let y_new = comb(
            &y,
            h,
            &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)],
        );
        let k7 = rhs(t_new, &y_new);
        steps += 1;

        let mut ratio: f64 = 0.0;
        for i in 0..2 {
            let err = (k1[i] * E1 + k3[i] * E3 + k4[i] * E4 + k5[i] * E5 + k6[i] * E6 + k7[i] * E7)
                .norm();
            let scale = ctl.tol * (1.0 + y[i].norm().max(y_new[i].norm()));
            ratio = ratio.max(err / scale);
        }
        if !ratio.is_finite() {
            h *= 0.2;
            last_reject = true;
            continue;
        }

        // err/h ~ h^4
        let factor = (0.9 * ratio.powf(-0.25)).clamp(0.2, 5.0);
        if ratio > 1.0 {
            h *= factor.min(1.0);
            last_reject = true;
            continue;
        }

        let mut dense = None;
        while next < grid.len() && grid[next] <= t_new {
            let d = dense.get_or_insert_with(|| {
                let mut r = [[Complex64::default(); 2]; 5];
                for i in 0..2 {
                    let diff = y_new[i] - y[i];
                    let bspl = k1[i] * h - diff;
                    r[0][i] = y[i];
                    r[1][i] = diff;
                    r[2][i] = bspl;
                    r[3][i] = diff - k7[i] * h - bspl;
                    r[4][i] = (k1[i] * D1
                        + k3[i] * D3
                        + k4[i] * D4
                        + k5[i] * D5
                        + k6[i] * D6
                        + k7[i] * D7)
                        * h;
                }
                Dense { t_old: t, h, r }
            });
            let (yi, dyi) = if grid[next] == t_new {
                (y_new, k7)
            } else {
                d.sample(grid[next])
            };
            values.push(yi);
            rates.push(dyi);
            next += 1;
        }

        t = t_new;
        y = y_new;
        k1 = k7;
        let grow = if last_reject { factor.min(1.0) } else { factor };
        h = (h * grow).min(ctl.max_step);
        last_reject = false;
    }

    Ok(DenseSamples {
        values,
        rates,
        steps,
    })
}
