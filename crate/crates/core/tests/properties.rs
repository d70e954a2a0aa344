use proptest::prelude::*;

use sphfn_core::algebra::{group_evaluator, sigma_map, IndexedFunction};
use sphfn_core::expansions::{confluent_spherical, st_evaluate, StExpansion};
use sphfn_core::group::{eigenvalue, hyp_params, jacobian_d, EigenvalueScale, GroupRank1};
use sphfn_core::integral_reps::{contour_midpoint, hc_integral, hc_trapezoid};
use sphfn_core::radial_ode::{integrate, integrate_with, IntegrateOptions, RadialOperator};
use sphfn_core::routes::{evaluate, Route, RouteConfig};
use sphfn_core::special_fn::{
    bessel_j, confluent_limit, gauss_2f1, pochhammer, BesselMode, BesselOrder, HypParams,
};
use sphfn_core::{Complex64, Model, SpectralParam};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn group_strategy() -> impl Strategy<Value = GroupRank1> {
    (1u32..6, 0u32..4).prop_map(|(p, q)| GroupRank1::new("g", p, q).unwrap())
}

fn lambda_strategy() -> impl Strategy<Value = SpectralParam> {
    (-2.5f64..2.5, -1.5f64..1.5).prop_map(|(re, im)| SpectralParam::new(re, im))
}

/// Real `(a, b, c)` away from the poles of `c`, with `z` in the series
/// domain (disk or negative axis).
fn hyp_strategy() -> impl Strategy<Value = (f64, f64, f64, f64)> {
    (
        -2.0f64..3.0,
        -2.0f64..3.0,
        0.3f64..4.0,
        prop_oneof![-6.0f64..0.0, 0.0f64..0.7],
    )
}

fn bits(z: Complex64) -> (u64, u64) {
    (z.re.to_bits(), z.im.to_bits())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gauss_is_symmetric_in_a_and_b((a, b, cc, z) in hyp_strategy()) {
        let f = gauss_2f1(&HypParams::real(a, b, cc).unwrap(), c(z), 1e-13);
        let g = gauss_2f1(&HypParams::real(b, a, cc).unwrap(), c(z), 1e-13);
        if let (Ok(f), Ok(g)) = (f, g) {
            prop_assert!((f.value - g.value).norm() <= 1e-13 * f.value.norm().max(1.0));
        }
    }

    #[test]
    fn real_parameters_give_real_values((a, b, cc, z) in hyp_strategy()) {
        if let Ok(f) = gauss_2f1(&HypParams::real(a, b, cc).unwrap(), c(z), 1e-13) {
            prop_assert!(f.value.im.abs() <= 1e-13 * f.value.norm());
        }
    }

    #[test]
    fn tail_estimate_bounds_refinement((a, b, cc, z) in hyp_strategy(), tol_exp in 6i32..11) {
        let tol = 10f64.powi(-tol_exp);
        let p = HypParams::real(a, b, cc).unwrap();
        if let (Ok(coarse), Ok(fine)) = (gauss_2f1(&p, c(z), tol), gauss_2f1(&p, c(z), tol / 10.0)) {
            prop_assert!(coarse.terms_used >= 1);
            prop_assert!((coarse.value - fine.value).norm() <= 10.0 * tol * coarse.value.norm().max(1e-300));
        }
    }

    #[test]
    fn pochhammer_recursion_is_exact(re in -5.0f64..5.0, im in -5.0f64..5.0, k in 0u32..30) {
        let m = Complex64::new(re, im);
        prop_assert_eq!(pochhammer(m, k + 1), pochhammer(m, k) * (m + f64::from(k)));
    }

    #[test]
    fn bessel_three_term_recurrence(n in 1u32..8, x in 0.5f64..20.0) {
        let j = |order: f64| bessel_j(BesselOrder::new(order).unwrap(), x, 1e-14).unwrap().value.re;
        let nf = f64::from(n);
        let (lo, mid, hi) = (j(nf - 1.0), j(nf), j(nf + 1.0));
        let rhs = 2.0 * nf / x * mid;
        prop_assert!((lo + hi - rhs).abs() <= 1e-10 * lo.abs().max(hi.abs()).max(rhs.abs()));
    }

    #[test]
    fn hyp_params_sum_and_difference(g in group_strategy(), lam in lambda_strategy()) {
        let p = hyp_params(&g, lam);
        let (a, b) = (p.a(), p.b().unwrap());
        // equality up to the rounding of a and b themselves
        let ulp = f64::EPSILON * (lam.0.norm() + g.rho0());
        prop_assert!((a + b - g.rho0()).norm() <= 2.0 * ulp);
        prop_assert!((a - b - lam.0).norm() <= 2.0 * ulp);
        prop_assert!(p.c().re >= 1.0 && p.c().im == 0.0);
    }

    #[test]
    fn eigenvalue_is_even(g in group_strategy(), lam in lambda_strategy()) {
        for scale in [EigenvalueScale::Radial, EigenvalueScale::Normalized] {
            prop_assert_eq!(bits(eigenvalue(&g, lam, scale)), bits(eigenvalue(&g, lam.reflected(), scale)));
        }
    }

    #[test]
    fn jacobian_positive_and_increasing_for_large_t(g in group_strategy(), t in 2.0f64..9.9) {
        let d = jacobian_d(&g, t).unwrap();
        prop_assert!(d > 0.0);
        prop_assert!(jacobian_d(&g, t + 0.1).unwrap() > d);
    }

    #[test]
    fn jacobian_positive_near_zero(g in group_strategy(), t in 1e-8f64..2.0) {
        prop_assert!(jacobian_d(&g, t).unwrap() > 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ode_solution_is_even_bitwise(g in group_strategy(), lam in lambda_strategy()) {
        let op = RadialOperator::general(&g);
        let ts = [0.05, 0.4, 1.1, 1.8];
        let a = integrate(&op, op.effective_mu(lam), &ts, 1e-9).unwrap();
        let b = integrate(&op, op.effective_mu(lam.reflected()), &ts, 1e-9).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn ode_residual_within_contract(g in group_strategy(), lam in lambda_strategy(), tol_exp in 7i32..11) {
        let tol = 10f64.powi(-tol_exp);
        let op = RadialOperator::general(&g);
        let ts: Vec<f64> = (1..=20).map(|i| 0.1 * f64::from(i)).collect();
        let sol = integrate(&op, op.effective_mu(lam), &ts, tol).unwrap();
        prop_assert!(sol.residual_max <= 100.0 * tol, "residual {} tol {}", sol.residual_max, tol);
    }

    #[test]
    fn sec2_residual_within_contract(lam in lambda_strategy(), tol_exp in 7i32..11) {
        let tol = 10f64.powi(-tol_exp);
        let op = RadialOperator::sl2r_sec2();
        let ts: Vec<f64> = (1..=15).map(|i| 0.1 * f64::from(i)).collect();
        let sol = integrate(&op, op.effective_mu(lam), &ts, tol).unwrap();
        prop_assert!(sol.residual_max <= 100.0 * tol);
    }

    #[test]
    fn halving_max_step_barely_moves_endpoint(g in group_strategy(), lam in lambda_strategy()) {
        let tol = 1e-9;
        let op = RadialOperator::general(&g);
        let mu = op.effective_mu(lam);
        let run = |max_step: f64| {
            let opts = IntegrateOptions { max_step, ..IntegrateOptions::with_tol(tol) };
            integrate_with(&op, mu, &[2.0], &opts).unwrap().values[0]
        };
        let (coarse, fine) = (run(0.1), run(0.05));
        prop_assert!((coarse - fine).norm() <= 10.0 * tol * coarse.norm().max(1.0));
    }

    #[test]
    fn ode_agrees_with_hypergeometric_route(g in group_strategy(), lam in lambda_strategy(), t in 0.01f64..2.0) {
        let model = Model::Group(g);
        let cfg = RouteConfig::default();
        let hyp = evaluate(&model, Route::Hyp, lam, t, &cfg).unwrap().value;
        let ode = evaluate(&model, Route::Ode, lam, t, &cfg).unwrap().value;
        prop_assert!((hyp - ode).norm() <= 1e-6);
    }

    #[test]
    fn hc_spectral_convergence(l in -3.0f64..3.0, t in 0.05f64..2.0) {
        let lam = SpectralParam::real(l);
        let exact = hc_trapezoid(lam, t, 8192);
        let e64 = (hc_trapezoid(lam, t, 64) - exact).norm();
        let e128 = (hc_trapezoid(lam, t, 128) - exact).norm();
        // below these levels the difference is rounding, not truncation
        let floor = 1e-13 * exact.norm();
        let rounding = 1e-14 * exact.norm();
        prop_assert!(e64 <= floor || e128 <= rounding || e64 / e128 >= 1e2, "e64 {} e128 {}", e64, e128);
    }

    #[test]
    fn integrands_are_finite(lam in lambda_strategy(), t in 0.0f64..4.0) {
        let h = hc_trapezoid(lam, t, 64);
        prop_assert!(h.re.is_finite() && h.im.is_finite());
        if t > 0.0 {
            let c = contour_midpoint(lam, t, 64);
            prop_assert!(c.re.is_finite() && c.im.is_finite());
        }
    }

    #[test]
    fn hc_matches_sec2_hypergeometric_route(l in 0.0f64..3.0, t in 0.0f64..1.5) {
        // sl2r-sec2 at (2λ, t/2)
        let hc = hc_integral(SpectralParam::real(l), t, 4096).unwrap().value;
        let hyp = evaluate(&Model::Sl2rSec2, Route::Hyp, SpectralParam::real(2.0 * l), t / 2.0, &RouteConfig::default())
            .unwrap()
            .value;
        prop_assert!((hc - hyp).norm() <= 1e-6);
    }

    #[test]
    fn prefactor_positive_finite(g in group_strategy(), t in 0.0f64..1.0) {
        let p = StExpansion::new(g).prefactor(t).unwrap();
        prop_assert!(p.is_finite() && p > 0.0);
    }

    #[test]
    fn expansions_are_even_bitwise(g in group_strategy(), lam in lambda_strategy(), t in 0.0f64..1.0) {
        let e = StExpansion::new(g.clone());
        prop_assert_eq!(bits(st_evaluate(&e, lam, t).unwrap()), bits(st_evaluate(&e, lam.reflected(), t).unwrap()));
        for mode in [BesselMode::Continuous, BesselMode::PaperLiteral] {
            let a = confluent_spherical(&g, lam, t, mode).unwrap();
            let b = confluent_spherical(&g, lam.reflected(), t, mode).unwrap();
            prop_assert_eq!(bits(a), bits(b));
        }
    }

    #[test]
    fn sigma_preserves_positive_real_indices(l in 1e-6f64..1e6) {
        let x = IndexedFunction::spherical(c(l));
        prop_assert_eq!(*sigma_map(&x).unwrap().index(), c(l));
    }

    #[test]
    fn weyl_equal_elements_evaluate_alike(g in group_strategy(), lam in lambda_strategy(), t in 0.01f64..1.0) {
        let eval = group_evaluator(g, BesselMode::Continuous);
        let x = IndexedFunction::spherical(lam.0).with_evaluator(eval.clone());
        let y = IndexedFunction::spherical(-lam.0).with_evaluator(eval);
        prop_assert_eq!(&x, &y);
        prop_assert!((x.evaluate(t).unwrap() - y.evaluate(t).unwrap()).norm() <= 1e-10);
        let (sx, sy) = (sigma_map(&x).unwrap(), sigma_map(&y).unwrap());
        prop_assert!((sx.evaluate(t).unwrap() - sy.evaluate(t).unwrap()).norm() <= 1e-10);
    }

    #[test]
    // for a, c, z > 0 every term of the deviation is positive and decreasing in b
    fn confluent_limit_deviation_decreases(a in 0.1f64..2.0, cc in 0.5f64..3.0, z in 0.01f64..3.0) {
        let p = HypParams::real(a, 1.0, cc).unwrap();
        let devs = confluent_limit(&p, c(z), &[10.0, 100.0, 1000.0, 10000.0]).unwrap();
        for w in devs.windows(2) {
            prop_assert!(w[1].1 <= w[0].1 + 1e-12);
        }
    }
}
