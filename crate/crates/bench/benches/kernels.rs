use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;

use sphfn_bench::{groups, linspace, spectral_params, t_grid};
use sphfn_core::algebra::check_axioms;
use sphfn_core::group::hyp_params;
use sphfn_core::integral_reps::{hc_integral, DEFAULT_MAX_NODES};
use sphfn_core::radial_ode::{integrate, legendre_solve, to_hypergeometric_z, RadialOperator};
use sphfn_core::routes::{evaluate_grid, Route, RouteConfig};
use sphfn_core::special_fn::{bessel_j, confluent_1f1, gauss_2f1};
use sphfn_core::{BesselOrder, Model, SpectralParam};

fn series(c: &mut Criterion) {
    let g = &groups()[3];
    let lam = SpectralParam::new(2.0, 1.0);
    let params = hyp_params(g, lam);
    let mut group = c.benchmark_group("series");
    for t in [0.1, 1.0, 2.0] {
        let z = Complex64::new(to_hypergeometric_z(t), 0.0);
        group.bench_with_input(BenchmarkId::new("gauss_2f1", t), &z, |b, z| {
            b.iter(|| gauss_2f1(&params, black_box(*z), 1e-14))
        });
    }
    group.bench_function("confluent_1f1", |b| {
        b.iter(|| {
            confluent_1f1(
                Complex64::new(0.5, 0.0),
                Complex64::new(1.5, 0.0),
                black_box(Complex64::new(5.0, 0.0)),
                1e-14,
            )
        })
    });
    let order = BesselOrder::new(1.5).unwrap();
    for x in [1.0, 20.0, 40.0] {
        group.bench_with_input(BenchmarkId::new("bessel_j", x), &x, |b, &x| {
            b.iter(|| bessel_j(order, black_box(x), 1e-14))
        });
    }
    group.finish();
}

fn ode(c: &mut Criterion) {
    let ts = t_grid();
    let mut group = c.benchmark_group("ode");
    for g in groups() {
        let op = RadialOperator::general(&g);
        let mu = op.effective_mu(SpectralParam::real(1.5));
        group.bench_function(BenchmarkId::new("integrate", g.name()), |b| {
            b.iter(|| integrate(&op, mu, black_box(&ts), 1e-10))
        });
    }
    let zs = linspace(1.01, 10.0, 20);
    group.bench_function("legendre_solve", |b| {
        b.iter(|| legendre_solve(SpectralParam::real(1.7), black_box(&zs), 1e-10))
    });
    group.finish();
}

fn quadrature(c: &mut Criterion) {
    let mut group = c.benchmark_group("quadrature");
    for t in [0.2, 1.0, 3.0] {
        group.bench_with_input(BenchmarkId::new("hc_integral", t), &t, |b, &t| {
            b.iter(|| hc_integral(SpectralParam::real(1.2), black_box(t), DEFAULT_MAX_NODES))
        });
    }
    group.finish();
}

fn route_sweep(c: &mut Criterion) {
    let cfg = RouteConfig::default();
    let ts = t_grid();
    let model = Model::Group(groups()[2].clone());
    let mut group = c.benchmark_group("route_sweep");
    for route in [Route::Hyp, Route::Ode, Route::StantonTomas] {
        group.bench_function(route.name(), |b| {
            b.iter(|| {
                for lam in spectral_params() {
                    black_box(evaluate_grid(&model, route, lam, &ts, &cfg));
                }
            })
        });
    }
    group.finish();
}

fn axioms(c: &mut Criterion) {
    let mut group = c.benchmark_group("axioms");
    group.sample_size(10);
    group.bench_function("1000_trials", |b| {
        b.iter(|| check_axioms(black_box(1000), 7))
    });
    group.finish();
}

criterion_group!(benches, series, ode, quadrature, route_sweep, axioms);
criterion_main!(benches);
