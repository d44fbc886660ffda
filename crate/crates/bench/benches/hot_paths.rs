use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use hhverify_core::{
    check_hypothesis, evaluate_bound, integrate, sweep, trapezoid_deviation, BoundParams,
    DevParams, Hypothesis, SweepSpec, TestFunction, TheoremId,
};

fn bench_quadrature(c: &mut Criterion) {
    let f = TestFunction::Exponential;
    c.bench_function("integrate_exp_0_3", |b| {
        b.iter(|| integrate(|x| f.eval(black_box(x)), 0.0, 3.0, 1e-10).unwrap().value)
    });
    let g = TestFunction::power(2.5);
    c.bench_function("integrate_halfpower_0_1", |b| {
        b.iter(|| integrate(|x| g.eval(black_box(x)), 1e-6, 1.0, 1e-10).unwrap().value)
    });
}

fn bench_convexity_scan(c: &mut Criterion) {
    let f = TestFunction::power(4.0);
    let hyp = Hypothesis {
        a: 1.0,
        b: 2.0,
        m: 1.0,
        alpha: 1.0,
        p: 2.0,
        n: 2,
        check_domain: None,
    };
    c.bench_function("hypothesis_grid_64", |b| {
        b.iter(|| check_hypothesis(black_box(&f), &hyp, 64, 1e-9).unwrap().passed)
    });
}

fn bench_deviation(c: &mut Criterion) {
    let f = TestFunction::Exponential;
    let params = DevParams::new(0.5, 3.0, 0.75, 4);
    c.bench_function("trapezoid_deviation_n4", |b| {
        b.iter(|| trapezoid_deviation(black_box(&f), &params).unwrap())
    });
}

fn bench_bound_eval(c: &mut Criterion) {
    let f = TestFunction::power(4.0);
    let mut params = BoundParams::new(1.0, 2.0);
    params.p = Some(2.0);
    params.n = Some(2);
    c.bench_function("evaluate_thm31", |b| {
        b.iter(|| evaluate_bound(TheoremId::Thm31, black_box(&f), &params, 1e-8, None).unwrap())
    });
}

fn bench_small_sweep(c: &mut Criterion) {
    let spec = SweepSpec::new("thm3.1", 64, 7);
    c.bench_function("sweep_thm31_64", |b| b.iter(|| sweep(black_box(&spec)).unwrap().checked));
}

criterion_group!(
    benches,
    bench_quadrature,
    bench_convexity_scan,
    bench_deviation,
    bench_bound_eval,
    bench_small_sweep
);
criterion_main!(benches);
