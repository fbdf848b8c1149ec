//! Benchmarks for the hot paths: quadrature, the weight family, functional
//! evaluation, the extremal solve, and the joint continuation step.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use conekit_core::{
    cone_construct, corpus, f_k, integrate_boundary, integrate_interior, solve_b, AffineFunction,
    ConeConfig, ConeMode, Functionals, QuadratureSpec, SolverConfig, WeightParams,
};

fn bench_weight_family(c: &mut Criterion) {
    c.bench_function("f_k closed form", |b| {
        b.iter(|| f_k(black_box(2), black_box(-0.02), black_box(0.7)).unwrap())
    });
    c.bench_function("f_k series branch", |b| {
        b.iter(|| f_k(black_box(2), black_box(1e-5), black_box(0.7)).unwrap())
    });
}

fn bench_quadrature(c: &mut Criterion) {
    let p = corpus::trapezoid();
    let spec = QuadratureSpec::default();
    let ell = AffineFunction::new(vec![0.3, -0.2], 0.1);
    c.bench_function("interior exp integral (trapezoid)", |b| {
        b.iter(|| integrate_interior(&p, |x| black_box(&ell).eval(x).exp(), &spec).unwrap())
    });
    c.bench_function("boundary exp integral (trapezoid)", |b| {
        b.iter(|| integrate_boundary(&p, |x| black_box(&ell).eval(x).exp(), &spec).unwrap())
    });
}

fn bench_functionals(c: &mut Criterion) {
    let p = corpus::trapezoid();
    let f = Functionals::new(&p).unwrap();
    let ell = AffineFunction::new(vec![0.2, -0.1], 0.05);
    let params = WeightParams::lambda(1.5, -0.1, 0.3);
    c.bench_function("einstein_hilbert (trapezoid)", |b| {
        b.iter(|| {
            f.einstein_hilbert(black_box(&params), black_box(&ell))
                .unwrap()
        })
    });
    c.bench_function("extremal_affine (trapezoid)", |b| {
        b.iter(|| f.extremal_affine().unwrap())
    });
    let norm = f.coords().affine(&[0.1, -0.05]);
    c.bench_function("rescaled gradient (trapezoid)", |b| {
        b.iter(|| f.gradient(0.1, -0.05, 0.2, black_box(&norm)).unwrap())
    });
}

fn bench_solver(c: &mut Criterion) {
    let p = corpus::trapezoid();
    let f = Functionals::new(&p).unwrap();
    let cfg = SolverConfig::default();
    c.bench_function("solve_b at (0.05, -0.02)", |b| {
        b.iter(|| solve_b(&f, 0.05, -0.02, &cfg).unwrap())
    });
    let cone_cfg = ConeConfig::default();
    c.bench_function("cone_construct k = 50", |b| {
        b.iter(|| cone_construct(&f, 2, ConeMode::Product { k: 50 }, &cone_cfg).unwrap())
    });
}

criterion_group!(
    benches,
    bench_weight_family,
    bench_quadrature,
    bench_functionals,
    bench_solver
);
criterion_main!(benches);
