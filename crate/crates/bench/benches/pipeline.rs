use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use ncphase::oracle::{
    grid_annihilation_residual, quadrature_moments, quartic_roots, AnnihilationGrid, QuarticPoly,
    Stencil,
};
use ncphase::{analyze, integrate_ep, mode_basis_auto, wigner_from_state, IsotropicTdParams};
use ncphase_bench::{anisotropic_spec, sweep_grid};

fn pipeline(c: &mut Criterion) {
    let spec = anisotropic_spec();
    c.bench_function("analyze", |b| b.iter(|| analyze(black_box(&spec)).unwrap()));

    let grid = sweep_grid(20);
    c.bench_function("sweep_20x20", |b| {
        b.iter(|| grid.iter().filter(|s| analyze(s).is_ok()).count())
    });
}

fn oracles(c: &mut Criterion) {
    let a = analyze(&anisotropic_spec()).unwrap();
    let omega = ncphase::modes::build_omega(&a.hamiltonian);
    let p = QuarticPoly::characteristic(&omega);
    c.bench_function("quartic_roots", |b| b.iter(|| quartic_roots(black_box(&p)).unwrap()));

    let w = wigner_from_state(&a.state).unwrap();
    let mut g = c.benchmark_group("oracles_slow");
    g.sample_size(10);
    g.bench_function("quadrature_32^4", |b| b.iter(|| quadrature_moments(black_box(&w)).unwrap()));
    let basis = mode_basis_auto(&a.hamiltonian).unwrap();
    let grid = AnnihilationGrid::covering(&a.state, 5.0, 128, Stencil::Eighth).unwrap();
    g.bench_function("annihilation_128^2", |b| {
        b.iter(|| grid_annihilation_residual(&a.state, &basis, black_box(&grid)))
    });
    g.finish();
}

fn time_dependent(c: &mut Criterion) {
    let p = IsotropicTdParams::constant(1.0, 2.0, 0.05, 1.0, 0.2, 1.0).unwrap();
    let mut g = c.benchmark_group("td");
    g.sample_size(10);
    g.bench_function("ep_10_periods_dt1e-3", |b| {
        b.iter(|| integrate_ep(&p, 0.8, 0.1, 44.43, 1e-3).unwrap())
    });
    g.finish();
}

criterion_group!(benches, pipeline, oracles, time_dependent);
criterion_main!(benches);
