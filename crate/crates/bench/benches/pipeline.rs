use std::f64::consts::FRAC_PI_4;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use spin_unruh::entanglement::{bell_rho_ar, build_general_rho_ar, negativity};
use spin_unruh::rindler::solve_vacuum_numerically;
use spin_unruh::spintrace::{maximally_entangled_occupation_state, occupation_rho};
use spin_unruh::{BellKind, Factor, SqueezingParams, StateParams};
use spin_unruh_cli::{run_sweep, Family, Format, Grid, SweepConfig};

fn bench_pipeline(c: &mut Criterion) {
    let p = SqueezingParams::new(0.4, 0.7).unwrap();
    let sp = StateParams::real(0.3, 0.4, -0.2, 0.1).unwrap();

    c.bench_function("vacuum_nullspace", |b| b.iter(|| solve_vacuum_numerically(black_box(&p)).unwrap()));
    c.bench_function("general_rho_ar", |b| b.iter(|| build_general_rho_ar(black_box(&sp), &p).unwrap()));
    c.bench_function("bell_negativity", |b| {
        b.iter(|| negativity(&bell_rho_ar(BellKind::PsiMinus, black_box(&p)).unwrap(), Factor::RobI).unwrap())
    });
    c.bench_function("occupation_rho", |b| {
        b.iter(|| occupation_rho(&maximally_entangled_occupation_state(), black_box(&p)).unwrap())
    });
}

fn bench_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    for steps in [16, 64] {
        let config = SweepConfig {
            family: Family::Bell(BellKind::PhiPlus),
            grid: Grid::R { min: 0.0, max: FRAC_PI_4, steps },
            phi: 0.0,
            format: Format::Csv,
            out: None,
        };
        group.bench_with_input(BenchmarkId::from_parameter(steps), &config, |b, cfg| {
            b.iter(|| run_sweep(cfg).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_pipeline, bench_sweep);
criterion_main!(benches);
