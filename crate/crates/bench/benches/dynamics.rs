use std::f64::consts::PI;

use bispinor_core::{
    build_dirac_hamiltonian, hermitian_eigensystem, run_trajectory, CorrelationSample, DiracParams,
    InitialState, NoiseParams, Propagator, ScenarioConfig,
};
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn eigensystem(c: &mut Criterion) {
    let params = DiracParams::new(1.0, 1.0, 1.0, 1.0, 1.0, PI / 4.0).unwrap();
    let h = build_dirac_hamiltonian(&params).unwrap();
    c.bench_function("jacobi_eigensystem_4x4", |b| {
        b.iter(|| hermitian_eigensystem(black_box(&h), 1e-12).unwrap())
    });
}

fn noisy_step(c: &mut Criterion) {
    let params = DiracParams::new(1.0, 1.0, 1.0, 1.0, 1.0, PI / 4.0).unwrap();
    let propagator = Propagator::new(&params).unwrap();
    let noise = NoiseParams::new(0.5).unwrap();
    let rho0 = InitialState::Cat.density_matrix().unwrap();
    c.bench_function("evolve_noisy_and_measure", |b| {
        b.iter(|| {
            let rho = propagator.evolve_noisy(&rho0, &noise, black_box(3.7)).unwrap();
            CorrelationSample::measure(&rho, 3.7).unwrap()
        })
    });
}

fn trajectory(c: &mut Criterion) {
    let config = ScenarioConfig {
        initial_state: InitialState::Werner,
        ..ScenarioConfig::default()
    };
    let mut group = c.benchmark_group("trajectory");
    group.sample_size(10);
    group.bench_function("werner_2001_samples", |b| {
        b.iter(|| run_trajectory(black_box(&config)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, eigensystem, noisy_step, trajectory);
criterion_main!(benches);
