use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use kgring_bench::{level, params, request};
use kgring_core::model::Regime;
use kgring_core::oracle::{solve_polar_numeric, solve_radial_numeric, Channel, PolarProblem, RadialProblem};
use kgring_core::radial::{solve_energies, RadialWave};

fn closed_form(c: &mut Criterion) {
    let mut group = c.benchmark_group("closed_form");
    for dim in [3, 5] {
        let req = request(dim, 0.5, 2);
        group.bench_with_input(BenchmarkId::new("solve_energies", dim), &req, |b, req| {
            b.iter(|| solve_energies(black_box(req)).unwrap())
        });
    }
    let state = solve_energies(&request(3, 0.5, 3)).unwrap().remove(0);
    let wave = RadialWave::from_state(&state, 3).unwrap();
    group.bench_function("radial_norm", |b| b.iter(|| black_box(&wave).norm_integral()));
    group.finish();
}

fn oracles(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    let prob = RadialProblem::new(&params(3, 0.5), Channel::Ring(level(3, 1)), Regime::Relativistic).unwrap();
    group.bench_function("shooting_relativistic", |b| b.iter(|| solve_radial_numeric(black_box(&prob), 1).unwrap()));
    let nr = RadialProblem::new(&params(3, 0.0), Channel::Fixed(1.0), Regime::Nonrelativistic).unwrap();
    group.bench_function("shooting_schrodinger", |b| b.iter(|| solve_radial_numeric(black_box(&nr), 1).unwrap()));
    let polar = PolarProblem::new(3, 0.5, 1.0).unwrap();
    group.bench_function("polar", |b| b.iter(|| solve_polar_numeric(black_box(&polar), 2).unwrap()));
    group.finish();
}

criterion_group!(benches, closed_form, oracles);
criterion_main!(benches);
