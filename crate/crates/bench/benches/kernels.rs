use criterion::{black_box, criterion_group, criterion_main, Criterion};
use mkse_core::dynamics::{EtdStepper, Nonlinearity, TrajectoryState};
use mkse_core::observables::record;
use mkse_core::{dealiased_product, random_field, Grid};
use std::f64::consts::TAU;

fn transforms(c: &mut Criterion) {
    let grid_1d = Grid::line(128, TAU).unwrap();
    let grid_2d = Grid::square(64, TAU).unwrap();
    let u1 = random_field(grid_1d, 0, 1.0, 3.0).unwrap();
    let u2 = random_field(grid_2d, 0, 1.0, 3.0).unwrap();

    c.bench_function("inverse_forward_1d_128", |b| {
        b.iter(|| {
            black_box(&u1)
                .inverse_transform()
                .unwrap()
                .forward_transform()
        })
    });
    c.bench_function("inverse_forward_2d_64", |b| {
        b.iter(|| {
            black_box(&u2)
                .inverse_transform()
                .unwrap()
                .forward_transform()
        })
    });
    c.bench_function("dealiased_cube_2d_64", |b| {
        b.iter(|| dealiased_product(&[&u2, &u2, &u2], 2.0).unwrap())
    });
    c.bench_function("sobolev_seminorms_2d_64", |b| {
        b.iter(|| {
            for s in 0..=4 {
                black_box(u2.sobolev_seminorm(s as f64));
            }
        })
    });
    c.bench_function("record_observables_2d_64", |b| {
        b.iter(|| record(black_box(&u2), 0.0))
    });
}

fn stepper(c: &mut Criterion) {
    let grid_1d = Grid::line(128, TAU).unwrap();
    let grid_2d = Grid::square(64, TAU).unwrap();
    let step_1d = EtdStepper::new(grid_1d, 1.0, 0.005, Nonlinearity::Full);
    let step_2d = EtdStepper::new(grid_2d, 1.0, 0.01, Nonlinearity::Full);
    let state_1d = TrajectoryState {
        t: 0.0,
        u_hat: random_field(grid_1d, 0, 1.0, 3.0).unwrap(),
    };
    let state_2d = TrajectoryState {
        t: 0.0,
        u_hat: random_field(grid_2d, 0, 1.0, 3.0).unwrap(),
    };

    c.bench_function("etdrk4_step_1d_128", |b| {
        b.iter(|| step_1d.step(black_box(&state_1d)).unwrap())
    });
    c.bench_function("etdrk4_step_2d_64", |b| {
        b.iter(|| step_2d.step(black_box(&state_2d)).unwrap())
    });
}

criterion_group!(benches, transforms, stepper);
criterion_main!(benches);
