use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use wulffbez_bench::{point_cloud, random_bodies};
use wulffbez_core::convex_hull;
use wulffbez_core::corpus::{cube, segment_axis, simplex};
use wulffbez_core::inequality::{evaluate, InequalityForm};
use wulffbez_core::measure::{mixed_area_measure, surface_area_measure};
use wulffbez_core::mixed::{mixed_volume, mixed_volume_oracle, BodyTuple};

fn hull(c: &mut Criterion) {
    for n in [2, 3] {
        let pts = point_cloud(1, n);
        c.bench_function(&format!("hull/{n}d"), |b| b.iter(|| convex_hull(&pts, n).unwrap()));
    }
}

fn mixed(c: &mut Criterion) {
    for n in [2, 3] {
        let bodies = random_bodies(2, n, n);
        c.bench_function(&format!("mixed_volume/polarization/{n}d"), |b| {
            b.iter_batched(
                || BodyTuple::from_bodies(bodies.clone()),
                |t| mixed_volume(&t).unwrap(),
                BatchSize::SmallInput,
            )
        });
        c.bench_function(&format!("mixed_volume/oracle/{n}d"), |b| {
            b.iter_batched(
                || BodyTuple::from_bodies(bodies.clone()),
                |t| mixed_volume_oracle(&t).unwrap(),
                BatchSize::SmallInput,
            )
        });
    }
}

fn measures(c: &mut Criterion) {
    let k = cube(3);
    c.bench_function("measure/surface/cube-3", |b| b.iter(|| surface_area_measure(&k)));
    let bodies = random_bodies(3, 3, 2);
    c.bench_function("measure/mixed/3d", |b| b.iter(|| mixed_area_measure(&[&bodies[0], &bodies[1]]).unwrap()));
}

fn inequality(c: &mut Criterion) {
    let ls = [segment_axis(3, 0), segment_axis(3, 1)];
    let k = simplex(3);
    c.bench_function("evaluate/main/simplex-3", |b| b.iter(|| evaluate(InequalityForm::Main, &ls, &k).unwrap()));
    let bodies = random_bodies(4, 3, 3);
    c.bench_function("evaluate/b_full/random-3", |b| {
        b.iter(|| evaluate(InequalityForm::BFull, &bodies, &bodies[0]).unwrap())
    });
}

criterion_group! {
    name = kernels;
    config = Criterion::default().sample_size(10);
    targets = hull, mixed, measures, inequality
}
criterion_main!(kernels);
