use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use radonpoly::quadrature::GaussLegendre;
use radonpoly::{
    certify, eval_ridge, marr_projection, nodes_equidistant, project_quadrature, reconstruct,
    Angle, Chord, DiskPoint,
};
use radonpoly_bench::fixture;

fn bench_reconstruction(c: &mut Criterion) {
    let mut group = c.benchmark_group("reconstruct");
    for n in [8usize, 12, 16] {
        let (_, _, grid) = fixture(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &grid, |b, grid| {
            b.iter(|| reconstruct(black_box(grid)).unwrap())
        });
    }
    group.finish();
}

fn bench_synthesis(c: &mut Criterion) {
    let mut group = c.benchmark_group("synthesize");
    for n in [8usize, 12] {
        let (rep, nodes, _) = fixture(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &(), |b, _| {
            b.iter(|| radonpoly::synthesize_grid(black_box(&rep), black_box(&nodes)).unwrap())
        });
    }
    group.finish();
}

fn bench_certify(c: &mut Criterion) {
    let nodes = nodes_equidistant(10);
    c.bench_function("certify/equidistant-m10", |b| {
        b.iter(|| certify(black_box(&nodes)))
    });
}

fn bench_projection_oracles(c: &mut Criterion) {
    let theta = Angle::new(0.37);
    let phi = Angle::new(1.91);
    c.bench_function("marr/k12", |b| {
        b.iter(|| marr_projection(12, black_box(theta), black_box(phi), black_box(0.4)).unwrap())
    });
    let chord = Chord::new(phi, 0.4).unwrap();
    c.bench_function("quadrature/k12-order14", |b| {
        b.iter(|| {
            project_quadrature(
                |x, y| eval_ridge(12, theta, DiskPoint::new(x, y)),
                black_box(&chord),
                14,
            )
        })
    });
    c.bench_function("gauss-legendre/order64", |b| {
        b.iter(|| GaussLegendre::new(black_box(64)))
    });
}

criterion_group!(
    benches,
    bench_reconstruction,
    bench_synthesis,
    bench_certify,
    bench_projection_oracles
);
criterion_main!(benches);
