use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fyforge_bench::{six_cycle, supersolvable};
use fyforge_core::fy::{certify_quadratic, hilbert_x, GeneratorOrder};
use fyforge_core::normal::NormalCtx;
use fyforge_core::{GeometricLattice, Graph};
use std::hint::black_box;

fn lattice_build(c: &mut Criterion) {
    let mut g = c.benchmark_group("lattice");
    for n in [4, 5] {
        let m = Graph::complete(n).unwrap().matroid().unwrap();
        g.bench_with_input(BenchmarkId::new("complete", n), &m, |b, m| b.iter(|| GeometricLattice::from_matroid(black_box(m)).unwrap()));
    }
    g.finish();
}

fn groebner(c: &mut Criterion) {
    let mut g = c.benchmark_group("groebner");
    g.sample_size(10);
    for (id, bl) in supersolvable().into_iter().chain([six_cycle()]) {
        let order = GeneratorOrder::from_chain(&bl);
        g.bench_function(BenchmarkId::new("quadratic", &id), |b| b.iter(|| certify_quadratic(black_box(&bl), &order).is_groebner()));
        g.bench_function(BenchmarkId::new("hilbert", &id), |b| b.iter(|| hilbert_x(black_box(&bl))));
    }
    g.finish();
}

fn bijection(c: &mut Criterion) {
    let mut g = c.benchmark_group("bijection");
    g.sample_size(10);
    for (id, bl) in supersolvable() {
        g.bench_function(&id, |b| b.iter(|| NormalCtx::new(bl.clone()).unwrap().bijection_report().unwrap().coherent()));
    }
    g.finish();
}

criterion_group!(benches, lattice_build, groebner, bijection);
criterion_main!(benches);
