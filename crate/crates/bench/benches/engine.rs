use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use lietensor_bench::{algebra, dependent_matrix};
use lietensor_core::exactlin::rank;
use lietensor_core::tensorcalc::{exterior_square, tensor_square, triple_tensor_structural};

fn bench_rank(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank");
    for n in [16, 32, 64] {
        let m = dependent_matrix(n, n, 7);
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| rank(black_box(m))));
    }
    group.finish();
}

fn bench_squares(c: &mut Criterion) {
    let mut group = c.benchmark_group("squares");
    for spec in ["H:2", "L1", "sum(H:2,H:2)"] {
        let alg = algebra(spec);
        group.bench_with_input(BenchmarkId::new("tensor", spec), &alg, |b, a| {
            b.iter(|| tensor_square(black_box(a)).unwrap().quotient_dim())
        });
        group.bench_with_input(BenchmarkId::new("exterior", spec), &alg, |b, a| {
            b.iter(|| exterior_square(black_box(a)).unwrap().quotient_dim())
        });
    }
    group.finish();
}

fn bench_triple(c: &mut Criterion) {
    let mut group = c.benchmark_group("triple_tensor");
    group.sample_size(10);
    for m in 1..=4 {
        let alg = algebra(&format!("H:{m}"));
        group.bench_with_input(BenchmarkId::new("heisenberg", m), &alg, |b, a| {
            b.iter(|| triple_tensor_structural(black_box(a)).unwrap().quotient_dim())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_rank, bench_squares, bench_triple);
criterion_main!(benches);
