use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use reslab_core::{alpha_symbolic, containment_matrix, gamma_exact, Arrangement, Limits};
use std::hint::black_box;

fn symbolic_power(c: &mut Criterion) {
    let mut group = c.benchmark_group("symbolic_power");
    for (s, m) in [(2usize, 6u64), (3, 4), (4, 3)] {
        let a = Arrangement::pair_lines(s, 2 * s - 1).unwrap();
        group.bench_with_input(BenchmarkId::new("pairs", format!("s{s}_m{m}")), &m, |b, &m| {
            b.iter(|| a.symbolic_power(black_box(m), &Limits::default()).unwrap())
        });
    }
    group.finish();
}

fn alpha_ilp(c: &mut Criterion) {
    let mut group = c.benchmark_group("alpha_symbolic");
    for s in [3usize, 5] {
        let a = Arrangement::pair_lines(s, 2 * s - 1).unwrap();
        let m = 6 * (s as u64 - 1);
        group.bench_with_input(BenchmarkId::new("pairs", format!("s{s}_m{m}")), &m, |b, &m| {
            b.iter(|| alpha_symbolic(&a, black_box(m)).unwrap())
        });
    }
    group.finish();
}

fn gamma(c: &mut Criterion) {
    let mut group = c.benchmark_group("gamma_exact");
    for n in [4usize, 8] {
        let a = Arrangement::coordinate_points(n).unwrap();
        group.bench_function(BenchmarkId::new("points", n), |b| {
            b.iter(|| gamma_exact(black_box(&a)).unwrap())
        });
    }
    group.finish();
}

fn containment(c: &mut Criterion) {
    let a = Arrangement::pair_lines(3, 5).unwrap();
    c.bench_function("containment_matrix/pairs_s3_5x5", |b| {
        b.iter(|| containment_matrix(black_box(&a), 5, 5, &Limits::default()).unwrap())
    });
}

criterion_group!(benches, symbolic_power, alpha_ilp, gamma, containment);
criterion_main!(benches);
