use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use selkow_core::generate::{complete, gnp, path};
use selkow_core::oracle::{brute_force_alpha, enumerate_exact, DEFAULT_ALPHA_LIMIT};

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_exact");
    group.sample_size(10);
    for n in [6usize, 7, 8] {
        let g = gnp(n, 0.5, 1).unwrap();
        group.bench_with_input(BenchmarkId::new("gnp-0.5", n), &g, |b, g| {
            b.iter(|| enumerate_exact(black_box(g), 10).unwrap())
        });
    }
    group.finish();
}

fn alpha(c: &mut Criterion) {
    let mut group = c.benchmark_group("brute_force_alpha");
    for (name, g) in [
        ("path-30", path(30)),
        ("complete-30", complete(30)),
        ("gnp-30-0.2", gnp(30, 0.2, 5).unwrap()),
        ("gnp-30-0.5", gnp(30, 0.5, 5).unwrap()),
    ] {
        group.bench_function(name, |b| {
            b.iter(|| brute_force_alpha(black_box(&g), DEFAULT_ALPHA_LIMIT).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, enumeration, alpha);
criterion_main!(benches);
