use compdet::closedform::{delta_bm, delta_bmx, delta_k, delta_star_x};
use compdet_bench::{label, SYMBOLIC_CELLS};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

// Evaluation and expansion are timed separately.
fn closed_forms(c: &mut Criterion) {
    let mut group = c.benchmark_group("closed_form");
    for (n, p) in SYMBOLIC_CELLS {
        group.bench_function(BenchmarkId::new("evaluate", label(n, p)), |b| {
            b.iter(|| delta_bmx(black_box(n), black_box(p)))
        });
        let f = delta_bmx(n, p);
        group.bench_with_input(BenchmarkId::new("expand", label(n, p)), &f, |b, f| b.iter(|| f.expand().unwrap()));
        if p as u32 <= n {
            group.bench_function(BenchmarkId::new("proper", label(n, p)), |b| {
                b.iter(|| delta_star_x(black_box(n), black_box(p)).expand().unwrap())
            });
        }
    }
    group.finish();
}

fn integer_formulas(c: &mut Criterion) {
    let mut group = c.benchmark_group("integer_formula");
    for (n, p) in [(5u32, 3usize), (12, 12), (25, 25)] {
        group.bench_function(BenchmarkId::new("delta_bm", label(n, p)), |b| {
            b.iter(|| delta_bm(black_box(n), black_box(p)).integer_signature())
        });
        group.bench_function(BenchmarkId::new("delta_k", label(n, p)), |b| {
            b.iter(|| delta_k(black_box(n), black_box(p)).integer_signature())
        });
    }
    group.finish();
}

criterion_group!(benches, closed_forms, integer_formulas);
criterion_main!(benches);
