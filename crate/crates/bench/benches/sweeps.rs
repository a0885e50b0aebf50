use criterion::{black_box, criterion_group, criterion_main, Criterion};
use nilqa_core::roots::positive_roots_of;
use nilqa_core::*;

fn theorem_sweep(c: &mut Criterion) {
    c.bench_function("verify B ranks 1-8", |b| {
        b.iter(|| {
            let mut violations = 0;
            for rank in 1..=8 {
                let t = ClassicalType::new(ClassicalFamily::B, rank).unwrap();
                for n in 1..=2 * rank + 3 {
                    violations += verify_theorem(t, CoverDegree::new(n).unwrap()).violations.len();
                }
            }
            black_box(violations)
        })
    });
}

fn e8_roots(c: &mut Criterion) {
    let spec = CartanSpec::new(CartanKind::E8).unwrap();
    let matrix = spec.cartan_matrix().to_vec();
    c.bench_function("E8 positive roots", |b| b.iter(|| black_box(positive_roots_of(&matrix).len())));
}

fn collapses(c: &mut Criterion) {
    let parts = all_partitions(20);
    c.bench_function("collapse all partitions of 20", |b| {
        b.iter(|| {
            for p in &parts {
                black_box(collapse(CollapseKind::C, p));
                black_box(collapse(CollapseKind::D, p));
            }
        })
    });
}

fn scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("scan");
    group.sample_size(10);
    group.bench_function("D ranks 1-8", |b| b.iter(|| black_box(conjecture_scan(ClassicalFamily::D, 8).unwrap())));
    group.finish();
}

criterion_group!(benches, theorem_sweep, e8_roots, collapses, scan);
criterion_main!(benches);
