use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use packset::closure::{closure_inf, closure_k};
use packset::packset::SetInclusion;
use packset::wqo::BasisState;
use packset::{DownsetModel, Limits};
use packset_bench::{canonical_instance, positive_instance, random_stream};

fn bench_closure(c: &mut Criterion) {
    let limits = Limits::default();
    let canonical = canonical_instance();
    c.bench_function("closure_k canonical k=1", |b| {
        b.iter(|| closure_k(black_box(&canonical), 1, None, &limits).unwrap())
    });
    let dense = positive_instance(3, 3, 11);
    c.bench_function("closure_k dense 3x3 k=2", |b| {
        b.iter(|| closure_k(black_box(&dense), 2, None, &limits).unwrap())
    });
}

fn bench_closure_inf(c: &mut Criterion) {
    let limits = Limits::default();
    let model = DownsetModel::new(
        3,
        vec![positive_instance(3, 2, 3), positive_instance(3, 2, 4)],
    )
    .unwrap();
    c.bench_function("closure_inf two-piece dim3", |b| {
        b.iter(|| closure_inf(black_box(&model), &limits).unwrap())
    });
}

fn bench_basis(c: &mut Criterion) {
    let stream = random_stream(2000, 3, 8, 17);
    c.bench_function("basis stream 2000 sets dim3", |b| {
        b.iter(|| {
            let mut state = BasisState::new(SetInclusion);
            for s in &stream {
                state.insert(black_box(s.clone()));
            }
            state.basis().len()
        })
    });
}

criterion_group!(closures, bench_closure, bench_closure_inf, bench_basis);
criterion_main!(closures);
