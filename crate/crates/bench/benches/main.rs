use criterion::{black_box, criterion_group, criterion_main, Criterion};
use gact_bench::{max_shift_subbase, shift_sequence, transposition_subbase};
use gact_core::filtertop::{separate, tail_filter};
use gact_core::sets::KSet;

fn bench_subbase_construction(c: &mut Criterion) {
    c.bench_function("subbase/max_shift_9", |b| {
        b.iter(|| max_shift_subbase(black_box(9)))
    });
    c.bench_function("subbase/transpositions_5_word_4", |b| {
        b.iter(|| transposition_subbase(black_box(5), black_box(4)))
    });
}

fn bench_isolation(c: &mut Criterion) {
    let subbase = max_shift_subbase(9);
    c.bench_function("isolation/max_shift_probe_9", |b| {
        b.iter(|| {
            for x in 0..9 {
                black_box(subbase.isolation(black_box(x)).unwrap());
            }
        })
    });
    let perms = transposition_subbase(5, 4);
    c.bench_function("pseudocharacter/transpositions", |b| {
        b.iter(|| {
            for x in 0..6 {
                black_box(perms.pseudocharacter(black_box(x)).unwrap());
            }
        })
    });
}

fn bench_special_sequence(c: &mut Criterion) {
    c.bench_function("special/shifts_20_length_24", |b| {
        b.iter(|| shift_sequence(black_box(20), black_box(24)))
    });
}

fn bench_separation(c: &mut Criterion) {
    let (cl, seq) = shift_sequence(8, 12);
    let fb = tail_filter(&seq).unwrap();
    let carrier = cl.carrier().clone();
    let a = KSet::finite(&carrier, vec![seq.points()[0]]).unwrap();
    let b = KSet::finite(&carrier, vec![seq.points()[1]]).unwrap();
    c.bench_function("separate/depth_6", |bench| {
        bench.iter(|| separate(black_box(&a), black_box(&b), &fb, &cl, 6).unwrap())
    });
}

criterion_group!(
    benches,
    bench_subbase_construction,
    bench_isolation,
    bench_special_sequence,
    bench_separation
);
criterion_main!(benches);
