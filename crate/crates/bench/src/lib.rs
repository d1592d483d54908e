//! Benchmark helpers: scenario construction shared by the benches.

use gact_core::acts::{closure, EndoMap, MonoidClosure};
use gact_core::carrier::Carrier;
use gact_core::special::{build_special, SpecialSequence};
use gact_core::zariski::{build_subbase, Subbase, DEFAULT_RAW_SET_BUDGET};
use gact_core::Point;

pub fn max_shift_subbase(top_shift: i64) -> Subbase {
    let carrier = Carrier::nat_line(0, 32).unwrap();
    let generators: Vec<EndoMap> = (1..=top_shift)
        .map(|c| EndoMap::max_shift(&carrier, c).unwrap())
        .collect();
    let cl = closure(&carrier, &generators, 2, 64).unwrap();
    build_subbase(
        &cl,
        &(0..16).collect::<Vec<Point>>(),
        DEFAULT_RAW_SET_BUDGET,
    )
    .unwrap()
}

pub fn transposition_subbase(span: i64, word_len: usize) -> Subbase {
    let carrier = Carrier::nat_line(0, 16).unwrap();
    let generators: Vec<EndoMap> = (0..span)
        .map(|i| EndoMap::transposition(&carrier, i, i + 1).unwrap())
        .collect();
    let cl = closure(&carrier, &generators, word_len, 4096).unwrap();
    build_subbase(
        &cl,
        &(0..16).collect::<Vec<Point>>(),
        DEFAULT_RAW_SET_BUDGET,
    )
    .unwrap()
}

pub fn shift_sequence(closure_len: usize, length: usize) -> (MonoidClosure, SpecialSequence) {
    let carrier = Carrier::int_line(-64, 64).unwrap();
    let cl = closure(
        &carrier,
        &[EndoMap::affine(&carrier, 1, 1).unwrap()],
        closure_len - 1,
        closure_len,
    )
    .unwrap();
    let seq = build_special(&cl, 0, length, (0, 4096)).unwrap();
    (cl, seq)
}
