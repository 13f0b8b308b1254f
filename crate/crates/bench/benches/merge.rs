//! Wall-clock benchmarks for the pieces a deployment would feel: building
//! code pairs, proving parity matrices superregular, and the headline
//! comparison of a planned merge conversion against a full re-encode.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use convcode::constructions::{general_construction, hankel1};
use convcode::conversion::{convert, encode_initial, reencode_baseline};
use convcode::{ConvertibleCode, Field, MergeParams, MessageBuffer, Stripe};

fn params(lambda: usize, k_i: usize, r_i: usize, r_f: usize) -> MergeParams {
    MergeParams::new(lambda, k_i, r_i, r_f).unwrap()
}

/// The headline pair: two (14,10) stripes merging into one (24,20) stripe
/// over GF(2^111).
fn headline_code() -> ConvertibleCode {
    general_construction(&params(2, 10, 4, 4), 2).unwrap()
}

fn encoded_input(code: &ConvertibleCode, block_length: usize) -> Vec<Stripe> {
    let rows = code.params().k_f();
    let msg = MessageBuffer::random(code.field(), rows, block_length, 9);
    encode_initial(&msg, code).unwrap()
}

fn construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("construction");
    group.bench_function("general 2x(14,10) over GF(2^111)", |b| {
        b.iter(|| black_box(general_construction(&params(2, 10, 4, 4), 2).unwrap()))
    });
    let f11 = Field::prime(11).unwrap();
    group.bench_function("hankel1 2x(9,5) over GF(11)", |b| {
        b.iter(|| black_box(hankel1(&params(2, 5, 4, 2), &f11).unwrap()))
    });
    group.finish();
}

fn superregularity(c: &mut Criterion) {
    let code = headline_code();
    let mut group = c.benchmark_group("superregularity");
    // Every square submatrix of the 20x4 final parity matrix: 10625 minors.
    group.sample_size(10);
    group.bench_function("20x4 parity matrix over GF(2^111)", |b| {
        b.iter(|| assert!(black_box(code.p_f()).is_superregular()))
    });
    group.finish();
}

fn convert_vs_reencode(c: &mut Criterion) {
    let code = headline_code();
    let stripes = encoded_input(&code, 64);
    let mut group = c.benchmark_group("merge two (14,10) stripes, 64-symbol blocks");
    group.bench_function("planned conversion (12 block accesses)", |b| {
        b.iter(|| black_box(convert(&stripes, &code).unwrap()))
    });
    group.bench_function("full re-encode (24 block accesses)", |b| {
        b.iter(|| black_box(reencode_baseline(&stripes, &code).unwrap()))
    });
    group.finish();
}

criterion_group!(benches, construction, superregularity, convert_vs_reencode);
criterion_main!(benches);
