use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gatewire::bounds::{self, BoundParams};
use gatewire::circuit::{collapse, gen};
use gatewire::compress::{encode, Decoder};
use gatewire::rng::seeded;
use gatewire::transforms::linearize;
use gatewire::{Gf2Matrix, Gf2Vector};

fn gf2(c: &mut Criterion) {
    let mut group = c.benchmark_group("gf2");
    for n in [16, 64, 256] {
        let mut rng = seeded(n as u64);
        let m = Gf2Matrix::random(n, n, &mut rng);
        let v = Gf2Vector::random(n, &mut rng);
        group.bench_with_input(BenchmarkId::new("matvec", n), &n, |b, _| {
            b.iter(|| black_box(&m).matvec(black_box(&v)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("rank", n), &n, |b, _| {
            b.iter(|| black_box(&m).rank())
        });
    }
    group.finish();
}

fn passes(c: &mut Criterion) {
    let mut group = c.benchmark_group("passes");
    for n in [6, 8, 10] {
        let cancelling = gen::cancelling_middle_instance(n, 12, 0.5, &mut seeded(1)).unwrap();
        group.bench_with_input(BenchmarkId::new("linearize", n), &n, |b, _| {
            b.iter(|| linearize(black_box(&cancelling), 12).unwrap())
        });
        let planted = gen::planted_parity_instance(n, 2 * n, 0.5, &mut seeded(2))
            .unwrap()
            .circuit;
        group.bench_with_input(BenchmarkId::new("collapse", n), &n, |b, _| {
            b.iter(|| collapse(black_box(&planted), 12).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("encode", n), &n, |b, _| {
            b.iter(|| encode(black_box(&planted), 12).unwrap())
        });
        let decoder = Decoder::new(&encode(&planted, 12).unwrap());
        let x = Gf2Vector::random(n, &mut seeded(3));
        group.bench_with_input(BenchmarkId::new("decode", n), &n, |b, _| {
            b.iter(|| decoder.decode(black_box(&x)).unwrap())
        });
    }
    group.finish();
}

fn counting(c: &mut Criterion) {
    let mut group = c.benchmark_group("bounds");
    for n in [32u64, 128] {
        group.bench_with_input(BenchmarkId::new("general", n), &n, |b, &n| {
            b.iter(|| bounds::min_wires_lower_bound(&BoundParams::new(n).unwrap()).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("linear", n), &n, |b, &n| {
            b.iter(|| bounds::linear_circuit_lower_bound(n).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, gf2, passes, counting);
criterion_main!(benches);
