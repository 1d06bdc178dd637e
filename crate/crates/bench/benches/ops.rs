use criterion::{black_box, criterion_group, criterion_main, Criterion};

use nearadd::exact_arith::{rat, sample_rats};
use nearadd::finite_structures::{enumerate_additions, field_by_name, modnear_ring_check};
use nearadd::induced_ops::{exotic_add_q, Limits};
use nearadd::mult_maps::PrimeCorrespondence;
use nearadd::quad_field::{factor_quad, QuadInt, QuadRat};
use nearadd::BigInt;

fn exotic(c: &mut Criterion) {
    let corr = PrimeCorrespondence::global();
    let lim = Limits::unbounded();
    c.bench_function("exotic_add 1 ⊞ 4", |b| b.iter(|| exotic_add_q(corr, black_box(&rat(1, 1)), black_box(&rat(4, 1)), &lim)));
    let xs = sample_rats(1, 64, 10_000);
    let ys = sample_rats(2, 64, 10_000);
    c.bench_function("exotic_add height 1e4 x64", |b| {
        b.iter(|| {
            for (x, y) in xs.iter().zip(&ys) {
                black_box(exotic_add_q(corr, x, y, &lim).unwrap());
            }
        })
    });
}

fn factor(c: &mut Criterion) {
    let x = QuadRat::new(QuadInt::new(123_456_789i64, 98_765i64), BigInt::from(3_600)).unwrap();
    c.bench_function("factor_quad", |b| b.iter(|| factor_quad(black_box(&x)).unwrap()));
}

fn finite(c: &mut Criterion) {
    let f27 = field_by_name("f27").unwrap();
    let mut g = c.benchmark_group("finite");
    g.sample_size(10);
    g.bench_function("enumerate_additions F27", |b| b.iter(|| enumerate_additions(&f27).unwrap()));
    g.bench_function("modnear_ring_check", |b| b.iter(modnear_ring_check));
    g.finish();
}

criterion_group!(benches, exotic, factor, finite);
criterion_main!(benches);
