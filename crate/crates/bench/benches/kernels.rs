use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};

use qsp_bench::{elements, field, poly, x16_x_1};
use qsp_core::ecdlp::{bsgs, demo_curve, s3_eval};
use qsp_core::qsp::{
    root_count_oracle, search_representatives, split_test_companion, split_test_div, CoeffSet,
    SearchConfig,
};
use qsp_core::symbolic::{sym_companion, sym_pow};
use qsp_core::LinearizedQsp;

fn field_ops(c: &mut Criterion) {
    let f = field(2, 61);
    let xs = elements(&f, 64);
    c.bench_function("ext_mul_f2_61", |b| {
        b.iter(|| {
            xs.windows(2)
                .fold(f.one(), |acc, w| f.mul(&acc, &f.mul(&w[0], &w[1])))
        })
    });
    c.bench_function("ext_inv_f2_61", |b| {
        b.iter(|| f.inv(black_box(&xs[3])).unwrap())
    });
    let g = field(5, 8);
    let ys = elements(&g, 8);
    c.bench_function("frobenius_f5_8", |b| {
        b.iter(|| g.frobenius(black_box(&ys[0]), 3))
    });
}

fn split_tests(c: &mut Criterion) {
    let f = x16_x_1();
    c.bench_function("x_order_x16_x_1", |b| {
        b.iter(|| black_box(&f).x_order(256).unwrap())
    });
    c.bench_function("split_div_x16_x_1_n255", |b| {
        b.iter(|| split_test_div(black_box(&f), 255).unwrap())
    });
    let q = LinearizedQsp::linearize(&poly(2, &[1, 1, 0, 1]), field(2, 7)).unwrap();
    c.bench_function("companion_x3_x_1_f2_7", |b| {
        b.iter(|| split_test_companion(black_box(&q)).unwrap())
    });
    c.bench_function("oracle_x3_x_1_f2_7", |b| {
        b.iter(|| root_count_oracle(black_box(&q)).unwrap())
    });
    // 85 divides 255, so L has a proper root space here
    let f2_85 = Arc::new(qsp_core::ExtField::with_cap(2, 85, u128::MAX).unwrap());
    let big = LinearizedQsp::linearize(&f, f2_85).unwrap();
    c.bench_function("oracle_x16_x_1_f2_85", |b| {
        b.iter(|| root_count_oracle(black_box(&big)).unwrap())
    });
}

fn search(c: &mut Criterion) {
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    let cfg = SearchConfig::new(2, 12, CoeffSet::Binary);
    g.bench_function("p2_n12_binary", |b| {
        b.iter(|| search_representatives(black_box(&cfg)).unwrap())
    });
    let cfg = SearchConfig::new(3, 7, CoeffSet::Signed);
    g.bench_function("p3_n7_signed", |b| {
        b.iter(|| search_representatives(black_box(&cfg)).unwrap())
    });
    g.finish();
}

fn symbolic(c: &mut Criterion) {
    let m = sym_companion(8, 3).unwrap();
    c.bench_function("sym_pow_8_3_n64", |b| {
        b.iter(|| sym_pow(black_box(&m), 64).unwrap())
    });
}

fn ecdlp(c: &mut Criterion) {
    let curve = demo_curve(field(5, 3)).unwrap();
    let xs = elements(curve.field(), 3);
    c.bench_function("s3_eval_f5_3", |b| {
        b.iter(|| s3_eval(&curve, black_box(&xs[0]), &xs[1], &xs[2]))
    });
    let p = curve.first_point().unwrap();
    let n = curve.point_count().unwrap();
    let q = curve.scalar_mul(n / 3, &p);
    c.bench_function("bsgs_f5_3", |b| {
        b.iter(|| bsgs(&curve, &p, black_box(&q), n).unwrap())
    });
}

criterion_group!(benches, field_ops, split_tests, search, symbolic, ecdlp);
criterion_main!(benches);
