use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use kcat_core::hochschild::{bar_cohomology, hochschild_cohomology};
use kcat_core::kcat::{a3, dual_numbers, kronecker};
use kcat_core::modcat::{ext, regular_bimodule, simple};
use kcat_core::{FieldSpec, Side};

const Q: FieldSpec = FieldSpec::Rationals;
const GF: FieldSpec = FieldSpec::Prime(32003);

fn cochains(c: &mut Criterion) {
    let mut g = c.benchmark_group("hochschild cochains");
    for (name, cat) in [("A3", a3(Q)), ("Kronecker", kronecker(Q)), ("dual numbers", dual_numbers(GF))] {
        for n in [3, 5] {
            g.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| b.iter(|| hochschild_cohomology(&cat, n)));
        }
    }
    g.finish();
}

fn oracles(c: &mut Criterion) {
    let mut g = c.benchmark_group("oracles");
    let cat = kronecker(Q);
    let reg = regular_bimodule(&cat);
    g.bench_function("enveloping Ext, Kronecker", |b| b.iter(|| ext(&reg, &reg, 3).unwrap()));
    g.bench_function("bar resolution, Kronecker", |b| b.iter(|| bar_cohomology(&cat, 3)));
    g.finish();
}

fn resolutions(c: &mut Criterion) {
    let d = Arc::new(dual_numbers(GF));
    let s = simple(d, 0, Side::Left).unwrap();
    c.bench_function("Ext(S,S) over dual numbers to degree 8", |b| b.iter(|| ext(&s, &s, 8).unwrap()));
}

criterion_group!(benches, cochains, oracles, resolutions);
criterion_main!(benches);
