use std::hint::black_box;

use ballquot_bench::{catalog, record, subgroup, triangle_237};
use ballquot_core::exactalg::{smith_normal_form, IntMatrix};
use ballquot_core::fpcore::{abelian_invariants, low_index_subgroups, todd_coxeter, EnumLimits};
use ballquot_core::pipeline::{certify_words, congruence_table, tower, Limits};
use criterion::{criterion_group, criterion_main, Criterion};

fn enumeration(c: &mut Criterion) {
    let cat = catalog();
    let rec = record(&cat, "Mostow(6,0)");
    let p = rec.presentation().unwrap();
    let h = subgroup(rec, "H");
    c.bench_function("todd_coxeter flagship", |b| b.iter(|| todd_coxeter(p, black_box(&h), &EnumLimits::default()).unwrap()));
    let t = triangle_237();
    c.bench_function("low index (2,3,7) up to 14", |b| b.iter(|| low_index_subgroups(&t, black_box(14)).tables.len()));
}

fn abelian(c: &mut Criterion) {
    let cat = catalog();
    let p = record(&cat, "Mostow(6,0)").presentation().unwrap();
    c.bench_function("abelianization Mostow(6,0)", |b| b.iter(|| abelian_invariants(black_box(p))));
    let rows: Vec<Vec<i64>> = (0..12).map(|i| (0..12).map(|j| ((i * 7 + j * 13) % 19) as i64 - 9).collect()).collect();
    let m = IntMatrix::from_rows(12, &rows);
    c.bench_function("smith 12x12", |b| b.iter(|| smith_normal_form(black_box(&m))));
}

fn pipeline(c: &mut Criterion) {
    let cat = catalog();
    let rec = record(&cat, "Mostow(6,0)");
    let h = subgroup(rec, "H");
    let limits = Limits::default();
    c.bench_function("certify flagship", |b| b.iter(|| certify_words(rec, black_box(&h), &limits).unwrap()));
    let report = certify_words(rec, &h, &limits).unwrap();
    c.bench_function("tower n=5", |b| b.iter(|| tower(rec, &report, black_box(5)).unwrap()));
    let s35 = record(&cat, "Sporadic(3,sigma5)");
    let mut g = c.benchmark_group("congruence");
    g.sample_size(10);
    g.bench_function("Sporadic(3,sigma5) mod 5", |b| b.iter(|| congruence_table(s35, 5, None, 0).unwrap().0.group.order()));
    g.finish();
}

criterion_group!(benches, enumeration, abelian, pipeline);
criterion_main!(benches);
