use std::collections::BTreeMap;
use std::hint::black_box;

use cover_forge::catalog::{degree6_instance, ogr10_ideal, section_point};
use cover_forge::cover::{cover_relations, verify_fiber, CoverProblem};
use cover_forge::groebner::{buchberger, free_resolution, syzygy_module, Ideal};
use cover_forge::rational::int;
use cover_forge::{Rational, Ring, TermOrder};
use criterion::{criterion_group, criterion_main, Criterion};

fn cyclic4() -> Vec<cover_forge::Polynomial> {
    let r = Ring::degrevlex(&["a", "b", "c", "d"]);
    [
        "a + b + c + d",
        "a*b + b*c + c*d + d*a",
        "a*b*c + b*c*d + c*d*a + d*a*b",
        "a*b*c*d - 1",
    ]
    .iter()
    .map(|s| r.parse(s).unwrap())
    .collect()
}

fn groebner(c: &mut Criterion) {
    let gens = cyclic4();
    c.bench_function("buchberger cyclic-4 degrevlex", |b| {
        b.iter(|| buchberger(black_box(&gens), TermOrder::DegRevLex).unwrap())
    });
    c.bench_function("buchberger cyclic-4 lex", |b| {
        b.iter(|| buchberger(black_box(&gens), TermOrder::Lex).unwrap())
    });
    let ogr = ogr10_ideal().unwrap();
    c.bench_function("syzygies of the spinor quadrics", |b| {
        b.iter(|| syzygy_module(black_box(ogr.gens())).unwrap())
    });
}

fn resolutions(c: &mut Criterion) {
    let ogr = ogr10_ideal().unwrap();
    let mut g = c.benchmark_group("resolution");
    g.sample_size(10);
    g.bench_function("spinor variety in P^15", |b| {
        b.iter(|| free_resolution(black_box(&ogr), 16).unwrap())
    });
    let r = Ring::degrevlex(&["x", "y", "z", "w"]);
    let cubic = Ideal::parse(&r, &["x*z - y^2", "x*w - y*z", "y*w - z^2"]).unwrap();
    g.bench_function("twisted cubic", |b| {
        b.iter(|| free_resolution(black_box(&cubic), 5).unwrap())
    });
    g.finish();
}

fn covers(c: &mut Criterion) {
    let mut g = c.benchmark_group("cover");
    g.sample_size(10);
    let triple = CoverProblem::parse(&["z1", "z2"], &["z1^2", "z1*z2", "z2^2"])
        .unwrap()
        .with_trace_free(&["c00 + c11", "c10 + c21"]);
    g.bench_function("triple cover relations", |b| {
        b.iter(|| cover_relations(black_box(&triple)).unwrap())
    });

    let deg6 = degree6_instance().unwrap();
    g.bench_function("degree-6 relations", |b| {
        b.iter(|| cover_relations(black_box(&deg6.instance.problem)).unwrap())
    });

    let e: [Rational; 4] = [1, 0, 0, 1].map(int);
    let cs: [Rational; 4] = [2, 0, 0, 3].map(int);
    let point: BTreeMap<String, Rational> = section_point(&deg6, &e, &cs).unwrap();
    g.bench_function("degree-6 fiber on the linear section", |b| {
        b.iter(|| verify_fiber(&deg6.instance.problem, &deg6.relations, black_box(&point)).unwrap())
    });
    g.finish();
}

criterion_group!(benches, groebner, resolutions, covers);
criterion_main!(benches);
