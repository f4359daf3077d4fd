use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use locale_forge::dsl::parse_presentation;
use locale_forge::eval::{eval_frame, points};
use locale_forge::intervals::{circle_open_presentation, circle_proper_presentation};
use locale_forge::lattice::QuotientMode;
use locale_forge::oracle::{coverage_suite, kleene_suite, oracle_suite};
use locale_forge::presentation::{instantiate_bounded, PresentationKind};
use locale_forge::random::DEFAULT_SEED;
use locale_forge::rational::parse_grid;
use locale_forge::toys::TWO_POINT_SUP;

fn circles(c: &mut Criterion) {
    c.bench_function("circle_open", |b| b.iter(|| circle_open_presentation().unwrap()));
    c.bench_function("circle_proper_simplified", |b| b.iter(|| circle_proper_presentation(true).unwrap()));
    let grid = parse_grid("0,1/4,1/2,3/4,1").unwrap();
    let p = instantiate_bounded(&circle_proper_presentation(true).unwrap().presentation, &grid).unwrap();
    c.bench_function("circle_proper_grid_points", |b| b.iter(|| points(black_box(&p), 10_000).unwrap().frame(100_000).unwrap()));
    let two = parse_presentation(TWO_POINT_SUP).unwrap();
    c.bench_function("two_point_frame", |b| b.iter(|| eval_frame(black_box(&two)).unwrap()));
}

fn suites(c: &mut Criterion) {
    let mut g = c.benchmark_group("suites");
    g.sample_size(10);
    for mode in [QuotientMode::Open, QuotientMode::Proper, QuotientMode::Triquotient] {
        g.bench_function(format!("oracle_{mode}_20"), |b| b.iter(|| oracle_suite(mode, DEFAULT_SEED, 20).unwrap()));
    }
    g.bench_function("coverage_dcpo_20", |b| b.iter(|| coverage_suite(PresentationKind::Dcpo, DEFAULT_SEED, 20).unwrap()));
    g.bench_function("kleene_100", |b| b.iter(|| kleene_suite(DEFAULT_SEED, 100).unwrap()));
    g.finish();
}

criterion_group!(benches, circles, suites);
criterion_main!(benches);
