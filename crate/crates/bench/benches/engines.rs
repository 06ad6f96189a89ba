//! Criterion benchmarks for the hot paths: normal-form products, the
//! structure constructions, and the analysis passes.

use criterion::{criterion_group, criterion_main, Criterion};
use std::sync::Arc;
use ulpa_core::analysis::{check_family, condition_l_ultragraph, AxiomSet};
use ulpa_core::construct::{build_eg, build_gf, desingularize};
use ulpa_core::element::GElem;
use ulpa_core::hom;
use ulpa_core::oracle::acyclic_matrix_rep;
use ulpa_core::suites::lglg_suite;
use ulpa_core::{corpus, EdgeId, Ring};

fn bench_normalize(c: &mut Criterion) {
    let g = corpus::parallel_graph(3);
    let r = Ring::IntegersMod(4);
    let mut rng = corpus::seeded(1);
    let pairs: Vec<(GElem, GElem)> = (0..64)
        .map(|_| {
            (
                corpus::random_gelem(&g, &r, &mut rng, 3),
                corpus::random_gelem(&g, &r, &mut rng, 3),
            )
        })
        .collect();
    let mut k = 0;
    c.bench_function("graph_engine_product_normalize", |b| {
        b.iter(|| {
            let (x, y) = &pairs[k % pairs.len()];
            k += 1;
            x.mul(y).unwrap()
        })
    });
}

fn bench_ultragraph_equal(c: &mut Criterion) {
    let g = corpus::two_range();
    let r = Ring::Integers;
    let mut rng = corpus::seeded(2);
    let pairs: Vec<_> = (0..64)
        .map(|_| {
            (
                corpus::random_uelem(&g, &r, &mut rng, 2),
                corpus::random_uelem(&g, &r, &mut rng, 2),
            )
        })
        .collect();
    let mut k = 0;
    c.bench_function("ultragraph_equal_through_identification", |b| {
        b.iter(|| {
            let (x, y) = &pairs[k % pairs.len()];
            k += 1;
            x.equal(y).unwrap()
        })
    });
}

fn bench_build_eg(c: &mut Criterion) {
    let g = corpus::grugrex();
    let opts = corpus::grugrex_options();
    c.bench_function("build_eg_grugrex", |b| b.iter(|| build_eg(&g, &opts).unwrap()));
}

fn bench_constructions(c: &mut Criterion) {
    let g = corpus::grugrex();
    c.bench_function("build_gf_two_edges", |b| {
        b.iter(|| build_gf(&g, &[EdgeId(0), EdgeId(1)]))
    });
    let mut rng = corpus::seeded(3);
    let sng = corpus::random_singular_ultragraph(&mut rng, 4);
    c.bench_function("desingularize_depth3", |b| {
        b.iter(|| desingularize(&sng, 3).unwrap())
    });
}

fn bench_analysis(c: &mut Criterion) {
    let g = corpus::grugrex();
    c.bench_function("condition_l_grugrex", |b| {
        b.iter(|| condition_l_ultragraph(&g))
    });
    let small = corpus::two_range();
    let r = Ring::Integers;
    c.bench_function("check_family_ulp_small", |b| {
        b.iter(|| check_family(&hom::self_ultragraph(&small, &r), AxiomSet::ULP).unwrap())
    });
}

fn bench_suites(c: &mut Criterion) {
    let g = corpus::grugrex();
    let r = Ring::Integers;
    let eg = Arc::new(build_eg(&g, &corpus::grugrex_options()).unwrap());
    c.bench_function("lglg_suite_depth3", |b| b.iter(|| lglg_suite(&eg, &r, 3)));
}

fn bench_oracle(c: &mut Criterion) {
    let g = corpus::line_graph(4);
    let r = Ring::PrimeField(3);
    c.bench_function("acyclic_matrix_rep_line4", |b| {
        b.iter(|| acyclic_matrix_rep(&g, &r).unwrap())
    });
}

criterion_group!(
    benches,
    bench_normalize,
    bench_ultragraph_equal,
    bench_build_eg,
    bench_constructions,
    bench_analysis,
    bench_suites,
    bench_oracle
);
criterion_main!(benches);
