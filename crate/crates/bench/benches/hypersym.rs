use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hypersym::nc::{coaction_check, normalize, verify_identity, IdentityId, Prover, Sort};
use hypersym::witness::{check_rep, nonclassical_witness, search_magic_rep, SearchOptions};
use hypersym::{aut::enumerate_aut, fixtures, Hypergraph, Method, Presentation};
use hypersym_bench::{by_search_size, diagonal_commutator};

fn automorphisms(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_aut");
    for (name, h) in by_search_size().into_iter().rev().take(4) {
        for method in [Method::Brute, Method::Backtrack] {
            group.bench_with_input(BenchmarkId::new(format!("{method:?}"), name), &h, |b, h| {
                b.iter(|| enumerate_aut(black_box(h), method).unwrap())
            });
        }
    }
    group.finish();
}

fn membership(c: &mut Criterion) {
    let labels: Vec<String> = (1..=3).map(|i| i.to_string()).collect();
    let s3 = Presentation::s_plus(labels, Sort::V);
    let p = diagonal_commutator(0, 1);
    c.bench_function("normalize commutator S3", |b| b.iter(|| normalize(black_box(&p), &s3)));
    c.bench_function("member commutator S3 D=4", |b| {
        b.iter(|| Prover::new(&s3).member(black_box(&p), 4).unwrap())
    });
    let path = fixtures::directed_path();
    c.bench_function("inclusion_exclusion directed_path D=5", |b| {
        b.iter(|| verify_identity(black_box(&path), IdentityId::InclusionExclusion, 5).unwrap())
    });
    let edge = fixtures::single_directed_edge();
    c.bench_function("coaction single edge D=6", |b| b.iter(|| coaction_check(black_box(&edge), 6).unwrap()));
}

fn witnesses(c: &mut Criterion) {
    let h = Hypergraph::gamma_nm(4, 1).unwrap();
    let rep = nonclassical_witness(&h, 0.7).unwrap().rep;
    let pres = Presentation::qaut(&h);
    c.bench_function("check_rep gamma41", |b| b.iter(|| check_rep(black_box(&rep), &pres).unwrap()));
    let cycle = fixtures::directed_cycle3();
    let opts = SearchOptions { restarts: 2, ..SearchOptions::default() };
    c.bench_function("search d=1 directed_cycle3", |b| b.iter(|| search_magic_rep(black_box(&cycle), 1, &opts)));
}

criterion_group!(benches, automorphisms, membership, witnesses);
criterion_main!(benches);
