//! Benchmarks for word arithmetic, ball construction and double-coset
//! decomposition. Run with `cargo bench -p trigroup-bench`.

use std::hint::black_box;

use criterion::{BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use trigroup_core::analysis::ZSquareSubgroup;
use trigroup_core::building::build_ball;
use trigroup_core::cosets::{decompose_ball, CyclicFactor, FreeProduct};
use trigroup_core::{fixtures, A2Group};

fn group(text: &str) -> A2Group {
    A2Group::new(fixtures::load(text).expect("bundled fixture parses"))
        .expect("bundled fixture is valid")
}

fn normalize(c: &mut Criterion) {
    let mut g = c.benchmark_group("normalize");
    for (name, text) in [("q2", fixtures::B3_PATTERN), ("q3", fixtures::Q3_COMMUTING)] {
        let group = group(text);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for len in [16usize, 64, 256] {
            let words: Vec<_> = (0..32).map(|_| group.random_word(&mut rng, len)).collect();
            g.bench_with_input(BenchmarkId::new(name, len), &words, |b, words| {
                b.iter(|| {
                    for w in words {
                        black_box(group.normalize(w).unwrap());
                    }
                })
            });
        }
    }
    g.finish();
}

fn multiply(c: &mut Criterion) {
    let mut g = c.benchmark_group("multiply");
    let group = group(fixtures::Q3_COMMUTING);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for len in [8usize, 32, 128] {
        let pairs: Vec<_> = (0..32)
            .map(|_| {
                let x = group.normalize(&group.random_word(&mut rng, len)).unwrap();
                let y = group.normalize(&group.random_word(&mut rng, len)).unwrap();
                (x, y)
            })
            .collect();
        g.bench_with_input(BenchmarkId::from_parameter(len), &pairs, |b, pairs| {
            b.iter(|| {
                for (x, y) in pairs {
                    black_box(group.multiply(x, y));
                }
            })
        });
    }
    g.finish();
}

fn balls(c: &mut Criterion) {
    let mut g = c.benchmark_group("build_ball");
    g.sample_size(10);
    for (name, text, radius) in [
        ("q2", fixtures::B3_PATTERN, 4),
        ("q3", fixtures::Q3_COMMUTING, 3),
    ] {
        let group = group(text);
        g.bench_function(BenchmarkId::new(name, radius), |b| {
            b.iter(|| black_box(build_ball(&group, radius).unwrap()))
        });
    }
    g.finish();
}

fn double_cosets(c: &mut Criterion) {
    let mut g = c.benchmark_group("decompose_ball");
    g.sample_size(10);
    let fp = FreeProduct::new(1, 2).unwrap();
    let h = CyclicFactor::new(&fp).unwrap();
    g.bench_function("free_product_r9", |b| {
        b.iter(|| black_box(decompose_ball(&h, 9, 9)))
    });
    let q3 = group(fixtures::Q3_COMMUTING);
    let p = |s| q3.presentation().point(s).unwrap();
    let sub = ZSquareSubgroup::new(&q3, p("a1"), p("a7"), p("a9"));
    g.bench_function("q3_flat_r2", |b| {
        b.iter(|| black_box(decompose_ball(&sub, 2, 2)))
    });
    g.finish();
}

pub fn benchmarks(c: &mut Criterion) {
    normalize(c);
    multiply(c);
    balls(c);
    double_cosets(c);
}
