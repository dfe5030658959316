use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use chgraph_bench::{instance, FAMILIES};
use chgraph_core::homogeneity::{check, Mode};
use chgraph_core::PermGroup;

fn three_ch(c: &mut Criterion) {
    let mut group = c.benchmark_group("check_ch_k3");
    for spec in FAMILIES {
        let inst = instance(spec);
        group.bench_with_input(BenchmarkId::from_parameter(spec), &inst, |b, inst| {
            b.iter(|| check(black_box(&inst.graph), &inst.group, 3, Mode::Ch).unwrap())
        });
    }
    group.finish();
}

fn automorphisms(c: &mut Criterion) {
    let mut group = c.benchmark_group("automorphism_group");
    for spec in FAMILIES {
        let inst = instance(spec);
        group.bench_with_input(BenchmarkId::from_parameter(spec), &inst.graph, |b, g| {
            b.iter(|| black_box(g).automorphism_group().unwrap())
        });
    }
    group.finish();
}

fn schreier_sims(c: &mut Criterion) {
    let mut group = c.benchmark_group("schreier_sims");
    for spec in FAMILIES {
        let inst = instance(spec);
        let gens = inst.group.generators().to_vec();
        let n = inst.group.degree();
        group.bench_with_input(BenchmarkId::from_parameter(spec), &gens, |b, gens| {
            b.iter(|| PermGroup::new(n, black_box(gens.clone())).unwrap().order())
        });
    }
    group.finish();
}

criterion_group!(benches, three_ch, automorphisms, schreier_sims);
criterion_main!(benches);
