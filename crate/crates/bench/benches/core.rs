use criterion::{black_box, criterion_group, criterion_main, Criterion};
use quasifold_core::affine::{search_single_extensions, DEFAULT_ENTRY_BOUND};
use quasifold_core::coxeter::generate_group;
use quasifold_core::double_ext::enumerate_double;
use quasifold_core::quasicrystal::{first_shell_size, generate_fragment, OrbitGroup};
use quasifold_core::{Axis, GoldenRat, GroupId, TranslationSpec};

fn group_generation(c: &mut Criterion) {
    let mut g = c.benchmark_group("group_generation");
    for id in [GroupId::H3, GroupId::A4] {
        g.bench_function(id.name(), |b| b.iter(|| generate_group(black_box(id)).unwrap()));
    }
    g.sample_size(10);
    g.bench_function("H4", |b| b.iter(|| generate_group(black_box(GroupId::H4)).unwrap()));
    g.finish();
}

fn extension_search(c: &mut Criterion) {
    let mut g = c.benchmark_group("extension_search");
    g.sample_size(10);
    for id in [GroupId::A4, GroupId::D6, GroupId::E8] {
        g.bench_function(id.name(), |b| {
            b.iter(|| search_single_extensions(black_box(id), DEFAULT_ENTRY_BOUND).unwrap())
        });
    }
    g.finish();
}

fn double_extensions(c: &mut Criterion) {
    let mut g = c.benchmark_group("double_extensions");
    g.sample_size(10);
    g.bench_function("E8", |b| b.iter(|| enumerate_double(black_box(GroupId::E8)).unwrap()));
    g.finish();
}

fn fragments(c: &mut Criterion) {
    let mut g = c.benchmark_group("fragments");
    let h2 = TranslationSpec::new(GroupId::H2, Axis::Twofold, GoldenRat::tau());
    g.bench_function("H2 tau n=3", |b| b.iter(|| generate_fragment(black_box(&h2), 3).unwrap()));
    g.sample_size(10);
    let h4 = TranslationSpec::new(GroupId::H4, Axis::Twofold, GoldenRat::tau());
    g.bench_function("H4 tau first shell", |b| {
        b.iter(|| first_shell_size(black_box(&h4), OrbitGroup::Rotations).unwrap())
    });
    g.finish();
}

criterion_group!(benches, group_generation, extension_search, double_extensions, fragments);
criterion_main!(benches);
