use criterion::{criterion_group, criterion_main, Criterion};
use symgen_core::toddcoxeter::{enumerate, EnumerationOptions};
use symgen_core::verify_m22::{
    build_model, verify_relation_families, verify_s_structure, M22_PRESENTATION,
};
use symgen_core::wordlang::parse_presentation_file;
use symgen_core::PermutationGroup;

fn schreier_sims(c: &mut Criterion) {
    let m = build_model().unwrap();
    let gens = m.generators().to_vec();
    c.bench_function("bsgs_m22_on_22", |b| {
        b.iter(|| PermutationGroup::new(22, gens.clone()).unwrap().order().unwrap())
    });

    let p = parse_presentation_file(M22_PRESENTATION).unwrap().presentation();
    let t = enumerate(&p, p.subgroup("M").unwrap(), &EnumerationOptions::default()).unwrap();
    let actions = t.generator_actions();
    let mut group = c.benchmark_group("m22_on_330");
    group.sample_size(10);
    group.bench_function("order", |b| {
        b.iter(|| PermutationGroup::new(330, actions.clone()).unwrap().order().unwrap())
    });
    let g = PermutationGroup::new(330, actions.clone()).unwrap();
    group.bench_function("is_primitive", |b| b.iter(|| g.is_primitive().unwrap()));
    group.bench_function("derived_subgroup", |b| {
        b.iter(|| g.derived_subgroup().unwrap().order().unwrap())
    });
    group.finish();
}

fn relation_families(c: &mut Criterion) {
    let m = build_model().unwrap();
    let f = verify_s_structure(&m).unwrap();
    c.bench_function("relation_families", |b| {
        b.iter(|| verify_relation_families(&m, &f).unwrap())
    });
}

criterion_group!(benches, schreier_sims, relation_families);
criterion_main!(benches);
