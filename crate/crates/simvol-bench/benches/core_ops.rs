//! Benchmarks for the hot paths of the workbench: exact linear algebra,
//! annealed simplification, subdivision, and subgroup enumeration.
//!
//! Run with `cargo bench -p simvol-bench`.

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use simvol::complex::builtin;
use simvol::homology::{boundary_matrix, HomologyProfile};
use simvol::matrix::smith_normal_form;
use simvol::pi1::{build_cover, low_index, presentation, subgroup_chain};
use simvol::simplify::{simplify, SearchConfig};
use simvol::DeltaComplex;

/// A 72-triangle torus: two rounds of barycentric subdivision.
fn subdivided_torus() -> DeltaComplex {
    builtin::torus()
        .barycentric_subdivision()
        .barycentric_subdivision()
}

fn bench_smith_normal_form(c: &mut Criterion) {
    let torus = subdivided_torus();
    let d1 = boundary_matrix(&torus, 1).unwrap();
    let d2 = boundary_matrix(&torus, 2).unwrap();
    c.bench_function("snf_boundary_degree_1", |b| {
        b.iter(|| smith_normal_form(black_box(&d1)))
    });
    c.bench_function("snf_boundary_degree_2", |b| {
        b.iter(|| smith_normal_form(black_box(&d2)))
    });
}

fn bench_homology_profile(c: &mut Criterion) {
    let torus = subdivided_torus();
    c.bench_function("homology_profile_72_triangles", |b| {
        b.iter(|| HomologyProfile::compute(black_box(&torus), &[2, 3, 5], 50).unwrap())
    });
}

fn bench_simplify(c: &mut Criterion) {
    // Anneal a double cover of the torus back down; the floor stops the
    // search as soon as the two-triangle form is found.
    let torus = builtin::torus();
    let chain = subgroup_chain(&torus, 2).unwrap();
    let cover = chain[1].complex.clone();
    let config = SearchConfig { seed: 9, max_steps: 4_000, ..SearchConfig::default() };
    c.bench_function("simplify_torus_double_cover", |b| {
        b.iter(|| simplify(black_box(&cover), &config).unwrap())
    });
}

fn bench_subdivision(c: &mut Criterion) {
    let octahedron = builtin::octahedron();
    c.bench_function("barycentric_subdivision_octahedron", |b| {
        b.iter(|| black_box(&octahedron).barycentric_subdivision())
    });
}

fn bench_low_index(c: &mut Criterion) {
    let genus2 = builtin::genus_surface(2);
    let pres = presentation(&genus2).unwrap();
    c.bench_function("low_index_genus2_to_2", |b| {
        b.iter(|| low_index(black_box(&pres), 2).unwrap())
    });

    let wedge = DeltaComplex::new(1, 1, vec![[0, 0], [0, 0]], Vec::new()).unwrap();
    let free = presentation(&wedge).unwrap();
    c.bench_function("low_index_free_rank2_to_4", |b| {
        b.iter(|| low_index(black_box(&free), 4).unwrap())
    });
}

fn bench_build_cover(c: &mut Criterion) {
    let genus2 = builtin::genus_surface(2);
    let pres = presentation(&genus2).unwrap();
    let records = low_index(&pres, 2).unwrap();
    let record = records.iter().find(|r| r.index == 2).unwrap().clone();
    c.bench_function("build_cover_genus2_index_2", |b| {
        b.iter(|| build_cover(black_box(&genus2), black_box(&record)).unwrap())
    });
}

criterion_group!(
    benches,
    bench_smith_normal_form,
    bench_homology_profile,
    bench_simplify,
    bench_subdivision,
    bench_low_index,
    bench_build_cover,
);
criterion_main!(benches);
