//! Benchmarks for the heavy exhaustive scans, comparing the rayon path
//! against a single-thread pool (or the plain sequential path when the
//! `parallel` feature is off).

use criterion::{criterion_group, criterion_main, Criterion};

use phi_core::catalog::{run_catalog, CatalogEntry, CatalogSpec};
use phi_core::construct::Descriptor;
use phi_core::lattice::all_subgroups;
use phi_core::par::with_thread_count;
use phi_core::{GroupTable, Limits};

fn bench_modes(c: &mut Criterion, name: &str, f: impl Fn() + Sync + Send) {
    let mut group = c.benchmark_group(name);
    group.sample_size(10);
    if phi_core::par::parallelism_available() {
        group.bench_function("parallel", |b| b.iter(&f));
        group.bench_function("one_thread", |b| b.iter(|| with_thread_count(Some(1), &f)));
    } else {
        group.bench_function("sequential", |b| b.iter(&f));
    }
    group.finish();
}

fn table_validation(c: &mut Criterion) {
    bench_modes(c, "validate/Z200", || {
        let raw: Vec<Vec<usize>> = (0..200)
            .map(|a| (0..200).map(|b| (a + b) % 200).collect())
            .collect();
        GroupTable::from_raw(&raw).unwrap();
    });
}

fn lattice_enumeration(c: &mut Criterion) {
    let g = phi_core::construct::elementary_abelian(3, 4).unwrap();
    let limits = Limits::default();
    bench_modes(c, "all_subgroups/Z3^4", || {
        all_subgroups(&g, &limits).unwrap();
    });
}

fn catalog_verification(c: &mut Criterion) {
    let spec = CatalogSpec {
        entries: vec![
            CatalogEntry {
                name: "S4".into(),
                descriptor: Descriptor::Symmetric { n: 4 },
            },
            CatalogEntry {
                name: "Q32".into(),
                descriptor: Descriptor::GeneralizedQuaternion { order: 32 },
            },
            CatalogEntry {
                name: "D32".into(),
                descriptor: Descriptor::Dihedral { order: 32 },
            },
            CatalogEntry {
                name: "E125".into(),
                descriptor: Descriptor::ExtraspecialEP3 { p: 5 },
            },
            CatalogEntry {
                name: "Z2^4".into(),
                descriptor: Descriptor::ElementaryAbelian { p: 2, k: 4 },
            },
            CatalogEntry {
                name: "schmidt_2_3_2".into(),
                descriptor: Descriptor::Schmidt {
                    p: 2,
                    q: 3,
                    q_exp: 2,
                },
            },
        ],
        max_order: None,
        max_lattice: None,
    };
    bench_modes(c, "run_catalog/six_entries", || {
        run_catalog(&spec, std::path::Path::new(".")).unwrap();
    });
}

criterion_group!(
    benches,
    table_validation,
    lattice_enumeration,
    catalog_verification
);
criterion_main!(benches);
