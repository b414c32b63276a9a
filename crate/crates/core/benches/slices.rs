//! Per-degree workloads run on the rayon pool and with the sequential
//! fallback. Every iteration rebuilds its caches.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use ncgeom::free_assoc::{commutator_filtration, GeneratorSet, TensorAlgebra};
use ncgeom::graded::degrees_up_to;
use ncgeom::nc_forms::{NcForms, StarForms, Support};
use ncgeom::par;
use ncgeom::pbw_star::pbw_check;

fn modes() -> Vec<(&'static str, bool)> {
    let mut m = vec![("sequential", true)];
    if cfg!(feature = "parallel") {
        m.push(("parallel", false));
    }
    m
}

fn workloads(c: &mut Criterion) {
    let mut g = c.benchmark_group("slices");
    g.sample_size(10);
    for (mode, seq) in modes() {
        par::set_sequential(seq);
        g.bench_function(BenchmarkId::new("pbw_dim3_w5", mode), |b| {
            b.iter(|| pbw_check(&GeneratorSet::standard(3), 5))
        });
        g.bench_function(BenchmarkId::new("commutator_filtration_dim2_w5", mode), |b| {
            b.iter(|| commutator_filtration(&GeneratorSet::standard(2), 3, 5))
        });
        g.bench_function(BenchmarkId::new("star_torus_mod_commutators", mode), |b| {
            b.iter(|| {
                let f = StarForms::new(&GeneratorSet::laurent(2), 1).unwrap();
                degrees_up_to(2, 2).iter().map(|c| f.mod_commutators(c, 3).unwrap().cohomology_dims()).collect::<Vec<_>>()
            })
        });
        g.bench_function(BenchmarkId::new("omega_tv_commutator_span", mode), |b| {
            let f = NcForms::new(TensorAlgebra::new(GeneratorSet::standard(2)), Support::Positive);
            b.iter(|| f.commutator_span(&vec![2, 2], 2).dim())
        });
    }
    par::set_sequential(false);
    g.finish();
}

criterion_group!(benches, workloads);
criterion_main!(benches);
