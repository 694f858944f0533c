use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use xmod_homology::bar::{xmod_homology, BarOptions, CoefficientSystem};
use xmod_homology::grp::{commutator_data, FiniteGroup};
use xmod_homology::par::{set_execution, Execution};
use xmod_homology::xmod::{inclusion_xmod, CrossedModule};

fn subjects() -> Vec<(&'static str, CrossedModule)> {
    let s3 = Arc::new(FiniteGroup::symmetric3());
    vec![
        ("C4_id", CrossedModule::identity(Arc::new(FiniteGroup::cyclic(4)))),
        ("A3_in_S3", inclusion_xmod(&commutator_data(&s3, None).unwrap()).unwrap()),
    ]
}

fn homology(c: &mut Criterion) {
    let mut group = c.benchmark_group("xmod_homology_h3");
    group.sample_size(10);
    for (name, x) in subjects() {
        for normalized in [false, true] {
            let opts = BarOptions { normalized, ..Default::default() };
            let label = format!("{name}/{}", if normalized { "normalized" } else { "unnormalized" });
            for (mode, exec) in [("parallel", Execution::Parallel), ("sequential", Execution::Sequential)] {
                group.bench_with_input(BenchmarkId::new(mode, &label), &x, |b, x| {
                    set_execution(exec);
                    b.iter(|| xmod_homology(x, &CoefficientSystem::IntegralTrivial, 3, opts).unwrap());
                    set_execution(Execution::Parallel);
                });
            }
        }
    }
    group.finish();
}

criterion_group!(benches, homology);
criterion_main!(benches);
