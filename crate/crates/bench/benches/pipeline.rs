use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use pommaret_core::{
    check_exactness, minimize, pommaret_basis, ps_complex, random_quasi_stable, Monomial,
    MonomialIdeal,
};

fn worked() -> MonomialIdeal {
    MonomialIdeal::new(vec![
        Monomial::new(vec![2, 0, 0]),
        Monomial::new(vec![0, 4, 0]),
        Monomial::new(vec![0, 2, 2]),
        Monomial::new(vec![0, 0, 3]),
    ])
    .unwrap()
}

fn pipeline(c: &mut Criterion) {
    for (name, ideal) in [("worked", worked()), ("random4", random_quasi_stable(42, 4, 4, 4))] {
        let basis = pommaret_basis(&ideal).unwrap();
        let f = ps_complex(&basis);
        let fmin = minimize(&f).unwrap().complex;
        c.bench_function(&format!("{name}/basis"), |b| b.iter(|| pommaret_basis(black_box(&ideal))));
        c.bench_function(&format!("{name}/ps_complex"), |b| b.iter(|| ps_complex(black_box(&basis))));
        c.bench_function(&format!("{name}/minimize"), |b| b.iter(|| minimize(black_box(&f))));
        c.bench_function(&format!("{name}/exactness"), |b| {
            b.iter(|| check_exactness(black_box(&fmin), &ideal))
        });
    }
}

criterion_group!(benches, pipeline);
criterion_main!(benches);
