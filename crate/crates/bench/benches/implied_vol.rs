use criterion::{black_box, criterion_group, criterion_main, Criterion};
use powvol::{implied_vol_closed_form, implied_vol_iterative, price_power_call, SolverConfig};
use powvol_bench::reference_case;

fn bench_inversion(c: &mut Criterion) {
    let (mut market, spec) = reference_case();
    let price = price_power_call(&market, &spec).unwrap().price;
    market.sigma = None;
    let config = SolverConfig::default();

    c.bench_function("implied_vol_closed_form", |b| {
        b.iter(|| implied_vol_closed_form(black_box(&market), black_box(&spec), black_box(price)))
    });
    c.bench_function("implied_vol_iterative", |b| {
        b.iter(|| {
            implied_vol_iterative(black_box(&market), black_box(&spec), black_box(price), &config)
        })
    });
}

criterion_group!(benches, bench_inversion);
criterion_main!(benches);
