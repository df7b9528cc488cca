use std::f64::consts::PI;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nmlab::collision;
use nmlab::grid::linspace;
use nmlab::nvmodel::{self, NVParams, NuclearPrep};
use nmlab::sdc::{self, CorrelatedSpectrum, EncodingScheme};
use nmlab::spectra::{kappa_numeric, Birefringence, SpectralProfile};
use nmlab::sweep;

fn quadrature(c: &mut Criterion) {
    let profile = SpectralProfile::gaussian(0.0, 1.0, 4096).unwrap();
    let biref = Birefringence::angular(1.0);
    let ts = linspace(0.0, 8.0, 512);
    let f = |t: &f64| kappa_numeric(&profile, biref, *t);

    let mut g = c.benchmark_group("kappa_quadrature_512x4096");
    g.bench_function("sequential", |b| {
        b.iter(|| sweep::map_sequential(black_box(&ts), f))
    });
    #[cfg(feature = "parallel")]
    g.bench_function("parallel", |b| {
        b.iter(|| sweep::map_parallel(black_box(&ts), f))
    });
    g.finish();
}

fn nm_phi(c: &mut Criterion) {
    let params = NVParams::illustrative();
    let ts = linspace(0.0, 3.0 * params.envelope_t, 3000);
    let phis = linspace(0.0, PI / 2.0, 32);
    let f = |phi: &f64| {
        let prep = NuclearPrep::new(*phi).unwrap();
        let r: Vec<f64> = ts
            .iter()
            .map(|t| nvmodel::bloch_magnitude(&params, &prep, *t))
            .collect();
        nmlab::spectra::positive_variation(&r)
    };

    let mut g = c.benchmark_group("nm_measure_32phi");
    g.bench_function("sequential", |b| {
        b.iter(|| sweep::map_sequential(black_box(&phis), f))
    });
    #[cfg(feature = "parallel")]
    g.bench_function("parallel", |b| {
        b.iter(|| sweep::map_parallel(black_box(&phis), f))
    });
    g.finish();
}

fn collision_scan(c: &mut Criterion) {
    let eps = linspace(0.0, 0.5, 1001);
    let f = |e: &f64| {
        let v = collision::classify(*e).unwrap();
        let (c1, c2) = collision::entanglement_dynamics(*e).unwrap();
        (v.classification, c2 - c1)
    };

    let mut g = c.benchmark_group("collision_scan_1001");
    g.bench_function("sequential", |b| {
        b.iter(|| sweep::map_sequential(black_box(&eps), f))
    });
    #[cfg(feature = "parallel")]
    g.bench_function("parallel", |b| {
        b.iter(|| sweep::map_parallel(black_box(&eps), f))
    });
    g.finish();
}

fn sdc_curve(c: &mut Criterion) {
    let spec = CorrelatedSpectrum::new(1.0, -0.5, 1.0).unwrap();
    let mut g = c.benchmark_group("sdc_mutual_information");
    for n in [64usize, 512] {
        let ts = linspace(0.0, 3.0, n);
        let f = |t: &f64| sdc::simulate_protocol(&spec, *t, *t, EncodingScheme::FourState).unwrap();
        g.bench_with_input(BenchmarkId::new("sequential", n), &ts, |b, ts| {
            b.iter(|| sweep::map_sequential(black_box(ts), f))
        });
        #[cfg(feature = "parallel")]
        g.bench_with_input(BenchmarkId::new("parallel", n), &ts, |b, ts| {
            b.iter(|| sweep::map_parallel(black_box(ts), f))
        });
    }
    g.finish();
}

criterion_group!(benches, quadrature, nm_phi, collision_scan, sdc_curve);
criterion_main!(benches);
