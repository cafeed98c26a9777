use criterion::{criterion_group, criterion_main, Criterion};
use sl2harm::adjunction::{matrix_coefficient, wave_packet_b};
use sl2harm::fourier::{fourier_a, FourierConfig};
use sl2harm::intertwiners::{c_function, intertwine_j_numeric};
use sl2harm::models::{HomogeneousAtom, PlaneFunction};
use sl2harm::{xi_value, GroupElement, QuadratureScheme, Side, C64};
use sl2harm_bench::{generic_element, k_series, spectral_profile, upper_bump};
use std::hint::black_box;

fn group(c: &mut Criterion) {
    let scheme = QuadratureScheme::default();
    let g = generic_element();
    c.bench_function("xi_value", |b| b.iter(|| xi_value(black_box(&g), &scheme)));
    c.bench_function("cartan", |b| b.iter(|| black_box(&g).cartan()));
}

fn intertwiners(c: &mut Criterion) {
    c.bench_function("c_function", |b| {
        b.iter(|| c_function(Side::Upper, black_box(3), black_box(C64::new(1.5, 0.2))))
    });
    let scheme = QuadratureScheme::default();
    let h = PlaneFunction::atom(
        Side::Lower,
        HomogeneousAtom {
            mu: C64::new(1.0, 0.5),
            j: 2,
        },
    );
    c.bench_function("line_integral", |b| {
        b.iter(|| intertwine_j_numeric(Side::Upper, &h, black_box([0.3, -1.7]), &scheme))
    });
}

fn spectral(c: &mut Criterion) {
    let cfg = FourierConfig::default();
    let h = upper_bump();
    let mut group = c.benchmark_group("spectral");
    group.sample_size(10);
    group.bench_function("fourier_a", |b| b.iter(|| fourier_a(black_box(&h), &cfg)));
    let (a, s) = (k_series(), k_series());
    let g = generic_element();
    group.bench_function("matrix_coefficient", |b| {
        b.iter(|| matrix_coefficient(Side::Upper, black_box(1.3), &a, &s, &g))
    });
    let (h1, h2) = (spectral_profile(Side::Lower), spectral_profile(Side::Upper));
    let at = GroupElement::a(2.0);
    group.bench_function("wave_packet_b", |b| b.iter(|| wave_packet_b(&h1, &h2, black_box(&at))));
    group.finish();
}

criterion_group!(kernels, group, intertwiners, spectral);
criterion_main!(kernels);
