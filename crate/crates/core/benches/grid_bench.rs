// Copyright 2026 trion-sim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Compares the rayon-parallel grid evaluation against the sequential
//! fallback. Build the sequential-only crate with
//! `cargo bench --no-default-features` to time the fallback in isolation;
//! under the default `parallel` feature both paths are benched side by
//! side.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use trion_sim::correlations::emission_spectrum;
use trion_sim::sweep::{sweep, sweep_sequential, AxisSpec, Observable};
use trion_sim::trion::{EmissionChannel, TrionParams};
use trion_sim::units::ghz;

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .collect()
}

fn detuning_map_params() -> (TrionParams, [AxisSpec; 2]) {
    let p = TrionParams {
        omega1_rabi: ghz(0.27),
        omega2_rabi: ghz(2.1),
        ..TrionParams::qd1()
    };
    let axes = [
        AxisSpec::new("delta1", linspace(ghz(-1.0), ghz(1.0), 41)).unwrap(),
        AxisSpec::new("delta2", linspace(ghz(-4.0), ghz(4.0), 41)).unwrap(),
    ];
    (p, axes)
}

fn bench_sweep(c: &mut Criterion) {
    let (p, axes) = detuning_map_params();
    let mut group = c.benchmark_group("detuning_map_41x41");
    group.bench_function("sequential", |b| {
        b.iter(|| sweep_sequential(black_box(&p), black_box(&axes), Observable::Fluorescence))
    });
    #[cfg(feature = "parallel")]
    group.bench_function("parallel", |b| {
        b.iter(|| sweep(black_box(&p), black_box(&axes), Observable::Fluorescence))
    });
    #[cfg(not(feature = "parallel"))]
    group.bench_function("sweep_no_parallel_feature", |b| {
        b.iter(|| sweep(black_box(&p), black_box(&axes), Observable::Fluorescence))
    });
    group.finish();
}

fn bench_spectrum(c: &mut Criterion) {
    let p = TrionParams {
        omega1_rabi: ghz(31.9),
        gamma_p_deph: 0.0,
        ..TrionParams::qd1()
    };
    let grid = linspace(-1.6 * ghz(31.9), 1.6 * ghz(31.9), 801);
    let mut group = c.benchmark_group("auger_spectrum_801");
    group.bench_function("resolvent", |b| {
        b.iter(|| emission_spectrum(black_box(&p), EmissionChannel::Auger, black_box(&grid)))
    });
    group.finish();
}

criterion_group!(benches, bench_sweep, bench_spectrum);
criterion_main!(benches);
