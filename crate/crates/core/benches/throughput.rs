//! Throughput of the batch entry points, parallel against the sequential
//! reference path. Run `cargo bench -p lemniscate-maps`; build with
//! `--no-default-features` to measure the fallback on its own.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lemniscate_maps::analysis::{
    render_phase_portrait, render_phase_portrait_serial, trace_green_level, Window,
};
use lemniscate_maps::elliptic::{complete_elliptic_k, jacobi_sn_complex};
use lemniscate_maps::maps::{LemniscaticMap, RadialSlitConfig, TwoDiskConfig};
use lemniscate_maps::Complex64;
use std::f64::consts::PI;
use std::hint::black_box;
use std::time::Duration;

fn radial() -> LemniscaticMap {
    LemniscaticMap::radial_slits(RadialSlitConfig {
        arms: 3,
        inner: 1.0,
        outer: 2.0,
    })
    .unwrap()
}

fn disks() -> LemniscaticMap {
    LemniscaticMap::two_disks(TwoDiskConfig {
        center: 1.0,
        radius: 0.5,
    })
    .unwrap()
}

fn exterior_points(map: &LemniscaticMap, count: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(count);
    let mut i = 0u64;
    while out.len() < count {
        i += 1;
        let t = (i as f64 * 0.6180339887498949) % 1.0;
        let s = (i as f64 * 0.4142135623730951) % 1.0;
        let z = Complex64::from_polar(
            map.outer_radius() * (1.1 + 3.0 * s),
            2.0 * PI * t,
        );
        if !map.source_contains(z) {
            out.push(z);
        }
    }
    out
}

fn bench_portrait(c: &mut Criterion) {
    let map = LemniscaticMap::radial_slits(RadialSlitConfig {
        arms: 2,
        inner: 0.1,
        outer: 1.0,
    })
    .unwrap();
    let f = |w: Complex64| map.inverse_continued(w).ok();
    let window = Window::square(1.5).unwrap();
    let mut group = c.benchmark_group("phase_portrait_256");
    group.measurement_time(Duration::from_secs(4));
    group.bench_function(BenchmarkId::new("render", "parallel"), |b| {
        b.iter(|| render_phase_portrait(&f, window, 256, 256).unwrap())
    });
    group.bench_function(BenchmarkId::new("render", "serial"), |b| {
        b.iter(|| render_phase_portrait_serial(&f, window, 256, 256).unwrap())
    });
    group.finish();
}

fn bench_forward_batch(c: &mut Criterion) {
    for (name, map, count) in [
        ("radial3", radial(), 20_000usize),
        ("two_disks", disks(), 2_000usize),
    ] {
        let points = exterior_points(&map, count);
        let mut group = c.benchmark_group(format!("forward_batch_{name}"));
        group.measurement_time(Duration::from_secs(4));
        group.bench_function(BenchmarkId::new("eval", "parallel"), |b| {
            b.iter(|| black_box(map.forward_batch(&points)))
        });
        group.bench_function(BenchmarkId::new("eval", "serial"), |b| {
            b.iter(|| black_box(map.forward_batch_serial(&points)))
        });
        group.finish();
    }
}

fn bench_level_trace(c: &mut Criterion) {
    let map = radial();
    let window = Window::square(3.2).unwrap();
    let mut group = c.benchmark_group("level_trace_200");
    group.measurement_time(Duration::from_secs(6));
    group.sample_size(20);
    group.bench_function("sigma_1.15", |b| {
        b.iter(|| trace_green_level(&map, 1.15, window, 200).unwrap())
    });
    group.finish();
}

fn bench_special_functions(c: &mut Criterion) {
    let mut group = c.benchmark_group("special_fn");
    group.bench_function("complete_elliptic_k", |b| {
        b.iter(|| complete_elliptic_k(black_box(0.7)).unwrap())
    });
    group.bench_function("jacobi_sn_complex", |b| {
        b.iter(|| jacobi_sn_complex(black_box(Complex64::new(0.8, 0.4)), black_box(0.6)).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_portrait,
    bench_forward_batch,
    bench_level_trace,
    bench_special_functions
);
criterion_main!(benches);
