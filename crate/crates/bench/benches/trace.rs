use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use invisibody::{trace, verify_invisibility, Ray2, Vec2};
use invisibody_bench::{body3_scene, thin_scene, vertical_flow2, vertical_flow3};

fn single_rays(c: &mut Criterion) {
    let mut g = c.benchmark_group("trace_one");
    for depth in [4, 8, 16] {
        let scene = thin_scene(depth);
        // A four-bounce ray through the first level.
        let ray = Ray2::new(Vec2::new(-0.75, 1.5), Vec2::new(0.0, -1.0));
        g.bench_with_input(BenchmarkId::new("thin2d", depth), &scene, |b, s| {
            b.iter(|| trace(s, black_box(&ray)))
        });
    }
    g.finish();
}

fn flows(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_flow");
    g.sample_size(10);
    let thin = thin_scene(8);
    let flow = vertical_flow2(1000);
    g.bench_function("thin2d_n8_1000", |b| b.iter(|| verify_invisibility(&thin, &flow, 1e-9).unwrap()));
    let body = body3_scene(4);
    let flow = vertical_flow3(1000);
    g.bench_function("body3d_n4_1000", |b| b.iter(|| verify_invisibility(&body, &flow, 1e-9).unwrap()));
    g.finish();
}

criterion_group!(benches, single_rays, flows);
criterion_main!(benches);
