//! Scenes and flows shared by the benchmarks.

use invisibody::construct2d::Shape2;
use invisibody::geom::Surface3;
use invisibody::{build_body3, build_thin_orthogonal, generate_sequences, FlowSpec, Policy, Scene, Vec2, Vec3};

pub fn thin_scene(depth: usize) -> Scene<Shape2> {
    build_thin_orthogonal(depth).expect("thin body").scene()
}

pub fn body3_scene(depth: usize) -> Scene<Surface3> {
    let seq = generate_sequences(1.0, 0.5, Policy::default(), depth).expect("sequences");
    build_body3(1.0, 0.5, &seq, depth).expect("3D body").scene()
}

pub fn vertical_flow2(rays: usize) -> FlowSpec<Vec2> {
    FlowSpec::monte_carlo(Vec2::new(0.0, -1.0), rays, 1).with_margin(1e-6)
}

pub fn vertical_flow3(rays: usize) -> FlowSpec<Vec3> {
    FlowSpec::monte_carlo(Vec3::new(0.0, 0.0, -1.0), rays, 1).with_margin(1e-6)
}
