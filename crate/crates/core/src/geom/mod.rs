//! Exact-formula primitives: vectors, rays, parabolas, trimmed patches and
//! the affine maps used by the constructions.

mod iso;
mod parabola;
mod patch3;
mod ray;
mod vec;

pub use iso::{apply_homothety, Homothety2, Isometry2};
pub use parabola::{
    intersect_ray_parabola, intersect_ray_segment, Parabola2, ParabolicArc2, Roots, Segment2,
};
pub use patch3::{
    intersect_ray_patch3, intersect_ray_plane3, min_slack, Axis, ParabolicCylinderPatch3,
    PlanePatch3, Profile, Signed, Surface3, Trim,
};
pub use ray::{reflect, Hit, Ray, Tolerances};
pub use vec::{Aabb, Vec2, Vec3, Vector};


pub type Ray2 = Ray<Vec2>;
pub type Ray3 = Ray<Vec3>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeomError {
    #[error("degenerate parabola: focal length must be positive")]
    DegenerateParabola,
    #[error("non-finite geometric input")]
    NonFinite,
    #[error("empty arc: t_min = {t_min} is not below t_max = {t_max}")]
    EmptyArc { t_min: f64, t_max: f64 },
}
