use crate::construct2d::Shape2;
use crate::geom::{
    intersect_ray_parabola, intersect_ray_segment, Aabb, Hit, Ray, Surface3, Tolerances, Vec2, Vec3,
    Vector,
};

/// A surface the tracer can intersect.
pub trait Primitive: Send + Sync {
    type V: Vector + Send + Sync;
    /// Nearest admissible hit; `surface_id` is filled in by the scene.
    fn intersect(&self, ray: &Ray<Self::V>, tol: &Tolerances) -> Option<Hit<Self::V>>;
    fn bounds(&self) -> Aabb<Self::V>;
}

impl Primitive for Shape2 {
    type V = Vec2;

    fn intersect(&self, ray: &Ray<Vec2>, tol: &Tolerances) -> Option<Hit<Vec2>> {
        match self {
            Shape2::Arc(a) => intersect_ray_parabola(ray, a, tol),
            Shape2::Segment(s) => intersect_ray_segment(ray, s, tol),
        }
    }

    fn bounds(&self) -> Aabb<Vec2> {
        Shape2::bounds(self)
    }
}

impl Primitive for Surface3 {
    type V = Vec3;

    fn intersect(&self, ray: &Ray<Vec3>, tol: &Tolerances) -> Option<Hit<Vec3>> {
        Surface3::intersect(self, ray, tol)
    }

    fn bounds(&self) -> Aabb<Vec3> {
        Surface3::bounds(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Mirror,
    /// Non-reflecting: a hit ends the trace as an anomaly.
    Wall,
}

impl Role {
    pub fn name(self) -> &'static str {
        match self {
            Role::Mirror => "mirror",
            Role::Wall => "wall",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SceneSurface<P: Primitive> {
    pub shape: P,
    pub role: Role,
    /// Attribution tag, e.g. the piece or sub-body the surface bounds.
    pub group: String,
    pub(crate) padded_bounds: Aabb<P::V>,
}

/// Closed-form knowledge about a scene that the verifier uses to set up flows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SceneHint<V> {
    /// Rays inside the plane (line) `⟨normal, x⟩ = offset` meet a rim.
    SingularPlane { normal: V, offset: f64 },
    /// Rays with `|⟨normal, x⟩| < half_width` (and, when gated,
    /// `|⟨gate.0, x⟩| > gate.1`) cross the part of the body cut off by the
    /// truncation.
    UntreatedZone {
        normal: V,
        half_width: f64,
        gate: Option<(V, f64)>,
    },
}

impl<V: Vector> SceneHint<V> {
    /// Whether the hint describes a set of whole lines along `dir`.
    pub fn applies_to(&self, dir: V) -> bool {
        let perp = |n: V| n.dot(dir).abs() < 1e-9;
        match self {
            SceneHint::SingularPlane { normal, .. } => perp(*normal),
            SceneHint::UntreatedZone { normal, gate, .. } => {
                perp(*normal) && gate.is_none_or(|(g, _)| perp(g))
            }
        }
    }
}

/// Immutable set of surfaces with the tolerances of its scale.
#[derive(Debug, Clone, PartialEq)]
pub struct Scene<P: Primitive> {
    pub surfaces: Vec<SceneSurface<P>>,
    pub bounds: Aabb<P::V>,
    pub diameter: f64,
    pub max_bounces: usize,
    pub tolerances: Tolerances,
    pub hints: Vec<SceneHint<P::V>>,
}

impl<P: Primitive> Scene<P> {
    pub const DEFAULT_MAX_BOUNCES: usize = 64;

    /// Scene whose box covers `domain` and every surface.
    pub fn new(surfaces: Vec<(P, Role, String)>, domain: Aabb<P::V>) -> Self {
        let mut bounds = domain;
        for (s, ..) in &surfaces {
            bounds = bounds.union(s.bounds());
        }
        if bounds.is_empty() || bounds.extent() <= 0.0 {
            let unit = P::V::from_fn(|_| 0.5);
            bounds = Aabb {
                min: -unit,
                max: unit,
            };
        }
        let diameter = bounds.extent();
        let pad = 1e-12 * diameter;
        let surfaces = surfaces
            .into_iter()
            .map(|(shape, role, group)| SceneSurface {
                padded_bounds: shape.bounds().padded(pad),
                shape,
                role,
                group,
            })
            .collect();
        Self {
            surfaces,
            bounds,
            diameter,
            max_bounces: Self::DEFAULT_MAX_BOUNCES,
            tolerances: Tolerances::for_diameter(diameter),
            hints: Vec::new(),
        }
    }

    pub fn with_hints(mut self, hints: Vec<SceneHint<P::V>>) -> Self {
        self.hints = hints;
        self
    }

    pub fn with_max_bounces(mut self, n: usize) -> Self {
        self.max_bounces = n;
        self
    }

    /// Ray parameter at which `ray` leaves the scene box (0 if outside).
    pub fn exit_distance(&self, ray: &Ray<P::V>) -> f64 {
        self.bounds
            .ray_interval(ray.origin, ray.dir)
            .map_or(0.0, |(_, t1)| t1.max(0.0))
    }

    pub fn group_of(&self, id: usize) -> &str {
        &self.surfaces[id].group
    }
}
