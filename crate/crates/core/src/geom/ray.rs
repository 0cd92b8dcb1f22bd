use super::vec::Vector;

/// Half-line `origin + t·dir`, `t ≥ 0`, with unit `dir`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ray<V> {
    pub origin: V,
    pub dir: V,
}

impl<V: Vector> Ray<V> {
    /// Builds a ray, normalizing `dir`.
    pub fn new(origin: V, dir: V) -> Self {
        Self {
            origin,
            dir: dir.normalized(),
        }
    }

    pub fn at(&self, t: f64) -> V {
        self.origin + self.dir * t
    }
}

/// A ray–surface collision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hit<V> {
    pub t: f64,
    pub point: V,
    /// Unit normal facing the incoming ray (`⟨normal, dir⟩ < 0`).
    pub normal: V,
    pub surface_id: usize,
    /// The collision lies within `eps_sing` of a rim, where the billiard
    /// motion is undefined.
    pub at_boundary: bool,
}

/// Numerical tolerances shared by every intersection routine of a scene.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Minimum ray advance; excludes re-hitting the departure point.
    pub t_eps: f64,
    /// Rim proximity below which a hit is reported as singular.
    pub eps_sing: f64,
    /// Relative discriminant below which a collision counts as a tangential miss.
    pub grazing: f64,
}

impl Tolerances {
    pub const RELATIVE_T_EPS: f64 = 1e-9;
    pub const RELATIVE_EPS_SING: f64 = 1e-9;
    pub const GRAZING: f64 = 1e-14;

    pub fn for_diameter(diameter: f64) -> Self {
        Self {
            t_eps: Self::RELATIVE_T_EPS * diameter,
            eps_sing: Self::RELATIVE_EPS_SING * diameter,
            grazing: Self::GRAZING,
        }
    }
}

/// Specular reflection of `v` off a mirror with unit normal `n`.
pub fn reflect<V: Vector>(v: V, n: V) -> V {
    v - n * (2.0 * v.dot(n))
}
