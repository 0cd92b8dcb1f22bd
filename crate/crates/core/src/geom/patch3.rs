use super::parabola::ParabolicArc2;
use super::ray::{Hit, Ray, Tolerances};
use super::vec::{Aabb, Vec2, Vec3, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn unit(self) -> Vec3 {
        Vec3::zero().with(self.index(), 1.0)
    }

    pub fn name(self) -> char {
        match self {
            Axis::X => 'x',
            Axis::Y => 'y',
            Axis::Z => 'z',
        }
    }

    pub fn from_name(c: char) -> Option<Self> {
        match c {
            'x' => Some(Axis::X),
            'y' => Some(Axis::Y),
            'z' => Some(Axis::Z),
            _ => None,
        }
    }
}

/// The signed coordinate `sign·p[axis]`, `sign ∈ {−1, 1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Signed {
    pub axis: Axis,
    pub sign: f64,
}

impl Signed {
    pub fn new(axis: Axis, sign: f64) -> Self {
        Self { axis, sign }
    }

    pub fn of(&self, p: Vec3) -> f64 {
        self.sign * p.component(self.axis.index())
    }
}

/// Profile `v = h(t)` of a cell boundary, written for the non-negative octant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Profile {
    /// `v = t`.
    Diagonal,
    /// `v = focus_v − f + (t − focus_t)²/(4f)`.
    Parabola {
        focus_t: f64,
        focus_v: f64,
        focal_length: f64,
    },
}

impl Profile {
    pub fn eval(&self, t: f64) -> f64 {
        match *self {
            Profile::Diagonal => t,
            Profile::Parabola {
                focus_t,
                focus_v,
                focal_length,
            } => focus_v - focal_length + (t - focus_t).powi(2) / (4.0 * focal_length),
        }
    }
}

/// Closed constraint on a point, sign-resolved so no `abs` appears.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Trim {
    /// `lo ≤ coord ≤ hi`; either bound may be infinite.
    Range { coord: Signed, lo: f64, hi: f64 },
    /// `lesser ≤ greater`.
    Dominated { lesser: Signed, greater: Signed },
    /// `value ≤ profile(arg)`.
    Under {
        arg: Signed,
        value: Signed,
        profile: Profile,
    },
    /// `value ≥ profile(arg)`.
    Over {
        arg: Signed,
        value: Signed,
        profile: Profile,
    },
}

impl Trim {
    /// Non-negative inside the constraint; magnitude is a coordinate distance.
    pub fn slack(&self, p: Vec3) -> f64 {
        match self {
            Trim::Range { coord, lo, hi } => {
                let s = coord.of(p);
                (s - lo).min(hi - s)
            }
            Trim::Dominated { lesser, greater } => greater.of(p) - lesser.of(p),
            Trim::Under {
                arg,
                value,
                profile,
            } => profile.eval(arg.of(p)) - value.of(p),
            Trim::Over {
                arg,
                value,
                profile,
            } => value.of(p) - profile.eval(arg.of(p)),
        }
    }
}

/// Minimum slack over a set of constraints (`+∞` when empty).
pub fn min_slack(trims: &[Trim], p: Vec3) -> f64 {
    trims
        .iter()
        .map(|t| t.slack(p))
        .fold(f64::INFINITY, f64::min)
}

/// Parabolic arc in a coordinate plane, extruded along the remaining axis and
/// cut down pointwise by trim constraints.
#[derive(Debug, Clone, PartialEq)]
pub struct ParabolicCylinderPatch3 {
    /// Coordinates carrying the arc's (first, second) components.
    pub plane: (Axis, Axis),
    pub extrusion: Axis,
    pub base_arc: ParabolicArc2,
    /// Range of the extrusion coordinate enclosing the trimmed patch.
    pub e_range: (f64, f64),
    pub trim: Vec<Trim>,
}

impl ParabolicCylinderPatch3 {
    pub fn project(&self, p: Vec3) -> Vec2 {
        Vec2::new(
            p.component(self.plane.0.index()),
            p.component(self.plane.1.index()),
        )
    }

    pub fn lift(&self, q: Vec2, e: f64) -> Vec3 {
        Vec3::zero()
            .with(self.plane.0.index(), q.x)
            .with(self.plane.1.index(), q.y)
            .with(self.extrusion.index(), e)
    }

    /// Patch point at arc parameter `u` and extrusion coordinate `e` (trims
    /// not applied).
    pub fn point_at(&self, u: f64, e: f64) -> Vec3 {
        self.lift(self.base_arc.parabola.point_at(u), e)
    }

    pub fn accepts(&self, p: Vec3) -> bool {
        let e = p.component(self.extrusion.index());
        e >= self.e_range.0 && e <= self.e_range.1 && min_slack(&self.trim, p) >= 0.0
    }

    pub fn bounds(&self) -> Aabb<Vec3> {
        let b = self.base_arc.bounds();
        Aabb::from_points([
            self.lift(b.min, self.e_range.0),
            self.lift(b.max, self.e_range.1),
        ])
    }
}

/// Planar face: the rectangle `origin + s·u + r·w`, `s ∈ u_range`,
/// `r ∈ w_range`, cut down by trim constraints. `u`, `w` are orthonormal.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanePatch3 {
    pub origin: Vec3,
    pub u: Vec3,
    pub w: Vec3,
    pub u_range: (f64, f64),
    pub w_range: (f64, f64),
    pub trim: Vec<Trim>,
}

impl PlanePatch3 {
    pub fn normal(&self) -> Vec3 {
        self.u.cross(self.w)
    }

    pub fn point_at(&self, s: f64, r: f64) -> Vec3 {
        self.origin + self.u * s + self.w * r
    }

    pub fn accepts(&self, p: Vec3) -> bool {
        let d = p - self.origin;
        let s = d.dot(self.u);
        let r = d.dot(self.w);
        s >= self.u_range.0
            && s <= self.u_range.1
            && r >= self.w_range.0
            && r <= self.w_range.1
            && min_slack(&self.trim, p) >= 0.0
    }

    pub fn bounds(&self) -> Aabb<Vec3> {
        let (s0, s1) = self.u_range;
        let (r0, r1) = self.w_range;
        Aabb::from_points([
            self.point_at(s0, r0),
            self.point_at(s0, r1),
            self.point_at(s1, r0),
            self.point_at(s1, r1),
        ])
    }
}

fn facing(n: Vec3, dir: Vec3) -> Vec3 {
    if n.dot(dir) > 0.0 {
        -n
    } else {
        n
    }
}

/// Nearest admissible collision of a ray with a trimmed parabolic-cylinder patch.
pub fn intersect_ray_patch3(
    ray: &Ray<Vec3>,
    patch: &ParabolicCylinderPatch3,
    tol: &Tolerances,
) -> Option<Hit<Vec3>> {
    let arc = &patch.base_arc;
    let par = &arc.parabola;
    let o2 = patch.project(ray.origin);
    let d2 = patch.project(ray.dir);
    if d2.x == 0.0 && d2.y == 0.0 {
        // Parallel to the rulings: a measure-zero family of rays lies on the surface.
        return None;
    }
    let roots = par.ray_roots(o2, d2, tol.grazing);
    for &t in roots.as_slice() {
        if t <= tol.t_eps {
            continue;
        }
        let point = ray.at(t);
        let (u, _) = par.to_local(patch.project(point));
        if u < arc.t_min || u > arc.t_max {
            continue;
        }
        let e = point.component(patch.extrusion.index());
        if e < patch.e_range.0 || e > patch.e_range.1 {
            continue;
        }
        let slack = min_slack(&patch.trim, point);
        if slack < 0.0 {
            continue;
        }
        let rim = (u - arc.t_min).min(arc.t_max - u);
        let n2 = par.outward_normal_at(u);
        return Some(Hit {
            t,
            point,
            normal: facing(patch.lift(n2, 0.0), ray.dir),
            surface_id: 0,
            at_boundary: rim < tol.eps_sing || slack < tol.eps_sing,
        });
    }
    None
}

/// Collision of a ray with a trimmed planar face.
pub fn intersect_ray_plane3(ray: &Ray<Vec3>, face: &PlanePatch3, tol: &Tolerances) -> Option<Hit<Vec3>> {
    let normal = face.normal();
    let denom = normal.dot(ray.dir);
    if denom.abs() < 1e-15 {
        return None;
    }
    let t = (face.origin - ray.origin).dot(normal) / denom;
    if t <= tol.t_eps {
        return None;
    }
    let point = ray.at(t);
    let d = point - face.origin;
    let s = d.dot(face.u);
    let r = d.dot(face.w);
    let rect = (s - face.u_range.0)
        .min(face.u_range.1 - s)
        .min(r - face.w_range.0)
        .min(face.w_range.1 - r);
    let slack = min_slack(&face.trim, point).min(rect);
    if slack < 0.0 {
        return None;
    }
    Some(Hit {
        t,
        point,
        normal: facing(normal, ray.dir),
        surface_id: 0,
        at_boundary: slack < tol.eps_sing,
    })
}

/// A reflecting or walling surface of a 3D scene.
#[derive(Debug, Clone, PartialEq)]
pub enum Surface3 {
    Patch(ParabolicCylinderPatch3),
    Plane(PlanePatch3),
}

impl Surface3 {
    pub fn intersect(&self, ray: &Ray<Vec3>, tol: &Tolerances) -> Option<Hit<Vec3>> {
        match self {
            Surface3::Patch(p) => intersect_ray_patch3(ray, p, tol),
            Surface3::Plane(f) => intersect_ray_plane3(ray, f, tol),
        }
    }

    pub fn bounds(&self) -> Aabb<Vec3> {
        match self {
            Surface3::Patch(p) => p.bounds(),
            Surface3::Plane(f) => f.bounds(),
        }
    }

    pub fn accepts(&self, p: Vec3) -> bool {
        match self {
            Surface3::Patch(s) => s.accepts(p),
            Surface3::Plane(f) => f.accepts(p),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Parabola2;

    /// z = y²/2 + 1/2 over 1/2 ≤ y ≤ 1, extruded along x, trimmed by 1/2 ≤ x ≤ z.
    fn patch() -> ParabolicCylinderPatch3 {
        let par = Parabola2::new(Vec2::new(0.0, 1.0), Vec2::new(0.0, 1.0), 0.5).unwrap();
        let arc = ParabolicArc2::over_abscissas(par, 0.5, 1.0).unwrap();
        let xp = Signed::new(Axis::X, 1.0);
        ParabolicCylinderPatch3 {
            plane: (Axis::Y, Axis::Z),
            extrusion: Axis::X,
            base_arc: arc,
            e_range: (0.5, 1.0),
            trim: vec![
                Trim::Range {
                    coord: xp,
                    lo: 0.5,
                    hi: f64::INFINITY,
                },
                Trim::Dominated {
                    lesser: xp,
                    greater: Signed::new(Axis::Z, 1.0),
                },
            ],
        }
    }

    #[test]
    fn vertical_ray_hits_trimmed_patch() {
        let tol = Tolerances::for_diameter(2.0);
        let ray = Ray::new(Vec3::new(0.6, 0.8, 2.0), Vec3::new(0.0, 0.0, -1.0));
        let hit = intersect_ray_patch3(&ray, &patch(), &tol).unwrap();
        assert!((hit.point - Vec3::new(0.6, 0.8, 0.82)).norm() < 1e-15);
        assert!(0.5 <= hit.point.x && hit.point.x <= hit.point.z);
        assert!(!hit.at_boundary);
    }

    #[test]
    fn trim_rejects_small_x() {
        let tol = Tolerances::for_diameter(2.0);
        let ray = Ray::new(Vec3::new(0.3, 0.8, 2.0), Vec3::new(0.0, 0.0, -1.0));
        assert!(intersect_ray_patch3(&ray, &patch(), &tol).is_none());
    }

    #[test]
    fn ray_along_rulings_misses() {
        let tol = Tolerances::for_diameter(2.0);
        let ray = Ray::new(Vec3::new(-2.0, 0.8, 0.3), Vec3::new(1.0, 0.0, 0.0));
        assert!(intersect_ray_patch3(&ray, &patch(), &tol).is_none());
    }

    #[test]
    fn trim_edge_is_singular() {
        let tol = Tolerances::for_diameter(2.0);
        let ray = Ray::new(Vec3::new(0.82 - 1e-12, 0.8, 2.0), Vec3::new(0.0, 0.0, -1.0));
        let hit = intersect_ray_patch3(&ray, &patch(), &tol).unwrap();
        assert!(hit.at_boundary);
    }

    #[test]
    fn plane_face() {
        let tol = Tolerances::for_diameter(2.0);
        // The plane y = 1/4 with normal u × w = +y.
        let face = PlanePatch3 {
            origin: Vec3::new(0.0, 0.25, 0.0),
            u: Vec3::new(0.0, 0.0, 1.0),
            w: Vec3::new(1.0, 0.0, 0.0),
            u_range: (-5.0, 5.0),
            w_range: (-5.0, 5.0),
            trim: vec![Trim::Range {
                coord: Signed::new(Axis::Z, 1.0),
                lo: 0.0,
                hi: 1.0,
            }],
        };
        let ray = Ray::new(Vec3::new(0.0, 1.0, 0.5), Vec3::new(0.0, -1.0, 0.0));
        let hit = intersect_ray_plane3(&ray, &face, &tol).unwrap();
        assert!((hit.t - 0.75).abs() < 1e-15);
        let miss = Ray::new(Vec3::new(0.0, 1.0, 1.5), Vec3::new(0.0, -1.0, 0.0));
        assert!(intersect_ray_plane3(&miss, &face, &tol).is_none());
    }

    #[test]
    fn profile_eval() {
        let p = Profile::Parabola {
            focus_t: 0.0,
            focus_v: 1.0,
            focal_length: 0.5,
        };
        assert!((p.eval(0.8) - 0.82).abs() < 1e-15);
        assert_eq!(Profile::Diagonal.eval(0.3), 0.3);
    }
}
