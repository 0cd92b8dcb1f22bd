use super::iso::{Homothety2, Isometry2};
use super::ray::{Hit, Ray, Tolerances};
use super::vec::{Aabb, Vec2, Vector};
use super::GeomError;

/// Parabola given by focus, opening direction and focal length.
///
/// In the local frame centred at the focus, with `v` measured along `axis`
/// and `u` along [`Parabola2::transverse`], the curve is
/// `v = u²/(4f) − f`. The directrix sits at `v = −2f`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Parabola2 {
    pub focus: Vec2,
    /// Unit vector from the vertex toward the focus.
    pub axis: Vec2,
    pub focal_length: f64,
}

impl Parabola2 {
    pub fn new(focus: Vec2, axis: Vec2, focal_length: f64) -> Result<Self, GeomError> {
        if !(focal_length > 0.0 && focal_length.is_finite()) {
            return Err(GeomError::DegenerateParabola);
        }
        if !(focus.is_finite() && axis.is_finite() && axis.norm() > 0.0) {
            return Err(GeomError::NonFinite);
        }
        Ok(Self {
            focus,
            axis: axis.normalized(),
            focal_length,
        })
    }

    /// The parabola with the given focus and axis through `p`, concave toward
    /// the focus so that axis-parallel rays reflect through it.
    pub fn from_focus_and_point(focus: Vec2, p: Vec2, opening: Vec2) -> Result<Self, GeomError> {
        let axis = opening.normalized();
        let d = p - focus;
        let f = 0.5 * (d.norm() - d.dot(axis));
        // f vanishes (up to rounding) exactly when p lies on the opening ray.
        if !(f > 1e-15 * d.norm()) {
            return Err(GeomError::DegenerateParabola);
        }
        Self::new(focus, axis, f)
    }

    /// Unit vector along which the local `u` coordinate grows.
    pub fn transverse(&self) -> Vec2 {
        Vec2::new(self.axis.y, -self.axis.x)
    }

    pub fn vertex(&self) -> Vec2 {
        self.focus - self.axis * self.focal_length
    }

    pub fn to_local(&self, p: Vec2) -> (f64, f64) {
        let d = p - self.focus;
        (d.dot(self.transverse()), d.dot(self.axis))
    }

    pub fn from_local(&self, u: f64, v: f64) -> Vec2 {
        self.focus + self.transverse() * u + self.axis * v
    }

    /// Local height `v(u)` of the curve.
    pub fn height(&self, u: f64) -> f64 {
        u * u / (4.0 * self.focal_length) - self.focal_length
    }

    pub fn point_at(&self, u: f64) -> Vec2 {
        self.from_local(u, self.height(u))
    }

    /// Unit normal at local coordinate `u`, pointing to the convex side
    /// (away from the focus).
    pub fn outward_normal_at(&self, u: f64) -> Vec2 {
        (self.transverse() * (u / (2.0 * self.focal_length)) - self.axis).normalized()
    }

    /// Focus–directrix residual `|p − F| − dist(p, directrix)`: zero on the
    /// curve, negative on the focus side.
    pub fn focus_directrix_residual(&self, p: Vec2) -> f64 {
        let d = p - self.focus;
        d.norm() - (d.dot(self.axis) + 2.0 * self.focal_length)
    }

    /// Height of the curve above abscissa `x` when the axis is vertical
    /// (either orientation). `None` for any other axis.
    pub fn graph_height(&self, x: f64) -> Option<f64> {
        if self.axis.x != 0.0 {
            return None;
        }
        let s = self.axis.y.signum();
        // transverse = (s, 0), so u = s·(x − F.x).
        let u = s * (x - self.focus.x);
        Some(self.focus.y + s * self.height(u))
    }

    /// Ray parameters (ascending) at which `origin + t·dir` meets the full
    /// parabola. `dir` need not be unit length. Nearly tangent contacts,
    /// whose discriminant is below `grazing` relative to the quadratic's own
    /// scale, are dropped.
    pub fn ray_roots(&self, origin: Vec2, dir: Vec2, grazing: f64) -> Roots {
        let (u0, v0) = self.to_local(origin);
        let du = dir.dot(self.transverse());
        let dv = dir.dot(self.axis);
        let f4 = 4.0 * self.focal_length;
        let a = du * du;
        let b = 2.0 * u0 * du - f4 * dv;
        let c = u0 * u0 - f4 * (self.focal_length + v0);
        solve_quadratic(a, b, c, grazing)
    }

    /// Image under an isometry.
    pub fn transformed(&self, iso: &Isometry2) -> Self {
        Self {
            focus: iso.apply(self.focus),
            axis: iso.apply_linear(self.axis).normalized(),
            focal_length: self.focal_length,
        }
    }

    /// Image under a homothety with positive ratio.
    pub fn homothetic(&self, h: &Homothety2) -> Self {
        Self {
            focus: h.apply(self.focus),
            axis: self.axis,
            focal_length: self.focal_length * h.ratio,
        }
    }
}

/// Up to two real roots in ascending order.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Roots {
    ts: [f64; 2],
    len: usize,
}

impl Roots {
    fn push(&mut self, t: f64) {
        if t.is_finite() {
            self.ts[self.len] = t;
            self.len += 1;
        }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.ts[..self.len]
    }
}

pub(crate) fn solve_quadratic(a: f64, b: f64, c: f64, grazing: f64) -> Roots {
    let mut roots = Roots::default();
    if a == 0.0 {
        if b != 0.0 {
            roots.push(-c / b);
        }
        return roots;
    }
    let disc = b * b - 4.0 * a * c;
    let scale = b * b + (4.0 * a * c).abs();
    if disc < grazing * scale {
        return roots;
    }
    let sq = disc.sqrt();
    let q = -0.5 * (b + sq.copysign(b));
    let (t1, t2) = if q == 0.0 {
        (0.0, 0.0)
    } else {
        (q / a, c / q)
    };
    roots.push(t1.min(t2));
    roots.push(t1.max(t2));
    roots
}

/// Portion of a parabola with local transverse coordinate in `[t_min, t_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParabolicArc2 {
    pub parabola: Parabola2,
    pub t_min: f64,
    pub t_max: f64,
}

impl ParabolicArc2 {
    pub fn new(parabola: Parabola2, t_min: f64, t_max: f64) -> Result<Self, GeomError> {
        if !(t_min < t_max) {
            return Err(GeomError::EmptyArc { t_min, t_max });
        }
        Ok(Self {
            parabola,
            t_min,
            t_max,
        })
    }

    /// Arc of a vertical-axis parabola over the abscissa interval `[x0, x1]`.
    pub fn over_abscissas(parabola: Parabola2, x0: f64, x1: f64) -> Result<Self, GeomError> {
        let u0 = parabola.to_local(Vec2::new(x0, 0.0)).0;
        let u1 = parabola.to_local(Vec2::new(x1, 0.0)).0;
        Self::new(parabola, u0.min(u1), u0.max(u1))
    }

    pub fn endpoints(&self) -> [Vec2; 2] {
        [
            self.parabola.point_at(self.t_min),
            self.parabola.point_at(self.t_max),
        ]
    }

    /// `n ≥ 2` points evenly spaced in the transverse coordinate.
    pub fn sample(&self, n: usize) -> Vec<Vec2> {
        let n = n.max(2);
        (0..n)
            .map(|k| {
                let s = k as f64 / (n - 1) as f64;
                self.parabola
                    .point_at(self.t_min + s * (self.t_max - self.t_min))
            })
            .collect()
    }

    /// Exact box: endpoints plus the interior points where the tangent is
    /// parallel to a coordinate axis.
    pub fn bounds(&self) -> Aabb<Vec2> {
        let mut b = Aabb::from_points(self.endpoints());
        let (t, a, f) = (self.parabola.transverse(), self.parabola.axis, self.parabola.focal_length);
        // d/du point_at(u) = t + a·u/(2f) vanishes per component at u = −2f·t_k/a_k.
        for (tk, ak) in [(t.x, a.x), (t.y, a.y)] {
            if ak != 0.0 {
                let u = -2.0 * f * tk / ak;
                if u > self.t_min && u < self.t_max {
                    b = b.including(self.parabola.point_at(u));
                }
            }
        }
        b
    }

    pub fn transformed(&self, iso: &Isometry2) -> Self {
        let parabola = self.parabola.transformed(iso);
        let [a, b] = self.endpoints();
        let ua = parabola.to_local(iso.apply(a)).0;
        let ub = parabola.to_local(iso.apply(b)).0;
        Self {
            parabola,
            t_min: ua.min(ub),
            t_max: ua.max(ub),
        }
    }

    /// Distance-like test: `p` lies on the curve (focus–directrix residual)
    /// and within the transverse interval, both up to `tol`.
    pub fn contains_point(&self, p: Vec2, tol: f64) -> bool {
        let (u, _) = self.parabola.to_local(p);
        u >= self.t_min - tol
            && u <= self.t_max + tol
            && self.parabola.focus_directrix_residual(p).abs() <= tol
    }

    pub fn length_scale(&self) -> f64 {
        let [a, b] = self.endpoints();
        a.distance(b)
    }
}

/// Straight mirror or wall segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment2 {
    pub a: Vec2,
    pub b: Vec2,
}

impl Segment2 {
    pub fn new(a: Vec2, b: Vec2) -> Self {
        Self { a, b }
    }

    pub fn length(&self) -> f64 {
        self.a.distance(self.b)
    }

    pub fn bounds(&self) -> Aabb<Vec2> {
        Aabb::from_points([self.a, self.b])
    }

    pub fn transformed(&self, iso: &Isometry2) -> Self {
        Self::new(iso.apply(self.a), iso.apply(self.b))
    }

    pub fn contains_point(&self, p: Vec2, tol: f64) -> bool {
        let d = self.b - self.a;
        let len = d.norm();
        if len == 0.0 {
            return p.distance(self.a) <= tol;
        }
        let s = (p - self.a).dot(d) / len;
        let off = (p - self.a).cross(d) / len;
        s >= -tol && s <= len + tol && off.abs() <= tol
    }
}

fn facing<V: Vector>(n: V, dir: V) -> V {
    if n.dot(dir) > 0.0 {
        -n
    } else {
        n
    }
}

/// Nearest admissible collision of a ray with a parabolic arc.
pub fn intersect_ray_parabola(
    ray: &Ray<Vec2>,
    arc: &ParabolicArc2,
    tol: &Tolerances,
) -> Option<Hit<Vec2>> {
    let par = &arc.parabola;
    let roots = par.ray_roots(ray.origin, ray.dir, tol.grazing);
    for &t in roots.as_slice() {
        if t <= tol.t_eps {
            continue;
        }
        let point = ray.at(t);
        let (u, _) = par.to_local(point);
        if u < arc.t_min || u > arc.t_max {
            continue;
        }
        let at_boundary = u - arc.t_min < tol.eps_sing || arc.t_max - u < tol.eps_sing;
        return Some(Hit {
            t,
            point,
            normal: facing(par.outward_normal_at(u), ray.dir),
            surface_id: 0,
            at_boundary,
        });
    }
    None
}

/// Collision of a ray with a segment.
pub fn intersect_ray_segment(ray: &Ray<Vec2>, seg: &Segment2, tol: &Tolerances) -> Option<Hit<Vec2>> {
    let e = seg.b - seg.a;
    let denom = ray.dir.cross(e);
    if denom == 0.0 {
        return None;
    }
    let w = seg.a - ray.origin;
    let t = w.cross(e) / denom;
    if t <= tol.t_eps {
        return None;
    }
    let s = w.cross(ray.dir) / denom;
    if !(0.0..=1.0).contains(&s) {
        return None;
    }
    let len = e.norm();
    let along = s * len;
    let at_boundary = along < tol.eps_sing || len - along < tol.eps_sing;
    Some(Hit {
        t,
        point: ray.at(t),
        normal: facing(e.perp().normalized(), ray.dir),
        surface_id: 0,
        at_boundary,
    })
}
