//! Brute-force reference tracer for small planar scenes: marches along each
//! ray with a residual-controlled step and bisects sign changes, instead of
//! solving quadratics.

use crate::construct2d::Shape2;
use crate::geom::{reflect, Ray, Vec2, Vector};
use crate::tracer::Scene;

/// Finest marching step.
pub const MIN_STEP: f64 = 1e-6;

// Residual whose zero set is the supporting curve, with Lipschitz constant
// at most `lip` along any unit-speed path.
fn residual(shape: &Shape2, p: Vec2) -> (f64, f64) {
    match shape {
        Shape2::Arc(a) => (a.parabola.focus_directrix_residual(p), 2.0),
        Shape2::Segment(s) => {
            let e = (s.b - s.a).normalized();
            ((p - s.a).cross(e), 1.0)
        }
    }
}

fn on_piece(shape: &Shape2, p: Vec2) -> bool {
    match shape {
        Shape2::Arc(a) => {
            let u = a.parabola.to_local(p).0;
            u >= a.t_min && u <= a.t_max
        }
        Shape2::Segment(s) => {
            let e = s.b - s.a;
            let k = (p - s.a).dot(e) / e.dot(e);
            (0.0..=1.0).contains(&k)
        }
    }
}

fn normal_at(shape: &Shape2, p: Vec2) -> Vec2 {
    match shape {
        Shape2::Arc(a) => a.parabola.outward_normal_at(a.parabola.to_local(p).0),
        Shape2::Segment(s) => (s.b - s.a).perp().normalized(),
    }
}

/// First crossing of `shape` along `ray` in `(t0, t1]`.
pub fn first_crossing(shape: &Shape2, ray: &Ray<Vec2>, t0: f64, t1: f64) -> Option<f64> {
    let mut t = t0;
    let (mut r, lip) = residual(shape, ray.at(t));
    while t < t1 {
        let step = (r.abs() / lip).max(MIN_STEP);
        let tn = (t + step).min(t1);
        let (rn, _) = residual(shape, ray.at(tn));
        if r == 0.0 || rn == 0.0 || (r < 0.0) != (rn < 0.0) {
            let (mut lo, mut hi) = (t, tn);
            if rn == 0.0 {
                lo = tn;
            } else if r != 0.0 {
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    let (rm, _) = residual(shape, ray.at(mid));
                    if (rm < 0.0) == (r < 0.0) {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
            }
            if lo > t0 && on_piece(shape, ray.at(lo)) {
                return Some(lo);
            }
        }
        t = tn;
        r = rn;
    }
    None
}

#[derive(Debug, Clone, PartialEq)]
pub struct OraclePath {
    pub points: Vec<Vec2>,
    pub surfaces: Vec<usize>,
}

/// Reference trajectory: nearest crossing over all surfaces, specular
/// reflection off the analytic normal, until the ray leaves the box.
pub fn oracle_trace(scene: &Scene<Shape2>, ray: &Ray<Vec2>) -> OraclePath {
    let mut path = OraclePath {
        points: Vec::new(),
        surfaces: Vec::new(),
    };
    let mut cur = *ray;
    let t_eps = scene.tolerances.t_eps;
    for _ in 0..=scene.max_bounces {
        let t1 = scene.exit_distance(&cur);
        let mut best: Option<(f64, usize)> = None;
        for (id, s) in scene.surfaces.iter().enumerate() {
            let limit = best.map_or(t1, |(t, _)| t);
            if let Some(t) = first_crossing(&s.shape, &cur, t_eps, limit) {
                if best.is_none_or(|(b, _)| t < b) {
                    best = Some((t, id));
                }
            }
        }
        let Some((t, id)) = best else {
            break;
        };
        let p = cur.at(t);
        path.points.push(p);
        path.surfaces.push(id);
        cur = Ray::new(p, reflect(cur.dir, normal_at(&scene.surfaces[id].shape, p)));
    }
    path
}
