//! Billiard trajectories: repeated nearest-hit queries and specular
//! reflections until the particle leaves the scene.

mod scene;

pub use scene::{Primitive, Role, Scene, SceneHint, SceneSurface};

use crate::geom::{reflect, Hit, Ray, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TraceStatus {
    Exited,
    /// Struck a rim or junction, where the motion is undefined.
    SingularHit,
    BounceCapExceeded,
    /// Struck a non-reflecting wall: a construction defect.
    WallAnomaly,
}

impl TraceStatus {
    pub fn name(self) -> &'static str {
        match self {
            TraceStatus::Exited => "exited",
            TraceStatus::SingularHit => "singular-hit",
            TraceStatus::BounceCapExceeded => "bounce-cap-exceeded",
            TraceStatus::WallAnomaly => "wall-anomaly",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reflection<V> {
    pub point: V,
    pub incoming: V,
    pub outgoing: V,
    pub surface_id: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceRecord<V> {
    pub entry: Ray<V>,
    pub reflections: Vec<Reflection<V>>,
    /// Final free flight, present when the particle exited.
    pub exit: Option<Ray<V>>,
    pub status: TraceStatus,
    /// The hit that stopped a singular or walled trajectory.
    pub terminal: Option<Hit<V>>,
}

impl<V: Vector> TraceRecord<V> {
    /// Final velocity: the exit direction, or the last velocity held.
    pub fn final_velocity(&self) -> V {
        self.reflections
            .last()
            .map_or(self.entry.dir, |r| r.outgoing)
    }

    /// Polyline vertices from the entry point to the end of the path; an
    /// exit leg is continued to the scene box.
    pub fn path<P: Primitive<V = V>>(&self, scene: &Scene<P>) -> Vec<V> {
        let mut pts = vec![self.entry.origin];
        pts.extend(self.reflections.iter().map(|r| r.point));
        if let Some(hit) = &self.terminal {
            pts.push(hit.point);
        } else if let Some(exit) = &self.exit {
            pts.push(exit.at(scene.exit_distance(exit)));
        }
        pts
    }
}

/// Nearest admissible hit over all surfaces; ties within `1e-12` in `t` go
/// to the lowest surface id.
pub fn nearest_hit<P: Primitive>(scene: &Scene<P>, ray: &Ray<P::V>) -> Option<Hit<P::V>> {
    let tol = &scene.tolerances;
    let mut best: Option<Hit<P::V>> = None;
    for (id, surface) in scene.surfaces.iter().enumerate() {
        let Some((t0, t1)) = surface.padded_bounds.ray_interval(ray.origin, ray.dir) else {
            continue;
        };
        if t1 <= tol.t_eps {
            continue;
        }
        if let Some(b) = &best {
            if t0 > b.t + 1e-12 {
                continue;
            }
        }
        if let Some(mut hit) = surface.shape.intersect(ray, tol) {
            let better = match &best {
                None => true,
                Some(b) => hit.t < b.t - 1e-12,
            };
            if better {
                hit.surface_id = id;
                best = Some(hit);
            }
        }
    }
    best
}

/// Follows a particle through the scene.
pub fn trace<P: Primitive>(scene: &Scene<P>, ray: &Ray<P::V>) -> TraceRecord<P::V> {
    let mut reflections = Vec::new();
    let mut current = *ray;
    loop {
        let Some(hit) = nearest_hit(scene, &current) else {
            return TraceRecord {
                entry: *ray,
                reflections,
                exit: Some(current),
                status: TraceStatus::Exited,
                terminal: None,
            };
        };
        let stop = if scene.surfaces[hit.surface_id].role == Role::Wall {
            Some(TraceStatus::WallAnomaly)
        } else if hit.at_boundary {
            Some(TraceStatus::SingularHit)
        } else if reflections.len() >= scene.max_bounces {
            Some(TraceStatus::BounceCapExceeded)
        } else {
            None
        };
        if let Some(status) = stop {
            return TraceRecord {
                entry: *ray,
                reflections,
                exit: None,
                status,
                terminal: Some(hit),
            };
        }
        let outgoing = reflect(current.dir, hit.normal).normalized();
        reflections.push(Reflection {
            point: hit.point,
            incoming: current.dir,
            outgoing,
            surface_id: hit.surface_id,
        });
        current = Ray {
            origin: hit.point,
            dir: outgoing,
        };
    }
}

/// Traces the reversed exit ray of an exited record, started from outside
/// the scene box.
pub fn trace_reversed<P: Primitive>(scene: &Scene<P>, record: &TraceRecord<P::V>) -> Option<TraceRecord<P::V>> {
    let exit = record.exit?;
    let far = scene.exit_distance(&exit) + 0.1 * scene.diameter;
    Some(trace(scene, &Ray::new(exit.at(far), -exit.dir)))
}

#[cfg(test)]
mod tests;
