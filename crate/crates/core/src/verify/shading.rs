use rayon::prelude::*;

use crate::geom::Vector;
use crate::tracer::{trace, Primitive, Scene, TraceStatus};

use super::{classify, FlowSpec, RayClass};

/// Pointwise-decidable set of the plane or space.
pub trait Region<V>: Sync {
    fn contains(&self, p: V) -> bool;
}

impl<V, F: Fn(V) -> bool + Sync> Region<V> for F {
    fn contains(&self, p: V) -> bool {
        self(p)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShadingReport<V> {
    pub rays_traced: usize,
    /// Rays with at least one path sample inside the region.
    pub rays_entering: usize,
    pub first_violation: Option<V>,
}

impl<V> ShadingReport<V> {
    pub fn shaded(&self) -> bool {
        self.rays_entering == 0
    }
}

/// Traces the flow and samples every path segment at step `1e-4·diameter`
/// (plus its endpoints) against `region`. Rays near singular lines or in the
/// untreated band are skipped, as are singular trajectories.
pub fn verify_shading<P: Primitive, R: Region<P::V>>(
    scene: &Scene<P>,
    flow: &FlowSpec<P::V>,
    region: &R,
) -> ShadingReport<P::V> {
    let (_, rays) = flow.rays(scene);
    let dir = flow.direction.normalized();
    let step = 1e-4 * scene.diameter;
    let skip = |o: P::V| classify(&scene.hints, dir, o, flow.exclusion_margin) != RayClass::Treated;
    let results: Vec<Option<Option<P::V>>> = rays
        .par_iter()
        .map(|ray| {
            if skip(ray.origin) {
                return None;
            }
            let rec = trace(scene, ray);
            if rec.status == TraceStatus::SingularHit {
                return None;
            }
            let path = rec.path(scene);
            for w in path.windows(2) {
                let (a, b) = (w[0], w[1]);
                let len = (b - a).norm();
                let n = (len / step).ceil().max(1.0) as usize;
                for k in 0..=n {
                    let p = a + (b - a) * (k as f64 / n as f64);
                    if region.contains(p) {
                        return Some(Some(p));
                    }
                }
            }
            Some(None)
        })
        .collect();
    let traced = results.iter().flatten().count();
    let entering: Vec<P::V> = results.into_iter().flatten().flatten().collect();
    ShadingReport {
        rays_traced: traced,
        rays_entering: entering.len(),
        first_violation: entering.first().copied(),
    }
}
