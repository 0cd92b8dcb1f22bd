//! Numerical certification: invisibility and resistance of parallel flows,
//! shading of regions, the 3D case analysis, and construction audits.

mod audit;
mod cases;
mod flow;
pub mod oracle;
mod shading;

pub use audit::{audit_homothety, audit_sequences, AuditFailure, HomothetyAudit, SequenceAudit};
pub use cases::{verify_case_analysis, CaseReport, CaseStats, CaseViolation};
pub use flow::{CrossSection, FlowSpec, Sampling};
pub use shading::{verify_shading, Region, ShadingReport};

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::geom::Vector;
use crate::tracer::{trace, Primitive, Scene, SceneHint, TraceStatus};

/// Default invisibility tolerance, relative to the scene diameter.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
/// Looser grading reported alongside the verdict.
pub const REPORT_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum VerifyError {
    #[error("ray {ray} from {origin:?} ended with {}", status.name())]
    TracerAnomaly {
        ray: usize,
        origin: Vec<f64>,
        status: TraceStatus,
    },
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error("flow has no rays")]
    EmptyFlow,
}

/// Per-direction statistics of a traced flow.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport<V> {
    pub direction: V,
    pub scene_diameter: f64,
    pub rays_total: usize,
    /// Rays within the exclusion margin of a singular line, plus the
    /// untreated ones.
    pub rays_excluded: usize,
    /// Of the excluded rays, those crossing the band cut off by truncation.
    pub rays_untreated: usize,
    pub rays_singular: usize,
    pub reflection_histogram: BTreeMap<usize, usize>,
    pub untreated_histogram: BTreeMap<usize, usize>,
    pub max_velocity_dev: f64,
    pub max_lateral_dev: f64,
    /// `∫ (v − v⁺) dξ` over the cross-section.
    pub resistance: V,
    pub resistance_per_area: V,
    pub cross_section_area: f64,
    /// Fraction of the cross-section in the untreated band.
    pub untreated_measure: f64,
    /// A priori bound on the excluded fraction from the hints and margin.
    pub excluded_bound: f64,
    /// Reflections per surface group, over treated rays.
    pub surface_hits: BTreeMap<String, usize>,
    pub tolerance: f64,
    pub invisible: bool,
    pub zero_resistance: bool,
    pub invisible_at_report_tolerance: bool,
}

impl<V: Vector> VerificationReport<V> {
    pub fn rays_counted(&self) -> usize {
        self.reflection_histogram.values().sum()
    }

    pub fn singular_fraction(&self) -> f64 {
        self.rays_singular as f64 / self.rays_total.max(1) as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum RayClass {
    Treated,
    Margin,
    Untreated,
}

struct Outcome<V> {
    class: RayClass,
    status: TraceStatus,
    reflections: usize,
    velocity_dev: f64,
    lateral_dev: f64,
    transfer: V,
    surfaces: Vec<usize>,
}

pub(crate) fn classify<V: Vector>(hints: &[SceneHint<V>], dir: V, origin: V, margin: f64) -> RayClass {
    let mut class = RayClass::Treated;
    for h in hints.iter().filter(|h| h.applies_to(dir)) {
        match *h {
            SceneHint::SingularPlane { normal, offset } => {
                if (normal.dot(origin) - offset).abs() < margin {
                    return RayClass::Margin;
                }
            }
            SceneHint::UntreatedZone {
                normal,
                half_width,
                gate,
            } => {
                let gated = gate.is_none_or(|(g, w)| g.dot(origin).abs() > w);
                if normal.dot(origin).abs() < half_width && gated {
                    class = RayClass::Untreated;
                }
            }
        }
    }
    class
}

fn excluded_bound<V: Vector>(hints: &[SceneHint<V>], dir: V, cs: &CrossSection<V>, margin: f64) -> f64 {
    hints
        .iter()
        .filter(|h| h.applies_to(dir))
        .map(|h| match *h {
            SceneHint::SingularPlane { normal, .. } => margin / cs.half_extent_along(normal),
            SceneHint::UntreatedZone {
                normal, half_width, ..
            } => half_width / cs.half_extent_along(normal),
        })
        .sum()
}

/// Traces every ray of `flow` and grades the result at tolerance `tau`.
pub fn verify_invisibility<P: Primitive>(
    scene: &Scene<P>,
    flow: &FlowSpec<P::V>,
    tau: f64,
) -> Result<VerificationReport<P::V>, VerifyError> {
    if !(tau > 0.0) {
        return Err(VerifyError::InvalidTolerance(tau));
    }
    let (cs, rays) = flow.rays(scene);
    if rays.is_empty() {
        return Err(VerifyError::EmptyFlow);
    }
    let v = flow.direction.normalized();
    let weight = cs.area() / rays.len() as f64;
    let outcomes: Vec<Outcome<P::V>> = rays
        .par_iter()
        .map(|ray| {
            let class = classify(&scene.hints, v, ray.origin, flow.exclusion_margin);
            let rec = trace(scene, ray);
            let (velocity_dev, lateral_dev, transfer) = match &rec.exit {
                Some(exit) => {
                    let d = exit.origin - ray.origin;
                    let lateral = d - v * d.dot(v);
                    ((exit.dir - v).norm(), lateral.norm(), v - exit.dir)
                }
                None => (0.0, 0.0, P::V::zero()),
            };
            Outcome {
                class,
                status: rec.status,
                reflections: rec.reflections.len(),
                velocity_dev,
                lateral_dev,
                transfer,
                surfaces: rec.reflections.iter().map(|r| r.surface_id).collect(),
            }
        })
        .collect();

    let mut report = VerificationReport {
        direction: v,
        scene_diameter: scene.diameter,
        rays_total: rays.len(),
        rays_excluded: 0,
        rays_untreated: 0,
        rays_singular: 0,
        reflection_histogram: BTreeMap::new(),
        untreated_histogram: BTreeMap::new(),
        max_velocity_dev: 0.0,
        max_lateral_dev: 0.0,
        resistance: P::V::zero(),
        resistance_per_area: P::V::zero(),
        cross_section_area: cs.area(),
        untreated_measure: 0.0,
        excluded_bound: excluded_bound(&scene.hints, v, &cs, flow.exclusion_margin),
        surface_hits: BTreeMap::new(),
        tolerance: tau,
        invisible: false,
        zero_resistance: false,
        invisible_at_report_tolerance: false,
    };
    for (k, o) in outcomes.iter().enumerate() {
        if matches!(o.status, TraceStatus::BounceCapExceeded | TraceStatus::WallAnomaly) {
            return Err(VerifyError::TracerAnomaly {
                ray: k,
                origin: (0..P::V::DIM).map(|i| rays[k].origin.component(i)).collect(),
                status: o.status,
            });
        }
        match o.class {
            RayClass::Margin => report.rays_excluded += 1,
            RayClass::Untreated => {
                report.rays_excluded += 1;
                report.rays_untreated += 1;
                *report.untreated_histogram.entry(o.reflections).or_default() += 1;
            }
            RayClass::Treated if o.status == TraceStatus::SingularHit => report.rays_singular += 1,
            RayClass::Treated => {
                *report.reflection_histogram.entry(o.reflections).or_default() += 1;
                report.max_velocity_dev = report.max_velocity_dev.max(o.velocity_dev);
                report.max_lateral_dev = report.max_lateral_dev.max(o.lateral_dev);
                report.resistance = report.resistance + o.transfer * weight;
                for &id in &o.surfaces {
                    *report
                        .surface_hits
                        .entry(scene.group_of(id).to_string())
                        .or_default() += 1;
                }
            }
        }
    }
    report.resistance_per_area = report.resistance * (1.0 / cs.area());
    report.untreated_measure = report.rays_untreated as f64 / rays.len() as f64;
    let grade = |t: f64| {
        report.max_velocity_dev <= t && report.max_lateral_dev <= t * scene.diameter
    };
    report.zero_resistance = report.resistance.norm() <= tau * cs.area();
    report.invisible = grade(tau) && report.zero_resistance;
    report.invisible_at_report_tolerance = grade(REPORT_TOLERANCE);
    Ok(report)
}

/// Resistance `∫ (v − v⁺) dξ` of the flow, over treated rays.
pub fn resistance<P: Primitive>(scene: &Scene<P>, flow: &FlowSpec<P::V>) -> Result<P::V, VerifyError> {
    verify_invisibility(scene, flow, DEFAULT_TOLERANCE).map(|r| r.resistance)
}
