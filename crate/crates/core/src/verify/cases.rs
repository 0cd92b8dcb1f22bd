use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::construct3d::{Body3D, SubBody};
use crate::geom::{Axis, Ray, Vec3, Vector};
use crate::tracer::{trace, TraceStatus};

use super::{classify, RayClass, DEFAULT_TOLERANCE};

/// Projection classes of a particle falling along `−z`, written for the
/// canonical octant and spread over the eight symmetries of the square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Case {
    /// Inside `[−c_1, c_1]²` or outside `[−c, c]²`: no body above or below.
    Clear,
    /// `c_1 < x < y < c`.
    Triangle,
    /// `c_1 < x < c`, `0 < y < c_1`, `x ≤ p_i(y)`.
    RectangleHit,
    /// `c_1 < x < c`, `0 < y < c_1`, `x > p_i(y)`.
    RectangleMiss,
}

impl Case {
    const ALL: [Case; 4] = [Case::Clear, Case::Triangle, Case::RectangleHit, Case::RectangleMiss];

    fn name(self) -> &'static str {
        match self {
            Case::Clear => "clear",
            Case::Triangle => "triangle",
            Case::RectangleHit => "rectangle-hit",
            Case::RectangleMiss => "rectangle-miss",
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("case {case}: ray at ({}, {}): {reason}", ray[0], ray[1])]
pub struct CaseViolation {
    pub case: String,
    pub ray: [f64; 2],
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaseStats {
    pub name: String,
    pub rays: usize,
    pub excluded: usize,
    pub singular: usize,
    pub histogram: BTreeMap<usize, usize>,
    pub max_velocity_dev: f64,
    pub max_lateral_dev: f64,
    pub sub_bodies_hit: BTreeSet<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaseReport {
    pub cases: Vec<CaseStats>,
}

impl fmt::Display for CaseReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cases {
            writeln!(
                f,
                "{}: rays {} excluded {} singular {} histogram {:?} vdev {:.3e} lateral {:.3e} hit {:?}",
                c.name,
                c.rays,
                c.excluded,
                c.singular,
                c.histogram,
                c.max_velocity_dev,
                c.max_lateral_dev,
                c.sub_bodies_hit
            )?;
        }
        Ok(())
    }
}

fn level(body: &Body3D, y: f64) -> usize {
    body.seq.level_of(y).unwrap_or(body.depth).min(body.depth - 1)
}

/// Canonical projection `(x, y)` for a case, drawn by rejection.
fn draw(body: &Body3D, case: Case, rng: &mut ChaCha8Rng) -> (f64, f64) {
    let (c, c1, cn) = (body.c, body.c1, body.seq.c[body.depth]);
    loop {
        let (x, y) = match case {
            Case::Clear => {
                if rng.gen_bool(0.5) {
                    (rng.gen_range(0.0..c1), rng.gen_range(0.0..c1))
                } else {
                    (rng.gen_range(c..1.5 * c), rng.gen_range(0.0..1.5 * c))
                }
            }
            Case::Triangle => {
                let (a, b) = (rng.gen_range(c1..c), rng.gen_range(c1..c));
                (a.min(b), a.max(b))
            }
            Case::RectangleHit | Case::RectangleMiss => (rng.gen_range(c1..c), rng.gen_range(cn..c1)),
        };
        let miss = x > body.p(level(body, y), y);
        match case {
            Case::RectangleHit if miss => continue,
            Case::RectangleMiss if !miss => continue,
            _ => return (x, y),
        }
    }
}

struct Sample {
    xy: [f64; 2],
    /// The sub-body expected to hold every reflection.
    expected: SubBody,
}

fn spread(x: f64, y: f64, rng: &mut ChaCha8Rng) -> Sample {
    let swap = rng.gen_bool(0.5);
    let (sx, sy) = (
        if rng.gen_bool(0.5) { 1.0 } else { -1.0 },
        if rng.gen_bool(0.5) { 1.0 } else { -1.0 },
    );
    let (px, py) = if swap { (y, x) } else { (x, y) };
    Sample {
        xy: [sx * px, sy * py],
        expected: SubBody {
            t: if swap { Axis::X } else { Axis::Y },
            v: Axis::Z,
        },
    }
}

/// Traces `n` rays of the `−z` flow per projection case and checks the proof
/// obligations of each: zero reflections where the body is absent or missed,
/// otherwise four reflections, all on the expected sub-body of `B_z`, the
/// first two inside the open pyramid of `z`, and an invisible exit.
pub fn verify_case_analysis(body: &Body3D, n: usize, seed: u64) -> Result<CaseReport, CaseViolation> {
    let scene = body.scene();
    let dir = Vec3::new(0.0, 0.0, -1.0);
    let top = 1.5 * body.c;
    let margin = 1e-6 * body.c;
    let tau = DEFAULT_TOLERANCE;
    let mut cases = Vec::new();
    for (k, case) in Case::ALL.into_iter().enumerate() {
        let samples: Vec<Sample> = (0..n)
            .map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream((k * n + i) as u64);
                let (x, y) = draw(body, case, &mut rng);
                spread(x, y, &mut rng)
            })
            .collect();
        let records: Vec<_> = samples
            .par_iter()
            .map(|s| {
                let origin = Vec3::new(s.xy[0], s.xy[1], top);
                if classify(&scene.hints, dir, origin, margin) != RayClass::Treated {
                    return None;
                }
                Some(trace(&scene, &Ray::new(origin, dir)))
            })
            .collect();
        let mut stats = CaseStats {
            name: case.name().to_string(),
            rays: n,
            excluded: 0,
            singular: 0,
            histogram: BTreeMap::new(),
            max_velocity_dev: 0.0,
            max_lateral_dev: 0.0,
            sub_bodies_hit: BTreeSet::new(),
        };
        for (s, rec) in samples.iter().zip(records) {
            let violation = |reason: String| CaseViolation {
                case: case.name().to_string(),
                ray: s.xy,
                reason,
            };
            let Some(rec) = rec else {
                stats.excluded += 1;
                continue;
            };
            match rec.status {
                TraceStatus::Exited => {}
                TraceStatus::SingularHit => {
                    stats.singular += 1;
                    continue;
                }
                other => return Err(violation(format!("trace ended with {}", other.name()))),
            }
            let count = rec.reflections.len();
            *stats.histogram.entry(count).or_default() += 1;
            let exit = rec.exit.expect("exited records carry an exit ray");
            let d = exit.origin - rec.entry.origin;
            let lateral = (d - dir * d.dot(dir)).norm();
            let vdev = (exit.dir - dir).norm();
            stats.max_velocity_dev = stats.max_velocity_dev.max(vdev);
            stats.max_lateral_dev = stats.max_lateral_dev.max(lateral);
            if vdev > tau || lateral > tau * scene.diameter {
                return Err(violation(format!("visible exit: vdev {vdev:e}, lateral {lateral:e}")));
            }
            let expected = match case {
                Case::Clear | Case::RectangleMiss => 0,
                Case::Triangle | Case::RectangleHit => 4,
            };
            if count != expected {
                return Err(violation(format!("{count} reflections, expected {expected}")));
            }
            for (j, r) in rec.reflections.iter().enumerate() {
                let group = scene.group_of(r.surface_id);
                let sub = group.split(':').next().unwrap_or_default();
                stats.sub_bodies_hit.insert(sub.to_string());
                if sub != s.expected.name() {
                    return Err(violation(format!("reflection {j} on {group}, expected {}", s.expected.name())));
                }
                let p = r.point;
                if j < 2 && case == Case::Triangle && !(p.z.abs() > p.x.abs().max(p.y.abs())) {
                    return Err(violation(format!("reflection {j} at {p:?} outside the open pyramid of z")));
                }
            }
        }
        cases.push(stats);
    }
    Ok(CaseReport { cases })
}
