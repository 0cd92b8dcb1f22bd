use std::f64::consts::FRAC_1_SQRT_2;

use crate::construct2d::{ConstructError, SequencePair};
use crate::geom::{
    Aabb, Axis, Parabola2, ParabolicArc2, ParabolicCylinderPatch3, PlanePatch3, Profile, Signed,
    Surface3, Trim, Vec2, Vec3, Vector,
};
use crate::tracer::{Role, Scene, SceneHint};

/// Sub-body `B_TV`: the planar body of the `(T, V)` plane, invisible along
/// `V`, extruded along the remaining axis `E` and cut by the pyramid of `V`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubBody {
    pub t: Axis,
    pub v: Axis,
}

impl SubBody {
    pub const ALL: [SubBody; 6] = [
        SubBody { t: Axis::Y, v: Axis::Z },
        SubBody { t: Axis::X, v: Axis::Z },
        SubBody { t: Axis::Y, v: Axis::X },
        SubBody { t: Axis::Z, v: Axis::X },
        SubBody { t: Axis::Z, v: Axis::Y },
        SubBody { t: Axis::X, v: Axis::Y },
    ];

    pub fn e(self) -> Axis {
        Axis::ALL
            .into_iter()
            .find(|&a| a != self.t && a != self.v)
            .expect("three distinct axes")
    }

    pub fn name(self) -> String {
        format!("{}{}", self.t.name(), self.v.name())
    }

    pub fn from_name(s: &str) -> Option<Self> {
        let mut it = s.chars();
        let (t, v) = (Axis::from_name(it.next()?)?, Axis::from_name(it.next()?)?);
        (it.next().is_none() && t != v).then_some(SubBody { t, v })
    }
}

/// One sign-resolved solid cell: level `i` of sub-body `sub` in the octant
/// `(sign T, sign V, sign E)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell3 {
    pub sub: SubBody,
    pub signs: [f64; 3],
    pub level: usize,
}

/// What a scene surface of the body is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceKind {
    /// `v = p_i(t)`.
    Upper,
    /// `v = q_i(t)`, or the plane `v = t` at level 0.
    Lower,
    /// Closing patch `v = q_N(t)`.
    Closing,
    /// Non-reflecting faces `t = c_{i+1}`, `e = c_1`, `e = v`.
    Wall,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BodySurface {
    pub surface: Surface3,
    pub kind: SurfaceKind,
    pub sub: SubBody,
    pub group: String,
}

/// Truncated 3D body `B = B_x ∪ B_y ∪ B_z` in the cube `[−c, c]³`.
#[derive(Debug, Clone, PartialEq)]
pub struct Body3D {
    pub c: f64,
    pub c1: f64,
    pub depth: usize,
    pub seq: SequencePair,
    pub cells: Vec<Cell3>,
    pub surfaces: Vec<BodySurface>,
}

const OCTANTS: [[f64; 3]; 8] = [
    [1.0, 1.0, 1.0],
    [1.0, 1.0, -1.0],
    [1.0, -1.0, 1.0],
    [1.0, -1.0, -1.0],
    [-1.0, 1.0, 1.0],
    [-1.0, 1.0, -1.0],
    [-1.0, -1.0, 1.0],
    [-1.0, -1.0, -1.0],
];

fn sign_char(s: f64) -> char {
    if s > 0.0 {
        '+'
    } else {
        '-'
    }
}

impl Body3D {
    /// Profile of the confocal parabola with focus abscissa `a` through the
    /// cube edge at `t = ci`, in absolute coordinates.
    fn parabola_profile(&self, a: f64, ci: f64) -> Profile {
        Profile::Parabola {
            focus_t: -a,
            focus_v: self.c,
            focal_length: 0.5 * (ci + a),
        }
    }

    pub fn upper_profile(&self, i: usize) -> Profile {
        self.parabola_profile(self.seq.a[i + 1], self.seq.c[i])
    }

    pub fn lower_profile(&self, i: usize) -> Profile {
        if i == 0 {
            Profile::Diagonal
        } else {
            self.parabola_profile(self.seq.a[i], self.seq.c[i])
        }
    }

    /// `p_i(t)`.
    pub fn p(&self, i: usize, t: f64) -> f64 {
        self.upper_profile(i).eval(t)
    }

    /// `q_i(t)`, with `q_0(t) = t`.
    pub fn q(&self, i: usize, t: f64) -> f64 {
        self.lower_profile(i).eval(t)
    }

    fn abs_coords(sub: SubBody, p: Vec3) -> (f64, f64, f64) {
        (
            p.component(sub.t.index()).abs(),
            p.component(sub.v.index()).abs(),
            p.component(sub.e().index()).abs(),
        )
    }

    fn level_holds(&self, i: usize, t: f64, v: f64, e: f64, strict: bool) -> bool {
        let c = &self.seq.c;
        if strict {
            t > c[i + 1] && t < c[i] && v > self.q(i, t) && v < self.p(i, t) && e > self.c1 && e < v
        } else {
            t >= c[i + 1] && t <= c[i] && v >= self.q(i, t) && v <= self.p(i, t) && e >= self.c1 && e <= v
        }
    }

    fn sub_body_test(&self, sub: SubBody, p: Vec3, strict: bool) -> bool {
        let (t, v, e) = Self::abs_coords(sub, p);
        let Some(level) = self.seq.level_of(t) else {
            return false;
        };
        [level, level + 1]
            .into_iter()
            .filter(|&i| i < self.depth)
            .any(|i| self.level_holds(i, t, v, e, strict))
    }

    /// Closed-set membership in one sub-body, `O(log N)` through the ladder.
    pub fn sub_body_contains(&self, sub: SubBody, p: Vec3) -> bool {
        self.sub_body_test(sub, p, false)
    }

    /// Open-interior membership in one sub-body.
    pub fn sub_body_interior_contains(&self, sub: SubBody, p: Vec3) -> bool {
        self.sub_body_test(sub, p, true)
    }

    pub fn contains(&self, p: Vec3) -> bool {
        SubBody::ALL.iter().any(|&s| self.sub_body_contains(s, p))
    }

    /// Sub-bodies holding `p`.
    pub fn locate(&self, p: Vec3) -> Vec<SubBody> {
        SubBody::ALL
            .into_iter()
            .filter(|&s| self.sub_body_contains(s, p))
            .collect()
    }

    pub fn cell_contains(&self, cell: &Cell3, p: Vec3) -> bool {
        let sub = cell.sub;
        let [st, sv, se] = cell.signs;
        let t = st * p.component(sub.t.index());
        let v = sv * p.component(sub.v.index());
        let e = se * p.component(sub.e().index());
        self.level_holds(cell.level, t, v, e, false)
    }

    /// Point of `cell` at unit-cube coordinates `u`.
    pub fn cell_point(&self, cell: &Cell3, u: [f64; 3]) -> Vec3 {
        let (c, i) = (&self.seq.c, cell.level);
        let t = c[i + 1] + u[0] * (c[i] - c[i + 1]);
        let (lo, hi) = (self.q(i, t), self.p(i, t));
        let v = lo + u[1] * (hi - lo);
        let e = self.c1 + u[2] * (v - self.c1);
        let [st, sv, se] = cell.signs;
        Vec3::zero()
            .with(cell.sub.t.index(), st * t)
            .with(cell.sub.v.index(), sv * v)
            .with(cell.sub.e().index(), se * e)
    }

    pub fn bounds(&self) -> Aabb<Vec3> {
        Aabb::from_points([Vec3::new(-self.c, -self.c, -self.c), Vec3::new(self.c, self.c, self.c)])
    }

    /// Tracer scene with the singular planes of every axis flow and the
    /// untreated slabs of each sub-body.
    pub fn scene(&self) -> Scene<Surface3> {
        let surfaces = self
            .surfaces
            .iter()
            .map(|s| {
                let role = if s.kind == SurfaceKind::Wall {
                    Role::Wall
                } else {
                    Role::Mirror
                };
                (s.surface.clone(), role, s.group.clone())
            })
            .collect();
        let mut hints = Vec::new();
        for axis in Axis::ALL {
            for &c in &self.seq.c {
                for offset in [-c, c] {
                    hints.push(SceneHint::SingularPlane {
                        normal: axis.unit(),
                        offset,
                    });
                }
            }
        }
        for (a, b) in [(Axis::X, Axis::Y), (Axis::X, Axis::Z), (Axis::Y, Axis::Z)] {
            for s in [1.0, -1.0] {
                hints.push(SceneHint::SingularPlane {
                    normal: (a.unit() + b.unit() * s) * FRAC_1_SQRT_2,
                    offset: 0.0,
                });
            }
        }
        for sub in SubBody::ALL {
            hints.push(SceneHint::UntreatedZone {
                normal: sub.t.unit(),
                half_width: self.seq.c[self.depth],
                gate: Some((sub.e().unit(), self.c1)),
            });
        }
        Scene::new(surfaces, self.bounds()).with_hints(hints)
    }

    fn patch(&self, sub: SubBody, signs: [f64; 3], profile: Profile, t0: f64, t1: f64) -> Surface3 {
        let [st, sv, se] = signs;
        let Profile::Parabola {
            focus_t,
            focus_v,
            focal_length,
        } = profile
        else {
            unreachable!("patches carry parabolic profiles");
        };
        let par = Parabola2::new(
            Vec2::new(st * focus_t, sv * focus_v),
            Vec2::new(0.0, sv),
            focal_length,
        )
        .expect("positive focal length");
        let arc = ParabolicArc2::over_abscissas(par, st * t0, st * t1).expect("non-empty level");
        let e_sig = Signed::new(sub.e(), se);
        let (e0, e1) = (se * self.c1, se * self.c);
        Surface3::Patch(ParabolicCylinderPatch3 {
            plane: (sub.t, sub.v),
            extrusion: sub.e(),
            base_arc: arc,
            e_range: (e0.min(e1), e0.max(e1)),
            trim: vec![
                Trim::Range {
                    coord: e_sig,
                    lo: self.c1,
                    hi: self.c,
                },
                Trim::Dominated {
                    lesser: e_sig,
                    greater: Signed::new(sub.v, sv),
                },
            ],
        })
    }

    fn cell_surfaces(&self, cell: &Cell3) -> Vec<(Surface3, SurfaceKind, &'static str)> {
        let sub = cell.sub;
        let [st, sv, se] = cell.signs;
        let i = cell.level;
        let (c0, c1) = (self.seq.c[i], self.seq.c[i + 1]);
        let (tu, vu, eu) = (sub.t.unit() * st, sub.v.unit() * sv, sub.e().unit() * se);
        let (ts, vs, es) = (
            Signed::new(sub.t, st),
            Signed::new(sub.v, sv),
            Signed::new(sub.e(), se),
        );
        let under = Trim::Under {
            arg: ts,
            value: vs,
            profile: self.upper_profile(i),
        };
        let over = Trim::Over {
            arg: ts,
            value: vs,
            profile: self.lower_profile(i),
        };
        let dominated = Trim::Dominated {
            lesser: es,
            greater: vs,
        };
        let mut out = vec![(
            self.patch(sub, cell.signs, self.upper_profile(i), c1, c0),
            SurfaceKind::Upper,
            "p",
        )];
        let lower = if i == 0 {
            Surface3::Plane(PlanePatch3 {
                origin: Vec3::zero(),
                u: (tu + vu) * FRAC_1_SQRT_2,
                w: eu,
                u_range: (self.c1 * 2f64.sqrt(), self.c * 2f64.sqrt()),
                w_range: (self.c1, self.c),
                trim: vec![dominated],
            })
        } else {
            self.patch(sub, cell.signs, self.lower_profile(i), c1, c0)
        };
        out.push((lower, SurfaceKind::Lower, "q"));
        out.push((
            Surface3::Plane(PlanePatch3 {
                origin: tu * c1,
                u: vu,
                w: eu,
                u_range: (self.q(i, c1), self.p(i, c1)),
                w_range: (self.c1, self.c),
                trim: vec![dominated],
            }),
            SurfaceKind::Wall,
            "wall-t",
        ));
        out.push((
            Surface3::Plane(PlanePatch3 {
                origin: eu * self.c1,
                u: tu,
                w: vu,
                u_range: (c1, c0),
                w_range: (self.q(i, c1), self.c),
                trim: vec![under, over],
            }),
            SurfaceKind::Wall,
            "wall-e",
        ));
        out.push((
            Surface3::Plane(PlanePatch3 {
                origin: Vec3::zero(),
                u: tu,
                w: (eu + vu) * FRAC_1_SQRT_2,
                u_range: (c1, c0),
                w_range: (self.c1 * 2f64.sqrt(), self.c * 2f64.sqrt()),
                trim: vec![under, over],
            }),
            SurfaceKind::Wall,
            "wall-d",
        ));
        out
    }
}

/// Builds the 3D body on the cube `[−c, c]³` from the ladder of the
/// orthogonal planar construction, truncated at `depth ≤ seq.depth()`.
pub fn build_body3(c: f64, c1: f64, seq: &SequencePair, depth: usize) -> Result<Body3D, ConstructError> {
    if !(c.is_finite() && c > 0.0 && c1 > 0.0 && c1 < c) {
        return Err(ConstructError::InvalidSeed { c, c1 });
    }
    if (seq.c0() - c).abs() > 1e-12 * c {
        return Err(ConstructError::ScaleMismatch {
            frame: c,
            sequence: seq.c0(),
        });
    }
    if (seq.c[1] - c1).abs() > 1e-12 * c {
        return Err(ConstructError::InvalidSeed { c, c1 });
    }
    if depth == 0 || depth > seq.depth() {
        return Err(ConstructError::InvalidDepth(depth));
    }
    let seq = SequencePair {
        c: seq.c[..depth + 2].to_vec(),
        a: seq.a[..depth + 1].to_vec(),
        policy: seq.policy.clone(),
    };
    let mut body = Body3D {
        c,
        c1: seq.c[1],
        depth,
        seq,
        cells: Vec::new(),
        surfaces: Vec::new(),
    };
    let mut surfaces = Vec::new();
    for sub in SubBody::ALL {
        for signs in OCTANTS {
            let tag = format!(
                "{}:{}{}{}",
                sub.name(),
                sign_char(signs[0]),
                sign_char(signs[1]),
                sign_char(signs[2])
            );
            for level in 0..depth {
                let cell = Cell3 { sub, signs, level };
                for (surface, kind, name) in body.cell_surfaces(&cell) {
                    surfaces.push(BodySurface {
                        surface,
                        kind,
                        sub,
                        group: format!("{tag}:{name}{level}"),
                    });
                }
                body.cells.push(cell);
            }
            let (cn, cn1) = (body.seq.c[depth], body.seq.c[depth + 1]);
            let closing = body.parabola_profile(body.seq.a[depth], cn);
            surfaces.push(BodySurface {
                surface: body.patch(sub, signs, closing, cn1, cn),
                kind: SurfaceKind::Closing,
                sub,
                group: format!("{tag}:q{depth}"),
            });
        }
    }
    // Mirrors first so that equal-distance ties favour a reflecting surface.
    surfaces.sort_by_key(|s| s.kind == SurfaceKind::Wall);
    body.surfaces = surfaces;
    Ok(body)
}

#[cfg(test)]
mod tests;
