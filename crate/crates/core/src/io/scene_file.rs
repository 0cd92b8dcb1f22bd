use sha2::{Digest, Sha256};

use crate::construct2d::{
    build_rhombus_body, build_thin_orthogonal, generate_sequences, Body2D, ConstructError, Policy, RhombusFrame, Shape2,
};
use crate::construct3d::{build_body3, Body3D};
use crate::geom::{Aabb, Parabola2, ParabolicArc2, Segment2, Surface3, Vec2, Vec3, Vector};
use crate::tracer::{Role, Scene};

use super::text::{real, FormatError, Line, Reader, Writer};

pub const SCENE_FORMAT: &str = "invisibody-scene";
pub const SCENE_VERSION: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SceneKind {
    Thin2d,
    Rhombus2d,
    Body3d,
    Custom,
}

impl SceneKind {
    pub fn name(self) -> &'static str {
        match self {
            SceneKind::Thin2d => "thin2d",
            SceneKind::Rhombus2d => "rhombus2d",
            SceneKind::Body3d => "body3d",
            SceneKind::Custom => "custom",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [
            SceneKind::Thin2d,
            SceneKind::Rhombus2d,
            SceneKind::Body3d,
            SceneKind::Custom,
        ]
        .into_iter()
        .find(|k| k.name() == s)
    }
}

/// One surface of a hand-written planar scene.
#[derive(Debug, Clone, PartialEq)]
pub struct CustomSurface {
    pub shape: Shape2,
    pub role: Role,
    /// Label without whitespace.
    pub group: String,
}

/// Construction parameters per scene kind.
#[derive(Debug, Clone, PartialEq)]
pub enum SceneSpec {
    /// Unit square body with zero-thickness arcs.
    Thin2d { depth: usize },
    Rhombus2d {
        c: f64,
        c1: f64,
        depth: usize,
        policy: Policy,
        dir1: Vec2,
        dir2: Vec2,
    },
    Body3d {
        c: f64,
        c1: f64,
        depth: usize,
        policy: Policy,
    },
    Custom {
        domain: Aabb<Vec2>,
        surfaces: Vec<CustomSurface>,
    },
}

/// Declarative scene description, stored as a versioned text document.
#[derive(Debug, Clone, PartialEq)]
pub struct SceneFile {
    pub spec: SceneSpec,
}

/// A scene file turned into geometry.
#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum BuiltScene {
    Body2(Body2D),
    Custom(Scene<Shape2>),
    Body3(Body3D),
}

impl BuiltScene {
    pub fn scene2(&self) -> Option<Scene<Shape2>> {
        match self {
            BuiltScene::Body2(b) => Some(b.scene()),
            BuiltScene::Custom(s) => Some(s.clone()),
            BuiltScene::Body3(_) => None,
        }
    }

    pub fn scene3(&self) -> Option<Scene<Surface3>> {
        match self {
            BuiltScene::Body3(b) => Some(b.scene()),
            _ => None,
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            BuiltScene::Body3(_) => 3,
            _ => 2,
        }
    }
}

fn write_policy(w: &mut Writer, policy: &Policy) {
    match policy {
        Policy::ThinLimit => w.line("policy", &["thin-limit".into()]),
        Policy::ConstantFraction(g) => w.line("policy", &["constant-fraction".into(), real(*g)]),
        Policy::Explicit(a) => {
            let mut v = vec!["explicit".to_string()];
            v.extend(a.iter().map(|&x| real(x)));
            w.line("policy", &v);
        }
    }
}

fn read_policy(l: &Line) -> Result<Policy, FormatError> {
    match l.values.first().copied() {
        Some("thin-limit") => {
            l.arity(1)?;
            Ok(Policy::ThinLimit)
        }
        Some("constant-fraction") => {
            l.arity(2)?;
            Ok(Policy::ConstantFraction(l.real_at(1)?))
        }
        Some("explicit") => Ok(Policy::Explicit(
            (1..l.values.len()).map(|k| l.real_at(k)).collect::<Result<_, _>>()?,
        )),
        Some(other) => Err(l.invalid(format!(
            "unknown policy `{other}` (expected thin-limit, constant-fraction or explicit)"
        ))),
        None => Err(l.invalid("missing policy name")),
    }
}

fn read_vec2(l: &Line) -> Result<Vec2, FormatError> {
    l.arity(2)?;
    Ok(Vec2::new(l.real_at(0)?, l.real_at(1)?))
}

fn read_depth(r: &mut Reader) -> Result<usize, FormatError> {
    Ok(r.expect("depth")?.uint()? as usize)
}

fn role_from(l: &Line, s: &str) -> Result<Role, FormatError> {
    match s {
        "mirror" => Ok(Role::Mirror),
        "wall" => Ok(Role::Wall),
        other => Err(l.invalid(format!("unknown role `{other}` (expected mirror or wall)"))),
    }
}

impl SceneFile {
    pub fn new(spec: SceneSpec) -> Self {
        Self { spec }
    }

    pub fn kind(&self) -> SceneKind {
        match self.spec {
            SceneSpec::Thin2d { .. } => SceneKind::Thin2d,
            SceneSpec::Rhombus2d { .. } => SceneKind::Rhombus2d,
            SceneSpec::Body3d { .. } => SceneKind::Body3d,
            SceneSpec::Custom { .. } => SceneKind::Custom,
        }
    }

    /// Canonical text form.
    pub fn to_text(&self) -> String {
        let mut w = Writer::default();
        w.line(SCENE_FORMAT, &[]);
        w.line("version", &[SCENE_VERSION.to_string()]);
        w.line("kind", &[self.kind().name().into()]);
        match &self.spec {
            SceneSpec::Thin2d { depth } => w.line("depth", &[depth.to_string()]),
            SceneSpec::Rhombus2d {
                c,
                c1,
                depth,
                policy,
                dir1,
                dir2,
            } => {
                w.reals("c", &[*c]);
                w.reals("c1", &[*c1]);
                w.line("depth", &[depth.to_string()]);
                write_policy(&mut w, policy);
                w.reals("dir1", &[dir1.x, dir1.y]);
                w.reals("dir2", &[dir2.x, dir2.y]);
            }
            SceneSpec::Body3d { c, c1, depth, policy } => {
                w.reals("c", &[*c]);
                w.reals("c1", &[*c1]);
                w.line("depth", &[depth.to_string()]);
                write_policy(&mut w, policy);
            }
            SceneSpec::Custom { domain, surfaces } => {
                w.reals("domain", &[domain.min.x, domain.min.y, domain.max.x, domain.max.y]);
                w.line("surfaces", &[surfaces.len().to_string()]);
                for s in surfaces {
                    // Whitespace would split the group token; it is not representable.
                    let group: String = s.group.chars().map(|c| if c.is_whitespace() { '_' } else { c }).collect();
                    let mut v = vec![s.role.name().to_string(), group];
                    match &s.shape {
                        Shape2::Arc(a) => {
                            let p = &a.parabola;
                            v.push("arc".into());
                            v.extend(
                                [p.focus.x, p.focus.y, p.axis.x, p.axis.y, p.focal_length, a.t_min, a.t_max]
                                    .map(real),
                            );
                        }
                        Shape2::Segment(g) => {
                            v.push("segment".into());
                            v.extend([g.a.x, g.a.y, g.b.x, g.b.y].map(real));
                        }
                    }
                    w.line("surface", &v);
                }
            }
        }
        w.finish()
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let mut r = Reader::new(text, "scene");
        r.header(SCENE_FORMAT, SCENE_VERSION)?;
        let kl = r.expect("kind")?;
        let kind = SceneKind::from_name(kl.word()?).ok_or_else(|| {
            kl.invalid(format!(
                "unknown kind `{}` (expected thin2d, rhombus2d, body3d or custom)",
                kl.values[0]
            ))
        })?;
        let spec = match kind {
            SceneKind::Thin2d => SceneSpec::Thin2d {
                depth: read_depth(&mut r)?,
            },
            SceneKind::Rhombus2d => SceneSpec::Rhombus2d {
                c: r.expect("c")?.real()?,
                c1: r.expect("c1")?.real()?,
                depth: read_depth(&mut r)?,
                policy: read_policy(&r.expect("policy")?)?,
                dir1: read_vec2(&r.expect("dir1")?)?,
                dir2: read_vec2(&r.expect("dir2")?)?,
            },
            SceneKind::Body3d => SceneSpec::Body3d {
                c: r.expect("c")?.real()?,
                c1: r.expect("c1")?.real()?,
                depth: read_depth(&mut r)?,
                policy: read_policy(&r.expect("policy")?)?,
            },
            SceneKind::Custom => {
                let dl = r.expect("domain")?;
                dl.arity(4)?;
                let d = dl.reals()?;
                let domain = Aabb::from_points([Vec2::new(d[0], d[1]), Vec2::new(d[2], d[3])]);
                let n = r.expect("surfaces")?.uint()? as usize;
                let mut surfaces = Vec::with_capacity(n);
                for k in 0..n {
                    let l = r.expect_as("surface", &format!("surface[{k}]"))?;
                    if l.values.len() < 3 {
                        return Err(l.invalid("expected role, group and shape"));
                    }
                    let role = role_from(&l, l.values[0])?;
                    let group = l.values[1].to_string();
                    let nums: Vec<f64> = (3..l.values.len()).map(|i| l.real_at(i)).collect::<Result<_, _>>()?;
                    let shape = match l.values[2] {
                        "arc" => {
                            l.arity(10)?;
                            let axis = Vec2::new(nums[2], nums[3]);
                            let mut par = Parabola2::new(Vec2::new(nums[0], nums[1]), axis, nums[4])
                                .map_err(|e| l.invalid(e.to_string()))?;
                            // Keep a stored unit axis bit-for-bit so canonical files round-trip.
                            if (axis.norm() - 1.0).abs() <= 1e-12 {
                                par.axis = axis;
                            }
                            Shape2::Arc(ParabolicArc2::new(par, nums[5], nums[6]).map_err(|e| l.invalid(e.to_string()))?)
                        }
                        "segment" => {
                            l.arity(7)?;
                            Shape2::Segment(Segment2::new(Vec2::new(nums[0], nums[1]), Vec2::new(nums[2], nums[3])))
                        }
                        other => return Err(l.invalid(format!("unknown shape `{other}` (expected arc or segment)"))),
                    };
                    surfaces.push(CustomSurface { shape, role, group });
                }
                SceneSpec::Custom { domain, surfaces }
            }
        };
        r.finish()?;
        Ok(Self { spec })
    }

    /// SHA-256 of the canonical text, lowercase hex.
    pub fn hash(&self) -> String {
        format!("{:x}", Sha256::digest(self.to_text().as_bytes()))
    }

    pub fn build(&self) -> Result<BuiltScene, ConstructError> {
        match &self.spec {
            SceneSpec::Thin2d { depth } => Ok(BuiltScene::Body2(build_thin_orthogonal(*depth)?)),
            SceneSpec::Rhombus2d {
                c,
                c1,
                depth,
                policy,
                dir1,
                dir2,
            } => {
                let frame = RhombusFrame::new(*c, *dir1, *dir2)?;
                let seq = generate_sequences(*c, *c1, policy.clone(), *depth)?;
                Ok(BuiltScene::Body2(build_rhombus_body(&frame, &seq)?))
            }
            SceneSpec::Body3d { c, c1, depth, policy } => {
                let seq = generate_sequences(*c, *c1, policy.clone(), *depth)?;
                Ok(BuiltScene::Body3(build_body3(*c, *c1, &seq, *depth)?))
            }
            SceneSpec::Custom { domain, surfaces } => Ok(BuiltScene::Custom(Scene::new(
                surfaces
                    .iter()
                    .map(|s| (s.shape, s.role, s.group.clone()))
                    .collect(),
                *domain,
            ))),
        }
    }

    /// The directions a body is built to be invisible in, both signs each.
    /// Custom scenes claim none.
    pub fn invisibility_directions(&self) -> Vec<Vec<f64>> {
        let pm2 = |d: Vec2| vec![vec![d.x, d.y], vec![-d.x, -d.y]];
        match &self.spec {
            SceneSpec::Thin2d { .. } => [Vec2::new(0.0, 1.0), Vec2::new(1.0, 0.0)]
                .into_iter()
                .flat_map(pm2)
                .collect(),
            SceneSpec::Rhombus2d { dir1, dir2, .. } => [*dir1, *dir2].into_iter().flat_map(pm2).collect(),
            SceneSpec::Body3d { .. } => [Vec3::new(1.0, 0.0, 0.0), Vec3::new(0.0, 1.0, 0.0), Vec3::new(0.0, 0.0, 1.0)]
                .into_iter()
                .flat_map(|d| vec![vec![d.x, d.y, d.z], vec![-d.x, -d.y, -d.z]])
                .collect(),
            SceneSpec::Custom { .. } => Vec::new(),
        }
    }
}
