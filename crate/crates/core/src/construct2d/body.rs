use crate::geom::{Aabb, Isometry2, Parabola2, ParabolicArc2, Segment2, Vec2, Vector};

use super::{RhombusFrame, SequencePair};
use crate::tracer::{Role, Scene, SceneHint};

/// Boundary curve of a 2D piece: a parabolic arc, or the straight diagonal
/// segment closing the outermost piece.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shape2 {
    Arc(ParabolicArc2),
    Segment(Segment2),
}

impl Shape2 {
    pub fn bounds(&self) -> Aabb<Vec2> {
        match self {
            Shape2::Arc(a) => a.bounds(),
            Shape2::Segment(s) => s.bounds(),
        }
    }

    pub fn transformed(&self, iso: &Isometry2) -> Self {
        match self {
            Shape2::Arc(a) => Shape2::Arc(a.transformed(iso)),
            Shape2::Segment(s) => Shape2::Segment(s.transformed(iso)),
        }
    }

    /// Image under `p ↦ s·p`, `s > 0`.
    pub fn scaled(&self, s: f64) -> Self {
        match self {
            Shape2::Arc(a) => Shape2::Arc(ParabolicArc2 {
                parabola: Parabola2 {
                    focus: a.parabola.focus * s,
                    axis: a.parabola.axis,
                    focal_length: a.parabola.focal_length * s,
                },
                t_min: a.t_min * s,
                t_max: a.t_max * s,
            }),
            Shape2::Segment(g) => Shape2::Segment(Segment2::new(g.a * s, g.b * s)),
        }
    }

    /// `n ≥ 2` points from one end to the other.
    pub fn sample(&self, n: usize) -> Vec<Vec2> {
        match self {
            Shape2::Arc(a) => a.sample(n),
            Shape2::Segment(g) => {
                let n = n.max(2);
                (0..n)
                    .map(|k| {
                        let s = k as f64 / (n - 1) as f64;
                        g.a + (g.b - g.a) * s
                    })
                    .collect()
            }
        }
    }

    /// Height above abscissa `x` for shapes that are graphs over the
    /// horizontal axis (vertical-axis arcs, non-vertical segments).
    pub fn height_at(&self, x: f64) -> f64 {
        match self {
            Shape2::Arc(a) => a
                .parabola
                .graph_height(x)
                .expect("frame arcs have vertical axes"),
            Shape2::Segment(g) => {
                let s = (x - g.a.x) / (g.b.x - g.a.x);
                g.a.y + s * (g.b.y - g.a.y)
            }
        }
    }

    pub fn contains_point(&self, p: Vec2, tol: f64) -> bool {
        match self {
            Shape2::Arc(a) => a.contains_point(p, tol),
            Shape2::Segment(g) => g.contains_point(p, tol),
        }
    }

    pub fn as_arc(&self) -> Option<&ParabolicArc2> {
        match self {
            Shape2::Arc(a) => Some(a),
            Shape2::Segment(_) => None,
        }
    }
}

/// Which copy of the base construction a piece or surface belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Image {
    /// The left body itself.
    Left,
    /// Its reflection through the centre.
    Right,
    /// Reflection of `Left` across diagonal `BD`.
    DiagonalLeft,
    /// Reflection of `Right` across diagonal `BD`.
    DiagonalRight,
}

impl Image {
    pub const ALL: [Image; 4] = [
        Image::Left,
        Image::Right,
        Image::DiagonalLeft,
        Image::DiagonalRight,
    ];

    /// Frame map carrying the base construction onto this copy. Each is an
    /// involution.
    pub fn isometry(self, frame: &RhombusFrame) -> Isometry2 {
        match self {
            Image::Left => Isometry2::IDENTITY,
            Image::Right => Isometry2::CENTRAL,
            Image::DiagonalLeft => frame.bd_reflection(),
            Image::DiagonalRight => frame.bd_reflection().compose(&Isometry2::CENTRAL),
        }
    }

    /// Whether this copy serves the second direction.
    pub fn is_diagonal(self) -> bool {
        matches!(self, Image::DiagonalLeft | Image::DiagonalRight)
    }

    pub fn tag(self) -> &'static str {
        match self {
            Image::Left => "AL",
            Image::Right => "AR",
            Image::DiagonalLeft => "BL",
            Image::DiagonalRight => "BR",
        }
    }
}

/// Solid piece bounded by two graphs over `[−c_i, −c_{i+1}]` (frame
/// abscissas) and a non-reflecting wall on the right.
#[derive(Debug, Clone, PartialEq)]
pub struct SolidPiece2 {
    pub image: Image,
    /// Pieces on side `DC` (the primed family).
    pub primed: bool,
    pub index: usize,
    pub upper: Shape2,
    pub lower: Shape2,
    pub right_wall: Segment2,
}

impl SolidPiece2 {
    pub fn tag(&self) -> String {
        format!(
            "{}{}{}",
            self.image.tag(),
            if self.primed { "'" } else { "" },
            self.index
        )
    }

    /// Closed boundary polygon: upper arc forward, right wall, lower arc back.
    pub fn outline(&self, samples_per_arc: usize) -> Vec<Vec2> {
        let mut up = self.upper.sample(samples_per_arc);
        let mut low = self.lower.sample(samples_per_arc);
        orient_like(&mut up, &low);
        low.reverse();
        up.extend(low);
        up
    }
}

// Make `a` run in the same direction as `b` (from the shared tip outward).
fn orient_like(a: &mut [Vec2], b: &[Vec2]) {
    if (a[a.len() - 1] - b[0]).norm() < (a[0] - b[0]).norm() {
        a.reverse();
    }
}

/// Reflecting surface of a body with a group tag used for hit attribution.
#[derive(Debug, Clone, PartialEq)]
pub struct Mirror2 {
    pub shape: Shape2,
    pub group: String,
}

/// Non-reflecting segment: struck only through a construction defect.
#[derive(Debug, Clone, PartialEq)]
pub struct Wall2 {
    pub segment: Segment2,
    pub group: String,
}

/// Solid corner block of the thin body: `{sx·x, sy·y ∈ [c/2, c]}` cut down by
/// the two outermost arcs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CornerBlock {
    pub sx: f64,
    pub sy: f64,
    pub c: f64,
}

impl CornerBlock {
    fn bound(&self, s: f64) -> f64 {
        // Outermost arc through (c, c) with focal length c/2, in units of c.
        s * s / (2.0 * self.c) + 0.5 * self.c
    }

    pub fn contains(&self, p: Vec2) -> bool {
        let (x, y) = (self.sx * p.x, self.sy * p.y);
        let (h, c) = (0.5 * self.c, self.c);
        (h..=c).contains(&x) && (h..=c).contains(&y) && y <= self.bound(x) && x <= self.bound(y)
    }

    /// Inset open interior, used as a shading target.
    pub fn contains_inset(&self, p: Vec2, delta: f64) -> bool {
        let (x, y) = (self.sx * p.x, self.sy * p.y);
        let (h, c) = (0.5 * self.c, self.c);
        x > h + delta
            && x < c - delta
            && y > h + delta
            && y < c - delta
            && y < self.bound(x) - delta
            && x < self.bound(y) - delta
    }

    /// The two straight (non-reflecting) sides.
    pub fn walls(&self) -> [Segment2; 2] {
        let (h, k) = (0.5 * self.c, 0.625 * self.c);
        let m = |x: f64, y: f64| Vec2::new(self.sx * x, self.sy * y);
        [
            Segment2::new(m(h, k), m(h, h)),
            Segment2::new(m(h, h), m(k, h)),
        ]
    }

    pub fn outline(&self, samples_per_arc: usize) -> Vec<Vec2> {
        let n = samples_per_arc.max(2);
        let (h, c) = (0.5 * self.c, self.c);
        let m = |x: f64, y: f64| Vec2::new(self.sx * x, self.sy * y);
        let mut pts = Vec::with_capacity(2 * n + 1);
        for k in 0..n {
            let x = c - (c - h) * k as f64 / (n - 1) as f64;
            pts.push(m(x, self.bound(x)));
        }
        pts.push(m(h, h));
        for k in 0..n {
            let y = h + (c - h) * k as f64 / (n - 1) as f64;
            pts.push(m(self.bound(y), y));
        }
        pts.pop();
        pts
    }

    pub fn bounds(&self) -> Aabb<Vec2> {
        let (h, c) = (0.5 * self.c, self.c);
        Aabb::from_points([
            Vec2::new(self.sx * h, self.sy * h),
            Vec2::new(self.sx * c, self.sy * c),
        ])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BodyKind {
    /// Zero-thickness mirrors plus corner blocks.
    Thin,
    /// Solid pieces inside a rhombus.
    Rhombus,
}

/// One level of the base construction, in frame coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct BaseLevel {
    pub p: Shape2,
    pub q: Shape2,
    pub p_primed: Shape2,
    pub q_primed: Shape2,
}

/// A truncated 2D fractal body.
///
/// Depth `N` holds the full levels `0..N` plus the closing arcs of level `N`,
/// which redirect the particles of the innermost treated band. Particles with
/// frame abscissa `|x| < c_N` are not treated.
#[derive(Debug, Clone, PartialEq)]
pub struct Body2D {
    pub kind: BodyKind,
    pub frame: RhombusFrame,
    pub seq: SequencePair,
    pub depth: usize,
    /// Levels `0..N` of the left body in frame coordinates.
    pub base: Vec<BaseLevel>,
    /// `q_N` and its primed twin.
    pub closing: [ParabolicArc2; 2],
    /// Solid pieces in user coordinates (empty for the thin body).
    pub pieces: Vec<SolidPiece2>,
    pub mirrors: Vec<Mirror2>,
    pub walls: Vec<Wall2>,
    pub blocks: Vec<CornerBlock>,
}

impl Body2D {
    pub fn c(&self) -> f64 {
        self.frame.c
    }

    /// Closed-set membership.
    pub fn contains(&self, p: Vec2) -> bool {
        match self.kind {
            BodyKind::Thin => {
                let tol = 1e-12 * self.c();
                self.blocks.iter().any(|b| b.contains(p))
                    || self.mirrors.iter().any(|m| m.shape.contains_point(p, tol))
            }
            BodyKind::Rhombus => {
                let q = self.frame.to_frame.apply(p);
                Image::ALL
                    .iter()
                    .any(|img| self.base_contains(img.isometry(&self.frame).apply(q)))
            }
        }
    }

    /// Membership in the left body, frame coordinates.
    pub fn base_contains(&self, q: Vec2) -> bool {
        let t = -q.x;
        let Some(level) = self.seq.level_of(t) else {
            return false;
        };
        // On a shared endpoint t = c_{i+1} both neighbours may hold the point.
        [level, level + 1]
            .into_iter()
            .filter(|&i| i < self.depth && t <= self.seq.c[i] && t >= self.seq.c[i + 1])
            .any(|i| {
                let l = &self.base[i];
                let (x, y) = (q.x, q.y);
                (l.q.height_at(x) <= y && y <= l.p.height_at(x))
                    || (l.p_primed.height_at(x) <= y && y <= l.q_primed.height_at(x))
            })
    }

    pub fn bounds(&self) -> Aabb<Vec2> {
        Aabb::from_points(
            self.frame
                .vertices()
                .into_iter()
                .map(|v| self.frame.to_user.apply(v)),
        )
    }

    /// Copy scaled about the origin by `s > 0`.
    pub fn scaled(&self, s: f64) -> Self {
        let mut frame = self.frame.clone();
        frame.c *= s;
        let mut seq = self.seq.clone();
        seq.c.iter_mut().for_each(|c| *c *= s);
        seq.a.iter_mut().skip(1).for_each(|a| *a *= s);
        let sc = |sh: &Shape2| sh.scaled(s);
        let arc = |a: &ParabolicArc2| *sc(&Shape2::Arc(*a)).as_arc().unwrap();
        let seg = |g: &Segment2| Segment2::new(g.a * s, g.b * s);
        Self {
            kind: self.kind,
            frame,
            seq,
            depth: self.depth,
            base: self
                .base
                .iter()
                .map(|l| BaseLevel {
                    p: sc(&l.p),
                    q: sc(&l.q),
                    p_primed: sc(&l.p_primed),
                    q_primed: sc(&l.q_primed),
                })
                .collect(),
            closing: [arc(&self.closing[0]), arc(&self.closing[1])],
            pieces: self
                .pieces
                .iter()
                .map(|p| SolidPiece2 {
                    upper: sc(&p.upper),
                    lower: sc(&p.lower),
                    right_wall: seg(&p.right_wall),
                    ..p.clone()
                })
                .collect(),
            mirrors: self
                .mirrors
                .iter()
                .map(|m| Mirror2 {
                    shape: sc(&m.shape),
                    group: m.group.clone(),
                })
                .collect(),
            walls: self
                .walls
                .iter()
                .map(|w| Wall2 {
                    segment: seg(&w.segment),
                    group: w.group.clone(),
                })
                .collect(),
            blocks: self
                .blocks
                .iter()
                .map(|b| CornerBlock { c: b.c * s, ..*b })
                .collect(),
        }
    }

    /// Parabolic arcs only (segments skipped), user coordinates.
    pub fn arcs(&self) -> impl Iterator<Item = &ParabolicArc2> {
        self.mirrors.iter().filter_map(|m| m.shape.as_arc())
    }

    /// Tracer scene: mirrors, then walls, with the singular lines of both
    /// flows (`⟨n, x⟩ = ±c_i`) and the untreated bands `|⟨n, x⟩| < c_N`.
    pub fn scene(&self) -> Scene<Shape2> {
        let mut surfaces: Vec<(Shape2, Role, String)> = self
            .mirrors
            .iter()
            .map(|m| (m.shape, Role::Mirror, m.group.clone()))
            .collect();
        surfaces.extend(
            self.walls
                .iter()
                .map(|w| (Shape2::Segment(w.segment), Role::Wall, w.group.clone())),
        );
        let mut hints = Vec::new();
        for diagonal in [false, true] {
            let normal = self.ladder_normal(diagonal);
            for &c in &self.seq.c {
                for offset in [-c, c] {
                    hints.push(SceneHint::SingularPlane { normal, offset });
                }
            }
            hints.push(SceneHint::UntreatedZone {
                normal,
                half_width: self.seq.c[self.depth],
                gate: None,
            });
        }
        Scene::new(surfaces, self.bounds()).with_hints(hints)
    }

    /// Frame normal of the vertical-flow ladder, in user coordinates.
    pub fn ladder_normal(&self, image_diagonal: bool) -> Vec2 {
        let ex = Vec2::new(1.0, 0.0);
        let n = if image_diagonal {
            self.frame.bd_reflection().apply_linear(ex)
        } else {
            ex
        };
        self.frame.to_user.apply_linear(n)
    }
}
