use crate::geom::{Isometry2, Parabola2, ParabolicArc2, Segment2, Vec2};

use super::body::{BaseLevel, Body2D, BodyKind, Image, Mirror2, Shape2, SolidPiece2, Wall2};
use super::{ConstructError, RhombusFrame, SequencePair};

const UP: Vec2 = Vec2::new(0.0, 1.0);
const DOWN: Vec2 = Vec2::new(0.0, -1.0);

fn arc(focus: Vec2, through: Vec2, opening: Vec2, x0: f64, x1: f64) -> Result<ParabolicArc2, ConstructError> {
    let par = Parabola2::from_focus_and_point(focus, through, opening)?;
    Ok(ParabolicArc2::over_abscissas(par, x0, x1)?)
}

/// Levels `0..N` of the left body and the closing arcs, frame coordinates.
fn base_levels(
    frame: &RhombusFrame,
    seq: &SequencePair,
) -> Result<(Vec<BaseLevel>, [ParabolicArc2; 2]), ConstructError> {
    let (c, a) = (&seq.c, &seq.a);
    let n = seq.depth();
    let q_arc = |i: usize| arc(frame.on_ab(a[i]), frame.on_ab(-c[i]), UP, -c[i], -c[i + 1]);
    let qp_arc = |i: usize| arc(frame.on_cd(a[i]), frame.on_cd(-c[i]), DOWN, -c[i], -c[i + 1]);
    let mut levels = Vec::with_capacity(n);
    for i in 0..n {
        let p = arc(frame.on_ab(a[i + 1]), frame.on_ab(-c[i]), UP, -c[i], -c[i + 1])?;
        let pp = arc(frame.on_cd(a[i + 1]), frame.on_cd(-c[i]), DOWN, -c[i], -c[i + 1])?;
        let (q, qp) = if i == 0 {
            let [va, _, _, vd] = frame.vertices();
            (
                Shape2::Segment(Segment2::new(va, Vec2::new(-c[1], frame.on_ac(-c[1])))),
                Shape2::Segment(Segment2::new(vd, Vec2::new(-c[1], frame.on_bd(-c[1])))),
            )
        } else {
            (Shape2::Arc(q_arc(i)?), Shape2::Arc(qp_arc(i)?))
        };
        levels.push(BaseLevel {
            p: Shape2::Arc(p),
            q,
            p_primed: Shape2::Arc(pp),
            q_primed: qp,
        });
    }
    Ok((levels, [q_arc(n)?, qp_arc(n)?]))
}

/// Solid body inside the rhombus of `frame`, invisible along both frame
/// directions, truncated at `seq.depth()`.
pub fn build_rhombus_body(frame: &RhombusFrame, seq: &SequencePair) -> Result<Body2D, ConstructError> {
    if (seq.c0() - frame.c).abs() > 1e-12 * frame.c {
        return Err(ConstructError::ScaleMismatch {
            frame: frame.c,
            sequence: seq.c0(),
        });
    }
    let n = seq.depth();
    let (base, closing) = base_levels(frame, seq)?;
    let mut pieces = Vec::new();
    let mut mirrors = Vec::new();
    let mut walls = Vec::new();
    for image in Image::ALL {
        let map = frame.to_user.compose(&image.isometry(frame));
        let tag = image.tag();
        for (i, l) in base.iter().enumerate() {
            let x = -seq.c[i + 1];
            for primed in [false, true] {
                let (upper, lower) = if primed {
                    (l.q_primed, l.p_primed)
                } else {
                    (l.p, l.q)
                };
                let wall = Segment2::new(
                    Vec2::new(x, lower.height_at(x)),
                    Vec2::new(x, upper.height_at(x)),
                );
                pieces.push(SolidPiece2 {
                    image,
                    primed,
                    index: i,
                    upper: upper.transformed(&map),
                    lower: lower.transformed(&map),
                    right_wall: wall.transformed(&map),
                });
            }
            let prime = ["", "'"];
            for (name, shape) in [
                ("p", l.p),
                ("q", l.q),
                ("p'", l.p_primed),
                ("q'", l.q_primed),
            ] {
                mirrors.push(Mirror2 {
                    shape: shape.transformed(&map),
                    group: format!("{tag}:{name}{i}"),
                });
            }
            for (k, p) in pieces[pieces.len() - 2..].iter().enumerate() {
                walls.push(Wall2 {
                    segment: p.right_wall,
                    group: format!("{tag}:wall{}{i}", prime[k]),
                });
            }
        }
        for (name, a) in [("q", closing[0]), ("q'", closing[1])] {
            mirrors.push(Mirror2 {
                shape: Shape2::Arc(a).transformed(&map),
                group: format!("{tag}:{name}{n}"),
            });
        }
    }
    let body = Body2D {
        kind: BodyKind::Rhombus,
        frame: frame.clone(),
        seq: seq.clone(),
        depth: n,
        base,
        closing,
        pieces,
        mirrors,
        walls,
        blocks: Vec::new(),
    };
    check_overlap(&body)?;
    Ok(body)
}

// Strict interior of base level `i` (unprimed or primed), frame coordinates.
fn base_interior(body: &Body2D, i: usize, primed: bool, q: Vec2) -> bool {
    let c = &body.seq.c;
    if !(q.x > -c[i] && q.x < -c[i + 1]) {
        return false;
    }
    let l = &body.base[i];
    let (lo, hi) = if primed {
        (l.p_primed.height_at(q.x), l.q_primed.height_at(q.x))
    } else {
        (l.q.height_at(q.x), l.p.height_at(q.x))
    };
    q.y > lo && q.y < hi
}

/// Rejects bodies whose pieces share interior points, probing a small grid
/// of interior points of every piece against every other piece.
fn check_overlap(body: &Body2D) -> Result<(), ConstructError> {
    let frame = &body.frame;
    let c = &body.seq.c;
    let images: Vec<(Image, Isometry2)> = Image::ALL
        .iter()
        .map(|&img| (img, img.isometry(frame)))
        .collect();
    const FR: [f64; 4] = [0.1, 0.35, 0.65, 0.9];
    for (img, g) in &images {
        for i in 0..body.depth {
            for primed in [false, true] {
                let l = &body.base[i];
                let (lower, upper) = if primed {
                    (l.p_primed, l.q_primed)
                } else {
                    (l.q, l.p)
                };
                for fx in FR {
                    let x = -c[i] + fx * (c[i] - c[i + 1]);
                    let (lo, hi) = (lower.height_at(x), upper.height_at(x));
                    if !(hi > lo) {
                        continue;
                    }
                    for fy in FR {
                        let probe = g.apply(Vec2::new(x, lo + fy * (hi - lo)));
                        for (other, h) in &images {
                            let back = h.apply(probe);
                            for j in 0..body.depth {
                                for pj in [false, true] {
                                    if (other, j, pj) == (img, i, primed) {
                                        continue;
                                    }
                                    if base_interior(body, j, pj, back) {
                                        return Err(ConstructError::GeometryOverlap {
                                            first: format!("{}{}{i}", img.tag(), if primed { "'" } else { "" }),
                                            second: format!("{}{}{j}", other.tag(), if pj { "'" } else { "" }),
                                        });
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}
