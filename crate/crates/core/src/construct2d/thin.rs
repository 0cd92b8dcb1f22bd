use crate::geom::{Isometry2, Parabola2, ParabolicArc2, Segment2, Vec2};

use super::body::{BaseLevel, Body2D, BodyKind, CornerBlock, Mirror2, Shape2, Wall2};
use super::{generate_sequences, ConstructError, Policy, RhombusFrame};

/// Quarter turn `(x, y) ↦ (−y, x)`, written exactly.
const QUARTER_TURN: Isometry2 = Isometry2 {
    m: [[0.0, -1.0], [1.0, 0.0]],
    t: Vec2::new(0.0, 0.0),
};

/// `y = 2^{k−2}x² + 1 − 2^{−k}`: focus `(0, 1)`, focal length `2^{−k}`.
fn upper(k: usize) -> Parabola2 {
    Parabola2::new(Vec2::new(0.0, 1.0), Vec2::new(0.0, 1.0), 0.5f64.powi(k as i32))
        .expect("positive focal length")
}

/// Mirror image of [`upper`] across the horizontal axis.
fn lower(k: usize) -> Parabola2 {
    Parabola2::new(Vec2::new(0.0, -1.0), Vec2::new(0.0, -1.0), 0.5f64.powi(k as i32))
        .expect("positive focal length")
}

fn span(par: Parabola2, k: usize, side: f64) -> ParabolicArc2 {
    let (lo, hi) = (0.5f64.powi(k as i32), 0.5f64.powi(k as i32 - 1));
    ParabolicArc2::over_abscissas(par, side * lo, side * hi).expect("non-empty span")
}

/// Thin body in the square `[−1, 1]²`, invisible along both axes.
///
/// Arc `k` of each family lives on `2^{−k} ≤ |x| ≤ 2^{−k+1}`; families are
/// the upward arcs, their mirror images, and both rotated a quarter turn.
/// Depth `N` carries arcs `k = 1..=N+1`, the last one closing band `N`.
pub fn build_thin_orthogonal(depth: usize) -> Result<Body2D, ConstructError> {
    let seq = generate_sequences(1.0, 0.5, Policy::ThinLimit, depth)?;
    let frame = RhombusFrame::orthogonal(1.0);
    let mut mirrors = Vec::new();
    for (group, rot) in [("", Isometry2::IDENTITY), ("rot", QUARTER_TURN)] {
        for (name, family) in [("P", upper as fn(usize) -> Parabola2), ("Q", lower)] {
            for k in 1..=depth + 1 {
                for side in [-1.0, 1.0] {
                    mirrors.push(Mirror2 {
                        shape: Shape2::Arc(span(family(k), k, side)).transformed(&rot),
                        group: format!("{name}{group}:{k}"),
                    });
                }
            }
        }
    }
    let blocks: Vec<CornerBlock> = [(-1.0, 1.0), (1.0, 1.0), (1.0, -1.0), (-1.0, -1.0)]
        .into_iter()
        .map(|(sx, sy)| CornerBlock { sx, sy, c: 1.0 })
        .collect();
    let walls = blocks
        .iter()
        .flat_map(|b| b.walls())
        .map(|segment| Wall2 {
            segment,
            group: "block".into(),
        })
        .collect();

    // The same arcs, indexed as the levels of the orthogonal rhombus body.
    let base = (0..depth)
        .map(|i| {
            let p = Shape2::Arc(span(upper(i + 1), i + 1, -1.0));
            let pp = Shape2::Arc(span(lower(i + 1), i + 1, -1.0));
            let (q, qp) = if i == 0 {
                (
                    Shape2::Segment(Segment2::new(Vec2::new(-1.0, 1.0), Vec2::new(-0.5, 0.5))),
                    Shape2::Segment(Segment2::new(Vec2::new(-1.0, -1.0), Vec2::new(-0.5, -0.5))),
                )
            } else {
                (p, pp)
            };
            BaseLevel {
                p,
                q,
                p_primed: pp,
                q_primed: qp,
            }
        })
        .collect();
    let closing = [
        span(upper(depth + 1), depth + 1, -1.0),
        span(lower(depth + 1), depth + 1, -1.0),
    ];
    Ok(Body2D {
        kind: BodyKind::Thin,
        frame,
        seq,
        depth,
        base,
        closing,
        pieces: Vec::new(),
        mirrors,
        walls,
        blocks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depth_one_arcs() {
        let b = build_thin_orthogonal(1).unwrap();
        let first: Vec<_> = b.mirrors.iter().filter(|m| m.group == "P:1").collect();
        assert_eq!(first.len(), 2);
        for m in first {
            let a = m.shape.as_arc().unwrap();
            for p in a.sample(9) {
                assert!(p.x.abs() >= 0.5 - 1e-15 && p.x.abs() <= 1.0 + 1e-15);
                assert!((p.y - (0.5 * p.x * p.x + 0.5)).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn second_arc_polynomial() {
        let b = build_thin_orthogonal(2).unwrap();
        let m: Vec<_> = b.mirrors.iter().filter(|m| m.group == "P:2").collect();
        assert_eq!(m.len(), 2);
        for p in m[0].shape.as_arc().unwrap().sample(9) {
            assert!(p.x.abs() >= 0.25 - 1e-15 && p.x.abs() <= 0.5 + 1e-15);
            assert!((p.y - (p.x * p.x + 0.75)).abs() < 1e-15);
        }
    }

    #[test]
    fn outer_endpoints_on_unit_line() {
        let b = build_thin_orthogonal(8).unwrap();
        for k in 1..=9 {
            let arcs: Vec<_> = b.mirrors.iter().filter(|m| m.group == format!("P:{k}")).collect();
            for m in arcs {
                let ends = m.shape.as_arc().unwrap().endpoints();
                let outer = if ends[0].x.abs() > ends[1].x.abs() { ends[0] } else { ends[1] };
                assert!((outer.x.abs() - 0.5f64.powi(k - 1)).abs() < 1e-15);
                assert!((outer.y - 1.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn rotated_family_fits_shaded_region() {
        let b = build_thin_orthogonal(6).unwrap();
        for m in b.mirrors.iter().filter(|m| m.group.contains("rot")) {
            for p in m.shape.sample(33) {
                assert!(p.x.abs() >= 0.5 - 1e-15 && p.x.abs() <= 1.0 + 1e-15);
                assert!(p.y.abs() <= 0.5 * p.x * p.x + 0.5 + 1e-15);
            }
        }
    }

    #[test]
    fn counts() {
        let b = build_thin_orthogonal(2).unwrap();
        assert_eq!(b.mirrors.len(), 2 * 3 * 2 * 2);
        assert_eq!(b.blocks.len(), 4);
        assert_eq!(b.walls.len(), 8);
    }

    #[test]
    fn membership() {
        let b = build_thin_orthogonal(4).unwrap();
        assert!(b.contains(Vec2::new(0.75, 0.78125)));
        assert!(!b.contains(Vec2::new(0.75, 0.78125 + 1e-9)));
        assert!(b.contains(Vec2::new(-0.6, -0.6)));
        assert!(!b.contains(Vec2::new(0.0, 0.0)));
        assert!(!b.contains(Vec2::new(1.2, 0.0)));
        assert!(b.blocks.iter().any(|k| k.contains(Vec2::new(0.55, 0.55))));
    }
}
