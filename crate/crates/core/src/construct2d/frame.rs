use crate::geom::{Isometry2, Vec2, Vector};

use super::ConstructError;

/// Rhombus with sides parallel to two invisibility directions, centred at the
/// origin.
///
/// Geometry is computed in the *frame*: user coordinates rotated so that
/// `dir1` points up. `to_user` maps frame points back.
#[derive(Debug, Clone, PartialEq)]
pub struct RhombusFrame {
    pub c: f64,
    pub dir1: Vec2,
    pub dir2: Vec2,
    /// Second direction in the frame, oriented so its `x` component is positive.
    pub d2: Vec2,
    pub to_frame: Isometry2,
    pub to_user: Isometry2,
}

impl RhombusFrame {
    pub fn new(c: f64, dir1: Vec2, dir2: Vec2) -> Result<Self, ConstructError> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(ConstructError::InvalidSeed { c, c1: f64::NAN });
        }
        if !(dir1.is_finite() && dir2.is_finite() && dir1.norm() > 0.0 && dir2.norm() > 0.0) {
            return Err(ConstructError::ParallelDirections);
        }
        let dir1 = dir1.normalized();
        let dir2 = dir2.normalized();
        let to_frame = Isometry2::rotation_between(dir1, Vec2::new(0.0, 1.0));
        let mut d2 = to_frame.apply_linear(dir2);
        if d2.x < 0.0 {
            d2 = -d2;
        }
        if d2.x < 1e-9 {
            return Err(ConstructError::ParallelDirections);
        }
        Ok(Self {
            c,
            dir1,
            dir2,
            d2,
            to_user: to_frame.inverse(),
            to_frame,
        })
    }

    /// Square frame with vertical and horizontal directions.
    pub fn orthogonal(c: f64) -> Self {
        Self::new(c, Vec2::new(0.0, 1.0), Vec2::new(1.0, 0.0)).expect("orthogonal frame")
    }

    pub fn side(&self) -> f64 {
        2.0 * self.c / self.d2.x
    }

    pub fn cot(&self) -> f64 {
        self.d2.y / self.d2.x
    }

    /// Vertices `[A, B, C, D]` in frame coordinates.
    pub fn vertices(&self) -> [Vec2; 4] {
        let l = self.side();
        let a = Vec2::new(-self.c, 0.5 * l * (1.0 - self.d2.y));
        let b = a + self.d2 * l;
        [a, b, -a, -b]
    }

    /// Point of side `AB` with abscissa `x`.
    pub fn on_ab(&self, x: f64) -> Vec2 {
        let [a, ..] = self.vertices();
        Vec2::new(x, a.y + (x + self.c) * self.cot())
    }

    /// Point of side `DC` with abscissa `x`.
    pub fn on_cd(&self, x: f64) -> Vec2 {
        self.on_ab(x) - Vec2::new(0.0, self.side())
    }

    /// Height of diagonal `AC` above abscissa `x`.
    pub fn on_ac(&self, x: f64) -> f64 {
        let [a, ..] = self.vertices();
        -a.y / self.c * x
    }

    /// Height of diagonal `BD` above abscissa `x`.
    pub fn on_bd(&self, x: f64) -> f64 {
        let [.., d] = self.vertices();
        -d.y / self.c * x
    }

    /// Reflection across diagonal `BD`, in frame coordinates.
    pub fn bd_reflection(&self) -> Isometry2 {
        let [_, b, ..] = self.vertices();
        Isometry2::reflection(b.normalized())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthogonal_square() {
        let f = RhombusFrame::orthogonal(1.0);
        let [a, b, c, d] = f.vertices();
        assert!((a - Vec2::new(-1.0, 1.0)).norm() < 1e-15);
        assert!((b - Vec2::new(1.0, 1.0)).norm() < 1e-15);
        assert!((c - Vec2::new(1.0, -1.0)).norm() < 1e-15);
        assert!((d - Vec2::new(-1.0, -1.0)).norm() < 1e-15);
        let r = f.bd_reflection();
        assert!((r.apply(Vec2::new(0.3, -0.7)) - Vec2::new(-0.7, 0.3)).norm() < 1e-15);
    }

    #[test]
    fn sixty_degrees() {
        let t = 60f64.to_radians();
        let f = RhombusFrame::new(1.0, Vec2::new(0.0, 1.0), Vec2::new(t.sin(), t.cos())).unwrap();
        let [a, b, c, d] = f.vertices();
        let l = f.side();
        for (p, q) in [(a, b), (b, c), (c, d), (d, a)] {
            assert!(((p - q).norm() - l).abs() < 1e-14);
        }
        assert!((a.x + 1.0).abs() < 1e-15 && (d.x + 1.0).abs() < 1e-15);
        // BD reflection swaps A and C and fixes B, D.
        let r = f.bd_reflection();
        assert!((r.apply(a) - c).norm() < 1e-14);
        assert!((r.apply(d) - d).norm() < 1e-14);
        assert!((f.on_ab(1.0) - b).norm() < 1e-14);
        assert!((f.on_ac(-1.0) - a.y).abs() < 1e-15);
        assert!((f.on_bd(-1.0) - d.y).abs() < 1e-15);
    }

    #[test]
    fn user_rotation() {
        let f = RhombusFrame::new(1.0, Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)).unwrap();
        assert!((f.to_frame.apply_linear(f.dir1) - Vec2::new(0.0, 1.0)).norm() < 1e-15);
        assert!((f.to_user.apply(f.to_frame.apply(Vec2::new(0.2, 0.9))) - Vec2::new(0.2, 0.9)).norm() < 1e-15);
    }

    #[test]
    fn parallel_directions_rejected() {
        let d = Vec2::new(0.6, 0.8);
        assert_eq!(RhombusFrame::new(1.0, d, d), Err(ConstructError::ParallelDirections));
        assert_eq!(RhombusFrame::new(1.0, d, -d), Err(ConstructError::ParallelDirections));
    }
}
