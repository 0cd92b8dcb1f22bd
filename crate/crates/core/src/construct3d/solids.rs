use crate::geom::{Axis, Vec3, Vector};

/// Which half of a pyramid (or both).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PyramidSign {
    Plus,
    Minus,
    Both,
}

/// Cone of the cube `[−c, c]³` where one coordinate dominates the other two.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pyramid {
    pub axis: Axis,
    pub sign: PyramidSign,
    pub c: f64,
}

impl Pyramid {
    pub fn new(axis: Axis, sign: PyramidSign, c: f64) -> Self {
        Self { axis, sign, c }
    }

    /// Closed-set membership.
    pub fn contains(&self, p: Vec3) -> bool {
        if (0..3).any(|i| p.component(i).abs() > self.c) {
            return false;
        }
        let k = self.axis.index();
        let lead = p.component(k);
        let lead = match self.sign {
            PyramidSign::Plus => lead,
            PyramidSign::Minus => -lead,
            PyramidSign::Both => lead.abs(),
        };
        (0..3).filter(|&i| i != k).all(|i| lead >= p.component(i).abs())
    }

    /// Open interior.
    pub fn interior_contains(&self, p: Vec3) -> bool {
        let k = self.axis.index();
        let lead = match self.sign {
            PyramidSign::Plus => p.component(k),
            PyramidSign::Minus => -p.component(k),
            PyramidSign::Both => p.component(k).abs(),
        };
        lead < self.c && (0..3).filter(|&i| i != k).all(|i| lead > p.component(i).abs())
    }
}

/// Box running the full length of the cube along `axis`, with the other two
/// coordinates in `ε[c1, c]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gallery {
    pub axis: Axis,
    /// Signs of the two remaining coordinates, in increasing axis order.
    pub signs: (f64, f64),
    pub c: f64,
    pub c1: f64,
}

impl Gallery {
    pub fn new(axis: Axis, signs: (f64, f64), c: f64, c1: f64) -> Self {
        Self { axis, signs, c, c1 }
    }

    pub fn cross_axes(axis: Axis) -> (Axis, Axis) {
        match axis {
            Axis::X => (Axis::Y, Axis::Z),
            Axis::Y => (Axis::X, Axis::Z),
            Axis::Z => (Axis::X, Axis::Y),
        }
    }

    pub fn contains(&self, p: Vec3) -> bool {
        let (a, b) = Self::cross_axes(self.axis);
        let inside = |v: f64, s: f64| (self.c1..=self.c).contains(&(s * v));
        p.component(self.axis.index()).abs() <= self.c
            && inside(p.component(a.index()), self.signs.0)
            && inside(p.component(b.index()), self.signs.1)
    }

    /// The union of the four galleries along `axis`.
    pub fn union_contains(axis: Axis, c: f64, c1: f64, p: Vec3) -> bool {
        [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)]
            .into_iter()
            .any(|s| Gallery::new(axis, s, c, c1).contains(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pyramid_examples() {
        let p = Pyramid::new(Axis::Z, PyramidSign::Plus, 1.0);
        assert!(p.contains(Vec3::new(0.1, 0.2, 0.9)));
        assert!(!p.contains(Vec3::new(0.1, 0.2, 0.15)));
        assert!(p.contains(Vec3::new(0.5, 0.5, 0.5)));
        assert!(!p.interior_contains(Vec3::new(0.5, 0.5, 0.5)));
        assert!(!p.contains(Vec3::new(0.1, 0.2, -0.9)));
        let both = Pyramid::new(Axis::Z, PyramidSign::Both, 1.0);
        assert!(both.contains(Vec3::new(0.1, 0.2, -0.9)));
        let px = Pyramid::new(Axis::X, PyramidSign::Minus, 1.0);
        assert!(px.contains(Vec3::new(-0.9, 0.2, 0.1)));
    }

    #[test]
    fn gallery_examples() {
        let g = Gallery::new(Axis::Y, (1.0, 1.0), 1.0, 0.5);
        assert!(g.contains(Vec3::new(0.7, 0.0, 0.8)));
        assert!(!g.contains(Vec3::new(-0.7, 0.0, 0.8)));
        assert!(Gallery::new(Axis::Y, (-1.0, 1.0), 1.0, 0.5).contains(Vec3::new(-0.7, 0.0, 0.8)));
        assert!(Gallery::union_contains(Axis::Y, 1.0, 0.5, Vec3::new(-0.7, 0.9, -0.6)));
        assert!(!Gallery::union_contains(Axis::Y, 1.0, 0.5, Vec3::new(-0.3, 0.9, -0.6)));
    }
}
