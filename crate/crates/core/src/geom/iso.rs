use super::vec::Vec2;

/// Distance-preserving affine map `p ↦ M·p + t` with orthogonal `M`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Isometry2 {
    /// Row-major 2×2 matrix.
    pub m: [[f64; 2]; 2],
    pub t: Vec2,
}

impl Isometry2 {
    pub const IDENTITY: Self = Self {
        m: [[1.0, 0.0], [0.0, 1.0]],
        t: Vec2::new(0.0, 0.0),
    };

    /// Point reflection through the origin.
    pub const CENTRAL: Self = Self {
        m: [[-1.0, 0.0], [0.0, -1.0]],
        t: Vec2::new(0.0, 0.0),
    };

    pub fn rotation(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self {
            m: [[c, -s], [s, c]],
            t: Vec2::new(0.0, 0.0),
        }
    }

    /// Rotation about the origin carrying the unit vector `from` onto `to`.
    pub fn rotation_between(from: Vec2, to: Vec2) -> Self {
        let c = from.x * to.x + from.y * to.y;
        let s = from.cross(to);
        Self {
            m: [[c, -s], [s, c]],
            t: Vec2::new(0.0, 0.0),
        }
    }

    /// Reflection across the line through the origin spanned by unit `d`.
    pub fn reflection(d: Vec2) -> Self {
        Self {
            m: [
                [2.0 * d.x * d.x - 1.0, 2.0 * d.x * d.y],
                [2.0 * d.x * d.y, 2.0 * d.y * d.y - 1.0],
            ],
            t: Vec2::new(0.0, 0.0),
        }
    }

    pub fn apply_linear(&self, v: Vec2) -> Vec2 {
        Vec2::new(
            self.m[0][0] * v.x + self.m[0][1] * v.y,
            self.m[1][0] * v.x + self.m[1][1] * v.y,
        )
    }

    pub fn apply(&self, p: Vec2) -> Vec2 {
        self.apply_linear(p) + self.t
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        let a = &self.m;
        let b = &other.m;
        Self {
            m: [
                [
                    a[0][0] * b[0][0] + a[0][1] * b[1][0],
                    a[0][0] * b[0][1] + a[0][1] * b[1][1],
                ],
                [
                    a[1][0] * b[0][0] + a[1][1] * b[1][0],
                    a[1][0] * b[0][1] + a[1][1] * b[1][1],
                ],
            ],
            t: self.apply(other.t),
        }
    }

    pub fn inverse(&self) -> Self {
        let mt = [[self.m[0][0], self.m[1][0]], [self.m[0][1], self.m[1][1]]];
        let inv = Self {
            m: mt,
            t: Vec2::new(0.0, 0.0),
        };
        Self {
            m: mt,
            t: -inv.apply_linear(self.t),
        }
    }

    pub fn determinant(&self) -> f64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }
}

/// Scaling about a centre: `p ↦ center + ratio·(p − center)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Homothety2 {
    pub center: Vec2,
    pub ratio: f64,
}

impl Homothety2 {
    pub fn new(center: Vec2, ratio: f64) -> Self {
        Self { center, ratio }
    }

    pub fn apply(&self, p: Vec2) -> Vec2 {
        self.center + (p - self.center) * self.ratio
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.center, 1.0 / self.ratio)
    }
}

pub fn apply_homothety(h: &Homothety2, p: Vec2) -> Vec2 {
    h.apply(p)
}
