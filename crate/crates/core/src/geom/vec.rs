use std::fmt::Debug;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// Fixed-dimension real vector used by the tracer and verifier.
///
/// Implemented for [`Vec2`] and [`Vec3`]; the billiard machinery is written
/// once against this trait.
pub trait Vector:
    Copy
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<f64, Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    const DIM: usize;

    fn zero() -> Self;
    fn from_fn(f: impl FnMut(usize) -> f64) -> Self;
    fn component(self, i: usize) -> f64;
    fn dot(self, other: Self) -> f64;

    fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    fn normalized(self) -> Self {
        self * (1.0 / self.norm())
    }

    fn is_finite(self) -> bool {
        (0..Self::DIM).all(|i| self.component(i).is_finite())
    }

    /// Orthonormal basis of the hyperplane perpendicular to the unit vector `dir`.
    fn transverse_basis(dir: Self) -> Vec<Self>;
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Counter-clockwise rotation by a quarter turn.
    pub fn perp(self) -> Self {
        Self::new(-self.y, self.x)
    }

    pub fn cross(self, other: Self) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn distance(self, other: Self) -> f64 {
        (self - other).norm()
    }
}

impl Vec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn cross(self, o: Self) -> Self {
        Self::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn with(mut self, axis: usize, value: f64) -> Self {
        match axis {
            0 => self.x = value,
            1 => self.y = value,
            _ => self.z = value,
        }
        self
    }
}

impl Vector for Vec2 {
    const DIM: usize = 2;

    fn zero() -> Self {
        Self::new(0.0, 0.0)
    }

    fn from_fn(mut f: impl FnMut(usize) -> f64) -> Self {
        Self::new(f(0), f(1))
    }

    fn component(self, i: usize) -> f64 {
        match i {
            0 => self.x,
            _ => self.y,
        }
    }

    fn dot(self, o: Self) -> f64 {
        self.x * o.x + self.y * o.y
    }

    fn transverse_basis(dir: Self) -> Vec<Self> {
        vec![Self::new(dir.y, -dir.x)]
    }
}

impl Vector for Vec3 {
    const DIM: usize = 3;

    fn zero() -> Self {
        Self::new(0.0, 0.0, 0.0)
    }

    fn from_fn(mut f: impl FnMut(usize) -> f64) -> Self {
        Self::new(f(0), f(1), f(2))
    }

    fn component(self, i: usize) -> f64 {
        match i {
            0 => self.x,
            1 => self.y,
            _ => self.z,
        }
    }

    fn dot(self, o: Self) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    fn transverse_basis(dir: Self) -> Vec<Self> {
        // Pick the coordinate axis least aligned with `dir` as the seed; for
        // axis-aligned flows this yields the two remaining axes in cyclic order.
        let ax = dir.x.abs();
        let ay = dir.y.abs();
        let az = dir.z.abs();
        let seed = if ax <= ay && ax <= az {
            Self::new(1.0, 0.0, 0.0)
        } else if ay <= az {
            Self::new(0.0, 1.0, 0.0)
        } else {
            Self::new(0.0, 0.0, 1.0)
        };
        let e1 = (seed - dir * seed.dot(dir)).normalized();
        let e2 = dir.cross(e1);
        vec![e1, e2]
    }
}

macro_rules! impl_ops {
    ($t:ident, $($f:ident),+) => {
        impl Add for $t {
            type Output = Self;
            fn add(self, o: Self) -> Self {
                Self { $($f: self.$f + o.$f),+ }
            }
        }
        impl AddAssign for $t {
            fn add_assign(&mut self, o: Self) {
                $(self.$f += o.$f;)+
            }
        }
        impl Sub for $t {
            type Output = Self;
            fn sub(self, o: Self) -> Self {
                Self { $($f: self.$f - o.$f),+ }
            }
        }
        impl Mul<f64> for $t {
            type Output = Self;
            fn mul(self, s: f64) -> Self {
                Self { $($f: self.$f * s),+ }
            }
        }
        impl Neg for $t {
            type Output = Self;
            fn neg(self) -> Self {
                Self { $($f: -self.$f),+ }
            }
        }
    };
}

impl_ops!(Vec2, x, y);
impl_ops!(Vec3, x, y, z);

/// Axis-aligned box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aabb<V> {
    pub min: V,
    pub max: V,
}

impl<V: Vector> Aabb<V> {
    pub fn empty() -> Self {
        Self {
            min: V::from_fn(|_| f64::INFINITY),
            max: V::from_fn(|_| f64::NEG_INFINITY),
        }
    }

    pub fn from_points(points: impl IntoIterator<Item = V>) -> Self {
        points.into_iter().fold(Self::empty(), |b, p| b.including(p))
    }

    pub fn is_empty(&self) -> bool {
        (0..V::DIM).any(|i| self.min.component(i) > self.max.component(i))
    }

    pub fn including(self, p: V) -> Self {
        Self {
            min: V::from_fn(|i| self.min.component(i).min(p.component(i))),
            max: V::from_fn(|i| self.max.component(i).max(p.component(i))),
        }
    }

    pub fn union(self, o: Self) -> Self {
        Self {
            min: V::from_fn(|i| self.min.component(i).min(o.min.component(i))),
            max: V::from_fn(|i| self.max.component(i).max(o.max.component(i))),
        }
    }

    pub fn padded(self, pad: f64) -> Self {
        Self {
            min: V::from_fn(|i| self.min.component(i) - pad),
            max: V::from_fn(|i| self.max.component(i) + pad),
        }
    }

    pub fn center(&self) -> V {
        (self.min + self.max) * 0.5
    }

    /// Largest side length.
    pub fn extent(&self) -> f64 {
        (0..V::DIM)
            .map(|i| self.max.component(i) - self.min.component(i))
            .fold(0.0, f64::max)
    }

    pub fn corners(&self) -> Vec<V> {
        (0..1usize << V::DIM)
            .map(|mask| {
                V::from_fn(|i| {
                    if mask >> i & 1 == 1 {
                        self.max.component(i)
                    } else {
                        self.min.component(i)
                    }
                })
            })
            .collect()
    }

    pub fn contains(&self, p: V) -> bool {
        (0..V::DIM).all(|i| {
            let c = p.component(i);
            c >= self.min.component(i) && c <= self.max.component(i)
        })
    }

    /// Parameter interval over which `origin + t·dir` lies inside the box
    /// (slab method). `None` when the line misses the box.
    pub fn ray_interval(&self, origin: V, dir: V) -> Option<(f64, f64)> {
        let mut t0 = f64::NEG_INFINITY;
        let mut t1 = f64::INFINITY;
        for i in 0..V::DIM {
            let o = origin.component(i);
            let d = dir.component(i);
            let lo = self.min.component(i);
            let hi = self.max.component(i);
            if d == 0.0 {
                if o < lo || o > hi {
                    return None;
                }
                continue;
            }
            let inv = 1.0 / d;
            let (a, b) = {
                let a = (lo - o) * inv;
                let b = (hi - o) * inv;
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            };
            t0 = t0.max(a);
            t1 = t1.min(b);
            if t0 > t1 {
                return None;
            }
        }
        Some((t0, t1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transverse_basis_is_orthonormal() {
        for dir in [
            Vec3::new(0.0, 0.0, -1.0),
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(0.3, -0.4, 0.5).normalized(),
        ] {
            let b = Vec3::transverse_basis(dir);
            assert_eq!(b.len(), 2);
            assert!(b[0].dot(dir).abs() < 1e-15);
            assert!(b[1].dot(dir).abs() < 1e-15);
            assert!(b[0].dot(b[1]).abs() < 1e-15);
            assert!((b[0].norm() - 1.0).abs() < 1e-15);
            assert!((b[1].norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn slab_interval() {
        let b = Aabb {
            min: Vec2::new(-1.0, -1.0),
            max: Vec2::new(1.0, 1.0),
        };
        let (t0, t1) = b
            .ray_interval(Vec2::new(0.5, 3.0), Vec2::new(0.0, -1.0))
            .unwrap();
        assert_eq!((t0, t1), (2.0, 4.0));
        assert!(b
            .ray_interval(Vec2::new(1.5, 3.0), Vec2::new(0.0, -1.0))
            .is_none());
    }
}
