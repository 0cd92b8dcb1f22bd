use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::{Aabb, Ray, Vector};
use crate::tracer::{Primitive, Scene};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sampling {
    /// Cell midpoints of a regular grid; in 3D, `⌈√n⌉²` rays.
    UniformGrid(usize),
    /// Uniform random offsets; ray `i` draws from stream `i` of the seed, so
    /// results do not depend on how rays are split among workers.
    MonteCarlo { n: usize, seed: u64 },
}

/// Rectangle perpendicular to the flow: `center + Σ s_k·axes[k]`,
/// `|s_k| ≤ half_widths[k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossSection<V> {
    pub center: V,
    pub axes: Vec<V>,
    pub half_widths: Vec<f64>,
}

impl<V: Vector> CrossSection<V> {
    /// Smallest rectangle with the default axes covering the shadow of `bounds`.
    pub fn covering(bounds: &Aabb<V>, dir: V) -> Self {
        let center = bounds.center();
        let axes = V::transverse_basis(dir);
        let corners = bounds.corners();
        let half_widths = axes
            .iter()
            .map(|&a| {
                corners
                    .iter()
                    .map(|&p| (p - center).dot(a).abs())
                    .fold(0.0, f64::max)
            })
            .collect();
        Self {
            center,
            axes,
            half_widths,
        }
    }

    /// Length (2D) or area (3D).
    pub fn area(&self) -> f64 {
        self.half_widths.iter().map(|h| 2.0 * h).product()
    }

    pub fn point(&self, s: &[f64]) -> V {
        self.axes
            .iter()
            .zip(s)
            .fold(self.center, |p, (&a, &sk)| p + a * sk)
    }

    /// Half-extent of the section measured along a unit vector in its plane.
    pub fn half_extent_along(&self, n: V) -> f64 {
        self.axes
            .iter()
            .zip(&self.half_widths)
            .map(|(&a, &h)| h * a.dot(n).abs())
            .sum::<f64>()
            .max(f64::MIN_POSITIVE)
    }
}

/// A parallel flow of particles.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowSpec<V> {
    pub direction: V,
    pub sampling: Sampling,
    /// Defaults to the shadow of the scene box.
    pub cross_section: Option<CrossSection<V>>,
    /// Rays closer than this to a known singular line are skipped.
    pub exclusion_margin: f64,
}

impl<V: Vector> FlowSpec<V> {
    pub fn new(direction: V, sampling: Sampling) -> Self {
        Self {
            direction: direction.normalized(),
            sampling,
            cross_section: None,
            exclusion_margin: 0.0,
        }
    }

    pub fn grid(direction: V, n: usize) -> Self {
        Self::new(direction, Sampling::UniformGrid(n))
    }

    pub fn monte_carlo(direction: V, n: usize, seed: u64) -> Self {
        Self::new(direction, Sampling::MonteCarlo { n, seed })
    }

    pub fn with_margin(mut self, margin: f64) -> Self {
        self.exclusion_margin = margin;
        self
    }

    pub fn with_cross_section(mut self, cs: CrossSection<V>) -> Self {
        self.cross_section = Some(cs);
        self
    }

    fn offsets(&self, dims: usize) -> Vec<Vec<f64>> {
        match self.sampling {
            Sampling::UniformGrid(n) => {
                if n == 0 || dims == 0 {
                    return Vec::new();
                }
                // Smallest m with m^dims ≥ n.
                let mut m = ((n as f64).powf(1.0 / dims as f64).floor() as usize).max(1);
                while m.pow(dims as u32) < n {
                    m += 1;
                }
                let cells = m.pow(dims as u32);
                (0..cells)
                    .map(|mut k| {
                        (0..dims)
                            .map(|_| {
                                let j = k % m;
                                k /= m;
                                -1.0 + (2.0 * j as f64 + 1.0) / m as f64
                            })
                            .collect()
                    })
                    .collect()
            }
            Sampling::MonteCarlo { n, seed } => (0..n)
                .map(|i| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(i as u64);
                    (0..dims).map(|_| rng.gen_range(-1.0..1.0)).collect()
                })
                .collect(),
        }
    }

    /// Cross-section used and the entry rays, started `0.1·diameter` before
    /// the scene box.
    pub fn rays<P: Primitive<V = V>>(&self, scene: &Scene<P>) -> (CrossSection<V>, Vec<Ray<V>>) {
        let dir = self.direction.normalized();
        let cs = self
            .cross_section
            .clone()
            .unwrap_or_else(|| CrossSection::covering(&scene.bounds, dir));
        let reach = scene
            .bounds
            .corners()
            .iter()
            .map(|&p| (p - cs.center).dot(dir).abs())
            .fold(0.0, f64::max);
        let back = dir * -(reach + 0.1 * scene.diameter);
        let rays = self
            .offsets(cs.axes.len())
            .into_iter()
            .map(|u| {
                let s: Vec<f64> = u.iter().zip(&cs.half_widths).map(|(x, h)| x * h).collect();
                Ray {
                    origin: cs.point(&s) + back,
                    dir,
                }
            })
            .collect();
        (cs, rays)
    }
}
