use std::fmt;

use super::ConstructError;

/// How the focus abscissas `a_i` are chosen.
#[derive(Debug, Clone, PartialEq)]
pub enum Policy {
    /// `a_i = 0`, `c_i = c·(c1/c)^i`: the zero-thickness limit.
    ThinLimit,
    /// `a_i = γ·u_i`, with `u_i` the largest value the recurrence admits.
    ConstantFraction(f64),
    /// Caller-supplied `a_1, a_2, …` (at least `N` values).
    Explicit(Vec<f64>),
}

impl Default for Policy {
    fn default() -> Self {
        Policy::ConstantFraction(0.5)
    }
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Policy::ThinLimit => write!(f, "thin-limit"),
            Policy::ConstantFraction(g) => write!(f, "constant-fraction({g})"),
            Policy::Explicit(a) => write!(f, "explicit({} values)", a.len()),
        }
    }
}

/// Which inequality of the admissibility condition an explicit `a_i` broke.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Inequality {
    /// `0 < a_i < a_{i−1}`.
    Monotone,
    /// `a_i·(c_{i−1} − 2c_i) < c_i²`.
    Quadratic,
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Inequality::Monotone => write!(f, "0 < a_i < a_(i-1)"),
            Inequality::Quadratic => write!(f, "a_i (c_(i-1) - 2 c_i) < c_i^2"),
        }
    }
}

/// Abscissa ladder `c_0 > c_1 > … > c_{N+1} > 0` and focus abscissas
/// `a_1 > … > a_N`.
///
/// `c` carries one entry past `c_N`: the closing arc of a depth-`N` body
/// spans `[c_{N+1}, c_N]`, and `c_{N+1}` is fixed by `a_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct SequencePair {
    pub c: Vec<f64>,
    /// `a[0] = +∞` stands for `a_0`; `a[i]` is `a_i`.
    pub a: Vec<f64>,
    pub policy: Policy,
}

impl SequencePair {
    pub fn depth(&self) -> usize {
        self.a.len() - 1
    }

    pub fn c0(&self) -> f64 {
        self.c[0]
    }

    /// Level `i` with `c_{i+1} ≤ t ≤ c_i`, if `t ∈ [c_{depth+1}, c_0]`. The
    /// smaller index wins on a shared endpoint.
    pub fn level_of(&self, t: f64) -> Option<usize> {
        if !(t <= self.c[0] && t >= *self.c.last().unwrap()) {
            return None;
        }
        // c is decreasing: count entries strictly greater than t.
        let k = self.c.partition_point(|&ci| ci > t);
        Some(if k == 0 { 0 } else { k - 1 })
    }

    /// Right-hand side of the recurrence, evaluated exactly as written.
    pub fn recurrence_rhs(&self, i: usize) -> f64 {
        let (cm, ci, ai) = (self.c[i - 1], self.c[i], self.a[i]);
        (ci + ai).powi(2) / (cm + ai) - ai
    }

    /// Rounding scale of [`Self::recurrence_rhs`]; residuals are judged against it.
    pub fn recurrence_scale(&self, i: usize) -> f64 {
        let (cm, ci, ai) = (self.c[i - 1], self.c[i], self.a[i]);
        (ci + ai).powi(2) / (cm + ai) + ai
    }

    /// Homothety ratio `r_i = (c_i + a_i)/(c_{i−1} + a_i)`.
    pub fn ratio(&self, i: usize) -> f64 {
        (self.c[i] + self.a[i]) / (self.c[i - 1] + self.a[i])
    }
}

/// `c_{i+1}` in a form free of the cancellation in `(c_i + a_i)²/(c_{i−1} + a_i) − a_i`.
fn next_c(cm: f64, ci: f64, ai: f64) -> f64 {
    (ci * ci - ai * (cm - 2.0 * ci)) / (cm + ai)
}

fn check_admissible(i: usize, a_prev: f64, ai: f64, cm: f64, ci: f64) -> Result<(), ConstructError> {
    if !(ai > 0.0 && ai < a_prev) {
        return Err(ConstructError::ConstraintViolation {
            index: i,
            inequality: Inequality::Monotone,
        });
    }
    if !(ai * (cm - 2.0 * ci) < ci * ci) {
        return Err(ConstructError::ConstraintViolation {
            index: i,
            inequality: Inequality::Quadratic,
        });
    }
    Ok(())
}

pub fn generate_sequences(
    c: f64,
    c1: f64,
    policy: Policy,
    depth: usize,
) -> Result<SequencePair, ConstructError> {
    if !(c.is_finite() && c > 0.0 && c1 > 0.0 && c1 < c) {
        return Err(ConstructError::InvalidSeed { c, c1 });
    }
    if depth == 0 {
        return Err(ConstructError::InvalidDepth(depth));
    }
    let mut cs = vec![c, c1];
    let mut a = vec![f64::INFINITY];
    match &policy {
        Policy::ThinLimit => {
            let r = c1 / c;
            for i in 2..=depth + 1 {
                cs.push(c * r.powi(i as i32));
            }
            a.resize(depth + 1, 0.0);
        }
        Policy::ConstantFraction(gamma) => {
            if !(*gamma > 0.0 && *gamma < 1.0) {
                return Err(ConstructError::InvalidFraction(*gamma));
            }
            for i in 1..=depth {
                let (cm, ci) = (cs[i - 1], cs[i]);
                let d = cm - 2.0 * ci;
                let bound = if d > 0.0 { ci * ci / d } else { f64::INFINITY };
                // a_0 = ∞ leaves u_1 unbounded when c_0 ≤ 2c_1; cap it at c.
                let u = a[i - 1].min(bound).min(c);
                let ai = gamma * u;
                a.push(ai);
                cs.push(next_c(cm, ci, ai));
            }
        }
        Policy::Explicit(list) => {
            if list.len() < depth {
                return Err(ConstructError::ExplicitTooShort {
                    needed: depth,
                    given: list.len(),
                });
            }
            for i in 1..=depth {
                let (cm, ci, ai) = (cs[i - 1], cs[i], list[i - 1]);
                check_admissible(i, a[i - 1], ai, cm, ci)?;
                a.push(ai);
                cs.push(next_c(cm, ci, ai));
            }
        }
    }
    debug_assert_eq!(cs.len(), depth + 2);
    let positive = |x: f64| x.is_normal() && x > 0.0;
    if let Some(index) = (2..cs.len()).find(|&k| !positive(cs[k])) {
        return Err(ConstructError::Underflow { index });
    }
    if policy != Policy::ThinLimit {
        if let Some(index) = (1..a.len()).find(|&k| !positive(a[k])) {
            return Err(ConstructError::Underflow { index });
        }
    }
    Ok(SequencePair {
        c: cs,
        a,
        policy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thin_limit_halves() {
        let s = generate_sequences(1.0, 0.5, Policy::ThinLimit, 8).unwrap();
        for (k, &ck) in s.c.iter().enumerate() {
            assert_eq!(ck, 2f64.powi(-(k as i32)));
        }
        assert!(s.a[1..].iter().all(|&a| a == 0.0));
        assert_eq!(s.depth(), 8);
    }

    #[test]
    fn explicit_first_step() {
        let s = generate_sequences(1.0, 0.5, Policy::Explicit(vec![0.2, 0.1]), 2).unwrap();
        assert!((s.c[2] - 0.208_333_333_333_333_3).abs() < 1e-15);
        assert!((s.recurrence_rhs(1) - s.c[2]).abs() < 1e-15);
    }

    #[test]
    fn explicit_boundary_is_accepted() {
        // c_0 − 2c_1 = 0, so the quadratic inequality reads 0 < 1/4.
        let s = generate_sequences(1.0, 0.5, Policy::Explicit(vec![0.6]), 1).unwrap();
        assert!(s.c[2] > 0.0);
    }

    #[test]
    fn explicit_violations_are_named() {
        let e = generate_sequences(1.0, 0.5, Policy::Explicit(vec![0.2, 0.3]), 2).unwrap_err();
        assert_eq!(
            e,
            ConstructError::ConstraintViolation {
                index: 2,
                inequality: Inequality::Monotone
            }
        );
        // c_0 − 2c_1 = 0.6, a_1·0.6 ≥ c_1² = 0.04 once a_1 ≥ 1/15.
        let e = generate_sequences(1.0, 0.2, Policy::Explicit(vec![0.1]), 1).unwrap_err();
        assert_eq!(
            e,
            ConstructError::ConstraintViolation {
                index: 1,
                inequality: Inequality::Quadratic
            }
        );
    }

    #[test]
    fn invalid_seed() {
        for c1 in [0.0, 1.0, 1.5, -0.1, f64::NAN] {
            assert!(matches!(
                generate_sequences(1.0, c1, Policy::ThinLimit, 3),
                Err(ConstructError::InvalidSeed { .. })
            ));
        }
    }

    #[test]
    fn constant_fraction_ladder() {
        let s = generate_sequences(1.0, 0.5, Policy::ConstantFraction(0.5), 4).unwrap();
        assert_eq!(s.a[1], 0.5);
        assert!((s.c[2] - 1.0 / 6.0).abs() < 1e-16);
        assert!((s.c[3] - 0.023_809_523_809_523_8).abs() < 1e-15);
    }

    #[test]
    fn level_lookup() {
        let s = generate_sequences(1.0, 0.5, Policy::ThinLimit, 3).unwrap();
        assert_eq!(s.level_of(0.75), Some(0));
        assert_eq!(s.level_of(0.5), Some(0));
        assert_eq!(s.level_of(0.3), Some(1));
        assert_eq!(s.level_of(0.07), Some(3));
        assert_eq!(s.level_of(0.01), None);
        assert_eq!(s.level_of(1.2), None);
    }
}
