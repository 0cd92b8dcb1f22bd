use crate::construct2d::{Body2D, Inequality, Policy, SequencePair};
use crate::geom::{apply_homothety, Homothety2, Vec2};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AuditFailure {
    #[error("a_{index} violates {inequality}")]
    Inequality { index: usize, inequality: Inequality },
    #[error("c_{} = {value} breaks the recurrence by {residual:e}", index)]
    Recurrence { index: usize, value: f64, residual: f64 },
    #[error("c_{index} = {value} is not positive and below its predecessor")]
    NotDecreasing { index: usize, value: f64 },
    #[error("level {level}: homothety residual {residual:e} exceeds {bound:e}")]
    Homothety { level: usize, residual: f64, bound: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SequenceAudit {
    /// Largest recurrence residual, in units of its rounding scale.
    pub max_relative_residual: f64,
    pub levels: usize,
}

/// Recurrence residuals are accepted up to this many units of roundoff.
const RESIDUAL_ULPS: f64 = 8.0;

/// Checks the admissibility inequalities of every `a_i`, the recurrence for
/// every `c_{i+1}`, and that `c` is positive and strictly decreasing.
///
/// The thin limit `a_i = 0` is the boundary of the first inequality and is
/// accepted as such.
pub fn audit_sequences(seq: &SequencePair) -> Result<SequenceAudit, AuditFailure> {
    let thin = seq.policy == Policy::ThinLimit;
    let mut worst = 0.0f64;
    for i in 1..=seq.depth() {
        let (cm, ci, ai) = (seq.c[i - 1], seq.c[i], seq.a[i]);
        let monotone = if thin {
            ai == 0.0
        } else {
            ai > 0.0 && ai < seq.a[i - 1]
        };
        if !monotone {
            return Err(AuditFailure::Inequality {
                index: i,
                inequality: Inequality::Monotone,
            });
        }
        if !(ai * (cm - 2.0 * ci) < ci * ci) {
            return Err(AuditFailure::Inequality {
                index: i,
                inequality: Inequality::Quadratic,
            });
        }
        let residual = seq.c[i + 1] - seq.recurrence_rhs(i);
        // Deep levels square numbers below the normal range; the subnormal
        // grain of that square, divided by `c_{i−1} + a_i`, joins the scale.
        let grain = f64::from_bits(1) / (cm + ai);
        let rel = residual.abs() / (f64::EPSILON * seq.recurrence_scale(i) + grain);
        if rel > RESIDUAL_ULPS {
            return Err(AuditFailure::Recurrence {
                index: i + 1,
                value: seq.c[i + 1],
                residual,
            });
        }
        worst = worst.max(rel);
    }
    for (i, w) in seq.c.windows(2).enumerate() {
        if !(w[1] > 0.0 && w[1] < w[0]) {
            return Err(AuditFailure::NotDecreasing {
                index: i + 1,
                value: w[1],
            });
        }
    }
    Ok(SequenceAudit {
        max_relative_residual: worst,
        levels: seq.depth(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomothetyAudit {
    /// Largest distance-like residual of an image point to the parabola of `q_i`.
    pub max_residual: f64,
    /// Largest error of the image abscissas of the endpoints of `p_{i−1}`.
    pub max_endpoint_error: f64,
}

/// Maps `samples` points of each `p_{i−1}` by `H_i` (centre at the focus of
/// `q_i`, ratio `(c_i + a_i)/(c_{i−1} + a_i)`) and measures how far the images
/// fall from `q_i`. Frame coordinates of the left body.
pub fn audit_homothety(body: &Body2D, samples: usize) -> Result<HomothetyAudit, AuditFailure> {
    let seq = &body.seq;
    let bound = 1e-10 * body.c();
    let mut audit = HomothetyAudit {
        max_residual: 0.0,
        max_endpoint_error: 0.0,
    };
    for i in 1..=body.depth {
        let q = if i < body.depth {
            *body.base[i].q.as_arc().expect("q_i is an arc for i ≥ 1")
        } else {
            body.closing[0]
        };
        let p_prev = body.base[i - 1].p.as_arc().expect("p_i is an arc");
        let h = Homothety2::new(body.frame.on_ab(seq.a[i]), seq.ratio(i));
        let mut worst = 0.0f64;
        for pt in p_prev.sample(samples) {
            let r = q.parabola.focus_directrix_residual(apply_homothety(&h, pt)).abs();
            worst = worst.max(r);
        }
        if worst > bound {
            return Err(AuditFailure::Homothety {
                level: i,
                residual: worst,
                bound,
            });
        }
        audit.max_residual = audit.max_residual.max(worst);
        for (from, to) in [(seq.c[i - 1], seq.c[i]), (seq.c[i], seq.c[i + 1])] {
            let x = -from;
            let y = p_prev.parabola.graph_height(x).expect("vertical axis");
            let image = apply_homothety(&h, Vec2::new(x, y));
            audit.max_endpoint_error = audit.max_endpoint_error.max((image.x + to).abs());
        }
    }
    Ok(audit)
}
