//! The trustworthiness–confidence combination operator.
//!
//! Given a trustworthiness opinion T and a confidence opinion C, the
//! confidence is mapped into the triangle T–D–U: the direction of C inside
//! BDU (from 0 along B→D to π/3 along B→U) is rescaled onto the angle DTU,
//! and C's relative distance from B towards edge DU becomes the relative
//! distance travelled from T towards DU. The result W = T + T→C'.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3};

use serde::{Deserialize, Serialize};

use crate::consts::{EPS_ANGLE, EPS_CLAMP};
use crate::geometry::{angles_of, magnitude_ratio, COS_60, SIN_60, SQRT_3};
use crate::opinion::Opinion;

const TWO_OVER_SQRT_3: f64 = 2.0 / SQRT_3;

/// Intermediate quantities of a single combination.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CombinationTrace {
    /// Direction of C from B.
    pub alpha_c: f64,
    /// Direction of T→C' from the x axis.
    pub alpha_c_prime: f64,
    /// |B→C| / |B→M_C|.
    pub r_c: f64,
    /// |T→M_C'|, the distance from T to edge DU along `alpha_c_prime`.
    pub t_to_m_len: f64,
    /// |T→C'|.
    pub t_to_cprime_len: f64,
    pub result: Opinion,
}

/// Which closed form of |T→M| applies for a given direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeBranch {
    /// Straight up.
    Vertical,
    /// Along DU towards D; only reachable when T lies on DU.
    TowardsD,
    /// Along DU towards U; only reachable when T lies on DU.
    TowardsU,
    Generic,
}

impl EdgeBranch {
    pub fn select(direction: f64) -> Self {
        if (direction - FRAC_PI_2).abs() <= EPS_ANGLE {
            EdgeBranch::Vertical
        } else if (direction + FRAC_PI_3).abs() <= EPS_ANGLE {
            EdgeBranch::TowardsD
        } else if (direction - 2.0 * FRAC_PI_3).abs() <= EPS_ANGLE {
            EdgeBranch::TowardsU
        } else {
            EdgeBranch::Generic
        }
    }

    /// |T→M| for a ray leaving `t` at `direction` under this branch's formula.
    pub fn distance(self, t: &Opinion, direction: f64) -> f64 {
        match self {
            EdgeBranch::Vertical => 2.0 * t.belief(),
            EdgeBranch::TowardsD => TWO_OVER_SQRT_3 * t.uncertainty(),
            EdgeBranch::TowardsU => TWO_OVER_SQRT_3 * (1.0 - t.uncertainty()),
            EdgeBranch::Generic => {
                let tan = direction.tan();
                2.0 * (tan * tan + 1.0).sqrt() / (tan + SQRT_3).abs() * t.belief()
            }
        }
    }
}

/// Distance from `t` to the edge DU along `direction`.
pub fn edge_distance(t: &Opinion, direction: f64) -> f64 {
    EdgeBranch::select(direction).distance(t, direction)
}

pub fn combine(t: &Opinion, c: &Opinion) -> Opinion {
    combine_traced(t, c).result
}

pub fn combine_traced(t: &Opinion, c: &Opinion) -> CombinationTrace {
    let alpha_c = angles_of(c).alpha;
    let r_c = magnitude_ratio(c);
    let t_angles = angles_of(t);

    let alpha_c_prime = alpha_c * t_angles.epsilon / FRAC_PI_3 - t_angles.beta;
    let t_to_m_len = edge_distance(t, alpha_c_prime);
    let t_to_cprime_len = if r_c == 0.0 { 0.0 } else { r_c * t_to_m_len };

    let (u_t, d_t) = (t.uncertainty(), t.disbelief());
    let u_w = u_t + alpha_c_prime.sin() * t_to_cprime_len;
    let d_w = d_t + (u_t - u_w) * COS_60 + alpha_c_prime.cos() * SIN_60 * t_to_cprime_len;
    let mut b_w = 1.0 - d_w - u_w;
    if b_w < 0.0 && b_w >= -EPS_CLAMP {
        b_w = 0.0;
    }

    CombinationTrace {
        alpha_c,
        alpha_c_prime,
        r_c,
        t_to_m_len,
        t_to_cprime_len,
        result: Opinion::from_clamped(b_w, d_w, u_w),
    }
}

/// A post-condition of [`combine`] that failed.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CombinationViolation {
    #[error("result belief {w} exceeds trustworthiness belief {t}")]
    BeliefIncreased { t: f64, w: f64 },
    #[error("result {0} is not a valid opinion")]
    Invalid(Opinion),
}

/// Checks the result of a combination: it must be a valid opinion whose
/// belief does not exceed that of `t` by more than `tol`.
pub fn verify(t: &Opinion, w: &Opinion, tol: f64) -> Result<(), CombinationViolation> {
    let valid = w.components().iter().all(|v| (0.0..=1.0).contains(v))
        && (w.components().iter().sum::<f64>() - 1.0).abs() <= 1e-9;
    if !valid {
        return Err(CombinationViolation::Invalid(*w));
    }
    if w.belief() > t.belief() + tol {
        return Err(CombinationViolation::BeliefIncreased {
            t: t.belief(),
            w: w.belief(),
        });
    }
    Ok(())
}
