//! Planar representation of opinions.
//!
//! Opinions live in the equilateral triangle with vertices
//! B = (0, 0) (pure belief), D = (2/√3, 0) (pure disbelief) and
//! U = (1/√3, 1) (pure uncertainty). Every altitude has length 1, so an
//! opinion's uncertainty is its y coordinate.

use std::f64::consts::{FRAC_PI_3, PI};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::consts::{EPS_GEO, EPS_SUM};
use crate::opinion::Opinion;

pub(crate) const SIN_60: f64 = 0.866_025_403_784_438_6;
pub(crate) const COS_60: f64 = 0.5;
pub(crate) const SQRT_3: f64 = 1.732_050_807_568_877_2;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("point ({x}, {y}) lies outside the opinion triangle")]
    OutsideTriangle { x: f64, y: f64 },
    #[error("direction {0} rad is outside [0, π/3]")]
    DirectionOutOfRange(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CartesianPoint {
    pub x: f64,
    pub y: f64,
}

impl CartesianPoint {
    pub const B: CartesianPoint = CartesianPoint { x: 0.0, y: 0.0 };
    pub const D: CartesianPoint = CartesianPoint {
        x: 2.0 / SQRT_3,
        y: 0.0,
    };
    pub const U: CartesianPoint = CartesianPoint {
        x: 1.0 / SQRT_3,
        y: 1.0,
    };

    pub fn new(x: f64, y: f64) -> Self {
        CartesianPoint { x, y }
    }

    pub fn distance(&self, other: &CartesianPoint) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Whether the point satisfies the three half-plane constraints of the
    /// triangle, each relaxed by [`EPS_GEO`].
    pub fn in_triangle(&self) -> bool {
        self.x.is_finite()
            && self.y.is_finite()
            && self.y >= -EPS_GEO
            && self.y <= SQRT_3 * self.x + EPS_GEO
            && self.y <= 2.0 - SQRT_3 * self.x + EPS_GEO
    }
}

/// Angles of an opinion O relative to the triangle BDU.
///
/// `alpha` is the direction of B→O from the B–D axis, `beta` the angle ODB,
/// and `gamma`, `delta`, `epsilon` the angles of triangle ODU at D, U and O.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OpinionAngles {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub epsilon: f64,
}

pub fn to_cartesian(o: &Opinion) -> CartesianPoint {
    CartesianPoint {
        x: (o.disbelief() + o.uncertainty() * COS_60) / SIN_60,
        y: o.uncertainty(),
    }
}

pub fn from_cartesian(p: &CartesianPoint) -> Result<Opinion, GeometryError> {
    if !p.in_triangle() {
        return Err(GeometryError::OutsideTriangle { x: p.x, y: p.y });
    }
    let u = p.y;
    let d = p.x * SIN_60 - p.y * COS_60;
    let b = 1.0 - d - u;
    Opinion::new(b, d, u).map_err(|_| GeometryError::OutsideTriangle { x: p.x, y: p.y })
}

/// Length of the segment from O to U.
pub fn distance_to_u(o: &Opinion) -> f64 {
    let (b, d, u) = (o.belief(), o.disbelief(), o.uncertainty());
    ((1.0 + d - u).powi(2) / 3.0 + b * b).sqrt()
}

pub fn angles_of(o: &Opinion) -> OpinionAngles {
    let (b, d, u) = (o.belief(), o.disbelief(), o.uncertainty());
    let rise = u * SIN_60;
    let alpha = if b == 1.0 {
        0.0
    } else {
        rise.atan2(d + u * COS_60)
    };
    // 1 − (d + u·cos 60°) written as b + u·cos 60° to keep precision near D.
    let beta = if d == 1.0 {
        FRAC_PI_3
    } else {
        rise.atan2(b + u * COS_60)
    };
    let gamma = FRAC_PI_3 - beta;
    let delta = if u == 1.0 {
        0.0
    } else {
        (b / distance_to_u(o)).clamp(0.0, 1.0).asin()
    };
    OpinionAngles {
        alpha,
        beta,
        gamma,
        delta,
        epsilon: PI - gamma - delta,
    }
}

/// The point where the ray from B with direction `alpha` meets the edge DU.
pub fn max_point(alpha: f64) -> Result<CartesianPoint, GeometryError> {
    if !(-EPS_SUM..=FRAC_PI_3 + EPS_SUM).contains(&alpha) {
        return Err(GeometryError::DirectionOutOfRange(alpha));
    }
    let alpha = alpha.clamp(0.0, FRAC_PI_3);
    let x = 2.0 * alpha.cos() / (alpha.sin() + SQRT_3 * alpha.cos());
    Ok(CartesianPoint {
        x,
        y: 2.0 - SQRT_3 * x,
    })
}

/// |B→O| / |B→M_O|, the fraction of the way from B to the edge DU.
pub fn magnitude_ratio(o: &Opinion) -> f64 {
    let p = to_cartesian(o);
    let len = p.norm();
    if len == 0.0 {
        return 0.0;
    }
    let alpha = angles_of(o).alpha.clamp(0.0, FRAC_PI_3);
    let m = max_point(alpha).expect("direction clamped into range");
    (len / m.norm()).clamp(0.0, 1.0)
}
