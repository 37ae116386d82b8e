//! Numerical tolerances shared across the crate.

/// Allowed deviation of `b + d + u` from 1 (and of negative components from 0)
/// when constructing an opinion.
pub const EPS_SUM: f64 = 1e-9;

/// Distance from an exact vertex below which an opinion is classified as that vertex.
pub const EPS_CLASSIFY: f64 = 1e-12;

/// Slack for points that represent opinions in the Cartesian triangle.
pub const EPS_GEO: f64 = 1e-9;

/// Angular distance within which a projection direction is treated as one of
/// the special branches of the distance-to-edge formula.
pub const EPS_ANGLE: f64 = 1e-12;

/// Negative belief produced by rounding that is clamped to zero in a combination result.
pub const EPS_CLAMP: f64 = 1e-12;

/// Default tolerance used by the requirement auditor.
pub const AUDIT_TOL: f64 = 1e-9;

/// The relative atomicity every opinion carries.
pub const DEFAULT_BASE_RATE: f64 = 0.5;

/// Largest supported frame of discernment.
pub const MAX_FRAME_ATOMS: usize = 16;
