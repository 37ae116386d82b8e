//! Independent oracles shared by the integration tests. Nothing here calls the
//! library's geometry or combination code; points are built from barycentric
//! weights and the triangle vertices directly.
#![allow(dead_code)]

use std::f64::consts::FRAC_PI_3;

pub const B: (f64, f64) = (0.0, 0.0);
pub const D: (f64, f64) = (1.154_700_538_379_251_5, 0.0);
pub const U: (f64, f64) = (0.577_350_269_189_625_8, 1.0);

pub type P = (f64, f64);

pub fn add(a: P, b: P) -> P {
    (a.0 + b.0, a.1 + b.1)
}

pub fn sub(a: P, b: P) -> P {
    (a.0 - b.0, a.1 - b.1)
}

pub fn scale(a: P, k: f64) -> P {
    (a.0 * k, a.1 * k)
}

pub fn dot(a: P, b: P) -> f64 {
    a.0 * b.0 + a.1 * b.1
}

pub fn cross(a: P, b: P) -> f64 {
    a.0 * b.1 - a.1 * b.0
}

pub fn len(a: P) -> f64 {
    a.0.hypot(a.1)
}

/// Plane point of the opinion with barycentric weights (b, d, u) on (B, D, U).
pub fn point(b: f64, d: f64, u: f64) -> P {
    add(add(scale(B, b), scale(D, d)), scale(U, u))
}

/// Barycentric coordinates of `p` with respect to triangle (a, b, c).
pub fn barycentric(p: P, a: P, b: P, c: P) -> (f64, f64, f64) {
    let area = cross(sub(b, a), sub(c, a));
    let wa = cross(sub(b, p), sub(c, p)) / area;
    let wb = cross(sub(c, p), sub(a, p)) / area;
    (wa, wb, 1.0 - wa - wb)
}

/// Unsigned angle between two vectors.
pub fn angle_between(a: P, b: P) -> f64 {
    cross(a, b).abs().atan2(dot(a, b))
}

pub fn rotate(a: P, theta: f64) -> P {
    let (s, c) = theta.sin_cos();
    (a.0 * c - a.1 * s, a.0 * s + a.1 * c)
}

/// Parameter s at which the ray `origin + s·dir` meets the line through DU.
pub fn ray_to_du(origin: P, dir: P) -> f64 {
    let edge = sub(U, D);
    cross(sub(D, origin), edge) / cross(dir, edge)
}

/// W = T + r·(V − T).
pub fn towards(t: P, vertex: P, r: f64) -> P {
    add(t, scale(sub(vertex, t), r))
}

/// Combination computed by vector construction: rotate T→D towards T→U by
/// the share of angle DTU that C's direction takes of angle DBU, then walk
/// from T the share of the way to DU that C walks from B.
pub fn combine_by_vectors(t: (f64, f64, f64), c: (f64, f64, f64)) -> P {
    let pt = point(t.0, t.1, t.2);
    let pc = point(c.0, c.1, c.2);
    let to_d = sub(D, pt);
    let to_u = sub(U, pt);
    let dtu = angle_between(to_d, to_u);
    let (c_dir, c_ratio) = if len(pc) == 0.0 {
        (0.0, 0.0)
    } else {
        let s = ray_to_du(B, pc);
        (angle_between(D, pc), 1.0 / s)
    };
    let tau = c_dir / FRAC_PI_3 * dtu;
    let dir = rotate(scale(to_d, 1.0 / len(to_d)), tau);
    let reach = ray_to_du(pt, dir);
    add(pt, scale(dir, c_ratio * reach))
}
