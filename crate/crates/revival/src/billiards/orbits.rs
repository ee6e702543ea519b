use std::f64::consts::PI;

use crate::spectra::UnitSystem;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OrbitGeometry {
    Square {
        side: f64,
    },
    Rectangle {
        lx: f64,
        ly: f64,
    },
    EquilateralTriangle {
        side: f64,
    },
    Circle {
        radius: f64,
    },
    /// Orbits in an annulus that never touch the inner wall.
    AnnulusOuter {
        radius: f64,
        ratio: f64,
    },
    /// Orbits alternating between the outer and inner walls.
    AnnulusInner {
        radius: f64,
        ratio: f64,
    },
}

/// Closed classical orbit labeled (p, q).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedOrbit {
    pub p: u32,
    pub q: u32,
    pub path_length: f64,
    pub period: f64,
    /// Closest approach to the center (round billiards only).
    pub r_min: Option<f64>,
}

pub fn closed_orbit(geometry: OrbitGeometry, p: u32, q: u32, speed: f64) -> Result<ClosedOrbit> {
    if !(speed > 0.0) {
        return Err(Error::Domain(format!(
            "speed must be positive, got {speed}"
        )));
    }
    let (pf, qf) = (p as f64, q as f64);
    let (path_length, r_min) = match geometry {
        OrbitGeometry::Square { side } => {
            need_positive(p, q)?;
            (2.0 * side * pf.hypot(qf), None)
        }
        OrbitGeometry::Rectangle { lx, ly } => {
            need_positive(p, q)?;
            (2.0 * (pf * lx).hypot(qf * ly), None)
        }
        OrbitGeometry::EquilateralTriangle { side } => {
            if p == 0 && q == 0 {
                return Err(Error::Domain("triangle orbit needs (p, q) ≠ (0, 0)".into()));
            }
            (
                3f64.sqrt() * side * (pf * pf + pf * qf + qf * qf).sqrt(),
                None,
            )
        }
        OrbitGeometry::Circle { radius } => {
            need_round(p, q)?;
            let a = PI * qf / pf;
            (2.0 * pf * radius * a.sin(), Some(radius * a.cos()))
        }
        OrbitGeometry::AnnulusOuter { radius, ratio }
        | OrbitGeometry::AnnulusInner { radius, ratio } => {
            need_round(p, q)?;
            let c = (PI * qf / pf).cos();
            if ratio > c {
                return Err(Error::Domain(format!(
                    "orbit ({p}, {q}) not supported: inner ratio {ratio} exceeds cos(πq/p) = {c}"
                )));
            }
            if matches!(geometry, OrbitGeometry::AnnulusOuter { .. }) {
                (2.0 * pf * radius * (PI * qf / pf).sin(), Some(radius * c))
            } else {
                (
                    2.0 * pf * radius * (1.0 + ratio * ratio - 2.0 * ratio * c).sqrt(),
                    Some(ratio * radius),
                )
            }
        }
    };
    Ok(ClosedOrbit {
        p,
        q,
        path_length,
        period: path_length / speed,
        r_min,
    })
}

fn need_positive(p: u32, q: u32) -> Result<()> {
    if p == 0 || q == 0 {
        return Err(Error::Domain(format!(
            "orbit indices must be ≥ 1, got ({p}, {q})"
        )));
    }
    Ok(())
}

fn need_round(p: u32, q: u32) -> Result<()> {
    if q == 0 || p < 2 * q {
        return Err(Error::Domain(format!(
            "round-billiard orbits need q ≥ 1 and p ≥ 2q, got ({p}, {q})"
        )));
    }
    Ok(())
}

/// Continuous quantum numbers whose classical periods beat as p:q for a
/// particle of speed v0: (n_x, n_y) for boxes, (m, n) for the triangle.
pub fn commensurate_indices(
    geometry: OrbitGeometry,
    p: u32,
    q: u32,
    speed: f64,
    units: UnitSystem,
) -> Result<(f64, f64)> {
    let orbit = closed_orbit(geometry, p, q, speed)?;
    let (pf, qf) = (p as f64, q as f64);
    let mu = units.mass;
    let h = units.hbar;
    match geometry {
        OrbitGeometry::Square { side: lx } => {
            Ok(box_indices(lx, lx, pf, qf, speed, orbit.path_length, mu, h))
        }
        OrbitGeometry::Rectangle { lx, ly } => {
            Ok(box_indices(lx, ly, pf, qf, speed, orbit.path_length, mu, h))
        }
        OrbitGeometry::EquilateralTriangle { side } => {
            let c = 3f64.sqrt() * mu * speed * side / (4.0 * PI * h);
            let s = (pf * pf + pf * qf + qf * qf).sqrt();
            Ok((c * (2.0 * qf + pf) / s, c * (2.0 * pf + qf) / s))
        }
        _ => Err(Error::Domain(
            "commensurate indices are defined for boxes and the triangle".into(),
        )),
    }
}

#[allow(clippy::too_many_arguments)]
fn box_indices(
    lx: f64,
    ly: f64,
    p: f64,
    q: f64,
    v0: f64,
    length: f64,
    mu: f64,
    h: f64,
) -> (f64, f64) {
    // velocity components covering 2pLx and 2qLy in one period
    let (vx, vy) = (2.0 * p * lx * v0 / length, 2.0 * q * ly * v0 / length);
    (mu * lx * vx / (h * PI), mu * ly * vy / (h * PI))
}

/// T_rev,x/T_rev,y = Lx²/Ly² as a reduced fraction when within 1e-9 of
/// one with denominator ≤ 1000.
pub fn rectangle_revival_ratio(lx: f64, ly: f64) -> Option<(u64, u64)> {
    let x = (lx / ly).powi(2);
    let (mut h0, mut h1) = (0u64, 1u64);
    let (mut k0, mut k1) = (1u64, 0u64);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a > 1e12 {
            break;
        }
        let a = a as u64;
        let h2 = a.checked_mul(h1)?.checked_add(h0)?;
        let k2 = a.checked_mul(k1)?.checked_add(k0)?;
        if k2 > 1000 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if (x - h1 as f64 / k1 as f64).abs() < 1e-9 {
            return Some((h1, k1));
        }
        let frac = r - r.floor();
        if frac == 0.0 {
            break;
        }
        r = 1.0 / frac;
    }
    None
}
