//! Two-dimensional billiards: level tables, revival times, closed orbits
//! and autocorrelation over two quantum numbers.

mod orbits;

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::dynamics::{unit_phase, TimeSeries};
use crate::packets::{CoefficientSet2D, Mode2D};
use crate::specfun::{bessel_j, bessel_zero, bessel_zero_seed, cylinder_pair};
use crate::spectra::UnitSystem;
use crate::{Error, Result};

pub use orbits::{
    closed_orbit, commensurate_indices, rectangle_revival_ratio, ClosedOrbit, OrbitGeometry,
};

/// Parity label of a billiard eigenstate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symmetry {
    /// Odd under x → −x (triangle w⁻; antisymmetric fold states).
    Odd,
    /// Even under x → −x (triangle w⁺).
    Even,
    /// The non-degenerate triangle state m = 2n.
    Special,
    /// No label needed (square, circle, annulus).
    None,
}

impl Symmetry {
    pub fn label(self) -> &'static str {
        match self {
            Symmetry::Odd => "-",
            Symmetry::Even => "+",
            Symmetry::Special => "o",
            Symmetry::None => "",
        }
    }
}

/// How circular-billiard levels are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CircleLevels {
    /// Asymptotic zero expansion.
    Wkb,
    /// Newton-refined Bessel zeros.
    Refined,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Geometry {
    Square {
        side: f64,
    },
    Rectangle {
        lx: f64,
        ly: f64,
    },
    /// Square folded along its diagonal (n_x < n_y antisymmetric states).
    IsoscelesFold {
        side: f64,
    },
    /// Vertices (0,0), (±L/2, √3L/2).
    EquilateralTriangle {
        side: f64,
    },
    /// 30-60-90 half of the equilateral triangle (w⁻ states).
    HalfTriangle {
        side: f64,
    },
    Circle {
        radius: f64,
        levels: CircleLevels,
    },
    /// Half disk (sin mθ states).
    HalfCircle {
        radius: f64,
        levels: CircleLevels,
    },
    /// Inner radius f·R.
    Annulus {
        radius: f64,
        ratio: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level2D {
    pub mode: Mode2D,
    pub energy: f64,
}

/// Level table of a two-dimensional billiard, ordered by (q1, q2, symmetry).
#[derive(Debug, Clone)]
pub struct Spectrum2D {
    pub geometry: Geometry,
    pub units: UnitSystem,
    levels: Vec<Level2D>,
    lookup: BTreeMap<Mode2D, usize>,
}

fn positive(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(Error::Domain(format!(
            "{name} must be finite and positive, got {v}"
        )));
    }
    Ok(())
}

impl Spectrum2D {
    fn from_levels(geometry: Geometry, units: UnitSystem, mut levels: Vec<Level2D>) -> Self {
        levels.sort_by_key(|l| l.mode);
        let lookup = levels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.mode, i))
            .collect();
        Self {
            geometry,
            units,
            levels,
            lookup,
        }
    }

    /// n_x, n_y = 1..=cap.
    pub fn square(side: f64, cap: u32, units: UnitSystem) -> Result<Self> {
        positive("side", side)?;
        let mut s = Self::rectangle(side, side, cap, units)?;
        s.geometry = Geometry::Square { side };
        Ok(s)
    }

    pub fn rectangle(lx: f64, ly: f64, cap: u32, units: UnitSystem) -> Result<Self> {
        positive("lx", lx)?;
        positive("ly", ly)?;
        let mut levels = Vec::new();
        for nx in 1..=cap as i64 {
            for ny in 1..=cap as i64 {
                levels.push(Level2D {
                    mode: Mode2D::new(nx, ny, Symmetry::None),
                    energy: box_energy(nx, ny, lx, ly, units),
                });
            }
        }
        Ok(Self::from_levels(
            Geometry::Rectangle { lx, ly },
            units,
            levels,
        ))
    }

    pub fn isosceles_fold(side: f64, cap: u32, units: UnitSystem) -> Result<Self> {
        positive("side", side)?;
        let mut levels = Vec::new();
        for nx in 1..=cap as i64 {
            for ny in nx + 1..=cap as i64 {
                levels.push(Level2D {
                    mode: Mode2D::new(nx, ny, Symmetry::Odd),
                    energy: box_energy(nx, ny, side, side, units),
                });
            }
        }
        Ok(Self::from_levels(
            Geometry::IsoscelesFold { side },
            units,
            levels,
        ))
    }

    /// States with m ≤ cap.
    pub fn equilateral_triangle(side: f64, cap: u32, units: UnitSystem) -> Result<Self> {
        positive("side", side)?;
        let levels = triangle_states(cap)
            .into_iter()
            .map(|(m, n, sym)| Level2D {
                mode: Mode2D::new(m as i64, n as i64, sym),
                energy: triangle_energy(m, n, side, units),
            })
            .collect();
        Ok(Self::from_levels(
            Geometry::EquilateralTriangle { side },
            units,
            levels,
        ))
    }

    pub fn half_triangle(side: f64, cap: u32, units: UnitSystem) -> Result<Self> {
        positive("side", side)?;
        let levels = triangle_states(cap)
            .into_iter()
            .filter(|s| s.2 == Symmetry::Odd)
            .map(|(m, n, sym)| Level2D {
                mode: Mode2D::new(m as i64, n as i64, sym),
                energy: triangle_energy(m, n, side, units),
            })
            .collect();
        Ok(Self::from_levels(
            Geometry::HalfTriangle { side },
            units,
            levels,
        ))
    }

    pub fn half_circle(
        radius: f64,
        m_cap: u32,
        nr_cap: u32,
        mode: CircleLevels,
        units: UnitSystem,
    ) -> Result<Self> {
        let full = circular_spectrum(radius, m_cap, nr_cap, mode, units)?;
        let levels = full
            .levels
            .iter()
            .filter(|l| l.mode.q1 > 0)
            .map(|l| Level2D {
                mode: Mode2D::new(l.mode.q1, l.mode.q2, Symmetry::Odd),
                energy: l.energy,
            })
            .collect();
        Ok(Self::from_levels(
            Geometry::HalfCircle {
                radius,
                levels: mode,
            },
            units,
            levels,
        ))
    }

    pub fn levels(&self) -> &[Level2D] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn energy(&self, mode: Mode2D) -> Result<f64> {
        self.lookup
            .get(&mode)
            .map(|&i| self.levels[i].energy)
            .ok_or_else(|| {
                Error::Index(format!(
                    "mode ({}, {}, {:?}) not in the level table",
                    mode.q1, mode.q2, mode.symmetry
                ))
            })
    }

    fn energy_at(&self, q1: i64, q2: i64) -> Result<f64> {
        let sym = self
            .levels
            .first()
            .map_or(Symmetry::None, |l| l.mode.symmetry);
        self.energy(Mode2D::new(q1, q2, sym))
    }
}

fn box_energy(nx: i64, ny: i64, lx: f64, ly: f64, u: UnitSystem) -> f64 {
    let c = u.hbar * u.hbar * PI * PI / (2.0 * u.mass);
    c * ((nx * nx) as f64 / (lx * lx) + (ny * ny) as f64 / (ly * ly))
}

/// (m, n, symmetry) for n ≥ 1, 2n ≤ m ≤ cap: two states for m > 2n, one for m = 2n.
pub fn triangle_states(cap: u32) -> Vec<(u32, u32, Symmetry)> {
    let mut out = Vec::new();
    for m in 2..=cap {
        for n in 1..=m / 2 {
            if m == 2 * n {
                out.push((m, n, Symmetry::Special));
            } else {
                out.push((m, n, Symmetry::Odd));
                out.push((m, n, Symmetry::Even));
            }
        }
    }
    out
}

/// E = (ħ²/2μL²)(4π/3)²(m² + n² − mn).
pub fn triangle_energy(m: u32, n: u32, side: f64, u: UnitSystem) -> f64 {
    let (m, n) = (m as f64, n as f64);
    u.hbar * u.hbar / (2.0 * u.mass * side * side)
        * (4.0 * PI / 3.0).powi(2)
        * (m * m + n * n - m * n)
}

/// Normalized triangle eigenfunction at (x, y); zero outside the triangle.
pub fn triangle_eigenfunction(
    m: u32,
    n: u32,
    symmetry: Symmetry,
    side: f64,
    x: f64,
    y: f64,
) -> Result<f64> {
    let valid = match symmetry {
        Symmetry::Special => m == 2 * n && n >= 1,
        Symmetry::Odd | Symmetry::Even => n >= 1 && m > 2 * n,
        Symmetry::None => false,
    };
    if !valid {
        return Err(Error::Index(format!(
            "no triangle state ({m}, {n}, {symmetry:?})"
        )));
    }
    let s3 = 3f64.sqrt();
    if y < s3 * x.abs() || y > s3 * side / 2.0 {
        return Ok(0.0);
    }
    let (mf, nf) = (m as f64, n as f64);
    let kx = 2.0 * PI / (3.0 * side);
    let ky = 2.0 * PI / (s3 * side);
    let pair = (16.0 / (3.0 * s3 * side * side)).sqrt();
    Ok(match symmetry {
        Symmetry::Odd => {
            pair * ((kx * (2.0 * mf - nf) * x).sin() * (ky * nf * y).sin()
                - (kx * (2.0 * nf - mf) * x).sin() * (ky * mf * y).sin()
                - (kx * (mf + nf) * x).sin() * (ky * (mf - nf) * y).sin())
        }
        Symmetry::Even => {
            pair * ((kx * (2.0 * mf - nf) * x).cos() * (ky * nf * y).sin()
                - (kx * (2.0 * nf - mf) * x).cos() * (ky * mf * y).sin()
                + (kx * (mf + nf) * x).cos() * (ky * (mf - nf) * y).sin())
        }
        _ => {
            let special = (8.0 / (3.0 * s3 * side * side)).sqrt();
            special
                * (2.0 * (2.0 * PI * nf * x / side).cos() * (ky * nf * y).sin()
                    - (2.0 * ky * nf * y).sin())
        }
    })
}

/// Radial normalization N with ∫₀ᴿ (N J_m(z r/R))² r dr = 1.
pub fn circular_mode_norm(order: u32, zero: f64, radius: f64) -> Result<f64> {
    let jp = bessel_j(order + 1, zero)?;
    Ok((2.0 / (radius * radius * jp * jp)).sqrt())
}

/// Normalized J_|m|(z r/R) e^{imθ}/√(2π) at polar (r, θ).
pub fn circular_eigenfunction(
    m: i64,
    n_r: u32,
    radius: f64,
    r: f64,
    theta: f64,
) -> Result<Complex64> {
    let am = m.unsigned_abs() as u32;
    let z = bessel_zero(am, n_r)?.value;
    if r > radius {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let radial = circular_mode_norm(am, z, radius)? * bessel_j(am, z * r / radius)?;
    Ok(Complex64::from_polar(
        radial / (2.0 * PI).sqrt(),
        m as f64 * theta,
    ))
}

/// Levels E = ħ²z²/2μR² for |m| ≤ m_cap, n_r ≤ nr_cap.
pub fn circular_spectrum(
    radius: f64,
    m_cap: u32,
    nr_cap: u32,
    mode: CircleLevels,
    units: UnitSystem,
) -> Result<Spectrum2D> {
    positive("radius", radius)?;
    let scale = units.hbar * units.hbar / (2.0 * units.mass * radius * radius);
    let channels: Vec<Vec<Level2D>> = (0..=m_cap)
        .into_par_iter()
        .map(|am| {
            let mut out = Vec::new();
            for nr in 0..=nr_cap {
                let z = match mode {
                    CircleLevels::Wkb => bessel_zero_seed(am, nr),
                    CircleLevels::Refined => bessel_zero(am, nr)?.value,
                };
                let e = scale * z * z;
                out.push(Level2D {
                    mode: Mode2D::new(am as i64, nr as i64, Symmetry::None),
                    energy: e,
                });
                if am > 0 {
                    out.push(Level2D {
                        mode: Mode2D::new(-(am as i64), nr as i64, Symmetry::None),
                        energy: e,
                    });
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(Spectrum2D::from_levels(
        Geometry::Circle {
            radius,
            levels: mode,
        },
        units,
        channels.into_iter().flatten().collect(),
    ))
}

/// Cross-product condition J_m(kR)Y_m(kfR) − J_m(kfR)Y_m(kR), with each
/// (J, Y) pair scaled to unit modulus.
pub fn annulus_condition(order: u32, k: f64, radius: f64, ratio: f64) -> Result<f64> {
    let (jo, yo) = cylinder_pair(order, k * radius)?;
    let (ji, yi) = cylinder_pair(order, k * ratio * radius)?;
    Ok(jo * yi - ji * yo)
}

/// Wavenumbers k_{m,n_r} of the annulus R·f < r < R by scan and bisection.
pub fn annulus_wavenumbers(radius: f64, ratio: f64, order: u32, count: u32) -> Result<Vec<f64>> {
    positive("radius", radius)?;
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(Error::Domain(format!(
            "annulus ratio must lie in (0, 1), got {ratio}"
        )));
    }
    let step = PI / (radius * (1.0 - ratio)) / 16.0;
    let mut roots = Vec::with_capacity(count as usize);
    let mut k = step;
    let mut g = annulus_condition(order, k, radius, ratio)?;
    while roots.len() < count as usize {
        let k_next = k + step;
        if k_next * radius > crate::specfun::BESSEL_MAX_ARG {
            return Err(Error::Root(format!(
                "annulus scan for order {order} left the Bessel range after {} roots",
                roots.len()
            )));
        }
        let g_next = annulus_condition(order, k_next, radius, ratio)?;
        if g_next == 0.0 {
            roots.push(k_next);
        } else if g.signum() != g_next.signum() && g != 0.0 {
            roots.push(bisect(
                |x| annulus_condition(order, x, radius, ratio),
                k,
                k_next,
                g,
            )?);
        }
        k = k_next;
        g = g_next;
    }
    Ok(roots)
}

fn bisect(f: impl Fn(f64) -> Result<f64>, mut lo: f64, mut hi: f64, mut flo: f64) -> Result<f64> {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Annulus levels E = ħ²k²/2μ for |m| ≤ m_cap, n_r ≤ nr_cap.
pub fn annulus_levels(
    radius: f64,
    ratio: f64,
    m_cap: u32,
    nr_cap: u32,
    units: UnitSystem,
) -> Result<Spectrum2D> {
    let scale = units.hbar * units.hbar / (2.0 * units.mass);
    let channels: Vec<Vec<Level2D>> = (0..=m_cap)
        .into_par_iter()
        .map(|am| {
            let ks = annulus_wavenumbers(radius, ratio, am, nr_cap + 1)?;
            let mut out = Vec::new();
            for (nr, k) in ks.into_iter().enumerate() {
                let e = scale * k * k;
                out.push(Level2D {
                    mode: Mode2D::new(am as i64, nr as i64, Symmetry::None),
                    energy: e,
                });
                if am > 0 {
                    out.push(Level2D {
                        mode: Mode2D::new(-(am as i64), nr as i64, Symmetry::None),
                        energy: e,
                    });
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(Spectrum2D::from_levels(
        Geometry::Annulus { radius, ratio },
        units,
        channels.into_iter().flatten().collect(),
    ))
}

/// Revival times from the second derivatives of E(q1, q2); +∞ where a derivative vanishes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RevivalTimes2D {
    pub t_rev_1: f64,
    pub t_rev_2: f64,
    pub t_rev_cross: f64,
}

fn from_second_derivatives(d11: f64, d22: f64, d12: f64, hbar: f64) -> RevivalTimes2D {
    let h = 2.0 * PI * hbar;
    let t = |d: f64, f: f64| {
        if d == 0.0 {
            f64::INFINITY
        } else {
            h / (d.abs() / f)
        }
    };
    RevivalTimes2D {
        t_rev_1: t(d11, 2.0),
        t_rev_2: t(d22, 2.0),
        t_rev_cross: t(d12, 1.0),
    }
}

/// Revival times at `center`; the circle reports (4T₀, 2π²T₀, 2T₀), T₀ = 2μR²/ħπ,
/// from the radial quadratic form whose linear term doubles the radial period.
pub fn revival_times_2d(s: &Spectrum2D, center: (f64, f64)) -> Result<RevivalTimes2D> {
    let u = s.units;
    let c = u.hbar * u.hbar * PI * PI / (2.0 * u.mass);
    Ok(match s.geometry {
        Geometry::Square { side: lx } | Geometry::IsoscelesFold { side: lx } => {
            from_second_derivatives(2.0 * c / (lx * lx), 2.0 * c / (lx * lx), 0.0, u.hbar)
        }
        Geometry::Rectangle { lx, ly } => {
            from_second_derivatives(2.0 * c / (lx * lx), 2.0 * c / (ly * ly), 0.0, u.hbar)
        }
        Geometry::EquilateralTriangle { side } | Geometry::HalfTriangle { side } => {
            let k = u.hbar * u.hbar / (2.0 * u.mass * side * side) * (4.0 * PI / 3.0).powi(2);
            from_second_derivatives(2.0 * k, 2.0 * k, -k, u.hbar)
        }
        Geometry::Circle { radius, .. } | Geometry::HalfCircle { radius, .. } => {
            let t0 = 2.0 * u.mass * radius * radius / (u.hbar * PI);
            RevivalTimes2D {
                t_rev_1: 4.0 * t0,
                t_rev_2: 2.0 * PI * PI * t0,
                t_rev_cross: 2.0 * t0,
            }
        }
        Geometry::Annulus { .. } => {
            let (m, n) = (center.0.round().abs() as i64, center.1.round() as i64);
            if m < 1 || n < 1 {
                return Err(Error::Index(format!(
                    "center ({m}, {n}) needs neighbours on both sides"
                )));
            }
            let e = |a: i64, b: i64| s.energy_at(a, b);
            let d11 = e(m + 1, n)? - 2.0 * e(m, n)? + e(m - 1, n)?;
            let d22 = e(m, n + 1)? - 2.0 * e(m, n)? + e(m, n - 1)?;
            let d12 =
                (e(m + 1, n + 1)? - e(m + 1, n - 1)? - e(m - 1, n + 1)? + e(m - 1, n - 1)?) / 4.0;
            from_second_derivatives(d11, d22, d12, u.hbar)
        }
    })
}

/// A(t) = Σ |a|² e^{+iEt/ħ} over the retained two-dimensional modes.
pub fn autocorrelation_2d(
    c: &CoefficientSet2D,
    s: &Spectrum2D,
    t_grid: &[f64],
) -> Result<TimeSeries> {
    let h = 2.0 * PI * s.units.hbar;
    let weights: Vec<(f64, f64)> = c
        .iter()
        .map(|(mode, a)| Ok((a.norm_sqr(), s.energy(mode)? / h)))
        .collect::<Result<_>>()?;
    let series = TimeSeries::new(
        t_grid.to_vec(),
        vec![Complex64::new(0.0, 0.0); t_grid.len()],
    )?;
    let values = t_grid
        .par_iter()
        .map(|&t| weights.iter().map(|&(w, nu)| unit_phase(nu, t) * w).sum())
        .collect();
    Ok(TimeSeries { values, ..series })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::GaussLegendre;

    fn units() -> UnitSystem {
        UnitSystem::default()
    }

    #[test]
    fn triangle_walls_and_normalization() {
        let side = 1.0;
        let s3 = 3f64.sqrt();
        let rule = GaussLegendre::new(80);
        for (m, n, sym) in triangle_states(9) {
            for k in 0..=20 {
                let x = 0.5 * side * k as f64 / 20.0;
                let slant = s3 * x * (1.0 + 1e-14);
                let top = s3 * side / 2.0 * (1.0 - 1e-15);
                for (px, py) in [(x, slant), (-x, slant), (x - 0.5 * side, top)] {
                    let w = triangle_eigenfunction(m, n, sym, side, px, py).unwrap();
                    assert!(w.abs() < 1e-10, "({m},{n},{sym:?}) at ({px},{py}): {w}");
                }
            }
            // ∫∫ w² over the triangle, x from −y/√3 to y/√3
            let norm = rule.integrate(
                |y| {
                    let half = y / s3;
                    rule.integrate(
                        |x| {
                            triangle_eigenfunction(m, n, sym, side, x, y)
                                .unwrap()
                                .powi(2)
                        },
                        -half,
                        half,
                    )
                },
                0.0,
                s3 * side / 2.0,
            );
            assert!((norm - 1.0).abs() < 1e-10, "({m},{n},{sym:?}) norm {norm}");
        }
    }

    #[test]
    fn triangle_eigenvalue_by_stencil() {
        let side = 1.0;
        let h = side / 400.0;
        let u = units();
        let s3 = 3f64.sqrt();
        for (m, n, sym) in [
            (12, 5, Symmetry::Odd),
            (12, 5, Symmetry::Even),
            (3, 1, Symmetry::Even),
            (8, 4, Symmetry::Special),
        ] {
            let e = triangle_energy(m, n, side, u);
            let w = |x: f64, y: f64| triangle_eigenfunction(m, n, sym, side, x, y).unwrap();
            let mut worst = 0.0f64;
            let mut peak = 0.0f64;
            for i in 4..38 {
                for j in -20..=20 {
                    let y = s3 * side / 2.0 * i as f64 / 40.0;
                    // stay two stencil widths inside the slanted walls
                    let x = (y / s3 - 4.0 * h) * j as f64 / 20.0;
                    let lap = (w(x + h, y) + w(x - h, y) + w(x, y + h) + w(x, y - h)
                        - 4.0 * w(x, y))
                        / (h * h);
                    let kinetic = -u.hbar * u.hbar / (2.0 * u.mass) * lap;
                    worst = worst.max((kinetic - e * w(x, y)).abs());
                    peak = peak.max((e * w(x, y)).abs());
                }
            }
            assert!(worst < 0.01 * peak, "({m},{n}) residual {worst} vs {peak}");
        }
    }

    #[test]
    fn triangle_degeneracy_counts() {
        let states = triangle_states(30);
        for m in 2..=30u32 {
            for n in 1..=m / 2 {
                let count = states.iter().filter(|s| s.0 == m && s.1 == n).count();
                assert_eq!(count, if m == 2 * n { 1 } else { 2 });
            }
        }
    }

    #[test]
    fn revival_times_match_closed_forms() {
        let u = units();
        let sq = Spectrum2D::square(1.0, 4, u).unwrap();
        let t = revival_times_2d(&sq, (2.0, 2.0)).unwrap();
        let expect = 4.0 * u.mass / (u.hbar * PI);
        assert!((t.t_rev_1 - expect).abs() < 1e-14 && (t.t_rev_2 - expect).abs() < 1e-14);
        assert!(t.t_rev_cross.is_infinite());
        let tri = Spectrum2D::equilateral_triangle(1.0, 6, u).unwrap();
        let t = revival_times_2d(&tri, (4.0, 1.0)).unwrap();
        let expect = 9.0 * u.mass / (4.0 * u.hbar * PI);
        for v in [t.t_rev_1, t.t_rev_2, t.t_rev_cross] {
            assert!((v - expect).abs() < 1e-13, "{v} vs {expect}");
        }
        let circ = circular_spectrum(1.0, 2, 2, CircleLevels::Wkb, u).unwrap();
        let t = revival_times_2d(&circ, (0.0, 1.0)).unwrap();
        let t0 = 2.0 * u.mass / (u.hbar * PI);
        assert!((t.t_rev_1 - 4.0 * t0).abs() < 1e-14);
        assert!((t.t_rev_2 / t.t_rev_1 - PI * PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn wkb_circle_levels_track_refined_zeros() {
        for nr in 10..40 {
            let w = bessel_zero_seed(0, nr);
            let r = bessel_zero(0, nr).unwrap().value;
            assert!((w - r).abs() < 1e-3, "n_r = {nr}: {w} vs {r}");
        }
    }

    #[test]
    fn circular_modes_are_normalized() {
        let rule = GaussLegendre::new(200);
        for (m, nr) in [(0u32, 0u32), (3, 5), (17, 2), (40, 60)] {
            let z = bessel_zero(m, nr).unwrap().value;
            let n = circular_mode_norm(m, z, 1.0).unwrap();
            let norm = rule.integrate(|r| (n * bessel_j(m, z * r).unwrap()).powi(2) * r, 0.0, 1.0);
            assert!((norm - 1.0).abs() < 1e-10, "({m},{nr}) {norm}");
        }
    }

    #[test]
    fn annulus_roots_satisfy_condition() {
        for m in [0u32, 1, 5] {
            let ks = annulus_wavenumbers(1.0, 0.3, m, 8).unwrap();
            for k in ks {
                assert!(annulus_condition(m, k, 1.0, 0.3).unwrap().abs() < 1e-10);
            }
        }
    }

    #[test]
    fn thin_annulus_spacing_approaches_well() {
        let f = 0.9;
        let ks = annulus_wavenumbers(1.0, f, 0, 3).unwrap();
        let well = PI / (1.0 - f);
        assert!(((ks[1] - ks[0]) / well - 1.0).abs() < 0.05);
    }

    #[test]
    fn small_hole_approaches_disk() {
        for m in [1u32, 2, 4] {
            let ks = annulus_wavenumbers(1.0, 1e-3, m, 3).unwrap();
            for (nr, k) in ks.iter().enumerate() {
                let z = bessel_zero(m, nr as u32).unwrap().value;
                assert!((k / z - 1.0).abs() < 1e-2, "m={m} n_r={nr}: {k} vs {z}");
            }
        }
        // m = 0 converges only logarithmically in f; check the approach is monotone
        let z = bessel_zero(0, 0).unwrap().value;
        let gaps: Vec<f64> = [1e-1, 1e-2, 1e-3, 1e-4]
            .iter()
            .map(|&f| annulus_wavenumbers(1.0, f, 0, 1).unwrap()[0] - z)
            .collect();
        assert!(
            gaps.windows(2).all(|w| w[1] < w[0] && w[1] > 0.0),
            "{gaps:?}"
        );
    }

    #[test]
    fn separable_square_factorizes() {
        use crate::dynamics::autocorrelation;
        use crate::packets::{infinite_well_coefficients, PacketParams1D};
        use crate::spectra::Spectrum1D;
        let u = units();
        let px = PacketParams1D::from_spread(0.4, 30.0 * PI, 0.05, u).unwrap();
        let py = PacketParams1D::from_spread(0.55, -20.0 * PI, 0.05, u).unwrap();
        let cx = infinite_well_coefficients(&px, 80).unwrap();
        let cy = infinite_well_coefficients(&py, 80).unwrap();
        let mut modes = Vec::new();
        let mut coeffs = Vec::new();
        for (nx, ax) in cx.iter() {
            for (ny, ay) in cy.iter() {
                modes.push(Mode2D::new(nx, ny, Symmetry::None));
                coeffs.push(ax * ay);
            }
        }
        let c2 = CoefficientSet2D::new(modes, coeffs);
        let sq = Spectrum2D::square(1.0, 80, u).unwrap();
        let grid: Vec<f64> = (0..50).map(|i| 0.003 * i as f64).collect();
        let a2 = autocorrelation_2d(&c2, &sq, &grid).unwrap();
        let s1 = Spectrum1D::infinite_well(u);
        let ax = autocorrelation(&cx, &s1, &grid).unwrap();
        let ay = autocorrelation(&cy, &s1, &grid).unwrap();
        for i in 0..grid.len() {
            assert!((a2.values[i] - ax.values[i] * ay.values[i]).norm() < 1e-10);
        }
    }
}
