//! Expansion coefficients of localized packets in the eigenbases used
//! throughout the crate.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::billiards::{circular_mode_norm, triangle_states, Symmetry};
use crate::specfun::{bessel_j, bessel_zero, GaussLegendre};
use crate::spectra::UnitSystem;
use crate::wavefields::BouncerBasis;
use crate::{Error, Result};

/// Coefficients below this fraction of the peak modulus are dropped at the ends.
pub const TRIM_RELATIVE: f64 = 1e-9;

/// Gaussian packet (b√π)^(-1/2) exp(−(x−x0)²/2b² + ip0(x−x0)/ħ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PacketParams1D {
    pub x0: f64,
    pub p0: f64,
    pub width_b: f64,
    pub units: UnitSystem,
}

impl PacketParams1D {
    pub fn new(x0: f64, p0: f64, width_b: f64, units: UnitSystem) -> Result<Self> {
        if !(width_b > 0.0) || !width_b.is_finite() {
            return Err(Error::Domain(format!(
                "packet width must be positive, got {width_b}"
            )));
        }
        Ok(Self {
            x0,
            p0,
            width_b,
            units,
        })
    }

    /// Build from the position spread Δx0 = b/√2.
    pub fn from_spread(x0: f64, p0: f64, delta_x0: f64, units: UnitSystem) -> Result<Self> {
        Self::new(x0, p0, delta_x0 * 2f64.sqrt(), units)
    }

    pub fn delta_x0(&self) -> f64 {
        self.width_b / 2f64.sqrt()
    }

    pub fn delta_p0(&self) -> f64 {
        self.units.hbar / (self.width_b * 2f64.sqrt())
    }

    /// ⟨E⟩ = (p0² + ħ²/2b²)/2m for a free Gaussian.
    pub fn mean_kinetic_energy(&self) -> f64 {
        let h = self.units.hbar;
        (self.p0 * self.p0 + h * h / (2.0 * self.width_b * self.width_b)) / (2.0 * self.units.mass)
    }

    pub fn value(&self, x: f64) -> Complex64 {
        let d = x - self.x0;
        let b = self.width_b;
        let amp = (b * PI.sqrt()).powf(-0.5) * (-d * d / (2.0 * b * b)).exp();
        Complex64::from_polar(amp, self.p0 * d / self.units.hbar)
    }

    /// ∫ e^{ikx} ψ(x) dx over the whole line.
    pub fn plane_wave_overlap(&self, k: f64) -> Complex64 {
        let b = self.width_b;
        let q = self.p0 / self.units.hbar + k;
        let amp = (b * PI.sqrt()).powf(-0.5) * b * (2.0 * PI).sqrt() * (-0.5 * b * b * q * q).exp();
        Complex64::from_polar(amp, k * self.x0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CoefficientWarning {
    /// Window cut by the lowest admissible index.
    Truncated { deficit: f64 },
    /// Basis too small for the requested accuracy.
    BasisSize { deficit: f64 },
    /// Closed-form overlaps sum above one (Gaussian tails beyond the walls).
    Leakage { excess: f64 },
}

/// Coefficients a_n for n = index_lo, index_lo + 1, ...
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSet {
    pub index_lo: i64,
    pub coefficients: Vec<Complex64>,
    pub norm_deficit: f64,
    pub warnings: Vec<CoefficientWarning>,
}

impl CoefficientSet {
    /// Trim negligible ends and record the norm deficit.
    pub fn from_dense(index_lo: i64, coefficients: Vec<Complex64>) -> Self {
        let peak = coefficients.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let keep = |c: &Complex64| c.norm() >= TRIM_RELATIVE * peak && peak > 0.0;
        let first = coefficients.iter().position(keep).unwrap_or(0);
        let last = coefficients.iter().rposition(keep).map_or(0, |i| i + 1);
        let kept: Vec<Complex64> = if last > first {
            coefficients[first..last].to_vec()
        } else {
            Vec::new()
        };
        let total: f64 = kept.iter().map(|c| c.norm_sqr()).sum();
        let mut warnings = Vec::new();
        if total > 1.0 + 1e-12 {
            warnings.push(CoefficientWarning::Leakage {
                excess: total - 1.0,
            });
        }
        Self {
            index_lo: index_lo + first as i64,
            coefficients: kept,
            norm_deficit: (1.0 - total).max(0.0),
            warnings,
        }
    }

    /// A single eigenstate.
    pub fn eigenstate(n: i64) -> Self {
        Self {
            index_lo: n,
            coefficients: vec![Complex64::new(1.0, 0.0)],
            norm_deficit: 0.0,
            warnings: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn index_hi(&self) -> i64 {
        self.index_lo + self.coefficients.len() as i64 - 1
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coefficients
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.index_lo + i as i64, *c))
    }

    pub fn get(&self, n: i64) -> Complex64 {
        let i = n - self.index_lo;
        if i < 0 || i as usize >= self.coefficients.len() {
            Complex64::new(0.0, 0.0)
        } else {
            self.coefficients[i as usize]
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coefficients.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Σ|a_n|² n and the spread in n.
    pub fn mean_and_spread(&self) -> (f64, f64) {
        let w = self.norm_sqr();
        let m = self
            .iter()
            .map(|(n, c)| c.norm_sqr() * n as f64)
            .sum::<f64>()
            / w;
        let v = self
            .iter()
            .map(|(n, c)| c.norm_sqr() * (n as f64 - m).powi(2))
            .sum::<f64>()
            / w;
        (m, v.sqrt())
    }
}

/// Real Gaussian weights a_n ∝ exp(−(n−n0)²/4Δn²) over n ≥ 0, normalized on
/// the full integer lattice so that the deficit counts only what was cut.
pub fn gaussian_model_coefficients(n0: f64, delta_n: f64, cutoff: f64) -> Result<CoefficientSet> {
    if !(n0 > 0.0) || !(delta_n > 0.0) || !(cutoff > 0.0 && cutoff < 1.0) {
        return Err(Error::Domain(format!(
            "gaussian model needs n0 > 0, delta_n > 0, 0 < cutoff < 1 (got {n0}, {delta_n}, {cutoff})"
        )));
    }
    let weight = |n: f64| (-(n - n0).powi(2) / (2.0 * delta_n * delta_n)).exp();
    // lattice normalization: 1/(Δn√2π) up to exp(−2π²Δn²) corrections
    let wide = 2.0 * delta_n * 40f64.sqrt() + 2.0;
    let lattice: f64 = ((n0 - wide).floor() as i64..=(n0 + wide).ceil() as i64)
        .map(|n| weight(n as f64))
        .sum();
    let half = 2.0 * delta_n * (-cutoff.ln()).sqrt();
    let lo = ((n0 - half).ceil() as i64).max(0);
    let hi = (n0 + half).floor() as i64;
    let coefficients: Vec<Complex64> = (lo..=hi)
        .map(|n| Complex64::new((weight(n as f64) / lattice).sqrt(), 0.0))
        .collect();
    let total: f64 = coefficients.iter().map(|c| c.norm_sqr()).sum();
    let deficit = (1.0 - total).max(0.0);
    let mut warnings = Vec::new();
    if deficit > 1e-3 {
        warnings.push(CoefficientWarning::Truncated { deficit });
    }
    Ok(CoefficientSet {
        index_lo: lo,
        coefficients,
        norm_deficit: deficit,
        warnings,
    })
}

/// Coherent-state weights e^{−|α|²/2} α^n/√n! for n = 0..=n_cap.
pub fn coherent_coefficients(alpha: Complex64, n_cap: u32) -> CoefficientSet {
    let (r, theta) = alpha.to_polar();
    let dense: Vec<Complex64> = (0..=n_cap)
        .map(|n| {
            let nf = n as f64;
            let log_mag = if r == 0.0 {
                if n == 0 {
                    0.0
                } else {
                    f64::NEG_INFINITY
                }
            } else {
                -0.5 * r * r + nf * r.ln() - 0.5 * libm::lgamma(nf + 1.0)
            };
            Complex64::from_polar(log_mag.exp(), nf * theta)
        })
        .collect();
    let mut set = CoefficientSet::from_dense(0, dense);
    if set.norm_deficit > 1e-10 {
        set.warnings.push(CoefficientWarning::BasisSize {
            deficit: set.norm_deficit,
        });
    }
    set
}

/// Δn = L/(2π Δx0) for a packet in a well of width L.
pub fn delta_n_estimate(p: &PacketParams1D, length: f64) -> f64 {
    length / (p.delta_x0() * 2.0 * PI)
}

/// Central quantum number |p0| L/(πħ).
pub fn infinite_well_n0(p: &PacketParams1D, length: f64) -> f64 {
    p.p0.abs() * length / (PI * p.units.hbar)
}

/// n0 + 10Δn, at least 10Δn + 10.
pub fn default_n_max(p: &PacketParams1D, length: f64) -> u32 {
    let dn = delta_n_estimate(p, length);
    (infinite_well_n0(p, length) + 10.0 * dn)
        .ceil()
        .max(10.0 * dn + 10.0) as u32
}

fn check_containment_1d(p: &PacketParams1D, lo: f64, hi: f64) -> Result<()> {
    let margin = 3.0 * p.delta_x0();
    if p.x0 - lo < margin || hi - p.x0 < margin {
        return Err(Error::Containment(format!(
            "center {} must lie at least 3Δx0 = {margin} inside [{lo}, {hi}]",
            p.x0
        )));
    }
    Ok(())
}

/// Closed-form a_n = ∫ sqrt(2/L) sin(nπx/L) ψ(x) dx for n = 1..=n_max, the
/// Gaussian integrals taken over the whole line.
pub fn infinite_well_coefficients(p: &PacketParams1D, n_max: u32) -> Result<CoefficientSet> {
    let l = p.units.length;
    check_containment_1d(p, 0.0, l)?;
    let norm = (2.0 / l).sqrt();
    let dense: Vec<Complex64> = (1..=n_max)
        .map(|n| {
            let k = n as f64 * PI / l;
            (p.plane_wave_overlap(k) - p.plane_wave_overlap(-k)) * norm / Complex64::new(0.0, 2.0)
        })
        .collect();
    let mut set = CoefficientSet::from_dense(1, dense);
    if set.norm_deficit > 1e-4 {
        set.warnings.push(CoefficientWarning::BasisSize {
            deficit: set.norm_deficit,
        });
    }
    Ok(set)
}

/// Overlaps with the bouncer eigenfunctions by Gauss-Legendre quadrature
/// over z0 ± 12b (clipped at the floor).
pub fn bouncer_coefficients(p: &PacketParams1D, basis: &BouncerBasis) -> Result<CoefficientSet> {
    check_containment_1d(p, 0.0, f64::INFINITY)?;
    let lo = (p.x0 - 12.0 * p.width_b).max(0.0);
    let hi = p.x0 + 12.0 * p.width_b;
    let rule = GaussLegendre::new(256);
    let pts: Vec<(f64, f64, Complex64)> = rule
        .mapped(lo, hi)
        .map(|(z, w)| (z, w, p.value(z)))
        .collect();
    let dense: Vec<Complex64> = (0..=basis.n_max())
        .into_par_iter()
        .map(|n| {
            pts.iter()
                .map(|&(z, w, g)| g * (w * basis.eigenfunction(n, z)))
                .sum()
        })
        .collect();
    let mut set = CoefficientSet::from_dense(0, dense);
    if set.norm_deficit > 1e-4 {
        set.warnings.push(CoefficientWarning::BasisSize {
            deficit: set.norm_deficit,
        });
    }
    Ok(set)
}

/// Mode label of a two-dimensional eigenstate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mode2D {
    pub q1: i64,
    pub q2: i64,
    pub symmetry: Symmetry,
}

impl Mode2D {
    pub fn new(q1: i64, q2: i64, symmetry: Symmetry) -> Self {
        Self { q1, q2, symmetry }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSet2D {
    pub modes: Vec<Mode2D>,
    pub coefficients: Vec<Complex64>,
    pub norm_deficit: f64,
    pub warnings: Vec<CoefficientWarning>,
}

impl CoefficientSet2D {
    pub fn new(modes: Vec<Mode2D>, coefficients: Vec<Complex64>) -> Self {
        let total: f64 = coefficients.iter().map(|c| c.norm_sqr()).sum();
        let mut warnings = Vec::new();
        if total > 1.0 + 1e-12 {
            warnings.push(CoefficientWarning::Leakage {
                excess: total - 1.0,
            });
        }
        Self {
            modes,
            coefficients,
            norm_deficit: (1.0 - total).max(0.0),
            warnings,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (Mode2D, Complex64)> + '_ {
        self.modes
            .iter()
            .copied()
            .zip(self.coefficients.iter().copied())
    }

    pub fn get(&self, mode: Mode2D) -> Complex64 {
        self.modes
            .iter()
            .position(|m| *m == mode)
            .map_or(Complex64::new(0.0, 0.0), |i| self.coefficients[i])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coefficients.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }
}

/// Two-dimensional Gaussian packet, a product of two 1D forms of equal width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PacketParams2D {
    pub x0: f64,
    pub y0: f64,
    pub p0x: f64,
    pub p0y: f64,
    pub width_b: f64,
    pub units: UnitSystem,
}

impl PacketParams2D {
    pub fn new(
        x0: f64,
        y0: f64,
        p0x: f64,
        p0y: f64,
        width_b: f64,
        units: UnitSystem,
    ) -> Result<Self> {
        if !(width_b > 0.0) {
            return Err(Error::Domain(format!(
                "packet width must be positive, got {width_b}"
            )));
        }
        Ok(Self {
            x0,
            y0,
            p0x,
            p0y,
            width_b,
            units,
        })
    }

    pub fn delta_x0(&self) -> f64 {
        self.width_b / 2f64.sqrt()
    }

    fn axes(&self) -> (PacketParams1D, PacketParams1D) {
        let x = PacketParams1D {
            x0: self.x0,
            p0: self.p0x,
            width_b: self.width_b,
            units: self.units,
        };
        let y = PacketParams1D {
            x0: self.y0,
            p0: self.p0y,
            width_b: self.width_b,
            units: self.units,
        };
        (x, y)
    }

    pub fn value(&self, x: f64, y: f64) -> Complex64 {
        let (px, py) = self.axes();
        px.value(x) * py.value(y)
    }
}

/// Smallest triangle index cap reaching wavenumbers |k0| + 4.5/b.
pub fn default_triangle_cap(p: &PacketParams2D, side: f64) -> u32 {
    let k0 = p.p0x.hypot(p.p0y) / p.units.hbar;
    let k_max = k0 + 4.5 / p.width_b;
    (k_max * side / 2.42).ceil() as u32 + 2
}

/// Overlaps with the equilateral-triangle states (m ≤ cap) from the
/// closed-form Gaussian plane-wave integrals.
pub fn triangle_coefficients(
    p: &PacketParams2D,
    side: f64,
    basis_cap: u32,
) -> Result<CoefficientSet2D> {
    let margin = 3.0 * p.delta_x0();
    let s3 = 3f64.sqrt();
    let d_right = (s3 * p.x0 - p.y0).abs() / 2.0;
    let d_left = (s3 * p.x0 + p.y0).abs() / 2.0;
    let inside = p.y0 >= s3 * p.x0.abs() && p.y0 <= s3 * side / 2.0;
    let d_top = s3 * side / 2.0 - p.y0;
    if !inside || d_right < margin || d_left < margin || d_top < margin {
        return Err(Error::Containment(format!(
            "center ({}, {}) must lie at least 3Δx0 = {margin} inside the triangle",
            p.x0, p.y0
        )));
    }
    let (px, py) = p.axes();
    let sin_x =
        |a: f64| (px.plane_wave_overlap(a) - px.plane_wave_overlap(-a)) / Complex64::new(0.0, 2.0);
    let cos_x = |a: f64| (px.plane_wave_overlap(a) + px.plane_wave_overlap(-a)) * 0.5;
    let sin_y =
        |a: f64| (py.plane_wave_overlap(a) - py.plane_wave_overlap(-a)) / Complex64::new(0.0, 2.0);
    let states = triangle_states(basis_cap);
    let kx = 2.0 * PI / (3.0 * side);
    let ky = 2.0 * PI / (s3 * side);
    let pair_norm = (16.0 / (3.0 * s3 * side * side)).sqrt();
    let special_norm = (8.0 / (3.0 * s3 * side * side)).sqrt();
    let (modes, coefficients): (Vec<Mode2D>, Vec<Complex64>) = states
        .par_iter()
        .map(|&(m, n, symmetry)| {
            let (mf, nf) = (m as f64, n as f64);
            let t1 = (kx * (2.0 * mf - nf), ky * nf);
            let t2 = (kx * (2.0 * nf - mf), ky * mf);
            let t3 = (kx * (mf + nf), ky * (mf - nf));
            let c = match symmetry {
                Symmetry::Odd => {
                    (sin_x(t1.0) * sin_y(t1.1)
                        - sin_x(t2.0) * sin_y(t2.1)
                        - sin_x(t3.0) * sin_y(t3.1))
                        * pair_norm
                }
                Symmetry::Even => {
                    (cos_x(t1.0) * sin_y(t1.1) - cos_x(t2.0) * sin_y(t2.1)
                        + cos_x(t3.0) * sin_y(t3.1))
                        * pair_norm
                }
                Symmetry::Special => {
                    let a = 2.0 * PI * nf / side;
                    (cos_x(a) * sin_y(ky * nf) * 2.0
                        - px.plane_wave_overlap(0.0) * sin_y(2.0 * ky * nf))
                        * special_norm
                }
                Symmetry::None => unreachable!("triangle states always carry a parity label"),
            };
            (Mode2D::new(m as i64, n as i64, symmetry), c)
        })
        .unzip();
    let mut set = CoefficientSet2D::new(modes, coefficients);
    if set.norm_deficit > 1e-4 {
        set.warnings.push(CoefficientWarning::BasisSize {
            deficit: set.norm_deficit,
        });
    }
    Ok(set)
}

/// Overlaps with J_|m|(z r/R) e^{imθ} states for |m| ≤ m_cap, n_r ≤ nr_cap,
/// by Gauss-Legendre in r (128 nodes) and the trapezoid rule in θ (256 points).
pub fn circular_coefficients(
    p: &PacketParams2D,
    radius: f64,
    m_cap: u32,
    nr_cap: u32,
) -> Result<CoefficientSet2D> {
    let r0 = p.x0.hypot(p.y0);
    let margin = 3.0 * p.delta_x0();
    if r0 + margin > radius {
        return Err(Error::Containment(format!(
            "center at radius {r0} must lie at least 3Δx0 = {margin} inside R = {radius}"
        )));
    }
    const RADIAL: usize = 128;
    const ANGULAR: usize = 256;
    let rule = GaussLegendre::new(RADIAL);
    let nodes: Vec<(f64, f64)> = rule.mapped(0.0, radius).collect();
    let m_count = 2 * m_cap as usize + 1;
    // angular Fourier components G_m(r) = (2π)^(-1/2) ∫ e^{−imθ} ψ dθ
    let fourier: Vec<Vec<Complex64>> = nodes
        .par_iter()
        .map(|&(r, _)| {
            let samples: Vec<Complex64> = (0..ANGULAR)
                .map(|k| {
                    let th = 2.0 * PI * k as f64 / ANGULAR as f64;
                    p.value(r * th.cos(), r * th.sin())
                })
                .collect();
            (0..m_count)
                .map(|i| {
                    let m = i as f64 - m_cap as f64;
                    let s: Complex64 = samples
                        .iter()
                        .enumerate()
                        .map(|(k, v)| {
                            v * Complex64::from_polar(
                                1.0,
                                -m * 2.0 * PI * k as f64 / ANGULAR as f64,
                            )
                        })
                        .sum();
                    s * ((2.0 * PI).sqrt() / ANGULAR as f64)
                })
                .collect()
        })
        .collect();
    let channels: Vec<Vec<(Mode2D, Complex64)>> = (0..=m_cap)
        .into_par_iter()
        .map(|am| -> Result<Vec<(Mode2D, Complex64)>> {
            let mut out = Vec::new();
            for nr in 0..=nr_cap {
                let z = bessel_zero(am, nr)?.value;
                let norm = circular_mode_norm(am, z, radius)?;
                let radial: Vec<f64> = nodes
                    .iter()
                    .map(|&(r, w)| Ok(w * r * norm * bessel_j(am, z * r / radius)?))
                    .collect::<Result<_>>()?;
                let signs: &[i64] = if am == 0 { &[0] } else { &[-1, 1] };
                for &s in signs {
                    let m = s * am as i64;
                    let idx = (m + m_cap as i64) as usize;
                    let c: Complex64 = radial.iter().zip(&fourier).map(|(w, g)| g[idx] * *w).sum();
                    out.push((Mode2D::new(m, nr as i64, Symmetry::None), c));
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut pairs: Vec<(Mode2D, Complex64)> = channels.into_iter().flatten().collect();
    pairs.sort_by_key(|(m, _)| (m.q1, m.q2));
    let (modes, coefficients) = pairs.into_iter().unzip();
    let mut set = CoefficientSet2D::new(modes, coefficients);
    if set.norm_deficit > 1e-3 {
        set.warnings.push(CoefficientWarning::BasisSize {
            deficit: set.norm_deficit,
        });
    }
    Ok(set)
}
