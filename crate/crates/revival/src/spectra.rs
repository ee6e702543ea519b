//! One-dimensional energy spectra, their derivatives in the quantum
//! number, and the classical/revival/superrevival time scales.

use std::f64::consts::PI;

use crate::specfun::airy_zero;
use crate::{Error, Result};

/// SI reduced Planck constant (J s).
pub const HBAR_SI: f64 = 1.054_571_817e-34;
/// Classical Kepler period of a hydrogen Rydberg state per n³ (s).
pub const RYDBERG_PERIOD_PER_N3: f64 = 1.52e-16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitSystem {
    pub hbar: f64,
    pub mass: f64,
    pub length: f64,
}

impl Default for UnitSystem {
    /// ħ = 1, 2m = 1, L = 1.
    fn default() -> Self {
        Self {
            hbar: 1.0,
            mass: 0.5,
            length: 1.0,
        }
    }
}

impl UnitSystem {
    pub fn new(hbar: f64, mass: f64, length: f64) -> Result<Self> {
        for (name, v) in [("hbar", hbar), ("mass", mass), ("length", length)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Domain(format!(
                    "{name} must be finite and positive, got {v}"
                )));
            }
        }
        Ok(Self { hbar, mass, length })
    }
}

/// Exponent of a power-law potential V(x) = V0 |x/L|^k.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PowerLawExponent {
    Finite(f64),
    /// k → ∞: square well spanning -L..L.
    Infinite,
}

/// WKB matching constants at the two turning points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Matching {
    /// C_L = C_R = 1/4.
    Smooth,
    /// C_L = C_R = 1/2.
    HardWall,
}

impl Matching {
    fn offset(self) -> f64 {
        match self {
            Matching::Smooth => 0.5,
            Matching::HardWall => 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    /// E = ħω (n − αn²/2 + βn³/6).
    AnharmonicPoly {
        omega: f64,
        alpha: f64,
        beta: f64,
    },
    /// Walls at 0 and `units.length`.
    InfiniteWell,
    /// E = scale · (n + offset)^(2k/(k+2)); the Coulomb mode k = −1 has a negative scale.
    PowerLawWkb {
        exponent: PowerLawExponent,
        scale: f64,
        offset: f64,
    },
    BouncerWkb {
        force: f64,
    },
    BouncerAiry {
        force: f64,
    },
    Rotor2D {
        inertia: f64,
    },
    PendulumLowEnergy {
        v0: f64,
        inertia: f64,
    },
    Harmonic {
        omega: f64,
    },
    CoulombRydberg {
        r_eff: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spectrum1D {
    pub model: Model,
    pub units: UnitSystem,
}

/// (T_cl, T_rev, T_super); a component is +∞ when its derivative vanishes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeScales {
    pub t_classical: f64,
    pub t_revival: f64,
    pub t_super: f64,
}

impl Spectrum1D {
    pub fn new(model: Model, units: UnitSystem) -> Self {
        Self { model, units }
    }

    /// Anharmonic polynomial with ħ = 1, ω = 2π.
    pub fn anharmonic(alpha: f64, beta: f64) -> Self {
        Self::new(
            Model::AnharmonicPoly {
                omega: 2.0 * PI,
                alpha,
                beta,
            },
            UnitSystem::default(),
        )
    }

    /// α = 1/800, β = 0.
    pub fn case_a() -> Self {
        Self::anharmonic(1.0 / 800.0, 0.0)
    }

    /// α = 1/800, β = 2e-6.
    pub fn case_b() -> Self {
        Self::anharmonic(1.0 / 800.0, 2e-6)
    }

    pub fn infinite_well(units: UnitSystem) -> Self {
        Self::new(Model::InfiniteWell, units)
    }

    pub fn harmonic(omega: f64, units: UnitSystem) -> Self {
        Self::new(Model::Harmonic { omega }, units)
    }

    /// Hydrogen levels in SI units, scaled so that T_cl = 1.52e-16 s · n³.
    pub fn coulomb_rydberg() -> Self {
        let units = UnitSystem {
            hbar: HBAR_SI,
            mass: 9.109_383_701_5e-31,
            length: 5.291_772_109e-11,
        };
        Self::new(
            Model::CoulombRydberg {
                r_eff: PI * HBAR_SI / RYDBERG_PERIOD_PER_N3,
            },
            units,
        )
    }

    /// Lowest admissible quantum number; `None` when unbounded below (rotor).
    pub fn ground_index(&self) -> Option<f64> {
        match self.model {
            Model::InfiniteWell | Model::CoulombRydberg { .. } => Some(1.0),
            Model::Rotor2D { .. } => None,
            _ => Some(0.0),
        }
    }

    /// Energy scale of the bouncer, (ħ²F²/2m)^(1/3).
    fn bouncer_scale(&self, force: f64) -> f64 {
        let u = self.units;
        (u.hbar * u.hbar * force * force / (2.0 * u.mass)).cbrt()
    }

    fn check_index(&self, n: f64) -> Result<()> {
        if !n.is_finite() {
            return Err(Error::Domain(format!("quantum number {n} is not finite")));
        }
        if let Some(g) = self.ground_index() {
            if n < g - 1e-12 {
                return Err(Error::Domain(format!(
                    "quantum number {n} below ground index {g}"
                )));
            }
        }
        Ok(())
    }

    /// E(n). Tabulated models require integral n.
    pub fn eval_energy(&self, n: f64) -> Result<f64> {
        self.check_index(n)?;
        let u = self.units;
        Ok(match self.model {
            Model::AnharmonicPoly { omega, alpha, beta } => {
                u.hbar * omega * (n - 0.5 * alpha * n * n + beta * n * n * n / 6.0)
            }
            Model::InfiniteWell => {
                u.hbar * u.hbar * PI * PI * n * n / (2.0 * u.mass * u.length * u.length)
            }
            Model::PowerLawWkb {
                exponent,
                scale,
                offset,
            } => scale * (n + offset).powf(power_law_gamma(exponent)),
            Model::BouncerWkb { force } => {
                (1.5 * PI * (n + 0.75)).powf(2.0 / 3.0) * self.bouncer_scale(force)
            }
            Model::BouncerAiry { force } => {
                let k = n.round();
                if (n - k).abs() > 1e-9 {
                    return Err(Error::Domain(format!(
                        "tabulated spectrum needs an integer index, got {n}"
                    )));
                }
                airy_zero(k as u32)?.value * self.bouncer_scale(force)
            }
            Model::Rotor2D { inertia } => u.hbar * u.hbar * n * n / (2.0 * inertia),
            Model::PendulumLowEnergy { v0, inertia } => {
                let w = (v0 / inertia).sqrt();
                -v0 + u.hbar * w * (n + 0.5)
                    - u.hbar * u.hbar * (2.0 * n * n + 2.0 * n + 1.0) / (32.0 * inertia)
            }
            Model::Harmonic { omega } => u.hbar * omega * (n + 0.5),
            Model::CoulombRydberg { r_eff } => -r_eff / (n * n),
        })
    }

    /// Level frequency E_n/(2πħ) in cycles per unit time, evaluated without
    /// the 2π round trip where the model allows it.
    pub fn frequency(&self, n: i64) -> Result<f64> {
        let nf = n as f64;
        self.check_index(nf)?;
        let u = self.units;
        Ok(match self.model {
            Model::AnharmonicPoly { omega, alpha, beta } => {
                omega / (2.0 * PI) * (nf - 0.5 * alpha * nf * nf + beta * nf * nf * nf / 6.0)
            }
            Model::InfiniteWell => u.hbar * PI * nf * nf / (4.0 * u.mass * u.length * u.length),
            Model::Harmonic { omega } => omega / (2.0 * PI) * (nf + 0.5),
            Model::Rotor2D { inertia } => u.hbar * nf * nf / (4.0 * PI * inertia),
            _ => self.eval_energy(nf)? / (2.0 * PI * u.hbar),
        })
    }

    /// ν(n) = c0 + c1 n + c2 n² + c3 n³ in cycles per unit time, for the
    /// models whose levels are polynomial in n.
    pub fn cycle_polynomial(&self) -> Option<[f64; 4]> {
        let u = self.units;
        match self.model {
            Model::AnharmonicPoly { omega, alpha, beta } => {
                let f = omega / (2.0 * PI);
                Some([0.0, f, -0.5 * alpha * f, beta / 6.0 * f])
            }
            Model::InfiniteWell => Some([
                0.0,
                0.0,
                u.hbar * PI / (4.0 * u.mass * u.length * u.length),
                0.0,
            ]),
            Model::Harmonic { omega } => Some([omega / (4.0 * PI), omega / (2.0 * PI), 0.0, 0.0]),
            Model::Rotor2D { inertia } => Some([0.0, 0.0, u.hbar / (4.0 * PI * inertia), 0.0]),
            _ => None,
        }
    }

    /// E_n t/2πħ reduced to [−1/2, 1/2]. Polynomial levels are reduced term by
    /// term so that exact revival times give phases that are exactly cyclic.
    pub fn phase_cycles(&self, n: i64, t: f64) -> Result<f64> {
        self.check_index(n as f64)?;
        match self.cycle_polynomial() {
            Some(c) if n.unsigned_abs() < 1 << 17 => Ok(polynomial_cycles(&c, n, t)),
            _ => Ok(frac_product(self.frequency(n)?, t, 0.0)),
        }
    }

    /// (E', E'', E''') at n0.
    pub fn derivatives(&self, n0: f64) -> Result<[f64; 3]> {
        self.check_index(n0)?;
        let u = self.units;
        Ok(match self.model {
            Model::AnharmonicPoly { omega, alpha, beta } => {
                let e = u.hbar * omega;
                [
                    e * (1.0 - alpha * n0 + 0.5 * beta * n0 * n0),
                    e * (-alpha + beta * n0),
                    e * beta,
                ]
            }
            Model::InfiniteWell => {
                let c = u.hbar * u.hbar * PI * PI / (2.0 * u.mass * u.length * u.length);
                [2.0 * c * n0, 2.0 * c, 0.0]
            }
            Model::PowerLawWkb {
                exponent,
                scale,
                offset,
            } => {
                let g = power_law_gamma(exponent);
                let x = n0 + offset;
                [
                    scale * g * x.powf(g - 1.0),
                    scale * g * (g - 1.0) * x.powf(g - 2.0),
                    scale * g * (g - 1.0) * (g - 2.0) * x.powf(g - 3.0),
                ]
            }
            Model::BouncerWkb { force } => {
                let a = 1.5 * PI;
                let s = a * (n0 + 0.75);
                let e = self.bouncer_scale(force);
                let g = 2.0 / 3.0;
                [
                    e * g * s.powf(g - 1.0) * a,
                    e * g * (g - 1.0) * s.powf(g - 2.0) * a * a,
                    e * g * (g - 1.0) * (g - 2.0) * s.powf(g - 3.0) * a * a * a,
                ]
            }
            Model::BouncerAiry { .. } => {
                let c = n0.round();
                if c < 2.0 {
                    return Err(Error::Domain(format!(
                        "stencil at {c} reaches below the ground state"
                    )));
                }
                let e: Vec<f64> = (-2..=2)
                    .map(|k| self.eval_energy(c + k as f64))
                    .collect::<Result<_>>()?;
                [
                    (-e[4] + 8.0 * e[3] - 8.0 * e[1] + e[0]) / 12.0,
                    (-e[4] + 16.0 * e[3] - 30.0 * e[2] + 16.0 * e[1] - e[0]) / 12.0,
                    (e[4] - 2.0 * e[3] + 2.0 * e[1] - e[0]) / 2.0,
                ]
            }
            Model::Rotor2D { inertia } => {
                let c = u.hbar * u.hbar / inertia;
                [c * n0, c, 0.0]
            }
            Model::PendulumLowEnergy { v0, inertia } => {
                let w = (v0 / inertia).sqrt();
                let c = u.hbar * u.hbar / (32.0 * inertia);
                [u.hbar * w - c * (4.0 * n0 + 2.0), -4.0 * c, 0.0]
            }
            Model::Harmonic { omega } => [u.hbar * omega, 0.0, 0.0],
            Model::CoulombRydberg { r_eff } => [
                2.0 * r_eff / n0.powi(3),
                -6.0 * r_eff / n0.powi(4),
                24.0 * r_eff / n0.powi(5),
            ],
        })
    }

    /// T_cl = 2πħ/|E'|, T_rev = 2πħ/(|E''|/2), T_super = 2πħ/(|E'''|/6).
    ///
    /// A derivative d_k counts as vanishing when |d_k|·s^k ≤ 1e-14·max(|E|, |E'|·s),
    /// s = max(1, |n0|).
    pub fn time_scales(&self, n0: f64) -> Result<TimeScales> {
        let d = self.derivatives(n0)?;
        let center = match self.model {
            Model::BouncerAiry { .. } => n0.round(),
            _ => n0,
        };
        let e = self.eval_energy(center)?;
        let s = n0.abs().max(1.0);
        let scale = e.abs().max(d[0].abs() * s);
        let h = 2.0 * PI * self.units.hbar;
        let time = |k: usize, factorial: f64| {
            let v = d[k].abs() * s.powi(k as i32 + 1);
            if v <= 1e-14 * scale {
                f64::INFINITY
            } else {
                h / (d[k].abs() / factorial)
            }
        };
        Ok(TimeScales {
            t_classical: time(0, 1.0),
            t_revival: time(1, 2.0),
            t_super: time(2, 6.0),
        })
    }
}

/// frac(a·b + extra) without losing the low bits of the product.
pub(crate) fn frac_product(a: f64, b: f64, extra: f64) -> f64 {
    let p = a * b;
    let err = a.mul_add(b, -p);
    let r = (p - p.round()) + err + extra;
    r - r.round()
}

pub(crate) fn polynomial_cycles(c: &[f64; 4], n: i64, t: f64) -> f64 {
    let mut total = 0.0;
    let mut power = 1.0;
    for &ck in c {
        if ck != 0.0 {
            // (c_k t) split into hi + lo, then times the exact integer n^k
            let hi = ck * t;
            let lo = ck.mul_add(t, -hi);
            total += frac_product(hi, power, lo * power);
        }
        power *= n as f64;
    }
    total - total.round()
}

fn power_law_gamma(k: PowerLawExponent) -> f64 {
    match k {
        PowerLawExponent::Finite(k) => 2.0 * k / (k + 2.0),
        PowerLawExponent::Infinite => 2.0,
    }
}

/// WKB spectrum of V(x) = V0 |x/L|^k (k > 0), or the Coulomb-scaling mode
/// k = −1 with V(x) = −V0 L/|x|.
pub fn power_law_spectrum(
    k: PowerLawExponent,
    v0: f64,
    length: f64,
    matching: Matching,
    units: UnitSystem,
) -> Result<Spectrum1D> {
    if !(v0 > 0.0) || !(length > 0.0) {
        return Err(Error::Domain("power-law V0 and L must be positive".into()));
    }
    let (hb, m) = (units.hbar, units.mass);
    let scale = match k {
        PowerLawExponent::Infinite => hb * hb * PI * PI / (8.0 * m * length * length),
        PowerLawExponent::Finite(k) if k == -2.0 => {
            return Err(Error::Domain(
                "k = -2 makes the scaling exponent singular".into(),
            ));
        }
        PowerLawExponent::Finite(k) if k == -1.0 => {
            let c = v0 * length;
            -m * c * c / (2.0 * hb * hb)
        }
        PowerLawExponent::Finite(k) if k > 0.0 => {
            let ratio =
                libm::tgamma(1.0 / k + 1.5) / (libm::tgamma(1.0 / k + 1.0) * libm::tgamma(1.5));
            let base = hb * PI / (2.0 * length * (2.0 * m).sqrt()) * v0.powf(1.0 / k) * ratio;
            base.powf(2.0 * k / (k + 2.0))
        }
        PowerLawExponent::Finite(k) => {
            return Err(Error::Domain(format!(
                "power-law exponent {k} unsupported (need k > 0 or k = -1)"
            )));
        }
    };
    Ok(Spectrum1D::new(
        Model::PowerLawWkb {
            exponent: k,
            scale,
            offset: matching.offset(),
        },
        units,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawRatios {
    /// T_rev/T_cl; +∞ for k = 2.
    pub rev_over_cl: f64,
    /// T_super/T_rev; +∞ for k → ∞.
    pub super_over_rev: f64,
    pub revival_diverges: bool,
}

/// T_rev/T_cl = 2|(k+2)/(k−2)|·n0 and T_super/T_rev = 3(k+2)n0/4.
pub fn power_law_ratios(k: PowerLawExponent, n0: f64) -> PowerLawRatios {
    match k {
        PowerLawExponent::Infinite => PowerLawRatios {
            rev_over_cl: 2.0 * n0,
            super_over_rev: f64::INFINITY,
            revival_diverges: false,
        },
        PowerLawExponent::Finite(k) => {
            let diverges = k == 2.0;
            PowerLawRatios {
                rev_over_cl: if diverges {
                    f64::INFINITY
                } else {
                    2.0 * ((k + 2.0) / (k - 2.0)).abs() * n0
                },
                super_over_rev: 3.0 * (k + 2.0) * n0 / 4.0,
                revival_diverges: diverges,
            }
        }
    }
}

/// Classical period and revival time (seconds) of a hydrogen Rydberg packet.
pub fn rydberg_times(n0: f64) -> Result<(f64, f64)> {
    if !(n0 > 0.0) {
        return Err(Error::Domain(format!("n0 must be positive, got {n0}")));
    }
    let ts = Spectrum1D::coulomb_rydberg().time_scales(n0.max(1.0))?;
    if n0 < 1.0 {
        // below the ground index only the closed forms make sense
        let t_cl = RYDBERG_PERIOD_PER_N3 * n0.powi(3);
        return Ok((t_cl, 2.0 * n0 / 3.0 * t_cl));
    }
    Ok((ts.t_classical, ts.t_revival))
}

/// Stark-state classical period 2.6 ps/(n · F/(100 V/cm)).
pub fn stark_period(n: f64, field_over_100v_cm: f64) -> Result<f64> {
    if !(n > 0.0) || !(field_over_100v_cm > 0.0) {
        return Err(Error::Domain(
            "Stark period needs positive n and field".into(),
        ));
    }
    Ok(2.6e-12 / (n * field_over_100v_cm))
}
