use std::f64::consts::PI;

use crate::specfun::{airy_ai, airy_zero, GaussLegendre};
use crate::spectra::{Model, Spectrum1D, UnitSystem};
use crate::{Error, Result};

/// Normalized eigenfunctions of the bouncer, N·Ai(z/ρ − y_n), for n ≤ n_max.
#[derive(Debug, Clone)]
pub struct BouncerBasis {
    pub force: f64,
    /// ρ = (ħ²/2mF)^(1/3).
    pub rho: f64,
    zeros: Vec<f64>,
    norms: Vec<f64>,
}

impl BouncerBasis {
    pub fn new(force: f64, units: UnitSystem, n_max: u32) -> Result<Self> {
        if !(force > 0.0) {
            return Err(Error::Domain(format!(
                "bouncer force must be positive, got {force}"
            )));
        }
        let rho = (units.hbar * units.hbar / (2.0 * units.mass * force)).cbrt();
        let mut zeros = Vec::with_capacity(n_max as usize + 1);
        let mut norms = Vec::with_capacity(n_max as usize + 1);
        let rule = GaussLegendre::new(24);
        for n in 0..=n_max {
            let y = airy_zero(n)?.value;
            // Ai(s)^2 < 1e-30 once s > 14
            let s_max = 40f64.max(y + 14.0);
            let panels = s_max.ceil() as usize;
            let width = s_max / panels as f64;
            let int: f64 = (0..panels)
                .map(|k| {
                    rule.integrate(
                        |s| airy_ai(s - y).powi(2),
                        k as f64 * width,
                        (k + 1) as f64 * width,
                    )
                })
                .sum();
            zeros.push(y);
            norms.push(1.0 / (rho * int).sqrt());
        }
        Ok(Self {
            force,
            rho,
            zeros,
            norms,
        })
    }

    pub fn n_max(&self) -> u32 {
        self.zeros.len() as u32 - 1
    }

    pub fn zero(&self, n: u32) -> f64 {
        self.zeros[n as usize]
    }

    pub fn norm(&self, n: u32) -> f64 {
        self.norms[n as usize]
    }

    /// Height beyond which every retained eigenfunction is negligible.
    pub fn z_max(&self) -> f64 {
        self.rho * 40f64.max(self.zeros.last().copied().unwrap_or(0.0) + 14.0)
    }

    pub fn eigenfunction(&self, n: u32, z: f64) -> f64 {
        if z < 0.0 {
            return 0.0;
        }
        self.norms[n as usize] * airy_ai(z / self.rho - self.zeros[n as usize])
    }
}

/// Eigenbasis for position-space synthesis.
#[derive(Debug, Clone)]
pub enum Basis1D {
    /// sqrt(2/L) sin(nπx/L), n ≥ 1.
    InfiniteWell { units: UnitSystem },
    /// Linear potential F·z above a hard floor at z = 0, n ≥ 0.
    Bouncer {
        units: UnitSystem,
        basis: BouncerBasis,
    },
}

impl Basis1D {
    pub fn infinite_well(units: UnitSystem) -> Self {
        Basis1D::InfiniteWell { units }
    }

    pub fn bouncer(force: f64, units: UnitSystem, n_max: u32) -> Result<Self> {
        Ok(Basis1D::Bouncer {
            units,
            basis: BouncerBasis::new(force, units, n_max)?,
        })
    }

    pub fn units(&self) -> UnitSystem {
        match self {
            Basis1D::InfiniteWell { units } | Basis1D::Bouncer { units, .. } => *units,
        }
    }

    /// The spectrum matching this basis (Airy zeros for the bouncer).
    pub fn spectrum(&self) -> Spectrum1D {
        match self {
            Basis1D::InfiniteWell { units } => Spectrum1D::infinite_well(*units),
            Basis1D::Bouncer { units, basis } => {
                Spectrum1D::new(Model::BouncerAiry { force: basis.force }, *units)
            }
        }
    }

    /// Spatial interval carrying the eigenfunctions.
    pub fn support(&self) -> (f64, f64) {
        match self {
            Basis1D::InfiniteWell { units } => (0.0, units.length),
            Basis1D::Bouncer { basis, .. } => (0.0, basis.z_max()),
        }
    }

    pub fn index_range(&self) -> (i64, Option<i64>) {
        match self {
            Basis1D::InfiniteWell { .. } => (1, None),
            Basis1D::Bouncer { basis, .. } => (0, Some(basis.n_max() as i64)),
        }
    }

    pub fn check_index(&self, n: i64) -> Result<()> {
        let (lo, hi) = self.index_range();
        if n < lo || hi.is_some_and(|h| n > h) {
            return Err(Error::Index(format!(
                "state {n} outside basis range {lo}..{hi:?}"
            )));
        }
        Ok(())
    }

    pub fn eigenfunction(&self, n: i64, x: f64) -> f64 {
        match self {
            Basis1D::InfiniteWell { units } => {
                let l = units.length;
                if !(0.0..=l).contains(&x) {
                    return 0.0;
                }
                (2.0 / l).sqrt() * (n as f64 * PI * x / l).sin()
            }
            Basis1D::Bouncer { basis, .. } => basis.eigenfunction(n as u32, x),
        }
    }
}
