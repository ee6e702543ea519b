//! Position-space fields: wavefunction synthesis, expectation values,
//! Wigner distributions and quantum carpets.

mod basis;
mod observables;
mod wigner;

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::dynamics::level_phase;
use crate::packets::CoefficientSet;
use crate::spectra::UnitSystem;
use crate::{Error, Result};

pub use basis::{Basis1D, BouncerBasis};
pub use observables::{matrix_elements, observables, MatrixElements, ObservableSeries};
pub use wigner::{default_p_range, momentum_amplitude, wigner_infinite_well, WignerField};

/// A labeled uniform axis including both end points.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub name: String,
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl Axis {
    pub fn new(name: &str, lo: f64, hi: f64, count: usize) -> Result<Self> {
        if count < 2 || !(hi > lo) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::Domain(format!(
                "axis {name}: need lo < hi and count ≥ 2, got [{lo}, {hi}] × {count}"
            )));
        }
        Ok(Self {
            name: name.to_string(),
            lo,
            hi,
            count,
        })
    }

    pub fn step(&self) -> f64 {
        (self.hi - self.lo) / (self.count - 1) as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        if i + 1 == self.count {
            self.hi
        } else {
            self.lo + self.step() * i as f64
        }
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.point(i)).collect()
    }
}

/// Values on axis1 × axis2, row-major with axis1 as the row index.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldGrid<T = f64> {
    pub axis1: Axis,
    pub axis2: Axis,
    pub values: Vec<T>,
}

impl<T: Copy> FieldGrid<T> {
    pub fn new(axis1: Axis, axis2: Axis, values: Vec<T>) -> Result<Self> {
        if values.len() != axis1.count * axis2.count {
            return Err(Error::Domain(format!(
                "grid needs {} values, got {}",
                axis1.count * axis2.count,
                values.len()
            )));
        }
        Ok(Self {
            axis1,
            axis2,
            values,
        })
    }

    pub fn get(&self, i1: usize, i2: usize) -> T {
        self.values[i1 * self.axis2.count + i2]
    }

    pub fn map<U: Copy>(&self, f: impl Fn(T) -> U) -> FieldGrid<U> {
        FieldGrid {
            axis1: self.axis1.clone(),
            axis2: self.axis2.clone(),
            values: self.values.iter().map(|v| f(*v)).collect(),
        }
    }
}

impl FieldGrid<f64> {
    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

fn check_basis(c: &CoefficientSet, basis: &Basis1D) -> Result<()> {
    if c.is_empty() {
        return Ok(());
    }
    basis.check_index(c.index_lo)?;
    basis.check_index(c.index_hi())
}

/// c_n(t) = a_n e^{−iE_n t/ħ}.
pub(crate) fn evolved(c: &CoefficientSet, basis: &Basis1D, t: f64) -> Result<Vec<Complex64>> {
    let s = basis.spectrum();
    c.iter()
        .map(|(n, a)| Ok(a * level_phase(&s, n, t)?))
        .collect()
}

/// ψ(x, t) = Σ a_n u_n(x) e^{−iE_n t/ħ} at each grid point.
pub fn psi_xt(
    c: &CoefficientSet,
    basis: &Basis1D,
    x_grid: &[f64],
    t: f64,
) -> Result<Vec<Complex64>> {
    check_basis(c, basis)?;
    let ct = evolved(c, basis, t)?;
    Ok(x_grid
        .par_iter()
        .map(|&x| {
            ct.iter()
                .enumerate()
                .map(|(i, a)| a * basis.eigenfunction(c.index_lo + i as i64, x))
                .sum()
        })
        .collect())
}

/// Infinite-well density split into traveling-wave parts.
#[derive(Debug, Clone, PartialEq)]
pub struct Carpet {
    pub total: FieldGrid,
    pub classical: FieldGrid,
    pub quantum: FieldGrid,
}

/// |ψ(x,t)|² = P_cl + P_qc on t ∈ [0, t_hi] (rows) × x ∈ [0, L] (columns), with
/// S(θ) = Σ c_n e^{−inθ}, P_cl = (|S(θ)|² + |S(−θ)|²)/2L and P_qc = −Re[S(θ)* S(−θ)]/L.
pub fn carpet(
    c: &CoefficientSet,
    units: UnitSystem,
    x_count: usize,
    t_count: usize,
    t_hi: f64,
) -> Result<Carpet> {
    if x_count < 64 || t_count < 64 {
        return Err(Error::Domain(format!(
            "carpet grids need at least 64×64 points, got {t_count}×{x_count}"
        )));
    }
    let basis = Basis1D::infinite_well(units);
    check_basis(c, &basis)?;
    let l = units.length;
    let t_axis = Axis::new("t", 0.0, t_hi, t_count)?;
    let x_axis = Axis::new("x", 0.0, l, x_count)?;
    let xs = x_axis.points();
    let rows: Vec<Vec<(f64, f64, f64)>> = t_axis
        .points()
        .par_iter()
        .map(|&t| {
            let ct = evolved(c, &basis, t)?;
            Ok(xs
                .iter()
                .map(|&x| {
                    let theta = PI * x / l;
                    let mut plus = Complex64::new(0.0, 0.0);
                    let mut minus = Complex64::new(0.0, 0.0);
                    for (i, a) in ct.iter().enumerate() {
                        let n = (c.index_lo + i as i64) as f64;
                        let (s, co) = (n * theta).sin_cos();
                        plus += a * Complex64::new(co, -s);
                        minus += a * Complex64::new(co, s);
                    }
                    let classical = (plus.norm_sqr() + minus.norm_sqr()) / (2.0 * l);
                    let quantum = -(plus.conj() * minus).re / l;
                    let psi = (minus - plus) / Complex64::new(0.0, 2.0) * (2.0 / l).sqrt();
                    (psi.norm_sqr(), classical, quantum)
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    let flat: Vec<(f64, f64, f64)> = rows.into_iter().flatten().collect();
    let grid = |f: fn(&(f64, f64, f64)) -> f64| {
        FieldGrid::new(t_axis.clone(), x_axis.clone(), flat.iter().map(f).collect())
    };
    Ok(Carpet {
        total: grid(|v| v.0)?,
        classical: grid(|v| v.1)?,
        quantum: grid(|v| v.2)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::packets::{infinite_well_coefficients, PacketParams1D};
    use crate::spectra::Spectrum1D;

    fn packet(x0: f64, p0: f64, dx: f64) -> (PacketParams1D, CoefficientSet) {
        let p = PacketParams1D::from_spread(x0, p0, dx, UnitSystem::default()).unwrap();
        let n_max = crate::packets::default_n_max(&p, 1.0);
        let c = infinite_well_coefficients(&p, n_max).unwrap();
        (p, c)
    }

    #[test]
    fn reconstruction_matches_initial_gaussian() {
        let (p, c) = packet(0.4, 40.0 * PI, 0.05);
        let basis = Basis1D::infinite_well(p.units);
        let xs: Vec<f64> = (0..=400).map(|i| i as f64 / 400.0).collect();
        let psi = psi_xt(&c, &basis, &xs, 0.0).unwrap();
        for (x, v) in xs.iter().zip(&psi) {
            assert!(
                (v.norm_sqr() - p.value(*x).norm_sqr()).abs() < 1e-4,
                "x = {x}"
            );
        }
        assert!(psi[0].norm() == 0.0);
        assert!(psi[400].norm() < 1e-12);
    }

    #[test]
    fn half_revival_mirrors_density() {
        let (p, c) = packet(0.3, 25.0 * PI, 0.05);
        let basis = Basis1D::infinite_well(p.units);
        let t_rev = Spectrum1D::infinite_well(p.units)
            .time_scales(25.0)
            .unwrap()
            .t_revival;
        let xs: Vec<f64> = (0..=200).map(|i| i as f64 / 200.0).collect();
        let mirrored: Vec<f64> = xs.iter().map(|x| 1.0 - x).collect();
        let late = psi_xt(&c, &basis, &xs, 0.5 * t_rev).unwrap();
        let early = psi_xt(&c, &basis, &mirrored, 0.0).unwrap();
        for (a, b) in late.iter().zip(&early) {
            assert!((a.norm_sqr() - b.norm_sqr()).abs() < 1e-8);
        }
    }

    #[test]
    fn carpet_identity_and_stationary_state() {
        let (_, c) = packet(0.25, 0.0, 0.05);
        let t_rev = Spectrum1D::infinite_well(UnitSystem::default())
            .time_scales(1.0)
            .unwrap()
            .t_revival;
        let carpet = carpet(&c, UnitSystem::default(), 65, 65, 0.5 * t_rev).unwrap();
        for i in 0..carpet.total.values.len() {
            let sum = carpet.classical.values[i] + carpet.quantum.values[i];
            assert!((sum - carpet.total.values[i]).abs() < 1e-10);
        }
        let single = CoefficientSet::eigenstate(3);
        let flat = super::carpet(&single, UnitSystem::default(), 64, 64, 1.0).unwrap();
        for j in 0..64 {
            let x = flat.total.axis2.point(j);
            let u = 2f64.sqrt() * (3.0 * PI * x).sin();
            assert!((flat.total.get(17, j) - u * u).abs() < 1e-12);
            assert!((flat.total.get(0, j) - flat.total.get(63, j)).abs() < 1e-12);
            // quantum part is the standing-wave term −(2/L)·cos(6πx/L)/2
            assert!((flat.quantum.get(5, j) + (6.0 * PI * x).cos()).abs() < 1e-12);
        }
    }
}
