use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{check_basis, evolved, Axis, Basis1D, FieldGrid};
use crate::packets::{CoefficientSet, PacketParams1D};
use crate::spectra::UnitSystem;
use crate::{Error, Result};

/// Wigner function of an infinite-well state at a fixed time,
/// W(x,p) = (1/πħ) ∫ ψ*(x+y) ψ(x−y) e^{2ipy/ħ} dy.
#[derive(Debug, Clone)]
pub struct WignerField {
    index_lo: i64,
    coefficients: Vec<Complex64>,
    length: f64,
    hbar: f64,
}

// sin(κc)/κ with its limit c at κ = 0
fn sinc_window(kappa: f64, c: f64) -> f64 {
    let a = kappa * c;
    if a.abs() < 1e-6 {
        c * (1.0 - a * a / 6.0)
    } else {
        a.sin() / kappa
    }
}

impl WignerField {
    pub fn new(c: &CoefficientSet, units: UnitSystem, t: f64) -> Result<Self> {
        let basis = Basis1D::infinite_well(units);
        check_basis(c, &basis)?;
        Ok(Self {
            index_lo: c.index_lo,
            coefficients: evolved(c, &basis, t)?,
            length: units.length,
            hbar: units.hbar,
        })
    }

    /// Sums over m ± n shared by every p at this x.
    fn partial_sums(&self, x: f64) -> Vec<(f64, Complex64, Complex64)> {
        let l = self.length;
        let n_len = self.coefficients.len();
        let lo = self.index_lo;
        // (K, weight on S(q + K), weight on S(q − K))
        let mut sums: Vec<(f64, Complex64, Complex64)> = Vec::with_capacity(4 * n_len);
        let zero = Complex64::new(0.0, 0.0);
        let mut by_sum = vec![(zero, zero); 2 * n_len];
        let mut by_diff = vec![(zero, zero); 2 * n_len];
        for (i, cm) in self.coefficients.iter().enumerate() {
            for (j, cn) in self.coefficients.iter().enumerate() {
                let w = cm.conj() * cn;
                let (m, n) = ((lo + i as i64) as f64, (lo + j as i64) as f64);
                let e_diff = Complex64::from_polar(1.0, PI * (m - n) * x / l);
                let e_sum = Complex64::from_polar(1.0, PI * (m + n) * x / l);
                let s = &mut by_sum[i + j];
                s.0 += w * e_diff;
                s.1 += w * e_diff.conj();
                let d = &mut by_diff[i + n_len - j];
                d.0 -= w * e_sum;
                d.1 -= w * e_sum.conj();
            }
        }
        for (k, (plus, minus)) in by_sum.into_iter().enumerate().take(2 * n_len - 1) {
            sums.push((PI * (2 * lo + k as i64) as f64 / l, plus, minus));
        }
        for (k, (plus, minus)) in by_diff.into_iter().enumerate().skip(1) {
            sums.push((PI * (k as i64 - n_len as i64) as f64 / l, plus, minus));
        }
        sums
    }

    fn assemble(&self, sums: &[(f64, Complex64, Complex64)], x: f64, p: f64) -> Complex64 {
        let c = x.min(self.length - x);
        let q = 2.0 * p / self.hbar;
        let total: Complex64 = sums
            .iter()
            .map(|&(k, plus, minus)| plus * sinc_window(q + k, c) + minus * sinc_window(q - k, c))
            .sum();
        total / (PI * self.hbar * self.length)
    }

    /// W at one phase-space point; the imaginary part is rounding only.
    pub fn value(&self, x: f64, p: f64) -> Result<Complex64> {
        self.check_x(x)?;
        Ok(self.assemble(&self.partial_sums(x), x, p))
    }

    /// W at (x, p) for every p in `ps`.
    pub fn column(&self, x: f64, ps: &[f64]) -> Result<Vec<Complex64>> {
        self.check_x(x)?;
        let sums = self.partial_sums(x);
        Ok(ps.iter().map(|&p| self.assemble(&sums, x, p)).collect())
    }

    fn check_x(&self, x: f64) -> Result<()> {
        if !(x > 0.0 && x < self.length) {
            return Err(Error::Domain(format!(
                "Wigner grid point x = {x} outside (0, {})",
                self.length
            )));
        }
        Ok(())
    }

    /// Complex grid over x (rows) and p (columns).
    pub fn grid(&self, x_axis: &Axis, p_axis: &Axis) -> Result<FieldGrid<Complex64>> {
        let ps = p_axis.points();
        let rows: Vec<Vec<Complex64>> = x_axis
            .points()
            .par_iter()
            .map(|&x| self.column(x, &ps))
            .collect::<Result<_>>()?;
        FieldGrid::new(
            x_axis.clone(),
            p_axis.clone(),
            rows.into_iter().flatten().collect(),
        )
    }
}

/// Real Wigner distribution on x (rows) × p (columns) at time t.
pub fn wigner_infinite_well(
    c: &CoefficientSet,
    units: UnitSystem,
    x_axis: &Axis,
    p_axis: &Axis,
    t: f64,
) -> Result<FieldGrid> {
    Ok(WignerField::new(c, units, t)?
        .grid(x_axis, p_axis)?
        .map(|v| v.re))
}

/// Symmetric momentum range ±3(|p0| + 5Δp0).
pub fn default_p_range(p: &PacketParams1D) -> (f64, f64) {
    let hi = 3.0 * (p.p0.abs() + 5.0 * p.delta_p0());
    (-hi, hi)
}

/// φ(p, t) = (2πħ)^{-1/2} ∫ ψ(x, t) e^{−ipx/ħ} dx from the analytic sine transforms.
pub fn momentum_amplitude(
    c: &CoefficientSet,
    units: UnitSystem,
    p: f64,
    t: f64,
) -> Result<Complex64> {
    let basis = Basis1D::infinite_well(units);
    check_basis(c, &basis)?;
    let ct = evolved(c, &basis, t)?;
    let l = units.length;
    let kappa = p / units.hbar;
    // ∫₀ᴸ e^{iax} dx = e^{iaL/2} · 2 sin(aL/2)/a
    let e = |a: f64| Complex64::from_polar(2.0 * sinc_window(a, 0.5 * l), 0.5 * a * l);
    let pref = (2.0 / l).sqrt() / (2.0 * PI * units.hbar).sqrt();
    let sum: Complex64 = ct
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let k = (c.index_lo + i as i64) as f64 * PI / l;
            a * (e(k - kappa) - e(-(k + kappa))) / Complex64::new(0.0, 2.0)
        })
        .sum();
    Ok(sum * pref)
}
