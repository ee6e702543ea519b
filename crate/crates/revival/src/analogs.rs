//! Jaynes-Cummings population inversion and coherent-state revivals of a
//! self-interacting condensate mode.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::dynamics::TimeSeries;
use crate::wavefields::{Axis, FieldGrid};
use crate::{Error, Result};

const TAIL_LIMIT: f64 = 1e-12;

/// ln of the Poisson weight e^{−m} m^n / n!.
fn log_poisson(mean: f64, n: u64) -> f64 {
    if mean == 0.0 {
        return if n == 0 { 0.0 } else { f64::NEG_INFINITY };
    }
    let nf = n as f64;
    -mean + nf * mean.ln() - libm::lgamma(nf + 1.0)
}

fn poisson_weights(mean: f64, cap: u64) -> Vec<f64> {
    (0..=cap).map(|n| log_poisson(mean, n).exp()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JCParams {
    pub nbar: f64,
    pub lambda: f64,
    pub detuning: f64,
}

impl JCParams {
    pub fn new(nbar: f64, lambda: f64, detuning: f64) -> Result<Self> {
        if !(nbar >= 0.0 && nbar.is_finite())
            || !(lambda > 0.0 && lambda.is_finite())
            || !detuning.is_finite()
        {
            return Err(Error::Domain(format!(
                "JC parameters need nbar ≥ 0, lambda > 0 (got {nbar}, {lambda}, {detuning})"
            )));
        }
        Ok(Self {
            nbar,
            lambda,
            detuning,
        })
    }

    /// Photon-number cap n̄ + 12√n̄, raised to 24 for small n̄.
    pub fn photon_cap(&self) -> u64 {
        (self.nbar + 12.0 * self.nbar.sqrt()).ceil().max(24.0) as u64
    }

    /// Ω_n = (nλ² + Δ²/4)^{1/2}.
    pub fn rabi(&self, n: u64) -> f64 {
        (n as f64 * self.lambda * self.lambda + 0.25 * self.detuning * self.detuning).sqrt()
    }

    fn weights(&self) -> Result<Vec<f64>> {
        let cap = self.photon_cap();
        let w = poisson_weights(self.nbar, cap);
        let tail = (1.0 - w.iter().sum::<f64>()).max(0.0);
        if tail > TAIL_LIMIT {
            return Err(Error::Truncation(format!(
                "photon cap {cap} leaves tail weight {tail:e} at nbar {}",
                self.nbar
            )));
        }
        Ok(w)
    }
}

/// Excited-state population for an atom starting excited in a coherent field.
///
/// Values are real and stored in the `re` part of the series.
pub fn jc_inversion(p: &JCParams, t_grid: &[f64]) -> Result<TimeSeries> {
    let w = p.weights()?;
    let lam2 = p.lambda * p.lambda;
    let values = t_grid
        .par_iter()
        .map(|&t| {
            let pe: f64 = w
                .iter()
                .enumerate()
                .map(|(n, wn)| {
                    let omega = p.rabi(n as u64);
                    if omega == 0.0 {
                        return *wn;
                    }
                    let s = (omega * t).sin();
                    wn * (1.0 - n as f64 * lam2 / (omega * omega) * s * s)
                })
                .sum();
            Complex64::new(pe, 0.0)
        })
        .collect();
    TimeSeries::new(t_grid.to_vec(), values)
}

/// Collapse-revival envelope (1/2)|Σ w_n e^{2iΩ_n t}| of the oscillating part.
pub fn jc_envelope(p: &JCParams, t_grid: &[f64]) -> Result<Vec<f64>> {
    if p.detuning != 0.0 {
        return Err(Error::Domain(
            "envelope is defined for zero detuning".into(),
        ));
    }
    let w = p.weights()?;
    Ok(t_grid
        .par_iter()
        .map(|&t| {
            let sum: Complex64 = w
                .iter()
                .enumerate()
                .map(|(n, wn)| Complex64::from_polar(*wn, 2.0 * p.rabi(n as u64) * t))
                .sum();
            0.5 * sum.norm()
        })
        .collect())
}

pub fn jc_revival_time(p: &JCParams) -> f64 {
    let lam2 = p.lambda * p.lambda;
    2.0 * PI * (lam2 * p.nbar + 0.25 * p.detuning * p.detuning).sqrt() / lam2
}

/// (lower, upper) = 1/2 ∓ (1/2)(1 + λ²t²/4n̄)^{−1/4}.
pub fn jc_bound(p: &JCParams, t: f64) -> Result<(f64, f64)> {
    if p.detuning != 0.0 {
        return Err(Error::Domain(
            "suppression bound needs zero detuning".into(),
        ));
    }
    if !(p.nbar > 0.0) {
        return Err(Error::Domain("suppression bound needs nbar > 0".into()));
    }
    let lt = p.lambda * t;
    let half = 0.5 * (1.0 + lt * lt / (4.0 * p.nbar)).powf(-0.25);
    Ok((0.5 - half, 0.5 + half))
}

/// Coherent state |α⟩ evolving under the interaction U₀ n(n−1)/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentState {
    pub alpha: Complex64,
    pub u0_over_hbar: f64,
    pub n_cap: u64,
}

impl CoherentState {
    pub fn new(alpha: Complex64, u0_over_hbar: f64, n_cap: u64) -> Result<Self> {
        if !(u0_over_hbar > 0.0 && u0_over_hbar.is_finite()) || !alpha.is_finite() {
            return Err(Error::Domain(format!(
                "coherent state needs finite alpha and U0/hbar > 0 (got {alpha}, {u0_over_hbar})"
            )));
        }
        let r = alpha.norm();
        if (n_cap as f64) < r * r + 10.0 * r {
            return Err(Error::Truncation(format!(
                "n_cap {n_cap} below |alpha|² + 10|alpha| = {}",
                r * r + 10.0 * r
            )));
        }
        let cs = Self {
            alpha,
            u0_over_hbar,
            n_cap,
        };
        let deficit = 1.0 - poisson_weights(r * r, n_cap).iter().sum::<f64>();
        if deficit.abs() > 1e-10 {
            return Err(Error::Truncation(format!(
                "Poisson weights at n_cap {n_cap} miss {deficit:e}"
            )));
        }
        Ok(cs)
    }

    /// Smallest cap ≥ |α|² + 10|α| whose Poisson tail is below 1e-10.
    pub fn with_default_cap(alpha: Complex64, u0_over_hbar: f64) -> Result<Self> {
        let r2 = alpha.norm_sqr();
        let mut cap = (r2 + 10.0 * r2.sqrt()).ceil() as u64;
        let mut total: f64 = poisson_weights(r2, cap).iter().sum();
        while 1.0 - total > 1e-10 && cap < 1 << 20 {
            cap += 1;
            total += log_poisson(r2, cap).exp();
        }
        Self::new(alpha, u0_over_hbar, cap)
    }

    /// T_rev = 2πħ/U₀.
    pub fn revival_time(&self) -> f64 {
        2.0 * PI / self.u0_over_hbar
    }

    /// Fock amplitudes at time t; the interaction phase n(n−1)/2 is reduced
    /// modulo the revival period before use.
    pub fn amplitudes(&self, t: f64) -> Vec<Complex64> {
        let cycles = (t / self.revival_time()).rem_euclid(1.0);
        coherent_amplitudes(self.alpha, self.n_cap)
            .into_iter()
            .enumerate()
            .map(|(n, c)| {
                let n = n as u64;
                let k = n * n.saturating_sub(1) / 2;
                c * (Complex64::i()
                    * (-2.0 * PI * crate::spectra::frac_product(k as f64, cycles, 0.0)))
                .exp()
            })
            .collect()
    }
}

fn coherent_amplitudes(alpha: Complex64, cap: u64) -> Vec<Complex64> {
    let (r, theta) = alpha.to_polar();
    (0..=cap)
        .map(|n| Complex64::from_polar((0.5 * log_poisson(r * r, n)).exp(), n as f64 * theta))
        .collect()
}

/// ⟨a⟩ at time t in closed form.
pub fn bec_field(cs: &CoherentState, t: f64) -> Complex64 {
    let theta = 2.0 * PI * (t / cs.revival_time()).rem_euclid(1.0);
    let r2 = cs.alpha.norm_sqr();
    cs.alpha * (-r2 * Complex64::new(1.0 - theta.cos(), theta.sin())).exp()
}

/// P(β; t) = |⟨β|ψ(t)⟩|² from the truncated Fock sum.
pub fn bec_overlap(cs: &CoherentState, beta: Complex64, t: f64) -> f64 {
    let cycles = (t / cs.revival_time()).rem_euclid(1.0);
    let z = beta.conj() * cs.alpha;
    let base = -0.5 * (cs.alpha.norm_sqr() + beta.norm_sqr());
    if z.norm() == 0.0 {
        return (2.0 * base).exp();
    }
    let (lz, az) = (z.norm().ln(), z.arg());
    let sum: Complex64 = (0..=cs.n_cap)
        .map(|n| {
            let nf = n as f64;
            let k = (n * n.saturating_sub(1) / 2) as f64;
            let phase = nf * az - 2.0 * PI * crate::spectra::frac_product(k, cycles, 0.0);
            Complex64::from_polar((base + nf * lz - libm::lgamma(nf + 1.0)).exp(), phase)
        })
        .sum();
    sum.norm_sqr()
}

/// P(β; t) over β = x + iy with x along `re_axis` (rows) and y along `im_axis`.
pub fn bec_overlap_grid(
    cs: &CoherentState,
    t: f64,
    re_axis: &Axis,
    im_axis: &Axis,
) -> Result<FieldGrid> {
    let ys = im_axis.points();
    let values: Vec<f64> = re_axis
        .points()
        .par_iter()
        .flat_map_iter(|&x| {
            ys.iter()
                .map(move |&y| bec_overlap(cs, Complex64::new(x, y), t))
                .collect::<Vec<_>>()
        })
        .collect();
    FieldGrid::new(re_axis.clone(), im_axis.clone(), values)
}

/// |⟨cat|ψ(T_rev/2)⟩|² with cat = (e^{−iπ/4}|iα⟩ + e^{iπ/4}|−iα⟩)/√2.
pub fn bec_cat_fidelity(cs: &CoherentState) -> f64 {
    let psi = cs.amplitudes(0.5 * cs.revival_time());
    let plus = coherent_amplitudes(Complex64::i() * cs.alpha, cs.n_cap);
    let minus = coherent_amplitudes(-Complex64::i() * cs.alpha, cs.n_cap);
    let (ep, em) = (
        Complex64::from_polar(1.0, -PI / 4.0),
        Complex64::from_polar(1.0, PI / 4.0),
    );
    let overlap: Complex64 = psi
        .iter()
        .zip(plus.iter().zip(&minus))
        .map(|(c, (a, b))| (ep * a + em * b).conj() * c)
        .sum::<Complex64>()
        / 2f64.sqrt();
    overlap.norm_sqr()
}

/// A local maximum of P(β; t).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlapPeak {
    pub beta: Complex64,
    pub height: f64,
}

/// Grid local maxima of P above `floor`, each polished by alternating
/// golden-section searches along Re β and Im β.
pub fn bec_peaks(cs: &CoherentState, t: f64, grid: &FieldGrid, floor: f64) -> Vec<OverlapPeak> {
    let (n1, n2) = (grid.axis1.count, grid.axis2.count);
    let (h1, h2) = (grid.axis1.step(), grid.axis2.step());
    let mut peaks = Vec::new();
    for i in 0..n1 {
        for j in 0..n2 {
            let v = grid.get(i, j);
            if v < floor {
                continue;
            }
            let is_max = (i.saturating_sub(1)..=(i + 1).min(n1 - 1))
                .flat_map(|a| (j.saturating_sub(1)..=(j + 1).min(n2 - 1)).map(move |b| (a, b)))
                .filter(|&(a, b)| (a, b) != (i, j))
                .all(|(a, b)| grid.get(a, b) < v || (grid.get(a, b) == v && (a, b) > (i, j)));
            if !is_max {
                continue;
            }
            let mut beta = Complex64::new(grid.axis1.point(i), grid.axis2.point(j));
            let f = |b: Complex64| bec_overlap(cs, b, t);
            for _ in 0..60 {
                let prev = beta;
                let x = golden_max(
                    |x| f(Complex64::new(x, beta.im)),
                    beta.re - h1,
                    beta.re + h1,
                );
                beta.re = x;
                let y = golden_max(
                    |y| f(Complex64::new(beta.re, y)),
                    beta.im - h2,
                    beta.im + h2,
                );
                beta.im = y;
                if (beta - prev).norm() < 1e-11 {
                    break;
                }
            }
            peaks.push(OverlapPeak {
                beta,
                height: f(beta),
            });
        }
    }
    peaks
}

fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > 1e-12 * (1.0 + a.abs()) {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}
