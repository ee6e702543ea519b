//! Autocorrelation functions, closed-form reference amplitudes, and
//! collapse-time estimates.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::packets::{CoefficientSet, PacketParams1D};
use crate::spectra::{frac_product, Model, Spectrum1D, UnitSystem};
use crate::{Error, Result};

/// Samples of a complex function of time.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    pub times: Vec<f64>,
    pub values: Vec<Complex64>,
}

impl TimeSeries {
    pub fn new(times: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::Domain(format!(
                "{} times but {} values",
                times.len(),
                values.len()
            )));
        }
        check_increasing(&times)?;
        Ok(Self { times, values })
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn abs2(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm_sqr()).collect()
    }

    /// (t, |A|²) with the largest |A|² inside [lo, hi].
    pub fn max_abs2_in(&self, lo: f64, hi: f64) -> Option<(f64, f64)> {
        self.times
            .iter()
            .zip(&self.values)
            .filter(|(t, _)| **t >= lo && **t <= hi)
            .map(|(t, v)| (*t, v.norm_sqr()))
            .fold(None, |best, cur| match best {
                Some(b) if b.1 >= cur.1 => Some(b),
                _ => Some(cur),
            })
    }

    /// Mean of |A|² over the samples inside [lo, hi].
    pub fn mean_abs2_in(&self, lo: f64, hi: f64) -> Option<f64> {
        let vals: Vec<f64> = self
            .times
            .iter()
            .zip(&self.values)
            .filter(|(t, _)| **t >= lo && **t <= hi)
            .map(|(_, v)| v.norm_sqr())
            .collect();
        (!vals.is_empty()).then(|| vals.iter().sum::<f64>() / vals.len() as f64)
    }
}

fn check_increasing(times: &[f64]) -> Result<()> {
    if times.iter().any(|t| !t.is_finite()) {
        return Err(Error::Domain("time grid contains non-finite values".into()));
    }
    if times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain(
            "time grid must be strictly increasing".into(),
        ));
    }
    Ok(())
}

/// `count` equally spaced times from `lo` to `hi` inclusive.
pub fn uniform_grid(lo: f64, hi: f64, count: usize) -> Result<Vec<f64>> {
    if count < 2 || !(hi > lo) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Domain(format!(
            "bad grid [{lo}, {hi}] with {count} points"
        )));
    }
    let step = (hi - lo) / (count - 1) as f64;
    Ok((0..count)
        .map(|i| {
            if i + 1 == count {
                hi
            } else {
                lo + step * i as f64
            }
        })
        .collect())
}

/// Uniform grid with at least `per_period` (≥ 40) samples per classical period.
pub fn grid_per_period(lo: f64, hi: f64, t_cl: f64, per_period: usize) -> Result<Vec<f64>> {
    let per = per_period.max(40) as f64;
    let count = ((hi - lo) / t_cl.abs() * per).ceil() as usize + 1;
    uniform_grid(lo, hi, count)
}

/// e^{2πi ν t}, with ν t reduced modulo one before the exponential.
pub(crate) fn unit_phase(nu: f64, t: f64) -> Complex64 {
    let (s, c) = (2.0 * PI * frac_product(nu, t, 0.0)).sin_cos();
    Complex64::new(c, s)
}

/// e^{−iE_n t/ħ} for level n of `s`.
pub(crate) fn level_phase(s: &Spectrum1D, n: i64, t: f64) -> Result<Complex64> {
    let (sin, cos) = (-2.0 * PI * s.phase_cycles(n, t)?).sin_cos();
    Ok(Complex64::new(cos, sin))
}

fn weighted_sum(s: &Spectrum1D, weights: &[(i64, f64)], t_grid: &[f64]) -> Result<TimeSeries> {
    check_increasing(t_grid)?;
    let values = t_grid
        .par_iter()
        .map(|&t| {
            let mut acc = Complex64::new(0.0, 0.0);
            for &(n, w) in weights {
                acc += level_phase(s, n, t)?.conj() * w;
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    Ok(TimeSeries {
        times: t_grid.to_vec(),
        values,
    })
}

fn weights(
    c: &CoefficientSet,
    s: &Spectrum1D,
    sign: impl Fn(i64) -> f64,
) -> Result<Vec<(i64, f64)>> {
    c.iter()
        .map(|(n, a)| {
            s.frequency(n).map_err(|e| Error::Index(e.to_string()))?;
            Ok((n, sign(n) * a.norm_sqr()))
        })
        .collect()
}

/// A(t) = Σ |a_n|² e^{+iE_n t/ħ}.
pub fn autocorrelation(c: &CoefficientSet, s: &Spectrum1D, t_grid: &[f64]) -> Result<TimeSeries> {
    weighted_sum(s, &weights(c, s, |_| 1.0)?, t_grid)
}

/// Ā(t) = Σ (−1)^{n+1} |a_n|² e^{+iE_n t/ħ}, the overlap with the mirrored packet.
pub fn anticorrelation_infinite_well(
    c: &CoefficientSet,
    s: &Spectrum1D,
    t_grid: &[f64],
) -> Result<TimeSeries> {
    if s.model != Model::InfiniteWell {
        return Err(Error::Domain(
            "anticorrelation needs the infinite-well spectrum".into(),
        ));
    }
    if c.index_lo < 1 {
        return Err(Error::Index(format!(
            "infinite-well states start at 1, got {}",
            c.index_lo
        )));
    }
    weighted_sum(
        s,
        &weights(c, s, |n| if n % 2 == 0 { -1.0 } else { 1.0 })?,
        t_grid,
    )
}

/// Σ |a_n|⁴, the level about which |A|² fluctuates once the packet has collapsed.
pub fn incoherent_plateau(c: &CoefficientSet) -> f64 {
    c.coefficients.iter().map(|a| a.norm_sqr().powi(2)).sum()
}

/// (⟨E⟩, Var E) from the coefficient weights, normalized by Σ|a_n|².
pub fn energy_moments(c: &CoefficientSet, s: &Spectrum1D) -> Result<(f64, f64)> {
    let w = c.norm_sqr();
    let mut mean = 0.0;
    let mut second = 0.0;
    for (n, a) in c.iter() {
        let e = s.eval_energy(n as f64)?;
        mean += a.norm_sqr() * e;
        second += a.norm_sqr() * e * e;
    }
    mean /= w;
    Ok((mean, (second / w - mean * mean).max(0.0)))
}

/// Spreading time t0 = m b²/ħ.
pub fn spreading_time(p: &PacketParams1D) -> f64 {
    p.units.mass * p.width_b * p.width_b / p.units.hbar
}

/// Free Gaussian: (1 − iu)^{-1/2} exp[i b² p0² t / (2ħ² t0 (1 − iu))], u = t/2t0.
#[allow(non_snake_case)]
pub fn free_particle_A(t: f64, p: &PacketParams1D) -> Complex64 {
    accelerating_A(t, p, 0.0)
}

/// Gaussian in a uniform force field F; equals [`free_particle_A`] at F = 0.
#[allow(non_snake_case)]
pub fn accelerating_A(t: f64, p: &PacketParams1D, force: f64) -> Complex64 {
    let UnitSystem { hbar, mass, .. } = p.units;
    let t0 = spreading_time(p);
    let u = t / (2.0 * t0);
    let d = Complex64::new(1.0, -u);
    let alpha = p.width_b / hbar;
    let ft = alpha * force * t;
    let num = Complex64::new(
        -ft * ft * (1.0 + u * u),
        2.0 * p.p0 * p.p0 * t / (mass * hbar),
    );
    let drift = if force == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::from_polar(
            1.0,
            -force * t * (p.x0 - force * t * t / (6.0 * mass)) / hbar,
        )
    };
    d.powf(-0.5) * (num / (d * 4.0)).exp() * drift
}

/// Oscillator packets with closed-form autocorrelations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ShoMode {
    /// Coherent state with amplitude α.
    MinUncertainty { alpha: Complex64 },
    /// Centered Gaussian whose width is r times the ground-state width.
    Pulsating { r: f64 },
    /// Centered ground-state-width Gaussian with momentum p0 in V = −mω̃²x²/2.
    Inverted { p0: f64 },
}

/// Coherent amplitude α = sqrt(mω/2ħ)(x0 + i p0/mω).
pub fn coherent_alpha(x0: f64, p0: f64, omega: f64, units: UnitSystem) -> Complex64 {
    let m = units.mass;
    Complex64::new(x0, p0 / (m * omega)) * (m * omega / (2.0 * units.hbar)).sqrt()
}

/// A(t) for the oscillator packets; `omega` is ω (or ω̃ for the inverted case).
#[allow(non_snake_case)]
pub fn sho_A(t: f64, mode: ShoMode, omega: f64, units: UnitSystem) -> Result<Complex64> {
    let u = omega * t;
    Ok(match mode {
        ShoMode::MinUncertainty { alpha } => {
            let a2 = alpha.norm_sqr();
            Complex64::from_polar(1.0, 0.5 * u)
                * Complex64::new(-a2 * (1.0 - u.cos()), a2 * u.sin()).exp()
        }
        ShoMode::Pulsating { r } => {
            if !(r > 0.0) {
                return Err(Error::Domain(format!(
                    "pulsating width ratio must be positive, got {r}"
                )));
            }
            let s = 0.5 * (r + 1.0 / r);
            let z = Complex64::new(2.0 * u.cos(), -2.0 * s * u.sin());
            // −arg z stays within a quarter turn of u
            let phi = (s * u.sin()).atan2(u.cos());
            let theta = phi + 2.0 * PI * ((u - phi) / (2.0 * PI)).round();
            Complex64::from_polar((2.0 / z.norm()).sqrt(), 0.5 * theta)
        }
        ShoMode::Inverted { p0 } => {
            let (ch, sh) = (u.cosh(), u.sinh());
            let k = p0 * p0 / (2.0 * units.mass * omega * units.hbar);
            let num = Complex64::new(ch - 1.0, sh * (2.0 * ch - 1.0));
            let den = Complex64::new(ch, -sh) * ch;
            (num / den * k).exp() / ch.sqrt()
        }
    })
}

/// Poisson-summed Gaussian-packet autocorrelation, omitting the global
/// phase e^{iE(n0)t/ħ}. `t_cl` and `t_rev` carry the signs of E' and E''.
#[allow(non_snake_case)]
pub fn nauenberg_A(
    t: f64,
    n0: f64,
    delta_n: f64,
    t_cl: f64,
    t_rev: f64,
    m_window: u32,
) -> Result<Complex64> {
    let needed = 3.0 + (t / t_cl).abs().ceil();
    if (m_window as f64) < needed {
        return Err(Error::Truncation(format!(
            "m_window {m_window} below the required {needed}"
        )));
    }
    let rev_term = if t_rev.is_infinite() {
        0.0
    } else {
        4.0 * PI * t / t_rev
    };
    let alpha = Complex64::new(1.0 / (delta_n * delta_n), -rev_term) / (4.0 * PI * PI);
    let tau = t / t_cl;
    let mw = m_window as i64;
    let sum: Complex64 = (-mw..=mw)
        .map(|m| {
            let d = m as f64 - tau;
            let frac = (m as f64 * n0).fract();
            Complex64::from_polar(1.0, -2.0 * PI * frac)
                * (Complex64::new(-d * d, 0.0) / (alpha * 2.0)).exp()
        })
        .sum();
    Ok(sum / (alpha.sqrt() * 2.0 * PI * delta_n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CollapseFlavor {
    InfiniteWell,
    Bouncer,
    /// Time for the Gaussian envelope width to double.
    Envelope,
}

pub fn collapse_time(delta_n: f64, t_rev: f64, flavor: CollapseFlavor) -> Result<f64> {
    if !(delta_n > 0.0) || !(t_rev > 0.0) {
        return Err(Error::Domain(format!(
            "collapse time needs positive inputs, got {delta_n}, {t_rev}"
        )));
    }
    Ok(match flavor {
        CollapseFlavor::InfiniteWell => t_rev / (4.0 * 12f64.sqrt() * delta_n),
        CollapseFlavor::Bouncer => t_rev / (8.0 / PI * delta_n),
        CollapseFlavor::Envelope => t_rev / (2.0 * PI.sqrt() * delta_n),
    })
}

/// Result of checking |A(t)|² ≥ cos²(ΔH t/ħ) on 0 ≤ t ≤ πħ/2ΔH.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MandelstamReport {
    pub holds: bool,
    pub samples_checked: usize,
    /// (t, |A|², cos²) at the first failing sample.
    pub first_violation: Option<(f64, f64, f64)>,
}

pub fn mandelstam_check(series: &TimeSeries, delta_h: f64, hbar: f64) -> Result<MandelstamReport> {
    if !(delta_h >= 0.0) {
        return Err(Error::Domain(format!(
            "energy spread must be non-negative, got {delta_h}"
        )));
    }
    let t_end = if delta_h == 0.0 {
        f64::INFINITY
    } else {
        PI * hbar / (2.0 * delta_h)
    };
    let inside: Vec<(f64, f64)> = series
        .times
        .iter()
        .zip(&series.values)
        .filter(|(t, _)| **t >= 0.0 && **t <= t_end)
        .map(|(t, v)| (*t, v.norm_sqr()))
        .collect();
    let covers = series.times.first().is_some_and(|t| *t <= 0.0)
        && (t_end.is_infinite()
            || series
                .times
                .last()
                .is_some_and(|t| *t >= t_end * (1.0 - 1e-12)));
    if inside.len() < 100 || !covers {
        return Err(Error::Domain(format!(
            "series must cover [0, {t_end}] with at least 100 samples, has {} inside",
            inside.len()
        )));
    }
    let first_violation = inside.iter().find_map(|&(t, a2)| {
        let bound = (delta_h * t / hbar).cos().powi(2);
        (a2 < bound - 1e-9).then_some((t, a2, bound))
    });
    Ok(MandelstamReport {
        holds: first_violation.is_none(),
        samples_checked: inside.len(),
        first_violation,
    })
}
