//! Clone amplitudes at rational fractions of the revival time, and
//! windowed peak detection in computed autocorrelation series.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::dynamics::TimeSeries;
use crate::{Error, Result};

/// Clone amplitudes b_r at t = (p/q)·T_rev.
///
/// The packet at that time is Σ_r b_r ψ_cl(t + r·T_cl/l).
#[derive(Debug, Clone, PartialEq)]
pub struct GaussSumTable {
    pub p: i64,
    pub q: i64,
    pub period_l: i64,
    pub b: Vec<Complex64>,
    /// The original (p, q) when the input was not in lowest terms.
    pub reduced_from: Option<(i64, i64)>,
}

impl GaussSumTable {
    pub fn norm_sqr(&self) -> f64 {
        self.b.iter().map(|b| b.norm_sqr()).sum()
    }

    /// Amplitude of the clone displaced by r·T_cl/q.
    ///
    /// Equals b_r when l = q; when l = q/2 the clones sit on every other
    /// point of this grid and the odd entries are zero.
    pub fn amplitude_at(&self, r: i64) -> Complex64 {
        let r = r.rem_euclid(self.q);
        if self.period_l == self.q {
            self.b[r as usize]
        } else if r % 2 == 0 {
            self.b[(r / 2) as usize]
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    /// Right side of Σ_s b_s e^{−2πisk/l} = e^{−2πipk²/q} for index k.
    pub fn reconstruct(&self, k: i64) -> Complex64 {
        let l = self.period_l;
        self.b
            .iter()
            .enumerate()
            .map(|(s, b)| b * turn(-(s as i64) * k, l))
            .sum()
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// e^{2πi num/den}, with num reduced modulo den in integers first.
fn turn(num: i64, den: i64) -> Complex64 {
    let m = num.rem_euclid(den);
    let (s, c) = (2.0 * PI * m as f64 / den as f64).sin_cos();
    Complex64::new(c, s)
}

fn reduce(p: i64, q: i64) -> Result<(i64, i64, Option<(i64, i64)>)> {
    if p <= 0 || q <= 0 {
        return Err(Error::Domain(format!("fraction {p}/{q} needs p, q > 0")));
    }
    let g = gcd(p, q);
    Ok((p / g, q / g, (g != 1).then_some((p, q))))
}

/// Period in k of e^{−2πipk²/q} for coprime (p, q).
pub fn gauss_period(q: i64) -> i64 {
    if q % 4 == 0 {
        q / 2
    } else {
        q
    }
}

/// b_r = (1/l) Σ_k e^{−2πipk²/q} e^{−2πikr/l}, summed directly.
pub fn gauss_coefficients(p: i64, q: i64) -> Result<GaussSumTable> {
    let (p, q, reduced_from) = reduce(p, q)?;
    let l = gauss_period(q);
    let lq = l
        .checked_mul(q)
        .ok_or_else(|| Error::Range(format!("q = {q} too large")))?;
    // the k² term is reduced modulo q before scaling so the products stay small
    let b = (0..l)
        .map(|r| {
            let sum: Complex64 = (0..l)
                .map(|k| {
                    let quad = ((p % q) * ((k * k) % q)) % q;
                    turn(-(quad * l + k * r * q), lq)
                })
                .sum();
            sum / l as f64
        })
        .collect();
    Ok(GaussSumTable {
        p,
        q,
        period_l: l,
        b,
        reduced_from,
    })
}

/// Predicted clone layout at (p/q)·T_rev.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CloneStructure {
    pub count: i64,
    /// Clone spacing as a fraction of T_cl.
    pub spacing: f64,
    /// Expected |A|² peak when one clone overlaps the initial packet.
    pub peak_abs2: f64,
}

pub fn clone_structure(p: i64, q: i64) -> Result<CloneStructure> {
    let (_, q, _) = reduce(p, q)?;
    Ok(if q % 2 == 1 {
        CloneStructure {
            count: q,
            spacing: 1.0 / q as f64,
            peak_abs2: 1.0 / q as f64,
        }
    } else {
        CloneStructure {
            count: q / 2,
            spacing: 2.0 / q as f64,
            peak_abs2: 2.0 / q as f64,
        }
    })
}

/// Whether the q-clone peak stands above the collapsed background 1/(2√π Δn).
pub fn resolvable(q: i64, delta_n: f64) -> bool {
    if q == 1 {
        return true;
    }
    let peak = if q % 2 == 1 {
        1.0 / q as f64
    } else {
        2.0 / q as f64
    };
    peak > 1.0 / (2.0 * PI.sqrt() * delta_n)
}

/// Checks b_{r'} = e^{2πi(r/l + p/q)} b_r with r' = (r + 2pl/q) mod l.
pub fn verify_recursion(table: &GaussSumTable) -> bool {
    let (p, q, l) = (table.p, table.q, table.period_l);
    if table.b.len() as i64 != l || (2 * p * l) % q != 0 {
        return false;
    }
    let shift = 2 * p * l / q;
    (0..l).all(|r| {
        let next = table.b[(r + shift).rem_euclid(l) as usize];
        let rhs = turn(r * q + p * l, l * q) * table.b[r as usize];
        (next - rhs).norm() <= 1e-12
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeakReport {
    pub p: i64,
    pub q: i64,
    /// Time of the windowed maximum.
    pub time: f64,
    pub measured: f64,
    pub predicted: f64,
}

/// Windowed max of |A|² in (p/q)·t_rev ± t_cl for every reduced p/q with
/// q ≤ max_q whose window lies inside the series.
pub fn detect_peaks(
    series: &TimeSeries,
    t_cl: f64,
    t_rev: f64,
    max_q: i64,
) -> Result<Vec<PeakReport>> {
    if !(t_cl > 0.0) || !(t_rev > 0.0) || max_q < 1 {
        return Err(Error::Domain(format!(
            "detect_peaks needs t_cl, t_rev > 0 and max_q ≥ 1 (got {t_cl}, {t_rev}, {max_q})"
        )));
    }
    let widest = series
        .times
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(0.0, f64::max);
    if series.len() < 2 || widest > t_cl / 40.0 * (1.0 + 1e-9) {
        return Err(Error::Domain(format!(
            "grid too coarse: step {widest} exceeds T_cl/40 = {}",
            t_cl / 40.0
        )));
    }
    let (first, last) = (series.times[0], series.times[series.len() - 1]);
    let mut out = Vec::new();
    for q in 1..=max_q {
        for p in 1..=q {
            if gcd(p, q) != 1 {
                continue;
            }
            let centre = t_rev * p as f64 / q as f64;
            let (lo, hi) = (centre - t_cl, centre + t_cl);
            if lo < first || hi > last {
                continue;
            }
            if let Some((time, measured)) = series.max_abs2_in(lo, hi) {
                let predicted = clone_structure(p, q)?.peak_abs2;
                out.push(PeakReport {
                    p,
                    q,
                    time,
                    measured,
                    predicted,
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{autocorrelation, grid_per_period};
    use crate::packets::gaussian_model_coefficients;
    use crate::spectra::Spectrum1D;

    fn coprime_pairs(max_q: i64) -> impl Iterator<Item = (i64, i64)> {
        (1..=max_q).flat_map(|q| {
            (1..=q)
                .filter(move |p| gcd(*p, q) == 1)
                .map(move |p| (p, q))
        })
    }

    #[test]
    fn parseval_and_reconstruction() {
        for (p, q) in coprime_pairs(50) {
            let t = gauss_coefficients(p, q).unwrap();
            assert!((t.norm_sqr() - 1.0).abs() < 1e-12, "{p}/{q}");
            for k in 0..t.period_l {
                let quad = (p * ((k * k) % q)) % q;
                assert!(
                    (t.reconstruct(k) - turn(-quad, q)).norm() < 1e-12,
                    "{p}/{q} k={k}"
                );
            }
            assert!(verify_recursion(&t), "{p}/{q}");
        }
    }

    #[test]
    fn moduli_by_residue_class() {
        for (p, q) in coprime_pairs(50) {
            let t = gauss_coefficients(p, q).unwrap();
            match q % 4 {
                1 | 3 => assert!(t
                    .b
                    .iter()
                    .all(|b| (b.norm_sqr() - 1.0 / q as f64).abs() < 1e-12)),
                2 => {
                    for (r, b) in t.b.iter().enumerate() {
                        if r % 2 == 0 {
                            assert!(b.norm() < 1e-12, "{p}/{q} r={r}");
                        } else {
                            assert!((b.norm_sqr() - 2.0 / q as f64).abs() < 1e-12);
                        }
                    }
                }
                _ => assert!(t
                    .b
                    .iter()
                    .all(|b| (b.norm_sqr() - 2.0 / q as f64).abs() < 1e-12)),
            }
        }
    }

    #[test]
    fn explicit_values() {
        let third = gauss_coefficients(1, 3).unwrap();
        let b0 = Complex64::new(0.0, -1.0 / 3f64.sqrt());
        assert!((third.b[0] - b0).norm() < 1e-12);
        let w = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
        assert!((third.b[1] - w * b0).norm() < 1e-12);
        assert!((third.b[2] - w * b0).norm() < 1e-12);

        let half = gauss_coefficients(1, 2).unwrap();
        assert!(half.b[0].norm() < 1e-12 && (half.b[1] - 1.0).norm() < 1e-12);

        let quarter = gauss_coefficients(1, 4).unwrap();
        assert_eq!(quarter.period_l, 2);
        let s = 0.5f64.sqrt();
        assert!((quarter.amplitude_at(0) - Complex64::from_polar(s, -PI / 4.0)).norm() < 1e-12);
        assert!(quarter.amplitude_at(1).norm() < 1e-12);
        assert!((quarter.amplitude_at(2) - Complex64::from_polar(s, PI / 4.0)).norm() < 1e-12);
    }

    #[test]
    fn reduction_is_reported() {
        let t = gauss_coefficients(2, 6).unwrap();
        assert_eq!((t.p, t.q, t.reduced_from), (1, 3, Some((2, 6))));
        assert!(gauss_coefficients(0, 3).is_err());
        assert!(gauss_coefficients(1, -2).is_err());
    }

    #[test]
    fn clone_layouts() {
        let c = |p, q| {
            let s = clone_structure(p, q).unwrap();
            (s.count, s.spacing, s.peak_abs2)
        };
        assert_eq!(c(1, 3), (3, 1.0 / 3.0, 1.0 / 3.0));
        assert_eq!(c(1, 4), (2, 0.5, 0.5));
        assert_eq!(c(1, 2), (1, 1.0, 1.0));
        assert!(resolvable(3, 6.0));
        assert!(!resolvable(37, 6.0));
        assert!(resolvable(1, 1e-3));
    }

    #[test]
    fn case_a_peaks() {
        let s = Spectrum1D::case_a();
        let c = gaussian_model_coefficients(400.0, 6.0, 1e-10).unwrap();
        let mut grid = grid_per_period(390.0, 420.0, 2.0, 40).unwrap();
        grid.extend(grid_per_period(590.0, 610.0, 2.0, 40).unwrap());
        grid.extend(grid_per_period(780.0, 820.0, 2.0, 40).unwrap());
        let series = autocorrelation(&c, &s, &grid).unwrap();
        let peaks = detect_peaks(&series, 2.0, 1600.0, 4);
        // the concatenated grid has gaps wider than T_cl/40
        assert!(peaks.is_err());

        let find = |lo: f64, hi: f64, p: i64, q: i64| {
            let g = grid_per_period(lo, hi, 2.0, 40).unwrap();
            let series = autocorrelation(&c, &s, &g).unwrap();
            detect_peaks(&series, 2.0, 1600.0, q)
                .unwrap()
                .into_iter()
                .find(|r| r.p == p && r.q == q)
                .unwrap()
        };
        // the half-period offset of the mirror clone costs quadratic spreading over T_cl/2
        let h = find(790.0, 810.0, 1, 2);
        let chirp = 4.0 * PI * 36.0 * 1.0 / 1600.0;
        assert!(
            (h.measured - 1.0 / (1.0 + chirp * chirp).sqrt()).abs() < 1e-3,
            "{h:?}"
        );
        let t = find(525.0, 545.0, 1, 3);
        assert!((t.measured - 1.0 / 3.0).abs() < 0.03, "{t:?}");
        let f = find(390.0, 410.0, 1, 4);
        assert!((f.measured - 0.5).abs() < 0.03, "{f:?}");
        assert_eq!(f.predicted, 0.5);
    }
}
