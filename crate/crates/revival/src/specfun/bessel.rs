//! Bessel functions of the first kind by Miller's backward recurrence,
//! plus the Neumann-series Y_m used for annular boundary conditions.

use std::f64::consts::PI;

use super::{newton_bracketed, RootResult};
use crate::{Error, Result};

/// Largest argument accepted by the Bessel routines.
pub const BESSEL_MAX_ARG: f64 = 1000.0;
/// Largest order accepted by the Bessel routines.
pub const BESSEL_MAX_ORDER: u32 = 200;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const RESCALE: f64 = 1e250;

fn check_range(order: u32, z: f64) -> Result<()> {
    if !(z >= 0.0) || !z.is_finite() {
        return Err(Error::Domain(format!(
            "Bessel argument must be finite and >= 0, got {z}"
        )));
    }
    if z > BESSEL_MAX_ARG || order > BESSEL_MAX_ORDER {
        return Err(Error::Range(format!(
            "J_{order}({z}) outside order <= {BESSEL_MAX_ORDER}, z <= {BESSEL_MAX_ARG}"
        )));
    }
    Ok(())
}

/// J_0(z), ..., J_max_order(z).
pub fn bessel_j_sequence(max_order: u32, z: f64) -> Result<Vec<f64>> {
    check_range(max_order, z)?;
    let len = max_order as usize + 1;
    let mut out = vec![0.0; len];
    if z == 0.0 {
        out[0] = 1.0;
        return Ok(out);
    }
    if z < 1e-6 {
        // two-term ascending series
        let h = 0.5 * z;
        let mut lead = 1.0;
        for (n, v) in out.iter_mut().enumerate() {
            if n > 0 {
                lead *= h / n as f64;
            }
            *v = lead * (1.0 - h * h / (n as f64 + 1.0));
        }
        return Ok(out);
    }
    let scale = (max_order as f64).max(z);
    let mut start = (scale + 60.0 + 15.0 * scale.cbrt()).ceil() as usize;
    start += start % 2;
    let mut vals = vec![0.0; start + 2];
    vals[start] = 1e-30;
    let two_over_z = 2.0 / z;
    for k in (1..=start).rev() {
        let prev = k as f64 * two_over_z * vals[k] - vals[k + 1];
        vals[k - 1] = prev;
        if prev.abs() > RESCALE {
            for v in vals[k - 1..].iter_mut() {
                *v /= RESCALE;
            }
        }
    }
    let mut norm = vals[0];
    for k in (2..=start).step_by(2) {
        norm += 2.0 * vals[k];
    }
    for (n, v) in out.iter_mut().enumerate() {
        *v = vals[n] / norm;
    }
    Ok(out)
}

/// J_order(z), absolute accuracy better than 1e-12 on the validated range.
pub fn bessel_j(order: u32, z: f64) -> Result<f64> {
    Ok(bessel_j_sequence(order, z)?[order as usize])
}

/// dJ_order/dz.
pub fn bessel_j_prime(order: u32, z: f64) -> Result<f64> {
    let seq = bessel_j_sequence(order + 1, z)?;
    let m = order as usize;
    Ok(if m == 0 {
        -seq[1]
    } else {
        0.5 * (seq[m - 1] - seq[m + 1])
    })
}

/// J_0..J_max and Y_0..Y_max at `z > 0`. Y grows without bound for large
/// orders at small argument and may overflow to infinity.
pub(crate) fn bessel_y_sequence(max_order: u32, z: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if !(z > 0.0) {
        return Err(Error::Domain(format!("Y_m needs z > 0, got {z}")));
    }
    check_range(max_order, z)?;
    // Neumann series needs J up to where the terms die out
    let top = ((z + 40.0 + 10.0 * z.cbrt()).ceil() as u32).max(max_order + 2);
    let j = if z < 1e-6 {
        small_j(top, z)
    } else {
        miller_unchecked(top, z)
    };
    let log_term = (0.5 * z).ln() + EULER_GAMMA;
    let mut s0 = 0.0;
    let mut s1 = 0.0;
    let mut k = 1usize;
    while 2 * k + 1 < j.len() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        s0 += sign * j[2 * k] / k as f64;
        s1 += sign * (j[2 * k - 1] - j[2 * k + 1]) / k as f64;
        k += 1;
    }
    let y0 = 2.0 / PI * log_term * j[0] - 4.0 / PI * s0;
    let y1 = -2.0 / (PI * z) * j[0] + 2.0 / PI * log_term * j[1] + 2.0 / PI * s1;
    let len = max_order as usize + 1;
    let mut y = Vec::with_capacity(len);
    y.push(y0);
    if len > 1 {
        y.push(y1);
    }
    for n in 1..len.saturating_sub(1) {
        let next = 2.0 * n as f64 / z * y[n] - y[n - 1];
        y.push(next);
    }
    let mut jv = j;
    jv.truncate(len);
    Ok((jv, y))
}

fn small_j(top: u32, z: f64) -> Vec<f64> {
    let h = 0.5 * z;
    let mut lead = 1.0;
    (0..=top)
        .map(|n| {
            if n > 0 {
                lead *= h / n as f64;
            }
            lead * (1.0 - h * h / (n as f64 + 1.0))
        })
        .collect()
}

fn miller_unchecked(top: u32, z: f64) -> Vec<f64> {
    let scale = (top as f64).max(z);
    let mut start = (scale + 60.0 + 15.0 * scale.cbrt()).ceil() as usize;
    start += start % 2;
    let mut vals = vec![0.0; start + 2];
    vals[start] = 1e-30;
    for k in (1..=start).rev() {
        let prev = 2.0 * k as f64 / z * vals[k] - vals[k + 1];
        vals[k - 1] = prev;
        if prev.abs() > RESCALE {
            for v in vals[k - 1..].iter_mut() {
                *v /= RESCALE;
            }
        }
    }
    let mut norm = vals[0];
    for k in (2..=start).step_by(2) {
        norm += 2.0 * vals[k];
    }
    vals.truncate(top as usize + 1);
    vals.iter_mut().for_each(|v| *v /= norm);
    vals
}

/// (J_m(z), Y_m(z)) divided by their joint modulus, so the pair stays
/// finite where Y_m overflows.
pub(crate) fn cylinder_pair(order: u32, z: f64) -> Result<(f64, f64)> {
    let (j, y) = bessel_y_sequence(order, z)?;
    let (jm, ym) = (j[order as usize], y[order as usize]);
    if !ym.is_finite() || ym.abs() > 1e290 {
        let s = if ym.is_nan() { -1.0 } else { ym.signum() };
        return Ok((0.0, s));
    }
    let r = jm.hypot(ym);
    Ok((jm / r, ym / r))
}

/// Starting estimate for the `n_r`-th positive zero of J_order from the
/// radial WKB expansion in powers of m/z0, z0 = (n_r + m/2 + 3/4)π.
pub fn bessel_zero_seed(order: u32, n_r: u32) -> f64 {
    let m = order as f64;
    let z0 = (n_r as f64 + 0.5 * m + 0.75) * PI;
    if order == 0 {
        return z0 + 1.0 / (8.0 * z0);
    }
    let m2 = m * m;
    z0 - m2 / (2.0 * z0)
        - 7.0 / 24.0 * m2 * m2 / z0.powi(3)
        - 83.0 / 240.0 * m2.powi(3) / z0.powi(5)
        - 6949.0 / 13440.0 * m2.powi(4) / z0.powi(7)
}

// Radial WKB phase sqrt(z^2 - m^2) - m arccos(m/z); its level (n_r + 3/4)π
// approximates the n_r-th zero uniformly in m.
fn wkb_phase(m: f64, z: f64) -> f64 {
    if z <= m {
        return 0.0;
    }
    (z * z - m * m).sqrt() - m * (m / z).acos()
}

fn wkb_phase_inverse(m: f64, level: f64) -> f64 {
    let (mut lo, mut hi) = (m, m + level + 2.0 * (m + 1.0).cbrt() + 10.0);
    while wkb_phase(m, hi) < level {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if wkb_phase(m, mid) < level {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-14 * hi {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// The `n_r`-th positive zero of J_order (n_r = 0 is the first zero).
///
/// The zero is bracketed between the WKB phase levels (n_r + 1/4)π and
/// (n_r + 5/4)π and refined by safeguarded Newton from the expansion seed.
pub fn bessel_zero(order: u32, n_r: u32) -> Result<RootResult> {
    if order > 60 || n_r > 200 {
        return Err(Error::Range(format!(
            "bessel_zero({order}, {n_r}) needs order <= 60, n_r <= 200"
        )));
    }
    let m = order as f64;
    let mut lo = wkb_phase_inverse(m, (n_r as f64 + 0.25) * PI);
    let mut hi = wkb_phase_inverse(m, (n_r as f64 + 1.25) * PI);
    if order > 0 {
        lo = lo.max(m);
    }
    let seed = bessel_zero_seed(order, n_r);
    let wkb = wkb_phase_inverse(m, (n_r as f64 + 0.75) * PI);
    let start = if (seed - wkb).abs() < 0.1 && seed > lo && seed < hi {
        seed
    } else {
        wkb
    };
    let f = |z: f64| {
        let seq = bessel_j_sequence(order + 1, z).expect("bracket inside validated range");
        let o = order as usize;
        let d = if o == 0 {
            -seq[1]
        } else {
            0.5 * (seq[o - 1] - seq[o + 1])
        };
        (seq[o], d)
    };
    // widen once if the WKB bracket misses the sign change
    if f(lo).0.signum() == f(hi).0.signum() {
        lo = (lo - 0.25 * PI).max(if order > 0 { m } else { 0.1 });
        hi += 0.25 * PI;
    }
    let root = newton_bracketed(f, lo, hi, start)?;
    let phase_index = (wkb_phase(m, root.value) / PI - 0.75).round();
    if phase_index != n_r as f64 {
        return Err(Error::Root(format!(
            "zero of J_{order} near {} has WKB index {phase_index}, expected {n_r}",
            root.value
        )));
    }
    Ok(root)
}

#[cfg(test)]
mod tests {
    use super::*;

    // ascending power series, accurate for moderate z
    fn series_j(n: u32, z: f64) -> f64 {
        let h = 0.5 * z;
        let mut term = h.powi(n as i32) / (1..=n).map(|k| k as f64).product::<f64>();
        let mut sum = term;
        for k in 1..200 {
            term *= -h * h / (k as f64 * (k + n) as f64);
            sum += term;
            if term.abs() < 1e-18 * sum.abs().max(1e-300) {
                break;
            }
        }
        sum
    }

    #[test]
    fn values_at_origin() {
        assert_eq!(bessel_j(0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(1, 0.0).unwrap(), 0.0);
        assert_eq!(bessel_j(7, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn matches_power_series() {
        // the series loses digits to cancellation as z grows
        for &(z, tol) in &[
            (0.1, 1e-15),
            (1.0, 1e-15),
            (2.5, 1e-14),
            (7.3, 1e-12),
            (12.0, 1e-11),
        ] {
            for n in [0u32, 1, 2, 5, 10, 20] {
                let a = bessel_j(n, z).unwrap();
                let b = series_j(n, z);
                assert!((a - b).abs() < tol, "J_{n}({z}): {a} vs {b}");
            }
        }
    }

    #[test]
    fn first_zero_of_j0_by_bisection_oracle() {
        let (mut lo, mut hi) = (2.0, 3.0);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if series_j(0, mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!((lo - 2.404_825_557_695_773).abs() < 1e-12);
        assert!(bessel_j(0, 2.40482556).unwrap().abs() < 1e-8);
        let r = bessel_zero(0, 0).unwrap();
        assert!((r.value - lo).abs() < 1e-6);
        assert!(r.residual.abs() <= 1e-12);
    }

    #[test]
    fn wronskian_at_large_argument() {
        // J_{n+1} Y_n - J_n Y_{n+1} = 2/(pi z)
        for &z in &[0.05, 3.0, 55.0, 240.0, 720.0] {
            let (j, y) = bessel_y_sequence(12, z).unwrap();
            for n in 0..12 {
                let w = j[n + 1] * y[n] - j[n] * y[n + 1];
                let expect = 2.0 / (PI * z);
                assert!(
                    (w - expect).abs() < 1e-12 * expect.max(1.0),
                    "z={z} n={n}: {w} vs {expect}"
                );
            }
        }
    }

    #[test]
    fn recurrence_holds_at_large_argument() {
        let z = 650.0;
        let j = bessel_j_sequence(60, z).unwrap();
        for n in 1..60 {
            let r = 2.0 * n as f64 / z * j[n] - j[n - 1] - j[n + 1];
            assert!(r.abs() < 1e-14);
        }
        // Hankel asymptotic for J_0
        let chi = z - PI / 4.0;
        let mu = 0.0;
        let p = 1.0 - (mu - 1.0) * (mu - 9.0) / (2.0 * (8.0 * z).powi(2));
        let q = (mu - 1.0) / (8.0 * z);
        let asym = (2.0 / (PI * z)).sqrt() * (p * chi.cos() - q * chi.sin());
        assert!((j[0] - asym).abs() < 1e-10);
    }

    #[test]
    fn seed_for_lowest_order_zero() {
        let z0 = 0.75 * PI;
        assert!((z0 - 2.3562).abs() < 1e-4);
        let seed = bessel_zero_seed(5, 10);
        let r = bessel_zero(5, 10).unwrap();
        assert!(
            (seed - r.value).abs() < 1e-2,
            "seed {seed} refined {}",
            r.value
        );
        assert!(r.residual.abs() <= 1e-12);
    }

    #[test]
    fn interlacing_and_monotone() {
        for m in 0..=10u32 {
            let mut prev = 0.0;
            for k in 0..=20u32 {
                let a = bessel_zero(m, k).unwrap().value;
                let b = bessel_zero(m + 1, k).unwrap().value;
                let c = bessel_zero(m, k + 1).unwrap().value;
                assert!(a < b && b < c, "m={m} k={k}: {a} {b} {c}");
                assert!(a > prev);
                prev = a;
            }
        }
    }

    #[test]
    fn extreme_zeros_meet_residual() {
        for (m, k) in [(60u32, 0u32), (60, 200), (0, 200), (37, 123)] {
            let r = bessel_zero(m, k).unwrap();
            let re = bessel_j(m, r.value).unwrap();
            assert!(re.abs() <= 1e-12, "({m},{k}) residual {re:e}");
        }
    }

    #[test]
    fn out_of_range_is_rejected() {
        assert!(matches!(bessel_j(3, 1500.0), Err(Error::Range(_))));
        assert!(matches!(bessel_j(3, -1.0), Err(Error::Domain(_))));
        assert!(matches!(bessel_zero(61, 0), Err(Error::Range(_))));
    }

    #[test]
    fn cylinder_pair_survives_overflow() {
        let (j, y) = cylinder_pair(60, 1e-3).unwrap();
        assert_eq!(j, 0.0);
        assert_eq!(y, -1.0);
        let (j, y) = cylinder_pair(2, 4.0).unwrap();
        assert!(((j * j + y * y) - 1.0).abs() < 1e-14);
    }
}
