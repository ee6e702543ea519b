//! Airy function Ai on the real line.
//!
//! |x| >= 9 uses the asymptotic expansions. Inside, values come from a
//! table of (Ai, Ai') at spacing 0.25 built once by Taylor stepping of
//! y'' = x y, evaluated by a local Taylor series from the nearest node.

use std::f64::consts::PI;
use std::sync::OnceLock;

use super::{newton_bracketed, RootResult};
use crate::{Error, Result};

const AI0: f64 = 0.355_028_053_887_817_2;
const AIP0: f64 = -0.258_819_403_792_806_8;
const EDGE: f64 = 9.0;
const STEP: f64 = 0.25;
const NODES: usize = 73; // -9..=9 at 0.25

// u_k coefficients of the asymptotic series
fn u_coeffs() -> &'static [(f64, f64)] {
    static C: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    C.get_or_init(|| {
        let mut out = vec![(1.0, 1.0)];
        let mut u = 1.0;
        for k in 1..40 {
            let kf = k as f64;
            u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
                / ((2.0 * kf - 1.0) * 216.0 * kf);
            let v = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u;
            out.push((u, v));
        }
        out
    })
}

// (Ai, Ai') for x >= EDGE
fn asymptotic_positive(x: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    let (mut su, mut sv) = (0.0, 0.0);
    let mut pow = 1.0;
    let mut last = f64::INFINITY;
    for (k, &(u, v)) in u_coeffs().iter().enumerate() {
        let tu = u * pow;
        if tu.abs() > last {
            break;
        }
        last = tu.abs();
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        su += sign * tu;
        sv += sign * v * pow;
        if tu.abs() < 1e-17 {
            break;
        }
        pow /= zeta;
    }
    let e = (-zeta).exp() / (2.0 * PI.sqrt());
    let q = x.powf(0.25);
    (e / q * su, -e * q * sv)
}

// (Ai(-x), Ai'(-x)) for x >= EDGE
fn asymptotic_negative(x: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    let (mut pu, mut qu, mut pv, mut qv) = (0.0, 0.0, 0.0, 0.0);
    let mut pow = 1.0;
    let mut last = f64::INFINITY;
    for (k, &(u, v)) in u_coeffs().iter().enumerate() {
        let tu = u * pow;
        if tu.abs() > last {
            break;
        }
        last = tu.abs();
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            pu += sign * tu;
            pv += sign * v * pow;
        } else {
            qu += sign * tu;
            qv += sign * v * pow;
        }
        if tu.abs() < 1e-17 {
            break;
        }
        pow /= zeta;
    }
    let (s, c) = (zeta + 0.25 * PI).sin_cos();
    let q = x.powf(0.25);
    let ai = (s * pu - c * qu) / (PI.sqrt() * q);
    let aip = -q / PI.sqrt() * (c * pv + s * qv);
    (ai, aip)
}

// Taylor expansion of the solution through (x0, y, y'), evaluated at x0 + h
// for |h| <= STEP; 40 terms reach machine precision for |x0| <= 9.
fn taylor(x0: f64, y: f64, yp: f64, h: f64) -> (f64, f64) {
    let mut c = [0.0f64; 40];
    c[0] = y;
    c[1] = yp;
    c[2] = 0.5 * x0 * y;
    for k in 3..40 {
        // k (k-1) c_k = x0 c_{k-2} + c_{k-3}
        c[k] = (x0 * c[k - 2] + c[k - 3]) / (k as f64 * (k as f64 - 1.0));
    }
    let mut val = 0.0;
    let mut der = 0.0;
    for k in (0..40).rev() {
        val = val * h + c[k];
        if k > 0 {
            der = der * h + k as f64 * c[k];
        }
    }
    (val, der)
}

fn table() -> &'static [(f64, f64); NODES] {
    static T: OnceLock<[(f64, f64); NODES]> = OnceLock::new();
    T.get_or_init(|| {
        let mut t = [(0.0, 0.0); NODES];
        let zero = (EDGE / STEP) as usize; // index of x = 0
        t[zero] = (AI0, AIP0);
        // negative side, stepping left from the origin
        for i in (0..zero).rev() {
            let x0 = -EDGE + (i + 1) as f64 * STEP;
            let (y, yp) = t[i + 1];
            t[i] = taylor(x0, y, yp, -STEP);
        }
        // positive side, stepping left from the asymptotic edge value
        t[NODES - 1] = asymptotic_positive(EDGE);
        for i in (zero + 1..NODES - 1).rev() {
            let x0 = -EDGE + (i + 1) as f64 * STEP;
            let (y, yp) = t[i + 1];
            t[i] = taylor(x0, y, yp, -STEP);
        }
        t
    })
}

fn airy_pair(x: f64) -> (f64, f64) {
    if x >= EDGE {
        return asymptotic_positive(x);
    }
    if x <= -EDGE {
        return asymptotic_negative(-x);
    }
    let idx = ((x + EDGE) / STEP).round() as usize;
    let x0 = -EDGE + idx as f64 * STEP;
    let (y, yp) = table()[idx];
    taylor(x0, y, yp, x - x0)
}

/// Ai(x).
pub fn airy_ai(x: f64) -> f64 {
    airy_pair(x).0
}

/// Ai'(x).
pub fn airy_ai_prime(x: f64) -> f64 {
    airy_pair(x).1
}

/// WKB estimate (3π(n + 3/4)/2)^(2/3) of the n-th zero of Ai(-y).
pub fn airy_zero_seed(n: u32) -> f64 {
    (1.5 * PI * (n as f64 + 0.75)).powf(2.0 / 3.0)
}

/// n-th zero y_n > 0 of Ai(-y), n = 0 being the smallest.
pub fn airy_zero(n: u32) -> Result<RootResult> {
    if n > 500 {
        return Err(Error::Range(format!("airy_zero({n}) needs n <= 500")));
    }
    let level = |l: f64| (1.5 * l * PI).powf(2.0 / 3.0);
    let lo = level(n as f64 + 0.25);
    let hi = level(n as f64 + 1.25);
    newton_bracketed(
        |y| {
            let (a, ap) = airy_pair(-y);
            (a, -ap)
        },
        lo,
        hi,
        airy_zero_seed(n),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    // Maclaurin pair Ai = c1 f - c2 g
    fn maclaurin(x: f64) -> f64 {
        let c1 = AI0;
        let c2 = -AIP0;
        let x3 = x * x * x;
        let (mut f, mut g) = (1.0, x);
        let (mut tf, mut tg) = (1.0, x);
        for k in 1..120 {
            let kf = k as f64;
            tf *= x3 / ((3.0 * kf - 1.0) * 3.0 * kf);
            tg *= x3 / (3.0 * kf * (3.0 * kf + 1.0));
            f += tf;
            g += tg;
            if tf.abs() + tg.abs() < 1e-18 {
                break;
            }
        }
        c1 * f - c2 * g
    }

    #[test]
    fn agrees_with_maclaurin_series() {
        let mut x = -6.0;
        while x <= 4.0 {
            let a = airy_ai(x);
            let b = maclaurin(x);
            assert!((a - b).abs() < 1e-12, "Ai({x}): {a} vs {b}");
            x += 0.0371;
        }
    }

    #[test]
    fn continuous_across_asymptotic_edges() {
        for &e in &[EDGE, -EDGE] {
            let inside = airy_pair(e * (1.0 - 1e-15));
            let outside = airy_pair(e * (1.0 + 1e-15));
            assert!(
                (inside.0 - outside.0).abs() < 1e-13,
                "{e}: {inside:?} {outside:?}"
            );
            assert!(
                (inside.1 - outside.1).abs() < 1e-12,
                "{e}: {inside:?} {outside:?}"
            );
        }
    }

    #[test]
    fn wronskian_with_derivative() {
        // Ai'' = x Ai checked by central differences
        for &x in &[-20.0, -8.9, -3.3, 0.4, 5.5, 12.0] {
            let h = 1e-4;
            let d2 = (airy_ai(x + h) - 2.0 * airy_ai(x) + airy_ai(x - h)) / (h * h);
            assert!((d2 - x * airy_ai(x)).abs() < 1e-6, "x={x}");
            let d1 = (airy_ai(x + h) - airy_ai(x - h)) / (2.0 * h);
            assert!((d1 - airy_ai_prime(x)).abs() < 1e-7, "x={x}");
        }
    }

    #[test]
    fn first_zero_by_bisection_oracle() {
        let (mut lo, mut hi) = (2.0, 2.6);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if maclaurin(-mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let r = airy_zero(0).unwrap();
        assert!((r.value - lo).abs() < 1e-10);
        assert!((r.value - 2.338107).abs() < 1e-6);
        assert!(r.residual.abs() <= 1e-12);
        assert!((airy_zero_seed(0) - 2.3203).abs() < 1e-4);
    }

    #[test]
    fn seed_accuracy_and_large_index() {
        let r = airy_zero(20).unwrap();
        assert!((airy_zero_seed(20) - r.value).abs() / r.value < 1e-4);
        // asymptotic zero expansion t^(2/3)(1 + 5/48 t^-2 - 5/36 t^-4)
        for n in [50u32, 200, 500] {
            let t = 3.0 * PI * (4.0 * (n as f64 + 1.0) - 1.0) / 8.0;
            let expected =
                t.powf(2.0 / 3.0) * (1.0 + 5.0 / 48.0 / (t * t) - 5.0 / 36.0 / t.powi(4));
            let r = airy_zero(n).unwrap();
            assert!((r.value - expected).abs() < 1e-9 * expected, "n={n}");
            assert!(airy_ai(-r.value).abs() <= 1e-12);
        }
    }

    #[test]
    fn zeros_strictly_increase() {
        let zs: Vec<f64> = (0..60).map(|n| airy_zero(n).unwrap().value).collect();
        assert!(zs.windows(2).all(|w| w[1] > w[0]));
        assert!(matches!(airy_zero(501), Err(Error::Range(_))));
    }
}
