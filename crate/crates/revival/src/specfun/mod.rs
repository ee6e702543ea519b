//! Special functions and quadrature.

mod airy;
mod bessel;
mod quad;

pub use airy::{airy_ai, airy_ai_prime, airy_zero, airy_zero_seed};
pub(crate) use bessel::cylinder_pair;
pub use bessel::{
    bessel_j, bessel_j_prime, bessel_j_sequence, bessel_zero, bessel_zero_seed, BESSEL_MAX_ARG,
    BESSEL_MAX_ORDER,
};
pub use quad::{gauss_legendre, integrate, GaussLegendre};

/// Residual tolerance every refined root must meet.
pub const ROOT_TOLERANCE: f64 = 1e-12;
/// Newton/bisection iteration cap.
pub const MAX_ROOT_ITERATIONS: u32 = 200;

/// A refined root together with the function value there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootResult {
    pub value: f64,
    pub residual: f64,
    pub iterations: u32,
}

/// Safeguarded Newton iteration on a sign-changing bracket.
///
/// `f` returns the value and derivative. Steps leaving the bracket are
/// replaced by bisection, so convergence is guaranteed once a bracket exists.
pub(crate) fn newton_bracketed<F>(
    mut f: F,
    mut lo: f64,
    mut hi: f64,
    start: f64,
) -> crate::Result<RootResult>
where
    F: FnMut(f64) -> (f64, f64),
{
    let (mut flo, _) = f(lo);
    let (fhi, _) = f(hi);
    if flo == 0.0 {
        return Ok(RootResult {
            value: lo,
            residual: 0.0,
            iterations: 0,
        });
    }
    if fhi == 0.0 {
        return Ok(RootResult {
            value: hi,
            residual: 0.0,
            iterations: 0,
        });
    }
    if flo.signum() == fhi.signum() {
        return Err(crate::Error::Root(format!(
            "no sign change on [{lo}, {hi}]"
        )));
    }
    let mut x = if start > lo && start < hi {
        start
    } else {
        0.5 * (lo + hi)
    };
    for it in 1..=MAX_ROOT_ITERATIONS {
        let (fx, dfx) = f(x);
        if fx == 0.0 {
            return Ok(RootResult {
                value: x,
                residual: 0.0,
                iterations: it,
            });
        }
        if fx.signum() == flo.signum() {
            lo = x;
            flo = fx;
        } else {
            hi = x;
        }
        let newton = x - fx / dfx;
        let next = if dfx != 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        let step = (next - x).abs();
        x = next;
        if step <= 4.0 * f64::EPSILON * x.abs() || hi - lo <= 4.0 * f64::EPSILON * x.abs() {
            let (fx, _) = f(x);
            if fx.abs() <= ROOT_TOLERANCE {
                return Ok(RootResult {
                    value: x,
                    residual: fx,
                    iterations: it,
                });
            }
            return Err(crate::Error::Root(format!(
                "stalled at {x} with residual {fx:e}"
            )));
        }
    }
    Err(crate::Error::Root(format!(
        "no convergence in {MAX_ROOT_ITERATIONS} iterations near {x}"
    )))
}
