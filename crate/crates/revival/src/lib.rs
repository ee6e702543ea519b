//! Simulation library for localized wave packet dynamics: short-time
//! classical periodicity, collapse, fractional and full revivals.
//!
//! The crate is organised bottom-up:
//!
//! - [`specfun`]: Bessel and Airy functions, their zeros, quadrature.
//! - [`spectra`]: one-dimensional energy spectra and time scales.
//! - [`packets`]: expansion coefficients for localized packets.
//! - [`dynamics`]: autocorrelation functions and closed-form references.
//! - [`fractional`]: Gauss-sum clone algebra and revival detection.
//! - [`wavefields`]: position-space synthesis, observables, Wigner functions and carpets.
//! - [`billiards`]: two-dimensional spectra, closed orbits and 2D autocorrelation.
//! - [`analogs`]: Jaynes-Cummings and condensate revivals.
//! - [`io`] and [`cli`]: file formats and the `revival` front end.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analogs;
pub mod billiards;
pub mod cli;
pub mod dynamics;
mod error;
pub mod fractional;
pub mod io;
pub mod packets;
pub mod specfun;
pub mod spectra;
pub mod wavefields;

pub use error::{Error, Result};

pub use num_complex::Complex64;
