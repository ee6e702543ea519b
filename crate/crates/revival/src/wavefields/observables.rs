use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{check_basis, evolved, Basis1D, BouncerBasis};
use crate::packets::CoefficientSet;
use crate::specfun::{airy_ai, airy_ai_prime, GaussLegendre};
use crate::{Error, Result};

/// ⟨x⟩, Δx, ⟨p⟩, Δp sampled in time.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservableSeries {
    pub times: Vec<f64>,
    pub mean_x: Vec<f64>,
    pub sd_x: Vec<f64>,
    pub mean_p: Vec<f64>,
    pub sd_p: Vec<f64>,
}

/// Dense matrices of x, x², p, p² over a contiguous index block.
#[derive(Debug, Clone)]
pub struct MatrixElements {
    pub index_lo: i64,
    pub size: usize,
    pub x: Vec<f64>,
    pub x2: Vec<f64>,
    pub p: Vec<Complex64>,
    pub p2: Vec<f64>,
}

impl MatrixElements {
    fn at<T: Copy>(&self, v: &[T], m: usize, n: usize) -> T {
        v[m * self.size + n]
    }

    pub fn x(&self, m: i64, n: i64) -> f64 {
        self.at(
            &self.x,
            (m - self.index_lo) as usize,
            (n - self.index_lo) as usize,
        )
    }

    pub fn x2(&self, m: i64, n: i64) -> f64 {
        self.at(
            &self.x2,
            (m - self.index_lo) as usize,
            (n - self.index_lo) as usize,
        )
    }

    pub fn p(&self, m: i64, n: i64) -> Complex64 {
        self.at(
            &self.p,
            (m - self.index_lo) as usize,
            (n - self.index_lo) as usize,
        )
    }

    pub fn p2(&self, m: i64, n: i64) -> f64 {
        self.at(
            &self.p2,
            (m - self.index_lo) as usize,
            (n - self.index_lo) as usize,
        )
    }
}

/// Matrix elements for states index_lo..=index_hi; closed forms in the
/// infinite well, Gauss-Legendre panels for the bouncer.
pub fn matrix_elements(basis: &Basis1D, index_lo: i64, index_hi: i64) -> Result<MatrixElements> {
    basis.check_index(index_lo)?;
    basis.check_index(index_hi)?;
    if index_hi < index_lo {
        return Err(Error::Index(format!(
            "empty index block {index_lo}..={index_hi}"
        )));
    }
    let size = (index_hi - index_lo + 1) as usize;
    match basis {
        Basis1D::InfiniteWell { units } => {
            Ok(well_elements(units.length, units.hbar, index_lo, size))
        }
        Basis1D::Bouncer { units, basis } => bouncer_elements(basis, units.hbar, index_lo, size),
    }
}

fn well_elements(l: f64, hbar: f64, lo: i64, size: usize) -> MatrixElements {
    let mut x = vec![0.0; size * size];
    let mut x2 = vec![0.0; size * size];
    let mut p = vec![Complex64::new(0.0, 0.0); size * size];
    let mut p2 = vec![0.0; size * size];
    for i in 0..size {
        for j in 0..size {
            let (m, n) = ((lo + i as i64) as f64, (lo + j as i64) as f64);
            let k = i * size + j;
            if i == j {
                x[k] = l / 2.0;
                x2[k] = l * l * (1.0 / 3.0 - 1.0 / (2.0 * n * n * PI * PI));
                p2[k] = (n * PI * hbar / l).powi(2);
                continue;
            }
            let d2 = (m * m - n * n).powi(2);
            let odd = (i + j + 2 * lo as usize) % 2 == 1;
            let sign = if odd { -1.0 } else { 1.0 };
            if odd {
                x[k] = -8.0 * l * m * n / (PI * PI * d2);
                p[k] = Complex64::new(0.0, -hbar * 4.0 * m * n / (l * (m * m - n * n)));
            }
            x2[k] = sign * 8.0 * l * l * m * n / (PI * PI * d2);
        }
    }
    MatrixElements {
        index_lo: lo,
        size,
        x,
        x2,
        p,
        p2,
    }
}

fn bouncer_elements(b: &BouncerBasis, hbar: f64, lo: i64, size: usize) -> Result<MatrixElements> {
    let rule = GaussLegendre::new(24);
    let z_max = b.z_max();
    let panels = (z_max / b.rho).ceil() as usize;
    let width = z_max / panels as f64;
    let nodes: Vec<(f64, f64)> = (0..panels)
        .flat_map(|k| {
            rule.mapped(k as f64 * width, (k + 1) as f64 * width)
                .collect::<Vec<_>>()
        })
        .collect();
    // u_n and du_n/dz at every node
    let tables: Vec<(Vec<f64>, Vec<f64>)> = (0..size)
        .into_par_iter()
        .map(|i| {
            let n = (lo as usize + i) as u32;
            let (y, norm) = (b.zero(n), b.norm(n));
            nodes
                .iter()
                .map(|&(z, _)| {
                    let s = z / b.rho - y;
                    (norm * airy_ai(s), norm * airy_ai_prime(s) / b.rho)
                })
                .unzip()
        })
        .collect();
    let mut x = vec![0.0; size * size];
    let mut x2 = vec![0.0; size * size];
    let mut p = vec![Complex64::new(0.0, 0.0); size * size];
    let mut p2 = vec![0.0; size * size];
    for i in 0..size {
        for j in i..size {
            let (ui, di) = &tables[i];
            let (uj, dj) = &tables[j];
            let (mut sx, mut sx2, mut sp, mut sp2) = (0.0, 0.0, 0.0, 0.0);
            for (k, &(z, w)) in nodes.iter().enumerate() {
                let prod = w * ui[k] * uj[k];
                sx += prod * z;
                sx2 += prod * z * z;
                sp += w * ui[k] * dj[k];
                sp2 += w * di[k] * dj[k];
            }
            for (a, b2) in [(i, j), (j, i)] {
                x[a * size + b2] = sx;
                x2[a * size + b2] = sx2;
                p2[a * size + b2] = hbar * hbar * sp2;
            }
            // ⟨i|p|j⟩ = −iħ ∫ u_i u_j'; antisymmetric real integral
            p[i * size + j] = Complex64::new(0.0, -hbar * sp);
            p[j * size + i] = Complex64::new(0.0, hbar * sp);
        }
    }
    Ok(MatrixElements {
        index_lo: lo,
        size,
        x,
        x2,
        p,
        p2,
    })
}

fn quadratic_form<T: Copy>(c: &[Complex64], mat: &[T], to_c: impl Fn(T) -> Complex64) -> f64 {
    let size = c.len();
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, ci) in c.iter().enumerate() {
        let mut row = Complex64::new(0.0, 0.0);
        for (j, cj) in c.iter().enumerate() {
            row += to_c(mat[i * size + j]) * cj;
        }
        acc += ci.conj() * row;
    }
    acc.re
}

/// Expectation values from the coefficient set at each time, normalized by Σ|a_n|².
pub fn observables(
    c: &CoefficientSet,
    basis: &Basis1D,
    t_grid: &[f64],
) -> Result<ObservableSeries> {
    check_basis(c, basis)?;
    if c.is_empty() {
        return Err(Error::Domain("empty coefficient set".into()));
    }
    let me = matrix_elements(basis, c.index_lo, c.index_hi())?;
    let w = c.norm_sqr();
    let rows: Vec<[f64; 4]> = t_grid
        .par_iter()
        .map(|&t| {
            let ct = evolved(c, basis, t)?;
            let real = |v: f64| Complex64::new(v, 0.0);
            let mx = quadratic_form(&ct, &me.x, real) / w;
            let mx2 = quadratic_form(&ct, &me.x2, real) / w;
            let mp = quadratic_form(&ct, &me.p, |v| v) / w;
            let mp2 = quadratic_form(&ct, &me.p2, real) / w;
            Ok([
                mx,
                (mx2 - mx * mx).max(0.0).sqrt(),
                mp,
                (mp2 - mp * mp).max(0.0).sqrt(),
            ])
        })
        .collect::<Result<_>>()?;
    Ok(ObservableSeries {
        times: t_grid.to_vec(),
        mean_x: rows.iter().map(|r| r[0]).collect(),
        sd_x: rows.iter().map(|r| r[1]).collect(),
        mean_p: rows.iter().map(|r| r[2]).collect(),
        sd_p: rows.iter().map(|r| r[3]).collect(),
    })
}
