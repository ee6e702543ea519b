//! Wigner function of an n0 = 40 well packet at the third revival, and a
//! check of its position marginal.

use std::f64::consts::PI;
use std::path::PathBuf;

use revival::io::{create, write_pgm};
use revival::packets::{default_n_max, infinite_well_coefficients, PacketParams1D};
use revival::spectra::UnitSystem;
use revival::wavefields::{default_p_range, psi_xt, Axis, Basis1D, WignerField};

fn main() -> revival::Result<()> {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("revival-wigner"));
    std::fs::create_dir_all(&out)?;
    let u = UnitSystem::default();
    let p = PacketParams1D::from_spread(0.5, 40.0 * PI, 0.05, u)?;
    let c = infinite_well_coefficients(&p, default_n_max(&p, u.length))?;
    let t = 4.0 * u.mass / (3.0 * PI);
    let n = 256;
    let dx = u.length / n as f64;
    let xs = Axis::new("x", 0.5 * dx, u.length - 0.5 * dx, n)?;
    let (lo, hi) = default_p_range(&p);
    let ps = Axis::new("p", lo, hi, n)?;
    let w = WignerField::new(&c, u, t)?.grid(&xs, &ps)?;
    let real = w.map(|v| v.re);
    println!(
        "W range {:.3} .. {:.3}, max |Im W| {:.1e}",
        real.min(),
        real.max(),
        w.values.iter().map(|v| v.im.abs()).fold(0.0, f64::max)
    );

    let psi = psi_xt(&c, &Basis1D::infinite_well(u), &xs.points(), t)?;
    let worst = (0..n)
        .map(|i| {
            let row: Vec<f64> = (0..n).map(|j| real.get(i, j)).collect();
            let integral = ps.step() * (row.iter().sum::<f64>() - 0.5 * (row[0] + row[n - 1]));
            (integral - psi[i].norm_sqr()).abs()
        })
        .fold(0.0, f64::max);
    println!("largest |∫W dp − |ψ|²| on the grid: {worst:.2e}");
    let path = out.join("wigner_third.pgm");
    write_pgm(&mut create(&path)?, &real)?;
    println!("{}", path.display());
    Ok(())
}
