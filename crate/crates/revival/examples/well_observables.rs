//! Expectation values in the infinite well: the mirror revival at T_rev/2
//! and relaxation toward the flat classical values.

use std::f64::consts::PI;

use revival::dynamics::{collapse_time, CollapseFlavor};
use revival::packets::{default_n_max, infinite_well_coefficients, PacketParams1D};
use revival::spectra::UnitSystem;
use revival::wavefields::{observables, Basis1D};

fn main() -> revival::Result<()> {
    let u = UnitSystem::default();
    let p = PacketParams1D::from_spread(0.3, 40.0 * PI, 0.05, u)?;
    let c = infinite_well_coefficients(&p, default_n_max(&p, u.length))?;
    let basis = Basis1D::infinite_well(u);
    let ts = basis.spectrum().time_scales(40.0)?;
    let (n_mean, dn) = c.mean_and_spread();
    println!(
        "n̄ = {n_mean:.3}, Δn = {dn:.3}, T_cl = {:.5}, T_rev = {:.5}",
        ts.t_classical, ts.t_revival
    );
    println!(
        "collapse time ≈ {:.5}",
        collapse_time(dn, ts.t_revival, CollapseFlavor::InfiniteWell)?
    );

    let fracs = [0.0, 0.05, 0.1, 0.2, 0.4, 0.5, 1.0];
    let times: Vec<f64> = fracs.iter().map(|f| f * ts.t_revival).collect();
    let obs = observables(&c, &basis, &times)?;
    println!("\n t/T_rev     <x>      Δx       <p>        Δp");
    for (i, f) in fracs.iter().enumerate() {
        println!(
            "{f:>6.2} {:>9.4} {:>8.4} {:>10.3} {:>9.3}",
            obs.mean_x[i], obs.sd_x[i], obs.mean_p[i], obs.sd_p[i]
        );
    }
    println!(
        "flat-distribution values: <x> = 0.5, Δx = L/√12 = {:.4}",
        1.0 / 12f64.sqrt()
    );
    Ok(())
}
