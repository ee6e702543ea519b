//! Quantum bouncer: Airy versus WKB levels and the approach of ⟨z⟩, Δz to
//! the classical time averages.

use revival::packets::{bouncer_coefficients, PacketParams1D};
use revival::spectra::{Model, Spectrum1D, UnitSystem};
use revival::wavefields::{observables, Basis1D, BouncerBasis};

fn main() -> revival::Result<()> {
    let u = UnitSystem::default();
    let force = 1.0;
    let airy = Spectrum1D::new(Model::BouncerAiry { force }, u);
    let wkb = Spectrum1D::new(Model::BouncerWkb { force }, u);
    for n in [0, 1, 5, 10, 50] {
        let (a, w) = (airy.eval_energy(n as f64)?, wkb.eval_energy(n as f64)?);
        println!(
            "E_{n:<3} Airy {a:>10.6}  WKB {w:>10.6}  rel. diff {:.1e}",
            ((a - w) / a).abs()
        );
    }

    let z0 = 25.0;
    let p = PacketParams1D::from_spread(z0, 0.0, 1.0, u)?;
    let c = bouncer_coefficients(&p, &BouncerBasis::new(force, u, 80)?)?;
    let basis = Basis1D::bouncer(force, u, 80)?;
    let (n_mean, dn) = c.mean_and_spread();
    let ts = basis.spectrum().time_scales(n_mean)?;
    println!(
        "\nn̄ = {n_mean:.3}, Δn = {dn:.3}, T_cl = {:.4}, T_rev = {:.1}",
        ts.t_classical, ts.t_revival
    );
    let times: Vec<f64> = (0..=40).map(|i| i as f64 * 0.0125 * ts.t_revival).collect();
    let obs = observables(&c, &basis, &times)?;
    for i in (0..times.len()).step_by(4) {
        println!(
            "t = {:>7.1}: <z> = {:>7.3}, Δz = {:>6.3}",
            times[i], obs.mean_x[i], obs.sd_x[i]
        );
    }
    println!(
        "classical averages: <z> = {:.3}, Δz = {:.3}",
        2.0 * z0 / 3.0,
        2.0 * z0 / 45f64.sqrt()
    );
    Ok(())
}
