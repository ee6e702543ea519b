//! Classical, revival and superrevival periods for several spectra.

use revival::spectra::{
    power_law_ratios, rydberg_times, Model, PowerLawExponent, Spectrum1D, UnitSystem,
};

fn main() -> revival::Result<()> {
    println!(
        "{:<28} {:>12} {:>12} {:>14}",
        "spectrum", "T_cl", "T_rev", "T_super"
    );
    let units = UnitSystem::default();
    let rows = [
        ("anharmonic case A, n0=400", Spectrum1D::case_a(), 400.0),
        ("anharmonic case B, n0=400", Spectrum1D::case_b(), 400.0),
        (
            "infinite well, n0=40",
            Spectrum1D::infinite_well(units),
            40.0,
        ),
        (
            "bouncer (Airy), n0=26",
            Spectrum1D::new(Model::BouncerAiry { force: 1.0 }, units),
            26.0,
        ),
        (
            "bouncer (WKB), n0=26",
            Spectrum1D::new(Model::BouncerWkb { force: 1.0 }, units),
            26.0,
        ),
        (
            "rotor, n0=20",
            Spectrum1D::new(Model::Rotor2D { inertia: 1.0 }, units),
            20.0,
        ),
    ];
    for (name, s, n0) in rows {
        let t = s.time_scales(n0)?;
        println!(
            "{name:<28} {:>12.6} {:>12.4} {:>14.4e}",
            t.t_classical, t.t_revival, t.t_super
        );
    }

    println!("\npower-law potentials |x|^k at n0 = 100");
    for k in [1.0, 2.0, 4.0, 10.0] {
        let r = power_law_ratios(PowerLawExponent::Finite(k), 100.0);
        println!(
            "  k = {k:>4}: T_rev/T_cl = {:>10.2}, T_super/T_rev = {:>8.1}",
            r.rev_over_cl, r.super_over_rev
        );
    }

    println!("\nhydrogen Rydberg packets");
    for n in [45.0, 72.0, 85.0] {
        let (cl, rev) = rydberg_times(n)?;
        println!(
            "  n = {n}: T_cl = {:.2} ps, T_rev = {:.3} ns",
            cl * 1e12,
            rev * 1e9
        );
    }
    Ok(())
}
