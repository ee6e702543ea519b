//! Analytic autocorrelations: free, accelerated and oscillator packets,
//! plus the Poisson-summed Gaussian model.

use num_complex::Complex64;
use revival::dynamics::{
    accelerating_A, autocorrelation, free_particle_A, nauenberg_A, sho_A, spreading_time, ShoMode,
};
use revival::packets::{gaussian_model_coefficients, PacketParams1D};
use revival::spectra::{Spectrum1D, UnitSystem};

fn main() -> revival::Result<()> {
    let u = UnitSystem::new(1.0, 1.0, 1.0)?;
    let p = PacketParams1D::from_spread(0.0, 2.0, 0.5, u)?;
    println!("spreading time {:.4}", spreading_time(&p));
    for t in [0.0, 0.5, 1.0, 2.0] {
        println!(
            "t = {t}: |A_free| = {:.5}, |A_accel(F=1)| = {:.5}, |A_sho(α=1.5)| = {:.5}, |A_inverted| = {:.5}",
            free_particle_A(t, &p).norm(),
            accelerating_A(t, &p, 1.0).norm(),
            sho_A(t, ShoMode::MinUncertainty { alpha: Complex64::new(1.5, 0.0) }, 1.0, u)?.norm(),
            sho_A(t, ShoMode::Inverted { p0: 1.0 }, 1.0, u)?.norm(),
        );
    }

    let s = Spectrum1D::case_a();
    let ts = s.time_scales(400.0)?;
    let c = gaussian_model_coefficients(400.0, 6.0, 1e-10)?;
    println!("\nPoisson-summed model versus the direct sum (case A, Δn = 6)");
    for t in [0.5, 100.25, 400.0, 533.3, 800.0] {
        let direct = autocorrelation(&c, &s, &[t])?.values[0].norm();
        let summed = nauenberg_A(t, 400.0, 6.0, ts.t_classical, ts.t_revival, 500)?.norm();
        println!("  t = {t:>6}: direct {direct:.6}, Poisson sum {summed:.6}");
    }
    Ok(())
}
