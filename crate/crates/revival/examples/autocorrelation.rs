//! |A(t)|² for the Gaussian model on the case A spectrum, with the
//! fractional-revival peaks located automatically.

use revival::dynamics::{autocorrelation, grid_per_period, incoherent_plateau};
use revival::fractional::detect_peaks;
use revival::packets::gaussian_model_coefficients;
use revival::spectra::Spectrum1D;

fn main() -> revival::Result<()> {
    let s = Spectrum1D::case_a();
    let ts = s.time_scales(400.0)?;
    let c = gaussian_model_coefficients(400.0, 6.0, 1e-10)?;
    let grid = grid_per_period(0.0, ts.t_revival, ts.t_classical, 80)?;
    let series = autocorrelation(&c, &s, &grid)?;
    println!(
        "T_cl = {}, T_rev = {}, {} samples",
        ts.t_classical,
        ts.t_revival,
        series.len()
    );
    println!("incoherent plateau Σ|a|⁴ = {:.4}", incoherent_plateau(&c));
    if let Some(m) = series.mean_abs2_in(0.35 * ts.t_revival, 0.45 * ts.t_revival) {
        println!("mean |A|² over the collapsed stretch 0.35..0.45 T_rev = {m:.4}");
    }
    println!("\n  p/q      time     measured  predicted");
    for pk in detect_peaks(&series, ts.t_classical, ts.t_revival, 6)? {
        println!(
            "{:>3}/{:<3} {:>9.3} {:>11.4} {:>10.4}",
            pk.p, pk.q, pk.time, pk.measured, pk.predicted
        );
    }
    Ok(())
}
