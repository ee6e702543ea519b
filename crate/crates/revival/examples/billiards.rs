//! Two-dimensional billiards: revival times, closed orbits and the
//! circular-billiard autocorrelation.

use revival::billiards::{
    autocorrelation_2d, circular_spectrum, closed_orbit, rectangle_revival_ratio, revival_times_2d,
    CircleLevels, OrbitGeometry, Spectrum2D,
};
use revival::packets::{circular_coefficients, PacketParams2D};
use revival::spectra::UnitSystem;

fn main() -> revival::Result<()> {
    let u = UnitSystem::new(1.0, 0.5, 1.0)?;
    let square = Spectrum2D::square(1.0, 30, u)?;
    let r = revival_times_2d(&square, (20.0, 15.0))?;
    println!("square: T_rev = {:.5} / {:.5}", r.t_rev_1, r.t_rev_2);
    println!(
        "rectangle 1 × √2 commensurate: {:?}",
        rectangle_revival_ratio(1.0, 2f64.sqrt())
    );
    println!(
        "rectangle 1 × 1.5 revival ratio: {:?}",
        rectangle_revival_ratio(1.0, 1.5)
    );
    for (p, q) in [(1, 1), (2, 1), (3, 2)] {
        let o = closed_orbit(OrbitGeometry::Square { side: 1.0 }, p, q, 1.0)?;
        println!("square orbit ({p},{q}): length {:.5}", o.path_length);
    }
    for (p, q) in [(3, 1), (4, 1), (5, 2)] {
        let o = closed_orbit(OrbitGeometry::Circle { radius: 1.0 }, p, q, 1.0)?;
        println!(
            "circle orbit ({p},{q}): length {:.5}, r_min {:.4}",
            o.path_length,
            o.r_min.unwrap_or(0.0)
        );
    }

    let s = circular_spectrum(1.0, 60, 60, CircleLevels::Refined, u)?;
    let t0 = revival_times_2d(&s, (0.0, 0.0))?.t_rev_1 / 4.0;
    let b = 1.0 / (10.0 * 2f64.sqrt());
    for x0 in [0.0, 0.25] {
        let c = circular_coefficients(&PacketParams2D::new(x0, 0.0, 0.0, 0.0, b, u)?, 1.0, 60, 60)?;
        let times: Vec<f64> = (1..=5).map(|k| 4.0 * k as f64 * t0).collect();
        let a = autocorrelation_2d(&c, &s, &times)?;
        let text: Vec<String> = a
            .values
            .iter()
            .map(|v| format!("{:.3}", v.norm()))
            .collect();
        println!(
            "circle, x0 = {x0}: |A(4kT0)| for k = 1..5: {}",
            text.join(" ")
        );
    }
    Ok(())
}
