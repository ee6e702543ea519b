//! Collapse and revival of the atomic inversion in a coherent field.

use std::f64::consts::PI;

use revival::analogs::{jc_bound, jc_envelope, jc_inversion, jc_revival_time, JCParams};

fn main() -> revival::Result<()> {
    let p = JCParams::new(36.0, 0.01, 0.0)?;
    println!(
        "photon cap {}, revival time {:.2}",
        p.photon_cap(),
        jc_revival_time(&p)
    );
    let taus: Vec<f64> = (0..=60).map(|i| i as f64 * 0.5).collect();
    let ts: Vec<f64> = taus.iter().map(|tau| tau * PI / p.lambda).collect();
    let inv = jc_inversion(&p, &ts)?;
    let env = jc_envelope(&p, &ts)?;
    println!("  λt/π     P_e    envelope   bounds");
    for (i, tau) in taus.iter().enumerate().step_by(2) {
        let (lo, hi) = jc_bound(&p, ts[i])?;
        println!(
            "{tau:>6.1} {:>8.4} {:>9.4}   [{lo:.3}, {hi:.3}]",
            inv.values[i].re, env[i]
        );
    }
    Ok(())
}
