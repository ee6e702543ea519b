//! Matter-field collapse and revival of a coherent state with on-site
//! interaction, and the cat states at T_rev/2 and T_rev/3.
//!
//! `cargo run --release --example bec_revivals [OUT_DIR]`

use std::path::PathBuf;

use num_complex::Complex64;
use revival::analogs::{bec_cat_fidelity, bec_field, bec_overlap_grid, bec_peaks, CoherentState};
use revival::io::{create, write_pgm};
use revival::wavefields::Axis;

fn main() -> revival::Result<()> {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("revival-bec"));
    std::fs::create_dir_all(&out)?;
    let cs = CoherentState::with_default_cap(Complex64::new(3.0, 0.0), 1.0)?;
    let t_rev = cs.revival_time();
    println!("T_rev = {t_rev:.5}, cap = {}", cs.n_cap);
    for f in [0.0, 0.02, 0.1, 0.25, 0.5, 1.0] {
        let psi = bec_field(&cs, f * t_rev);
        println!("  t = {f:.2} T_rev: |<a>| = {:.5}", psi.norm());
    }
    println!("cat fidelity at T_rev/2: {:.12}", bec_cat_fidelity(&cs));
    let axis = Axis::new("beta", -6.0, 6.0, 121)?;
    for (name, q) in [("half", 2.0), ("third", 3.0)] {
        let t = t_rev / q;
        let grid = bec_overlap_grid(&cs, t, &axis, &axis)?;
        for pk in bec_peaks(&cs, t, &grid, 1e-6) {
            println!(
                "  T_rev/{q}: peak at β = {:+.4} {:+.4}i, height {:.8}",
                pk.beta.re, pk.beta.im, pk.height
            );
        }
        let path = out.join(format!("bec_{name}.pgm"));
        write_pgm(&mut create(&path)?, &grid)?;
        println!("  {}", path.display());
    }
    Ok(())
}
