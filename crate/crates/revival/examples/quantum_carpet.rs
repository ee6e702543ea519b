//! Infinite-well carpet over half a revival, split into traveling-wave
//! and interference parts and written as 16-bit PGM images.
//!
//! `cargo run --release --example quantum_carpet [OUT_DIR]`

use std::f64::consts::PI;
use std::path::PathBuf;

use revival::io::{create, write_pgm};
use revival::packets::{default_n_max, infinite_well_coefficients, PacketParams1D};
use revival::spectra::UnitSystem;
use revival::wavefields::carpet;

fn main() -> revival::Result<()> {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("revival-carpet"));
    std::fs::create_dir_all(&out)?;
    let u = UnitSystem::default();
    let p = PacketParams1D::from_spread(0.3, 0.0, 0.05, u)?;
    let c = infinite_well_coefficients(&p, default_n_max(&p, u.length))?;
    let t_rev = 4.0 * u.mass * u.length * u.length / (PI * u.hbar);
    let cp = carpet(&c, u, 512, 512, 0.5 * t_rev)?;
    for (name, grid) in [
        ("total", &cp.total),
        ("classical", &cp.classical),
        ("quantum", &cp.quantum),
    ] {
        let path = out.join(format!("carpet_{name}.pgm"));
        write_pgm(&mut create(&path)?, grid)?;
        println!(
            "{} (range {:.3} .. {:.3})",
            path.display(),
            grid.min(),
            grid.max()
        );
    }
    Ok(())
}
