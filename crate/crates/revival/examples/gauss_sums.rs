//! Clone amplitudes b_r at the fractional revivals t = (p/q) T_rev.

use revival::fractional::{clone_structure, gauss_coefficients, resolvable, verify_recursion};

fn main() -> revival::Result<()> {
    for (p, q) in [(1, 2), (1, 3), (1, 4), (2, 5), (1, 6), (3, 8)] {
        let t = gauss_coefficients(p, q)?;
        let cs = clone_structure(p, q)?;
        println!(
            "p/q = {p}/{q}: period l = {}, {} clones spaced {:.3} T_cl, peak |A|² {:.4}, recursion ok: {}",
            t.period_l,
            cs.count,
            cs.spacing,
            cs.peak_abs2,
            verify_recursion(&t)
        );
        for (r, b) in t.b.iter().enumerate() {
            if b.norm() > 1e-12 {
                println!(
                    "    b_{r} = {:+.6} {:+.6}i   |b|² = {:.6}",
                    b.re,
                    b.im,
                    b.norm_sqr()
                );
            }
        }
    }
    println!("\nresolvable at Δn = 6:");
    for q in [2, 5, 10, 20, 37] {
        println!("  q = {q:>2}: {}", resolvable(q, 6.0));
    }
    Ok(())
}
