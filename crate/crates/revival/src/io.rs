//! CSV and PGM writers. Every real value is printed with 17 significant
//! digits so that files round-trip exactly.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::billiards::Spectrum2D;
use crate::dynamics::TimeSeries;
use crate::fractional::GaussSumTable;
use crate::packets::{CoefficientSet, CoefficientSet2D};
use crate::wavefields::FieldGrid;
use crate::Result;

/// 17 significant digits in scientific notation.
pub fn fmt17(x: f64) -> String {
    if x == 0.0 {
        // one spelling for both signed zeros
        return format!("{:.16e}", 0.0);
    }
    format!("{x:.16e}")
}

pub fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

/// Header line followed by one line per row of reals.
pub fn write_table<W: Write + ?Sized>(
    w: &mut W,
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<f64>>,
) -> Result<()> {
    writeln!(w, "{}", header.join(","))?;
    for row in rows {
        let cells: Vec<String> = row.into_iter().map(fmt17).collect();
        writeln!(w, "{}", cells.join(","))?;
    }
    Ok(())
}

/// `t,re,im,abs2`.
pub fn write_time_series<W: Write + ?Sized>(w: &mut W, s: &TimeSeries) -> Result<()> {
    write_table(
        w,
        &["t", "re", "im", "abs2"],
        s.times
            .iter()
            .zip(&s.values)
            .map(|(t, v)| vec![*t, v.re, v.im, v.norm_sqr()]),
    )
}

/// `index1,index2,re,im` with index2 empty.
pub fn write_coefficients<W: Write + ?Sized>(w: &mut W, c: &CoefficientSet) -> Result<()> {
    writeln!(w, "index1,index2,re,im")?;
    for (n, a) in c.iter() {
        writeln!(w, "{n},,{},{}", fmt17(a.re), fmt17(a.im))?;
    }
    Ok(())
}

/// `index1,index2,re,im`; a symmetry label, when present, is appended to index2.
pub fn write_coefficients_2d<W: Write + ?Sized>(w: &mut W, c: &CoefficientSet2D) -> Result<()> {
    writeln!(w, "index1,index2,re,im")?;
    for (m, a) in c.iter() {
        writeln!(
            w,
            "{},{}{},{},{}",
            m.q1,
            m.q2,
            m.symmetry.label(),
            fmt17(a.re),
            fmt17(a.im)
        )?;
    }
    Ok(())
}

/// `n,energy` for a one-dimensional level list.
pub fn write_levels_1d<W: Write + ?Sized>(w: &mut W, levels: &[(i64, f64)]) -> Result<()> {
    writeln!(w, "n,energy")?;
    for (n, e) in levels {
        writeln!(w, "{n},{}", fmt17(*e))?;
    }
    Ok(())
}

/// `q1,q2,symmetry,energy`.
pub fn write_levels_2d<W: Write + ?Sized>(w: &mut W, s: &Spectrum2D) -> Result<()> {
    writeln!(w, "q1,q2,symmetry,energy")?;
    for l in s.levels() {
        writeln!(
            w,
            "{},{},{},{}",
            l.mode.q1,
            l.mode.q2,
            l.mode.symmetry.label(),
            fmt17(l.energy)
        )?;
    }
    Ok(())
}

/// `r,re,im,abs2`.
pub fn write_gauss_table<W: Write + ?Sized>(w: &mut W, t: &GaussSumTable) -> Result<()> {
    writeln!(w, "r,re,im,abs2")?;
    for (r, b) in t.b.iter().enumerate() {
        writeln!(
            w,
            "{r},{},{},{}",
            fmt17(b.re),
            fmt17(b.im),
            fmt17(b.norm_sqr())
        )?;
    }
    Ok(())
}

/// `x,y,value` with x from axis1 and y from axis2, row-major.
pub fn write_field_csv<W: Write + ?Sized>(w: &mut W, g: &FieldGrid) -> Result<()> {
    let (xs, ys) = (g.axis1.points(), g.axis2.points());
    write_table(
        w,
        &["x", "y", "value"],
        xs.iter().enumerate().flat_map(|(i, x)| {
            ys.iter()
                .enumerate()
                .map(move |(j, y)| vec![*x, *y, g.get(i, j)])
        }),
    )
}

/// Binary 16-bit PGM: axis1 runs down the rows, axis2 across the columns.
///
/// Samples map [min(0, min), max] linearly onto [0, 65535]; both ends are
/// recorded in comments.
pub fn write_pgm<W: Write + ?Sized>(w: &mut W, g: &FieldGrid) -> Result<()> {
    let (max, min) = (g.max(), g.min().min(0.0));
    let span = if max > min { max - min } else { 1.0 };
    write!(
        w,
        "P5\n# max={}\n# min={}\n{} {}\n65535\n",
        fmt17(max),
        fmt17(min),
        g.axis2.count,
        g.axis1.count
    )?;
    let mut bytes = Vec::with_capacity(2 * g.values.len());
    for v in &g.values {
        let s = ((v - min) / span * 65535.0).round().clamp(0.0, 65535.0) as u16;
        bytes.extend_from_slice(&s.to_be_bytes());
    }
    w.write_all(&bytes)?;
    Ok(())
}
