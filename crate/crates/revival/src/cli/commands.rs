use std::f64::consts::PI;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_complex::Complex64;

use super::{Command, Scenario};
use crate::analogs::{
    bec_cat_fidelity, bec_field, bec_overlap_grid, bec_peaks, jc_bound, jc_envelope, jc_inversion,
    jc_revival_time, CoherentState, JCParams,
};
use crate::billiards::{
    autocorrelation_2d, circular_spectrum, revival_times_2d, CircleLevels, Spectrum2D, Symmetry,
};
use crate::dynamics::{autocorrelation, incoherent_plateau, uniform_grid};
use crate::fractional::{clone_structure, detect_peaks, gauss_coefficients, verify_recursion};
use crate::io;
use crate::packets::{
    bouncer_coefficients, circular_coefficients, default_n_max, default_triangle_cap,
    gaussian_model_coefficients, infinite_well_coefficients, triangle_coefficients, CoefficientSet,
    CoefficientSet2D, Mode2D, PacketParams1D, PacketParams2D,
};
use crate::spectra::{Model, Spectrum1D, UnitSystem};
use crate::wavefields::{
    carpet, default_p_range, observables, wigner_infinite_well, Axis, Basis1D, BouncerBasis,
};
use crate::{Error, Result};

/// Artifact role → file name for a command.
/// The peak table is written only when `peaks_q > 0`.
pub(super) fn artifact_names(command: Command) -> Vec<(&'static str, &'static str)> {
    let mut out = match command {
        Command::Spectrum => vec![("levels", "levels.csv")],
        Command::Autocorr => vec![
            ("series", "autocorr.csv"),
            ("coefficients", "coefficients.csv"),
            ("peaks", "peaks.csv"),
        ],
        Command::Fractional => vec![("table", "gauss.csv")],
        Command::Carpet => vec![
            ("total", "carpet_total.pgm"),
            ("classical", "carpet_classical.pgm"),
            ("quantum", "carpet_quantum.pgm"),
        ],
        Command::Wigner => vec![("csv", "wigner.csv"), ("pgm", "wigner.pgm")],
        Command::Observables => vec![
            ("series", "observables.csv"),
            ("coefficients", "coefficients.csv"),
        ],
        Command::Billiard2d => {
            vec![
                ("levels", "levels.csv"),
                ("coefficients", "coefficients.csv"),
                ("series", "autocorr.csv"),
            ]
        }
        Command::Jc => vec![("series", "jc.csv")],
        Command::Bec => vec![
            ("csv", "bec_overlap.csv"),
            ("pgm", "bec_overlap.pgm"),
            ("peaks", "bec_peaks.csv"),
        ],
    };
    out.push(("meta", "run.meta"));
    out
}

/// Derived quantities for the sidecar, in insertion order.
#[derive(Default)]
struct Derived(Vec<(String, String)>);

impl Derived {
    fn real(&mut self, key: &str, v: f64) {
        self.0.push((key.to_string(), io::fmt17(v)));
    }

    fn text(&mut self, key: &str, v: impl ToString) {
        self.0.push((key.to_string(), v.to_string()));
    }
}

struct Outputs<'a> {
    sc: &'a Scenario,
    dir: &'a Path,
    written: Vec<PathBuf>,
}

impl Outputs<'_> {
    fn write(&mut self, role: &str, body: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
        let name = self.sc.outputs.get(role).ok_or_else(|| {
            Error::Config(format!(
                "no artifact `{role}` for command {}",
                self.sc.command
            ))
        })?;
        let path = self.dir.join(name);
        let mut w = io::create(&path)?;
        body(&mut w)?;
        w.flush()?;
        self.written.push(path);
        Ok(())
    }
}

/// Runs the scenario, writing artifacts and the `run.meta` sidecar into `out_dir`.
pub fn run(sc: &Scenario, out_dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(out_dir)?;
    let mut out = Outputs {
        sc,
        dir: out_dir,
        written: Vec::new(),
    };
    let mut derived = Derived::default();
    match sc.command {
        Command::Spectrum => spectrum(sc, &mut out, &mut derived)?,
        Command::Autocorr => autocorr(sc, &mut out, &mut derived)?,
        Command::Fractional => fractional(sc, &mut out, &mut derived)?,
        Command::Carpet => carpet_cmd(sc, &mut out, &mut derived)?,
        Command::Wigner => wigner(sc, &mut out, &mut derived)?,
        Command::Observables => observables_cmd(sc, &mut out, &mut derived)?,
        Command::Billiard2d => billiard(sc, &mut out, &mut derived)?,
        Command::Jc => jc(sc, &mut out, &mut derived)?,
        Command::Bec => bec(sc, &mut out, &mut derived)?,
    }
    let names: Vec<String> = out
        .written
        .iter()
        .filter_map(|p| p.file_name())
        .map(|n| n.to_string_lossy().into_owned())
        .collect();
    out.write("meta", |w| {
        writeln!(w, "[run]")?;
        writeln!(w, "command = {}", sc.command)?;
        writeln!(w, "version = {}", env!("CARGO_PKG_VERSION"))?;
        writeln!(w, "\n[parameters]")?;
        for (k, v) in sc.parameters() {
            writeln!(w, "{k} = {v}")?;
        }
        writeln!(w, "\n[derived]")?;
        for (k, v) in &derived.0 {
            writeln!(w, "{k} = {v}")?;
        }
        writeln!(w, "\n[artifacts]")?;
        for n in &names {
            writeln!(w, "{n}")?;
        }
        Ok(())
    })?;
    Ok(out.written)
}

fn units_from(sc: &Scenario) -> Result<UnitSystem> {
    let d = UnitSystem::default();
    let u = UnitSystem::new(
        sc.opt_real("hbar")?.unwrap_or(d.hbar),
        sc.opt_real("mass")?.unwrap_or(d.mass),
        sc.opt_real("length")?.unwrap_or(d.length),
    );
    u.map_err(|e| Error::Config(e.to_string()))
}

/// One-dimensional spectrum from `model` and the keys that model uses.
fn spectrum_1d(sc: &Scenario, extra: &[&str]) -> Result<Spectrum1D> {
    let name = sc.text("model")?;
    let own: &[&str] = match name {
        "caseA" | "caseB" | "rydberg" => &[],
        "anharmonic" => &["alpha", "beta", "omega"],
        "harmonic" => &["omega", "hbar"],
        "well" => &["hbar", "mass", "length"],
        "rotor" => &["inertia", "hbar"],
        "pendulum" => &["v0", "inertia", "hbar"],
        "bouncer" | "bouncer-wkb" => &["force", "hbar", "mass"],
        other => {
            return Err(Error::Config(format!(
                "unknown model `{other}` (caseA, caseB, anharmonic, harmonic, well, rotor, pendulum, bouncer, bouncer-wkb, rydberg)"
            )))
        }
    };
    let mut used: Vec<&str> = vec!["model"];
    used.extend(own);
    used.extend(extra);
    sc.only_keys(&format!("model {name}"), &used)?;
    let units = units_from(sc)?;
    let real = |k: &str, d: f64| sc.opt_real(k).map(|v| v.unwrap_or(d));
    Ok(match name {
        "caseA" => Spectrum1D::case_a(),
        "caseB" => Spectrum1D::case_b(),
        "rydberg" => Spectrum1D::coulomb_rydberg(),
        "anharmonic" => Spectrum1D::new(
            Model::AnharmonicPoly {
                omega: real("omega", 2.0 * PI)?,
                alpha: real("alpha", 1.0 / 800.0)?,
                beta: real("beta", 0.0)?,
            },
            UnitSystem::default(),
        ),
        "harmonic" => Spectrum1D::harmonic(real("omega", 1.0)?, units),
        "well" => Spectrum1D::infinite_well(units),
        "rotor" => Spectrum1D::new(
            Model::Rotor2D {
                inertia: real("inertia", 0.5)?,
            },
            units,
        ),
        "pendulum" => Spectrum1D::new(
            Model::PendulumLowEnergy {
                v0: real("v0", 100.0)?,
                inertia: real("inertia", 0.5)?,
            },
            units,
        ),
        "bouncer" => Spectrum1D::new(
            Model::BouncerAiry {
                force: real("force", 1.0)?,
            },
            units,
        ),
        _ => Spectrum1D::new(
            Model::BouncerWkb {
                force: real("force", 1.0)?,
            },
            units,
        ),
    })
}

fn time_scales_into(d: &mut Derived, s: &Spectrum1D, n0: f64) -> Result<()> {
    let ts = s.time_scales(n0)?;
    d.real("t_classical", ts.t_classical);
    d.real("t_revival", ts.t_revival);
    d.real("t_super", ts.t_super);
    Ok(())
}

fn time_grid(sc: &Scenario) -> Result<Vec<f64>> {
    let steps = sc.int("steps")?;
    if steps < 2 {
        return Err(Error::Config(format!(
            "key `steps` needs at least 2, got {steps}"
        )));
    }
    uniform_grid(sc.real("tmin")?, sc.real("tmax")?, steps as usize)
        .map_err(|e| Error::Config(e.to_string()))
}

fn count(sc: &Scenario, key: &str, min: i64) -> Result<usize> {
    let v = sc.int(key)?;
    if v < min {
        return Err(Error::Config(format!(
            "key `{key}` needs at least {min}, got {v}"
        )));
    }
    Ok(v as usize)
}

fn spectrum(sc: &Scenario, out: &mut Outputs, d: &mut Derived) -> Result<()> {
    let s = spectrum_1d(sc, &["n0", "nmin", "nmax"])?;
    let n0 = sc.real("n0")?;
    let ground = s.ground_index().map(|g| g as i64);
    let centre = n0.round() as i64;
    let mut lo = sc.opt_int("nmin")?.unwrap_or(centre - 50);
    if let Some(g) = ground {
        lo = lo.max(g);
    }
    let hi = sc.opt_int("nmax")?.unwrap_or(centre + 50);
    if hi < lo {
        return Err(Error::Config(format!("empty level range {lo}..={hi}")));
    }
    let levels: Vec<(i64, f64)> = (lo..=hi)
        .map(|n| Ok((n, s.eval_energy(n as f64)?)))
        .collect::<Result<_>>()?;
    out.write("levels", |w| io::write_levels_1d(w, &levels))?;
    time_scales_into(d, &s, n0)
}

fn autocorr(sc: &Scenario, out: &mut Outputs, d: &mut Derived) -> Result<()> {
    let s = spectrum_1d(
        sc,
        &["n0", "dn", "cutoff", "tmin", "tmax", "steps", "peaks_q"],
    )?;
    let (n0, dn) = (sc.real("n0")?, sc.real("dn")?);
    let c = gaussian_model_coefficients(n0, dn, sc.real("cutoff")?)?;
    if let Some(g) = s.ground_index() {
        if (c.index_lo as f64) < g {
            return Err(Error::Domain(format!(
                "distribution reaches n = {} below the ground level {g}",
                c.index_lo
            )));
        }
    }
    let grid = time_grid(sc)?;
    let series = autocorrelation(&c, &s, &grid)?;
    out.write("series", |w| io::write_time_series(w, &series))?;
    out.write("coefficients", |w| io::write_coefficients(w, &c))?;
    time_scales_into(d, &s, n0)?;
    d.real("plateau", incoherent_plateau(&c));
    d.real("norm_deficit", c.norm_deficit);
    let max_q = sc.int("peaks_q")?;
    if max_q > 0 {
        let ts = s.time_scales(n0)?;
        let peaks = detect_peaks(&series, ts.t_classical.abs(), ts.t_revival.abs(), max_q)?;
        out.write("peaks", |w| {
            writeln!(w, "p,q,time,measured,predicted")?;
            for r in &peaks {
                writeln!(
                    w,
                    "{},{},{},{},{}",
                    r.p,
                    r.q,
                    io::fmt17(r.time),
                    io::fmt17(r.measured),
                    io::fmt17(r.predicted)
                )?;
            }
            Ok(())
        })?;
    }
    Ok(())
}

fn fractional(sc: &Scenario, out: &mut Outputs, d: &mut Derived) -> Result<()> {
    let t =
        gauss_coefficients(sc.int("p")?, sc.int("q")?).map_err(|e| Error::Config(e.to_string()))?;
    out.write("table", |w| io::write_gauss_table(w, &t))?;
    let cs = clone_structure(t.p, t.q)?;
    d.text("p", t.p);
    d.text("q", t.q);
    if let Some((p, q)) = t.reduced_from {
        d.text("reduced_from", format!("{p}/{q}"));
    }
    d.text("period_l", t.period_l);
    d.text("clone_count", cs.count);
    d.real("clone_spacing", cs.spacing);
    d.real("clone_peak", cs.peak_abs2);
    d.real("parseval", t.norm_sqr());
    d.text("recursion_holds", verify_recursion(&t));
    Ok(())
}

/// Well packet from x0, p0, dx0 with defaults centred, n0 = 40, Δx0 = 0.05L.
fn well_packet(sc: &Scenario, units: UnitSystem) -> Result<(PacketParams1D, CoefficientSet)> {
    let l = units.length;
    let x0 = sc.opt_real("x0")?.unwrap_or(0.5 * l);
    let p0 = sc.opt_real("p0")?.unwrap_or(40.0 * PI * units.hbar / l);
    let dx0 = sc.opt_real("dx0")?.unwrap_or(0.05 * l);
    let p = PacketParams1D::from_spread(x0, p0, dx0, units)
        .map_err(|e| Error::Config(e.to_string()))?;
    let n_max = match sc.opt_int("nmax")? {
        Some(n) if n >= 1 => n as u32,
        Some(n) => {
            return Err(Error::Config(format!(
                "key `nmax` needs at least 1, got {n}"
            )))
        }
        None => default_n_max(&p, l),
    };
    let c = infinite_well_coefficients(&p, n_max)?;
    Ok((p, c))
}

fn well_derived(d: &mut Derived, c: &CoefficientSet, units: UnitSystem) -> Result<f64> {
    let (mean, spread) = c.mean_and_spread();
    let s = Spectrum1D::infinite_well(units);
    time_scales_into(d, &s, mean)?;
    d.real("mean_n", mean);
    d.real("delta_n", spread);
    d.real("norm_deficit", c.norm_deficit);
    Ok(s.time_scales(mean)?.t_revival)
}

fn carpet_cmd(sc: &Scenario, out: &mut Outputs, d: &mut Derived) -> Result<()> {
    let units = units_from(sc)?;
    let (_, c) = well_packet(sc, units)?;
    let t_rev = well_derived(d, &c, units)?;
    let t_hi = sc.opt_real("tmax")?.unwrap_or(t_rev);
    let cp = carpet(&c, units, count(sc, "nx", 64)?, count(sc, "nt", 64)?, t_hi)?;
    out.write("total", |w| io::write_pgm(w, &cp.total))?;
    out.write("classical", |w| io::write_pgm(w, &cp.classical))?;
    out.write("quantum", |w| io::write_pgm(w, &cp.quantum))?;
    Ok(())
}

fn wigner(sc: &Scenario, out: &mut Outputs, d: &mut Derived) -> Result<()> {
    let units = units_from(sc)?;
    let (p, c) = well_packet(sc, units)?;
    well_derived(d, &c, units)?;
    let (plo, phi) = default_p_range(&p);
    // cell centres, since W is defined on the open interval
    let nx = count(sc, "nx", 2)?;
    let half = 0.5 * units.length / nx as f64;
    let x_axis = Axis::new("x", half, units.length - half, nx)?;
    let p_axis = Axis::new(
        "p",
        sc.opt_real("pmin")?.unwrap_or(plo),
        sc.opt_real("pmax")?.unwrap_or(phi),
        count(sc, "np", 2)?,
    )?;
    let g = wigner_infinite_well(&c, units, &x_axis, &p_axis, sc.real("t")?)?;
    out.write("csv", |w| io::write_field_csv(w, &g))?;
    out.write("pgm", |w| io::write_pgm(w, &g))?;
    Ok(())
}

fn observables_cmd(sc: &Scenario, out: &mut Outputs, d: &mut Derived) -> Result<()> {
    let units = units_from(sc)?;
    let grid = time_grid(sc)?;
    let common = [
        "model", "hbar", "mass", "x0", "p0", "dx0", "nmax", "tmin", "tmax", "steps",
    ];
    let (c, basis) = match sc.text("model")? {
        "well" => {
            let mut used = common.to_vec();
            used.push("length");
            sc.only_keys("model well", &used)?;
            let (_, c) = well_packet(sc, units)?;
            well_derived(d, &c, units)?;
            (c, Basis1D::infinite_well(units))
        }
        "bouncer" => {
            let mut used = common.to_vec();
            used.push("force");
            sc.only_keys("model bouncer", &used)?;
            let force = sc.opt_real("force")?.unwrap_or(1.0);
            let z0 = sc.real("x0")?;
            let p0 = sc.opt_real("p0")?.unwrap_or(0.0);
            let p = PacketParams1D::from_spread(z0, p0, sc.opt_real("dx0")?.unwrap_or(1.0), units)
                .map_err(|e| Error::Config(e.to_string()))?;
            let n_max = match sc.opt_int("nmax")? {
                Some(n) if n >= 1 => n as u32,
                Some(n) => {
                    return Err(Error::Config(format!(
                        "key `nmax` needs at least 1, got {n}"
                    )))
                }
                None => {
                    // n from the WKB zero y_n ≈ (3π(n − 1/4)/2)^(2/3) at the mean energy
                    let rho = (units.hbar * units.hbar / (2.0 * units.mass * force)).cbrt();
                    let y = (force * z0 + p.mean_kinetic_energy()) / (force * rho);
                    (2.0 * (2.0 / (3.0 * PI) * y.max(0.0).powf(1.5) + 0.25) + 40.0).ceil() as u32
                }
            };
            let basis = BouncerBasis::new(force, units, n_max)?;
            let c = bouncer_coefficients(&p, &basis)?;
            let (mean, spread) = c.mean_and_spread();
            let s = Spectrum1D::new(Model::BouncerAiry { force }, units);
            time_scales_into(d, &s, mean)?;
            d.real("mean_n", mean);
            d.real("delta_n", spread);
            d.real("norm_deficit", c.norm_deficit);
            (c, Basis1D::Bouncer { units, basis })
        }
        other => {
            return Err(Error::Config(format!(
                "unknown model `{other}` for observables (well, bouncer)"
            )))
        }
    };
    let obs = observables(&c, &basis, &grid)?;
    out.write("series", |w| {
        io::write_table(
            w,
            &["t", "mean_x", "sd_x", "mean_p", "sd_p"],
            (0..obs.times.len()).map(|i| {
                vec![
                    obs.times[i],
                    obs.mean_x[i],
                    obs.sd_x[i],
                    obs.mean_p[i],
                    obs.sd_p[i],
                ]
            }),
        )
    })?;
    out.write("coefficients", |w| io::write_coefficients(w, &c))?;
    Ok(())
}

fn billiard(sc: &Scenario, out: &mut Outputs, d: &mut Derived) -> Result<()> {
    let units = UnitSystem::new(
        sc.opt_real("hbar")?.unwrap_or(1.0),
        sc.opt_real("mass")?.unwrap_or(0.5),
        1.0,
    )
    .map_err(|e| Error::Config(e.to_string()))?;
    let size = sc.real("size")?;
    let p = PacketParams2D::new(
        sc.real("x0")?,
        sc.real("y0")?,
        sc.real("p0x")?,
        sc.real("p0y")?,
        sc.real("dx0")? * 2f64.sqrt(),
        units,
    )
    .map_err(|e| Error::Config(e.to_string()))?;
    let base = [
        "geometry", "size", "hbar", "mass", "x0", "y0", "p0x", "p0y", "dx0", "tmin", "tmax",
        "steps",
    ];
    let geometry = sc.text("geometry")?;
    let (spectrum, c, center): (Spectrum2D, CoefficientSet2D, (f64, f64)) = match geometry {
        "square" => {
            let mut used = base.to_vec();
            used.push("cap");
            sc.only_keys("geometry square", &used)?;
            let side_units = UnitSystem {
                length: size,
                ..units
            };
            let px = PacketParams1D::new(p.x0, p.p0x, p.width_b, side_units)?;
            let py = PacketParams1D::new(p.y0, p.p0y, p.width_b, side_units)?;
            let cap = match sc.opt_int("cap")? {
                Some(c) if c >= 1 => c as u32,
                Some(c) => {
                    return Err(Error::Config(format!(
                        "key `cap` needs at least 1, got {c}"
                    )))
                }
                None => default_n_max(&px, size).max(default_n_max(&py, size)),
            };
            let (cx, cy) = (
                infinite_well_coefficients(&px, cap)?,
                infinite_well_coefficients(&py, cap)?,
            );
            let mut modes = Vec::new();
            let mut coefficients = Vec::new();
            for (nx, ax) in cx.iter() {
                for (ny, ay) in cy.iter() {
                    modes.push(Mode2D::new(nx, ny, Symmetry::None));
                    coefficients.push(ax * ay);
                }
            }
            let c = CoefficientSet2D::new(modes, coefficients);
            let center = (cx.mean_and_spread().0, cy.mean_and_spread().0);
            (Spectrum2D::square(size, cap, side_units)?, c, center)
        }
        "triangle" => {
            let mut used = base.to_vec();
            used.push("cap");
            sc.only_keys("geometry triangle", &used)?;
            let cap = match sc.opt_int("cap")? {
                Some(c) if c >= 1 => c as u32,
                Some(c) => {
                    return Err(Error::Config(format!(
                        "key `cap` needs at least 1, got {c}"
                    )))
                }
                None => default_triangle_cap(&p, size),
            };
            let c = triangle_coefficients(&p, size, cap)?;
            (
                Spectrum2D::equilateral_triangle(size, cap, units)?,
                c,
                (0.0, 0.0),
            )
        }
        "circle" => {
            let mut used = base.to_vec();
            used.extend(["mcap", "nrcap", "levels"]);
            sc.only_keys("geometry circle", &used)?;
            let (m_cap, nr_cap) = (count(sc, "mcap", 0)? as u32, count(sc, "nrcap", 0)? as u32);
            let mode = match sc.text("levels")? {
                "refined" => CircleLevels::Refined,
                "wkb" => CircleLevels::Wkb,
                other => {
                    return Err(Error::Config(format!(
                        "key `levels` must be refined or wkb, got `{other}`"
                    )))
                }
            };
            let c = circular_coefficients(&p, size, m_cap, nr_cap)?;
            (
                circular_spectrum(size, m_cap, nr_cap, mode, units)?,
                c,
                (0.0, 0.0),
            )
        }
        other => {
            return Err(Error::Config(format!(
                "unknown geometry `{other}` (square, triangle, circle)"
            )))
        }
    };
    let grid = time_grid(sc)?;
    let series = autocorrelation_2d(&c, &spectrum, &grid)?;
    out.write("levels", |w| io::write_levels_2d(w, &spectrum))?;
    out.write("coefficients", |w| io::write_coefficients_2d(w, &c))?;
    out.write("series", |w| io::write_time_series(w, &series))?;
    let rt = revival_times_2d(&spectrum, center)?;
    d.real("t_rev_1", rt.t_rev_1);
    d.real("t_rev_2", rt.t_rev_2);
    d.real("t_rev_cross", rt.t_rev_cross);
    d.real("norm_deficit", c.norm_deficit);
    d.text("modes", c.len());
    Ok(())
}

fn jc(sc: &Scenario, out: &mut Outputs, d: &mut Derived) -> Result<()> {
    let p = JCParams::new(sc.real("nbar")?, sc.real("lambda")?, sc.real("detuning")?)
        .map_err(|e| Error::Config(e.to_string()))?;
    let grid = time_grid(sc)?;
    let pe = jc_inversion(&p, &grid)?;
    d.real("t_revival", jc_revival_time(&p));
    d.text("photon_cap", p.photon_cap());
    if p.detuning == 0.0 && p.nbar > 0.0 {
        let env = jc_envelope(&p, &grid)?;
        let bounds: Vec<(f64, f64)> = grid
            .iter()
            .map(|t| jc_bound(&p, *t))
            .collect::<Result<_>>()?;
        out.write("series", |w| {
            io::write_table(
                w,
                &["t", "pe", "envelope", "lower", "upper"],
                (0..grid.len())
                    .map(|i| vec![grid[i], pe.values[i].re, env[i], bounds[i].0, bounds[i].1]),
            )
        })
    } else {
        out.write("series", |w| {
            io::write_table(
                w,
                &["t", "pe"],
                (0..grid.len()).map(|i| vec![grid[i], pe.values[i].re]),
            )
        })
    }
}

fn bec(sc: &Scenario, out: &mut Outputs, d: &mut Derived) -> Result<()> {
    let alpha = Complex64::new(sc.real("alpha_re")?, sc.real("alpha_im")?);
    let u0 = sc.real("u0")?;
    let cs = match sc.opt_int("ncap")? {
        Some(n) if n >= 0 => CoherentState::new(alpha, u0, n as u64)?,
        Some(n) => {
            return Err(Error::Config(format!(
                "key `ncap` must be non-negative, got {n}"
            )))
        }
        None => CoherentState::with_default_cap(alpha, u0)?,
    };
    let t = sc.real("t_over_trev")? * cs.revival_time();
    let extent = sc.opt_real("extent")?.unwrap_or(alpha.norm() + 4.0);
    if !(extent > 0.0) {
        return Err(Error::Config(format!(
            "key `extent` must be positive, got {extent}"
        )));
    }
    let re_axis = Axis::new("re", -extent, extent, count(sc, "nre", 3)?)?;
    let im_axis = Axis::new("im", -extent, extent, count(sc, "nim", 3)?)?;
    let g = bec_overlap_grid(&cs, t, &re_axis, &im_axis)?;
    let peaks = bec_peaks(&cs, t, &g, 1e-6);
    out.write("csv", |w| io::write_field_csv(w, &g))?;
    out.write("pgm", |w| io::write_pgm(w, &g))?;
    out.write("peaks", |w| {
        io::write_table(
            w,
            &["re", "im", "height"],
            peaks.iter().map(|p| vec![p.beta.re, p.beta.im, p.height]),
        )
    })?;
    let field = bec_field(&cs, t);
    d.real("t_revival", cs.revival_time());
    d.text("n_cap", cs.n_cap);
    d.real("field_re", field.re);
    d.real("field_im", field.im);
    d.real("cat_fidelity", bec_cat_fidelity(&cs));
    Ok(())
}
