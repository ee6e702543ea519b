//! Config-driven front end behind the `revival` binary.
//!
//! ```text
//! revival <command> [--config FILE] [--key value ...] --out DIR
//! ```
//!
//! Config files hold flat `key = value` lines; `#` starts a comment. Flags
//! override file keys. Unknown keys are rejected.

mod commands;

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::{Error, Result};

pub use commands::run;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Command {
    Spectrum,
    Autocorr,
    Fractional,
    Carpet,
    Wigner,
    Observables,
    Billiard2d,
    Jc,
    Bec,
}

impl Command {
    pub const ALL: [Command; 9] = [
        Command::Spectrum,
        Command::Autocorr,
        Command::Fractional,
        Command::Carpet,
        Command::Wigner,
        Command::Observables,
        Command::Billiard2d,
        Command::Jc,
        Command::Bec,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Autocorr => "autocorr",
            Command::Fractional => "fractional",
            Command::Carpet => "carpet",
            Command::Wigner => "wigner",
            Command::Observables => "observables",
            Command::Billiard2d => "billiard2d",
            Command::Jc => "jc",
            Command::Bec => "bec",
        }
    }

    /// Keys accepted by this command.
    pub fn keys(self) -> Vec<KeySpec> {
        use Group::{Grid, Model};
        use Kind::{Int, Real, Text};
        let units_1d = [
            KeySpec::opt("alpha", Real, Model),
            KeySpec::opt("beta", Real, Model),
            KeySpec::opt("omega", Real, Model),
            KeySpec::opt("hbar", Real, Model),
            KeySpec::opt("mass", Real, Model),
            KeySpec::opt("length", Real, Model),
            KeySpec::opt("inertia", Real, Model),
            KeySpec::opt("v0", Real, Model),
            KeySpec::opt("force", Real, Model),
        ];
        let well = [
            KeySpec::opt("hbar", Real, Model),
            KeySpec::opt("mass", Real, Model),
            KeySpec::opt("length", Real, Model),
            KeySpec::opt("x0", Real, Model),
            KeySpec::opt("p0", Real, Model),
            KeySpec::opt("dx0", Real, Model),
            KeySpec::opt("nmax", Int, Model),
        ];
        let times = [
            KeySpec::with_default("tmin", Real, Grid, "0"),
            KeySpec::req("tmax", Real, Grid),
            KeySpec::req("steps", Int, Grid),
        ];
        let mut keys = match self {
            Command::Spectrum => {
                let mut k = vec![
                    KeySpec::req("model", Text, Model),
                    KeySpec::req("n0", Real, Model),
                ];
                k.extend(units_1d);
                k.extend([
                    KeySpec::opt("nmin", Int, Grid),
                    KeySpec::opt("nmax", Int, Grid),
                ]);
                k
            }
            Command::Autocorr => {
                let mut k = vec![
                    KeySpec::req("model", Text, Model),
                    KeySpec::req("n0", Real, Model),
                    KeySpec::req("dn", Real, Model),
                    KeySpec::with_default("cutoff", Real, Model, "1e-10"),
                ];
                k.extend(units_1d);
                k.extend(times);
                k.push(KeySpec::with_default("peaks_q", Int, Grid, "0"));
                k
            }
            Command::Fractional => {
                vec![KeySpec::req("p", Int, Model), KeySpec::req("q", Int, Model)]
            }
            Command::Carpet => {
                let mut k = well.to_vec();
                k.extend([
                    KeySpec::with_default("nx", Int, Grid, "256"),
                    KeySpec::with_default("nt", Int, Grid, "256"),
                    KeySpec::opt("tmax", Real, Grid),
                ]);
                k
            }
            Command::Wigner => {
                let mut k = well.to_vec();
                k.extend([
                    KeySpec::with_default("t", Real, Grid, "0"),
                    KeySpec::with_default("nx", Int, Grid, "256"),
                    KeySpec::with_default("np", Int, Grid, "256"),
                    KeySpec::opt("pmin", Real, Grid),
                    KeySpec::opt("pmax", Real, Grid),
                ]);
                k
            }
            Command::Observables => {
                let mut k = vec![
                    KeySpec::with_default("model", Text, Model, "well"),
                    KeySpec::opt("force", Real, Model),
                ];
                k.extend(well);
                k.extend(times);
                k
            }
            Command::Billiard2d => {
                let mut k = vec![
                    KeySpec::req("geometry", Text, Model),
                    KeySpec::with_default("size", Real, Model, "1"),
                    KeySpec::opt("hbar", Real, Model),
                    KeySpec::opt("mass", Real, Model),
                    KeySpec::req("x0", Real, Model),
                    KeySpec::req("y0", Real, Model),
                    KeySpec::with_default("p0x", Real, Model, "0"),
                    KeySpec::with_default("p0y", Real, Model, "0"),
                    KeySpec::req("dx0", Real, Model),
                    KeySpec::opt("cap", Int, Model),
                    KeySpec::with_default("mcap", Int, Model, "40"),
                    KeySpec::with_default("nrcap", Int, Model, "60"),
                    KeySpec::with_default("levels", Text, Model, "refined"),
                ];
                k.extend(times);
                k
            }
            Command::Jc => {
                let mut k = vec![
                    KeySpec::req("nbar", Real, Model),
                    KeySpec::req("lambda", Real, Model),
                    KeySpec::with_default("detuning", Real, Model, "0"),
                ];
                k.extend(times);
                k
            }
            Command::Bec => vec![
                KeySpec::req("alpha_re", Real, Model),
                KeySpec::with_default("alpha_im", Real, Model, "0"),
                KeySpec::with_default("u0", Real, Model, "1"),
                KeySpec::opt("ncap", Int, Model),
                KeySpec::with_default("t_over_trev", Real, Grid, "0.5"),
                KeySpec::with_default("nre", Int, Grid, "101"),
                KeySpec::with_default("nim", Int, Grid, "101"),
                KeySpec::opt("extent", Real, Grid),
            ],
        };
        let mut seen = std::collections::BTreeSet::new();
        keys.retain(|k| seen.insert(k.name));
        keys
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown command `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Text,
    Real,
    Int,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Group {
    Model,
    Grid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KeySpec {
    pub name: &'static str,
    pub kind: Kind,
    pub group: Group,
    pub required: bool,
    pub default: Option<&'static str>,
}

impl KeySpec {
    const fn req(name: &'static str, kind: Kind, group: Group) -> Self {
        Self {
            name,
            kind,
            group,
            required: true,
            default: None,
        }
    }

    const fn opt(name: &'static str, kind: Kind, group: Group) -> Self {
        Self {
            name,
            kind,
            group,
            required: false,
            default: None,
        }
    }

    const fn with_default(
        name: &'static str,
        kind: Kind,
        group: Group,
        default: &'static str,
    ) -> Self {
        Self {
            name,
            kind,
            group,
            required: false,
            default: Some(default),
        }
    }
}

/// A validated request: every value has been type-checked and defaults
/// have been filled in.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub command: Command,
    pub model: BTreeMap<String, String>,
    pub grid: BTreeMap<String, String>,
    /// Artifact role → file name inside the output directory.
    pub outputs: BTreeMap<String, String>,
}

impl Scenario {
    /// Validates raw pairs; later pairs override earlier ones.
    pub fn from_pairs(command: Command, pairs: &[(String, String)]) -> Result<Self> {
        let specs = command.keys();
        let mut values: BTreeMap<&str, String> = BTreeMap::new();
        for (k, v) in pairs {
            let spec = specs
                .iter()
                .find(|s| s.name == k)
                .ok_or_else(|| Error::Config(format!("unknown key `{k}` for command {command}")))?;
            values.insert(spec.name, v.clone());
        }
        let (mut model, mut grid) = (BTreeMap::new(), BTreeMap::new());
        for spec in &specs {
            let value = match (values.remove(spec.name), spec.default) {
                (Some(v), _) => v,
                (None, Some(d)) => d.to_string(),
                (None, None) if spec.required => {
                    return Err(Error::Config(format!(
                        "missing key `{}` for command {command}",
                        spec.name
                    )))
                }
                (None, None) => continue,
            };
            check_kind(spec, &value)?;
            let target = if spec.group == Group::Model {
                &mut model
            } else {
                &mut grid
            };
            target.insert(spec.name.to_string(), value);
        }
        let outputs = commands::artifact_names(command)
            .into_iter()
            .map(|(role, file)| (role.to_string(), file.to_string()))
            .collect();
        Ok(Self {
            command,
            model,
            grid,
            outputs,
        })
    }

    fn raw(&self, key: &str) -> Option<&str> {
        self.model
            .get(key)
            .or_else(|| self.grid.get(key))
            .map(String::as_str)
    }

    pub fn text(&self, key: &str) -> Result<&str> {
        self.raw(key)
            .ok_or_else(|| Error::Config(format!("missing key `{key}`")))
    }

    pub fn real(&self, key: &str) -> Result<f64> {
        self.opt_real(key)?
            .ok_or_else(|| Error::Config(format!("missing key `{key}`")))
    }

    pub fn opt_real(&self, key: &str) -> Result<Option<f64>> {
        self.raw(key).map(|v| parse_real(key, v)).transpose()
    }

    pub fn int(&self, key: &str) -> Result<i64> {
        self.opt_int(key)?
            .ok_or_else(|| Error::Config(format!("missing key `{key}`")))
    }

    pub fn opt_int(&self, key: &str) -> Result<Option<i64>> {
        self.raw(key).map(|v| parse_int(key, v)).transpose()
    }

    /// All parameters in key order, model keys first.
    pub fn parameters(&self) -> impl Iterator<Item = (&String, &String)> {
        self.model.iter().chain(self.grid.iter())
    }

    /// Fails when a key outside `used` was given explicitly or defaulted.
    pub(crate) fn only_keys(&self, context: &str, used: &[&str]) -> Result<()> {
        let specs = self.command.keys();
        for (k, _) in self.parameters() {
            let defaulted = specs.iter().any(|s| s.name == k && s.default.is_some());
            if !used.contains(&k.as_str()) && !defaulted {
                return Err(Error::Config(format!(
                    "key `{k}` does not apply to {context}"
                )));
            }
        }
        Ok(())
    }
}

fn parse_real(key: &str, v: &str) -> Result<f64> {
    match v.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(Error::Config(format!(
            "key `{key}` needs a finite real, got `{v}`"
        ))),
    }
}

fn parse_int(key: &str, v: &str) -> Result<i64> {
    v.parse::<i64>()
        .map_err(|_| Error::Config(format!("key `{key}` needs an integer, got `{v}`")))
}

fn check_kind(spec: &KeySpec, v: &str) -> Result<()> {
    match spec.kind {
        Kind::Real => parse_real(spec.name, v).map(|_| ()),
        Kind::Int => parse_int(spec.name, v).map(|_| ()),
        Kind::Text if v.is_empty() => Err(Error::Config(format!("key `{}` is empty", spec.name))),
        Kind::Text => Ok(()),
    }
}

/// Raw `key = value` pairs in file order.
pub fn parse_config_text(text: &str) -> Result<Vec<(String, String)>> {
    let mut pairs: Vec<(String, String)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", i + 1)))?;
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() {
            return Err(Error::Config(format!("line {}: empty key", i + 1)));
        }
        if pairs.iter().any(|(seen, _)| seen == k) {
            return Err(Error::Config(format!(
                "line {}: duplicate key `{k}`",
                i + 1
            )));
        }
        pairs.push((k.to_string(), v.to_string()));
    }
    Ok(pairs)
}

pub fn parse_config(command: Command, path: &Path) -> Result<Scenario> {
    let text = std::fs::read_to_string(path)?;
    Scenario::from_pairs(command, &parse_config_text(&text)?)
}

/// A parsed command line.
#[derive(Debug, Clone, PartialEq)]
pub struct Invocation {
    pub scenario: Scenario,
    pub out_dir: PathBuf,
}

pub const USAGE: &str = "usage: revival <command> [--config FILE] [--key value ...] --out DIR
commands: spectrum autocorr fractional carpet wigner observables billiard2d jc bec";

/// Parses the arguments after the program name.
pub fn parse_args(args: &[String]) -> Result<Invocation> {
    let (cmd, rest) = args
        .split_first()
        .ok_or_else(|| Error::Config(USAGE.to_string()))?;
    let command: Command = cmd.parse()?;
    let mut config: Option<PathBuf> = None;
    let mut out_dir: Option<PathBuf> = None;
    let mut flags: Vec<(String, String)> = Vec::new();
    let mut it = rest.iter();
    while let Some(arg) = it.next() {
        let body = arg
            .strip_prefix("--")
            .ok_or_else(|| Error::Config(format!("unexpected argument `{arg}`")))?;
        let (key, value) = match body.split_once('=') {
            Some((k, v)) => (k.to_string(), v.to_string()),
            None => {
                let v = it
                    .next()
                    .ok_or_else(|| Error::Config(format!("flag `--{body}` needs a value")))?;
                (body.to_string(), v.clone())
            }
        };
        match key.as_str() {
            "config" => config = Some(PathBuf::from(value)),
            "out" => out_dir = Some(PathBuf::from(value)),
            _ => flags.push((key, value)),
        }
    }
    let mut pairs = match &config {
        Some(path) => parse_config_text(&std::fs::read_to_string(path)?)?,
        None => Vec::new(),
    };
    pairs.extend(flags);
    let scenario = Scenario::from_pairs(command, &pairs)?;
    let out_dir = out_dir.ok_or_else(|| Error::Config("missing `--out DIR`".into()))?;
    Ok(Invocation { scenario, out_dir })
}

/// Caps the global rayon pool from `REVIVAL_THREADS`.
pub fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var("REVIVAL_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().ok().filter(|n| *n > 0).ok_or_else(|| {
        Error::Config(format!(
            "REVIVAL_THREADS must be a positive integer, got `{raw}`"
        ))
    })?;
    // a pool built earlier in the process keeps its size
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global();
    Ok(())
}

/// Entry point for the binary; returns the process exit status.
pub fn main_with_args(args: &[String]) -> i32 {
    if args.iter().any(|a| a == "--help" || a == "-h") || args.is_empty() {
        println!("{USAGE}");
        return if args.is_empty() { 2 } else { 0 };
    }
    let outcome = configure_threads()
        .and_then(|_| parse_args(args))
        .and_then(|inv| run(&inv.scenario, &inv.out_dir));
    match outcome {
        Ok(files) => {
            for f in files {
                println!("{}", f.display());
            }
            0
        }
        Err(e) => {
            eprintln!("revival: {e}");
            e.exit_code()
        }
    }
}
