//! Sweep harness: evaluates a state family over a grid of accelerations and
//! emits one row per grid point as CSV or JSON.
//!
//! Grid points are evaluated in parallel and emitted in grid order, so output
//! is byte-identical across runs.

use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_4, PI};
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use spin_unruh::entanglement::{bell_rho_ar, build_general_rho_ar, mode_entangled_rho_ar};
use spin_unruh::spintrace::{maximally_entangled_occupation_state, occupation_rho};
use spin_unruh::unruh::expected_number;
use spin_unruh::{BellKind, EntanglementReport, SpinPair, SqueezingParams, StateParams};

pub const CSV_HEADER: [&str; 6] = ["r", "x", "negativity", "mutual_information", "pt_min_eigenvalue", "expected_number"];

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] spin_unruh::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Family {
    Bell(BellKind),
    /// `(|0,0⟩ + |s,s'⟩)/√2`.
    Mode(SpinPair),
    /// Singlet occupation state after erasing total spin.
    OccupationSinglet,
    Custom(StateParams),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    #[value(name = "bell-phi+")]
    BellPhiPlus,
    #[value(name = "bell-phi-")]
    BellPhiMinus,
    #[value(name = "bell-psi+")]
    BellPsiPlus,
    #[value(name = "bell-psi-")]
    BellPsiMinus,
    Mode,
    OccupationSinglet,
    Custom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PairName {
    Ud,
    Du,
    Uu,
    Dd,
}

impl From<PairName> for SpinPair {
    fn from(p: PairName) -> Self {
        match p {
            PairName::Ud => SpinPair::UpDown,
            PairName::Du => SpinPair::DownUp,
            PairName::Uu => SpinPair::UpUp,
            PairName::Dd => SpinPair::DownDown,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Scale {
    #[default]
    Linear,
    Log,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Grid {
    R { min: f64, max: f64, steps: usize },
    /// Grid over `x = ωc/a`; each point maps to `r = atan(e^{−πx})`.
    X { min: f64, max: f64, steps: usize, scale: Scale },
}

impl Grid {
    /// `(r, x)` pairs in grid order.
    pub fn points(&self) -> Result<Vec<(f64, Option<f64>)>> {
        match *self {
            Grid::R { min, max, steps } => {
                check_steps(steps)?;
                if !(min.is_finite() && max.is_finite()) || min < 0.0 || max > FRAC_PI_4 + 1e-12 || min > max {
                    return Err(config_err(format!("r range [{min}, {max}] must lie within [0, π/4] with min ≤ max")));
                }
                Ok(linspace(min, max, steps).map(|r| (r, None)).collect())
            }
            Grid::X { min, max, steps, scale } => {
                check_steps(steps)?;
                if !(min.is_finite() && max.is_finite()) || min <= 0.0 || min > max {
                    return Err(config_err(format!("x range [{min}, {max}] must be positive with min ≤ max")));
                }
                let xs: Vec<f64> = match scale {
                    Scale::Linear => linspace(min, max, steps).collect(),
                    Scale::Log => linspace(min.ln(), max.ln(), steps).map(f64::exp).collect(),
                };
                Ok(xs.into_iter().map(|x| ((-PI * x).exp().atan(), Some(x))).collect())
            }
        }
    }
}

fn check_steps(steps: usize) -> Result<()> {
    if steps < 2 {
        return Err(config_err(format!("steps must be at least 2, got {steps}")));
    }
    Ok(())
}

/// Evenly spaced values with both endpoints exact.
fn linspace(min: f64, max: f64, steps: usize) -> impl Iterator<Item = f64> {
    (0..steps).map(move |i| {
        if i + 1 == steps {
            max
        } else {
            min + (max - min) * i as f64 / (steps - 1) as f64
        }
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub family: Family,
    pub grid: Grid,
    pub phi: f64,
    pub format: Format,
    /// `None` writes to standard output.
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Row {
    pub r: f64,
    pub x: Option<f64>,
    pub negativity: f64,
    pub mutual_information: f64,
    pub pt_min_eigenvalue: f64,
    pub expected_number: f64,
}

/// Evaluates one grid point. Pure: no shared state between points.
pub fn evaluate_point(family: &Family, r: f64, x: Option<f64>, phi: f64) -> Result<Row> {
    let p = SqueezingParams::new(r, phi)?;
    let rho = match family {
        Family::Bell(kind) => bell_rho_ar(*kind, &p)?,
        Family::Mode(pair) => mode_entangled_rho_ar(*pair, &p)?,
        Family::OccupationSinglet => occupation_rho(&maximally_entangled_occupation_state(), &p)?,
        Family::Custom(sp) => build_general_rho_ar(sp, &p)?,
    };
    let report = EntanglementReport::analyze(&rho, r)?;
    Ok(Row {
        r,
        x,
        negativity: report.negativity,
        mutual_information: report.mutual_information,
        pt_min_eigenvalue: report.pt_min_eigenvalue(),
        expected_number: expected_number(&p),
    })
}

pub fn run_sweep(config: &SweepConfig) -> Result<Vec<Row>> {
    config
        .grid
        .points()?
        .into_par_iter()
        .map(|(r, x)| evaluate_point(&config.family, r, x, config.phi))
        .collect()
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_number(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_csv<W: Write>(rows: &[Row], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.write_record([
            format_number(row.r),
            row.x.map(format_number).unwrap_or_default(),
            format_number(row.negativity),
            format_number(row.mutual_information),
            format_number(row.pt_min_eigenvalue),
            format_number(row.expected_number),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct JsonRow {
    r: serde_json::Number,
    x: Option<serde_json::Number>,
    negativity: serde_json::Number,
    mutual_information: serde_json::Number,
    pt_min_eigenvalue: serde_json::Number,
    expected_number: serde_json::Number,
}

fn json_number(v: f64) -> Result<serde_json::Number> {
    if !v.is_finite() {
        return Err(config_err(format!("cannot serialize non-finite value {v}")));
    }
    Ok(serde_json::Number::from_str(&format_number(v))?)
}

/// JSON array of row objects whose keys match the CSV header.
pub fn write_json<W: Write>(rows: &[Row], mut out: W) -> Result<()> {
    let json_rows = rows
        .iter()
        .map(|row| {
            Ok(JsonRow {
                r: json_number(row.r)?,
                x: row.x.map(json_number).transpose()?,
                negativity: json_number(row.negativity)?,
                mutual_information: json_number(row.mutual_information)?,
                pt_min_eigenvalue: json_number(row.pt_min_eigenvalue)?,
                expected_number: json_number(row.expected_number)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    serde_json::to_writer_pretty(&mut out, &json_rows)?;
    writeln!(out)?;
    Ok(())
}

pub fn write_rows<W: Write>(rows: &[Row], format: Format, out: W) -> Result<()> {
    match format {
        Format::Csv => write_csv(rows, out),
        Format::Json => write_json(rows, out),
    }
}

/// Runs the sweep and writes to the configured destination.
pub fn sweep_to_output(config: &SweepConfig) -> Result<()> {
    let rows = run_sweep(config)?;
    match &config.out {
        Some(path) => {
            let file = fs::File::create(path)?;
            write_rows(&rows, config.format, std::io::BufWriter::new(file))
        }
        None => write_rows(&rows, config.format, std::io::stdout().lock()),
    }
}

/// Flags of the `sweep` subcommand. Every flag may also come from a
/// `key=value` config file using the flag name as key; flags win.
#[derive(Args, Clone, Debug, Default)]
pub struct SweepArgs {
    /// State family.
    #[arg(long, value_enum)]
    pub family: Option<FamilyName>,
    /// Alice/Rob spins of the one-particle term for `--family mode`.
    #[arg(long, value_enum)]
    pub spin_pair: Option<PairName>,
    #[arg(long)]
    pub r_min: Option<f64>,
    #[arg(long)]
    pub r_max: Option<f64>,
    /// Number of grid points (at least 2).
    #[arg(long)]
    pub steps: Option<usize>,
    /// Sweep over x = ωc/a instead of r.
    #[arg(long)]
    pub x_min: Option<f64>,
    #[arg(long)]
    pub x_max: Option<f64>,
    #[arg(long, value_enum)]
    pub x_scale: Option<Scale>,
    /// Bogoliubov phase; observables do not depend on it.
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<f64>,
    /// Coefficients of |↑,↑⟩, |↑,↓⟩, |↓,↑⟩, |↓,↓⟩ for `--family custom`,
    /// as `a` or `a+bi`.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<String>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file; standard output when absent or `-`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// `key=value` file supplying defaults for any flag above.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Parses `key=value` lines; `#` starts a comment, blank lines are skipped.
pub fn parse_config_file(text: &str) -> Result<HashMap<String, String>> {
    let mut map = HashMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| config_err(format!("line {}: expected key=value", n + 1)))?;
        let key = k.trim().replace('_', "-");
        if map.insert(key.clone(), v.trim().to_string()).is_some() {
            return Err(config_err(format!("line {}: duplicate key {key}", n + 1)));
        }
    }
    Ok(map)
}

fn from_file<T: ValueEnum>(map: &HashMap<String, String>, key: &str) -> Result<Option<T>> {
    map.get(key)
        .map(|v| T::from_str(v, true).map_err(|e| config_err(format!("{key}: {e}"))))
        .transpose()
}

fn parse_from_file<T: FromStr>(map: &HashMap<String, String>, key: &str) -> Result<Option<T>>
where
    T::Err: fmt::Display,
{
    map.get(key)
        .map(|v| v.parse::<T>().map_err(|e| config_err(format!("{key}: {e}"))))
        .transpose()
}

const CONFIG_KEYS: [&str; 15] = [
    "family", "spin-pair", "r-min", "r-max", "steps", "x-min", "x-max", "x-scale", "phi", "alpha", "beta", "gamma",
    "delta", "format", "out",
];

impl SweepArgs {
    /// Fills unset flags from `map`.
    pub fn merge(mut self, map: &HashMap<String, String>) -> Result<Self> {
        if let Some(k) = map.keys().find(|k| !CONFIG_KEYS.contains(&k.as_str())) {
            return Err(config_err(format!("unknown config key {k}")));
        }
        macro_rules! fill {
            ($field:ident, $key:literal, enum) => {
                if self.$field.is_none() {
                    self.$field = from_file(map, $key)?;
                }
            };
            ($field:ident, $key:literal) => {
                if self.$field.is_none() {
                    self.$field = parse_from_file(map, $key)?;
                }
            };
        }
        fill!(family, "family", enum);
        fill!(spin_pair, "spin-pair", enum);
        fill!(r_min, "r-min");
        fill!(r_max, "r-max");
        fill!(steps, "steps");
        fill!(x_min, "x-min");
        fill!(x_max, "x-max");
        fill!(x_scale, "x-scale", enum);
        fill!(phi, "phi");
        fill!(alpha, "alpha");
        fill!(beta, "beta");
        fill!(gamma, "gamma");
        fill!(delta, "delta");
        fill!(format, "format", enum);
        fill!(out, "out");
        Ok(self)
    }

    /// Resolves flags (and the config file, if any) into a [`SweepConfig`].
    pub fn resolve(self) -> Result<SweepConfig> {
        let args = match &self.config {
            Some(path) => {
                let text = read_config(path)?;
                self.clone().merge(&parse_config_file(&text)?)?
            }
            None => self,
        };
        args.into_config()
    }

    fn into_config(self) -> Result<SweepConfig> {
        let name = self.family.ok_or_else(|| config_err("--family is required"))?;
        if self.spin_pair.is_some() && name != FamilyName::Mode {
            return Err(config_err("--spin-pair only applies to --family mode"));
        }
        let coeffs = [&self.alpha, &self.beta, &self.gamma, &self.delta];
        if name != FamilyName::Custom && coeffs.iter().any(|c| c.is_some()) {
            return Err(config_err("--alpha/--beta/--gamma/--delta only apply to --family custom"));
        }
        let family = match name {
            FamilyName::BellPhiPlus => Family::Bell(BellKind::PhiPlus),
            FamilyName::BellPhiMinus => Family::Bell(BellKind::PhiMinus),
            FamilyName::BellPsiPlus => Family::Bell(BellKind::PsiPlus),
            FamilyName::BellPsiMinus => Family::Bell(BellKind::PsiMinus),
            FamilyName::Mode => Family::Mode(self.spin_pair.unwrap_or(PairName::Ud).into()),
            FamilyName::OccupationSinglet => Family::OccupationSinglet,
            FamilyName::Custom => {
                let parse = |name: &str, v: &Option<String>| -> Result<Complex64> {
                    match v {
                        None => Ok(Complex64::new(0.0, 0.0)),
                        Some(s) => Complex64::from_str(s.trim())
                            .map_err(|_| config_err(format!("--{name}: cannot parse complex number {s:?}"))),
                    }
                };
                Family::Custom(StateParams::new(
                    parse("alpha", &self.alpha)?,
                    parse("beta", &self.beta)?,
                    parse("gamma", &self.gamma)?,
                    parse("delta", &self.delta)?,
                )?)
            }
        };

        let uses_x = self.x_min.is_some() || self.x_max.is_some() || self.x_scale.is_some();
        let uses_r = self.r_min.is_some() || self.r_max.is_some();
        let steps = self.steps.unwrap_or(101);
        let grid = match (uses_r, uses_x) {
            (true, true) => return Err(config_err("choose either an r grid or an x grid, not both")),
            (_, true) => Grid::X {
                min: self.x_min.ok_or_else(|| config_err("--x-min is required for an x grid"))?,
                max: self.x_max.ok_or_else(|| config_err("--x-max is required for an x grid"))?,
                steps,
                scale: self.x_scale.unwrap_or_default(),
            },
            _ => Grid::R { min: self.r_min.unwrap_or(0.0), max: self.r_max.unwrap_or(FRAC_PI_4), steps },
        };
        grid.points()?;
        let phi = self.phi.unwrap_or(0.0);
        if !phi.is_finite() {
            return Err(config_err("--phi must be finite"));
        }
        let out = self.out.filter(|p| p.as_os_str() != "-");
        Ok(SweepConfig { family, grid, phi, format: self.format.unwrap_or_default(), out })
    }
}

fn read_config(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| config_err(format!("cannot read {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(family: FamilyName) -> SweepArgs {
        SweepArgs { family: Some(family), ..Default::default() }
    }

    #[test]
    fn r_grid_endpoints_are_exact() {
        let pts = Grid::R { min: 0.0, max: FRAC_PI_4, steps: 3 }.points().unwrap();
        assert_eq!(pts, vec![(0.0, None), (FRAC_PI_4 / 2.0, None), (FRAC_PI_4, None)]);
    }

    #[test]
    fn invalid_grids_are_rejected() {
        assert!(Grid::R { min: 0.0, max: 1.0, steps: 5 }.points().is_err());
        assert!(Grid::R { min: 0.5, max: 0.1, steps: 5 }.points().is_err());
        assert!(Grid::R { min: 0.0, max: 0.5, steps: 1 }.points().is_err());
        assert!(Grid::X { min: 0.0, max: 1.0, steps: 5, scale: Scale::Log }.points().is_err());
    }

    #[test]
    fn x_grid_maps_to_r() {
        let pts = Grid::X { min: 0.01, max: 1.0, steps: 3, scale: Scale::Log }.points().unwrap();
        assert!((pts[1].1.unwrap() - 0.1).abs() < 1e-15);
        for (r, x) in pts {
            assert!((r.tan() - (-PI * x.unwrap()).exp()).abs() < 1e-15);
        }
    }

    #[test]
    fn bell_row_values() {
        let row = evaluate_point(&Family::Bell(BellKind::PhiPlus), FRAC_PI_4 / 2.0, None, 0.0).unwrap();
        let c2 = (FRAC_PI_4 / 2.0).cos().powi(2);
        assert!((row.negativity - c2).abs() < 1e-12);
        assert!((row.negativity - 0.853553).abs() < 1e-6);
        assert!((row.pt_min_eigenvalue + c2 / 2.0).abs() < 1e-12);
    }

    #[test]
    fn csv_layout() {
        let row = Row { r: 0.5, x: None, negativity: 1.0, mutual_information: 2.0, pt_min_eigenvalue: -0.5, expected_number: 0.0 };
        let mut buf = Vec::new();
        write_csv(&[row, Row { x: Some(0.25), ..row }], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "r,x,negativity,mutual_information,pt_min_eigenvalue,expected_number");
        assert_eq!(
            lines[1],
            "5.0000000000000000e-1,,1.0000000000000000e0,2.0000000000000000e0,-5.0000000000000000e-1,0.0000000000000000e0"
        );
        assert!(lines[2].starts_with("5.0000000000000000e-1,2.5000000000000000e-1,"));
    }

    #[test]
    fn json_layout() {
        let row = Row { r: 0.1, x: None, negativity: 1.0, mutual_information: 2.0, pt_min_eigenvalue: -0.5, expected_number: 0.0 };
        let mut buf = Vec::new();
        write_json(&[row], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("\"r\": 1.0000000000000001e-1"));
        assert!(text.contains("\"x\": null"));
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        let keys: Vec<_> = parsed[0].as_object().unwrap().keys().cloned().collect();
        let mut expected: Vec<_> = CSV_HEADER.iter().map(|s| s.to_string()).collect();
        expected.sort();
        let mut keys_sorted = keys.clone();
        keys_sorted.sort();
        assert_eq!(keys_sorted, expected);
    }

    #[test]
    fn number_format_round_trips() {
        for v in [0.1, 1.0 / 3.0, -2.5e-300, FRAC_PI_4, 0.0] {
            assert_eq!(format_number(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn config_file_parsing() {
        let map = parse_config_file("# sweep\nfamily = mode\nspin_pair=du\n\nsteps=4 # few\n").unwrap();
        assert_eq!(map["spin-pair"], "du");
        assert_eq!(map["steps"], "4");
        assert!(parse_config_file("family").is_err());
        assert!(parse_config_file("steps=1\nsteps=2").is_err());
    }

    #[test]
    fn flags_win_over_config() {
        let map = parse_config_file("family=bell-psi-\nsteps=7\nphi=0.3").unwrap();
        let merged = SweepArgs { steps: Some(3), ..Default::default() }.merge(&map).unwrap();
        assert_eq!(merged.steps, Some(3));
        assert_eq!(merged.family, Some(FamilyName::BellPsiMinus));
        assert_eq!(merged.phi, Some(0.3));
        assert!(SweepArgs::default().merge(&parse_config_file("colour=red").unwrap()).is_err());
        assert!(SweepArgs::default().merge(&parse_config_file("steps=many").unwrap()).is_err());
    }

    #[test]
    fn resolve_defaults_and_errors() {
        let cfg = args(FamilyName::Mode).resolve().unwrap();
        assert_eq!(cfg.family, Family::Mode(SpinPair::UpDown));
        assert_eq!(cfg.grid, Grid::R { min: 0.0, max: FRAC_PI_4, steps: 101 });
        assert!(SweepArgs::default().resolve().is_err());
        let both = SweepArgs { r_min: Some(0.0), x_min: Some(1.0), x_max: Some(2.0), ..args(FamilyName::Mode) };
        assert!(both.resolve().is_err());
        let stray = SweepArgs { spin_pair: Some(PairName::Dd), ..args(FamilyName::BellPhiPlus) };
        assert!(stray.resolve().is_err());
    }

    #[test]
    fn custom_family_parses_complex_coefficients() {
        let a = SweepArgs {
            alpha: Some("0.5".into()),
            beta: Some("0.1+0.2i".into()),
            ..args(FamilyName::Custom)
        };
        let Family::Custom(sp) = a.resolve().unwrap().family else { panic!("expected custom family") };
        assert_eq!(sp.beta(), Complex64::new(0.1, 0.2));
        let bad = SweepArgs { alpha: Some("0.9".into()), beta: Some("0.9".into()), ..args(FamilyName::Custom) };
        assert!(matches!(bad.resolve(), Err(CliError::Core(_))));
        let junk = SweepArgs { alpha: Some("half".into()), ..args(FamilyName::Custom) };
        assert!(junk.resolve().is_err());
    }

    #[test]
    fn parallel_sweep_preserves_order() {
        let cfg = SweepConfig {
            family: Family::Bell(BellKind::PsiPlus),
            grid: Grid::R { min: 0.0, max: FRAC_PI_4, steps: 33 },
            phi: 0.0,
            format: Format::Csv,
            out: None,
        };
        let rows = run_sweep(&cfg).unwrap();
        assert!(rows.windows(2).all(|w| w[0].r < w[1].r && w[0].negativity >= w[1].negativity));
    }
}
