//! Flag definitions and `--config` merging.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, CommandFactory, Parser, Subcommand};

use landau_decay::{DecayChannel, PhysicalConstants, QuadratureConfig};

use crate::commands::Context;
use crate::output::Format;
use crate::Failure;

#[derive(Debug, Clone, Parser)]
#[command(name = "landau-decay", version, about = "Decay rates of a charged scalar in a Landau level")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Parent mass in MeV.
    #[arg(long = "m-mu", default_value_t = 105.7, value_parser = positive)]
    pub m_mu: f64,
    /// Charged daughter mass in MeV.
    #[arg(long = "m-e", default_value_t = 0.0, value_parser = non_negative)]
    pub m_e: f64,
    /// Neutral daughter mass in MeV.
    #[arg(long = "m-nu", default_value_t = 0.0, value_parser = non_negative)]
    pub m_nu: f64,
    /// Coupling constant (cancels in the ratio).
    #[arg(long = "G", id = "G", default_value_t = 1.0, value_parser = positive)]
    pub coupling: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Relative tolerance of the longitudinal quadrature.
    #[arg(long, value_parser = tolerance)]
    pub tol: Option<f64>,
    /// File of `key = value` lines; flags on the command line take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

impl Common {
    pub fn context(&self) -> Result<Context, Failure> {
        let channel = DecayChannel::new(self.m_mu, self.m_e, self.m_nu, self.coupling)
            .map_err(|e| Failure::Usage(e.to_string()))?;
        let mut quadrature = QuadratureConfig::default();
        if let Some(tol) = self.tol {
            quadrature = quadrature.with_rel_tol(tol);
        }
        Ok(Context {
            channel,
            consts: PhysicalConstants::CODATA_2018,
            quadrature,
        })
    }
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Rate, ratio and observables for one parent state.
    Rate {
        /// Transverse momentum squared, MeV^2.
        #[arg(long = "p-perp2", value_parser = positive)]
        p_perp2: f64,
        /// Parent Landau level.
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        common: Common,
    },
    /// One row per level at fixed transverse momentum.
    ScanM {
        /// Transverse momentum squared, MeV^2; repeat for several curves.
        #[arg(long = "p-perp2", required = true, value_delimiter = ',', value_parser = positive)]
        p_perp2: Vec<f64>,
        #[arg(long = "m-min", default_value_t = 0)]
        m_min: u32,
        #[arg(long = "m-max", default_value_t = 60)]
        m_max: u32,
        #[command(flatten)]
        common: Common,
    },
    /// One row per level on a fixed orbit radius.
    ScanField {
        /// Orbit radius in MeV^-1.
        #[arg(long, default_value_t = 0.1, value_parser = positive)]
        radius: f64,
        #[arg(long = "m-min", default_value_t = 0)]
        m_min: u32,
        #[arg(long = "m-max", default_value_t = 30)]
        m_max: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Lowest-Landau-level ratio on a log-spaced field grid.
    ScanLll {
        /// Lowest field in MeV^2 [default: 0.6 M^2].
        #[arg(long = "eb-min", value_parser = positive)]
        eb_min: Option<f64>,
        /// Highest field in MeV^2 [default: 1e6 M^2].
        #[arg(long = "eb-max", value_parser = positive)]
        eb_max: Option<f64>,
        #[arg(long, default_value_t = 25)]
        points: usize,
        #[command(flatten)]
        common: Common,
    },
    /// The four reference parameter points.
    Table {
        #[command(flatten)]
        common: Common,
    },
    /// Run the oracle checks; exit status 1 if any fails.
    Verify {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Rate { common, .. }
            | Command::ScanM { common, .. }
            | Command::ScanField { common, .. }
            | Command::ScanLll { common, .. }
            | Command::Table { common }
            | Command::Verify { common, .. } => common,
        }
    }
}

fn parse_f64(s: &str) -> Result<f64, String> {
    let x: f64 = s.trim().parse().map_err(|_| format!("`{s}` is not a number"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

fn positive(s: &str) -> Result<f64, String> {
    let x = parse_f64(s)?;
    if x > 0.0 { Ok(x) } else { Err(format!("must be positive, got {x}")) }
}

fn non_negative(s: &str) -> Result<f64, String> {
    let x = parse_f64(s)?;
    if x >= 0.0 { Ok(x) } else { Err(format!("must be non-negative, got {x}")) }
}

fn tolerance(s: &str) -> Result<f64, String> {
    let x = parse_f64(s)?;
    if x > 0.0 && x < 1.0 { Ok(x) } else { Err(format!("must lie in (0, 1), got {x}")) }
}

/// `key = value` pairs; blank lines and `#` comments are skipped.
pub fn read_config(text: &str) -> Result<Vec<(String, String)>, String> {
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected `key = value`", i + 1))?;
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() || v.is_empty() {
            return Err(format!("line {}: expected `key = value`", i + 1));
        }
        pairs.push((k.trim_start_matches("--").to_owned(), v.to_owned()));
    }
    Ok(pairs)
}

/// Value of `--config` if given, in either `--config path` or
/// `--config=path` form.
fn config_path(args: &[OsString]) -> Option<PathBuf> {
    let mut it = args.iter().skip(1);
    while let Some(a) = it.next() {
        let a = a.to_string_lossy();
        if a == "--" {
            return None;
        }
        if a == "--config" {
            return it.next().map(PathBuf::from);
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some(PathBuf::from(p));
        }
    }
    None
}

fn on_command_line(args: &[OsString], long: &str) -> bool {
    let flag = format!("--{long}");
    let with_value = format!("--{long}=");
    args.iter().skip(1).any(|a| {
        let a = a.to_string_lossy();
        a == flag.as_str() || a.starts_with(&with_value)
    })
}

/// Parses `args`, splicing in values from `--config` for every flag the
/// command line leaves unset.
pub fn parse<I, T>(args: I) -> Result<Cli, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    if let (Some(path), Some(name)) = (config_path(&args), args.get(1).cloned()) {
        let mut cmd = Cli::command();
        let name = name.to_string_lossy().into_owned();
        if cmd.find_subcommand(&name).is_some() {
            let extra = config_args(&mut cmd, &name, &args, &path)?;
            args.splice(2..2, extra);
        }
    }
    Cli::try_parse_from(args)
}

fn config_args(
    cmd: &mut clap::Command,
    name: &str,
    args: &[OsString],
    path: &Path,
) -> Result<Vec<OsString>, clap::Error> {
    use clap::error::ErrorKind;
    let text = std::fs::read_to_string(path).map_err(|e| {
        cmd.error(ErrorKind::Io, format!("cannot read config {}: {e}", path.display()))
    })?;
    let pairs = read_config(&text).map_err(|e| {
        cmd.error(ErrorKind::InvalidValue, format!("config {}: {e}", path.display()))
    })?;
    let subcmd = cmd.find_subcommand(name).expect("checked by caller").clone();
    let mut extra = Vec::new();
    for (key, value) in pairs {
        let known = key != "config"
            && key != "help"
            && subcmd.get_arguments().any(|a| a.get_long() == Some(key.as_str()));
        if !known {
            return Err(cmd.error(
                ErrorKind::UnknownArgument,
                format!("config {}: unknown key `{key}` for `{name}`", path.display()),
            ));
        }
        if on_command_line(args, &key) {
            continue;
        }
        extra.push(OsString::from(format!("--{key}={value}")));
    }
    Ok(extra)
}
