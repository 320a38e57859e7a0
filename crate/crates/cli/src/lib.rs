//! Command-line front end for the `landau-decay` library.
//!
//! Every subcommand writes its records to stdout as CSV (default) or JSON
//! Lines; diagnostics go to stderr. Exit status is 0 on success, 1 when a
//! computation or verification fails and 2 for usage errors.

pub mod args;
pub mod commands;
pub mod output;

pub use args::{parse, Cli, Command, Common};
pub use commands::Context;
pub use output::{render, Format, Record};

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    Usage(String),
    Compute(String),
    /// Verification ran but at least one check failed.
    Verification,
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Compute(_) | Failure::Verification => 1,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(msg) => write!(f, "usage error: {msg}"),
            Failure::Compute(msg) => write!(f, "error: {msg}"),
            Failure::Verification => f.write_str("verification failed"),
        }
    }
}

impl From<landau_decay::Error> for Failure {
    fn from(e: landau_decay::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

impl From<output::NonFinite> for Failure {
    fn from(e: output::NonFinite) -> Self {
        Failure::Compute(e.to_string())
    }
}

/// Runs a parsed command. On success returns the full stdout payload; when
/// verification fails the report is returned alongside the failure so it
/// can still be printed.
pub fn execute(cli: &Cli) -> Result<String, (Failure, Option<String>)> {
    let fail = |f: Failure| (f, None);
    let common = cli.command.common();
    let ctx = common.context().map_err(fail)?;
    let format = common.format;
    match &cli.command {
        Command::Rate { p_perp2, m, .. } => {
            let rec = commands::rate(&ctx, *p_perp2, *m).map_err(|e| fail(e.into()))?;
            render(&[rec], format).map_err(|e| fail(e.into()))
        }
        Command::ScanM { p_perp2, m_min, m_max, .. } => {
            check_range(*m_min, *m_max).map_err(fail)?;
            let rows = commands::scan_m(&ctx, p_perp2, *m_min, *m_max).map_err(|e| fail(e.into()))?;
            render(&rows, format).map_err(|e| fail(e.into()))
        }
        Command::ScanField { radius, m_min, m_max, .. } => {
            check_range(*m_min, *m_max).map_err(fail)?;
            let rows = commands::scan_field(&ctx, *radius, *m_min, *m_max).map_err(|e| fail(e.into()))?;
            render(&rows, format).map_err(|e| fail(e.into()))
        }
        Command::ScanLll { eb_min, eb_max, points, .. } => {
            let m2 = ctx.channel.parent_mass().powi(2);
            let lo = eb_min.unwrap_or(0.6 * m2);
            let hi = eb_max.unwrap_or(1.0e6 * m2);
            if !(lo > 0.5 * m2) {
                return Err(fail(Failure::Usage(format!(
                    "--eb-min must exceed M^2/2 = {}, got {lo}",
                    0.5 * m2
                ))));
            }
            if !(hi > lo) {
                return Err(fail(Failure::Usage(format!(
                    "--eb-max ({hi}) must exceed --eb-min ({lo})"
                ))));
            }
            if *points < 2 {
                return Err(fail(Failure::Usage("--points must be at least 2".into())));
            }
            if ctx.channel.charged_mass() != 0.0 || ctx.channel.neutral_mass() != 0.0 {
                return Err(fail(Failure::Usage(
                    "scan-lll requires massless daughters (--m-e 0 --m-nu 0)".into(),
                )));
            }
            let rows = commands::scan_lll(&ctx, lo, hi, *points).map_err(|e| fail(e.into()))?;
            render(&rows, format).map_err(|e| fail(e.into()))
        }
        Command::Table { .. } => {
            let rows = commands::table(&ctx).map_err(|e| fail(e.into()))?;
            render(&rows, format).map_err(|e| fail(e.into()))
        }
        Command::Verify { trials, seed, .. } => {
            if *trials == 0 {
                return Err(fail(Failure::Usage("--trials must be at least 1".into())));
            }
            let checks = commands::verify(&ctx, *trials, *seed).map_err(|e| fail(e.into()))?;
            let out = render(&checks, format).map_err(|e| fail(e.into()))?;
            if checks.iter().all(|c| c.passed) {
                Ok(out)
            } else {
                Err((Failure::Verification, Some(out)))
            }
        }
    }
}

fn check_range(lo: u32, hi: u32) -> Result<(), Failure> {
    if lo > hi {
        Err(Failure::Usage(format!("empty level range {lo}..={hi}")))
    } else {
        Ok(())
    }
}
