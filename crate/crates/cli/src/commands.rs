//! Record builders behind each subcommand.

use rayon::prelude::*;

use landau_decay::oracle::{completeness_sum, verify_closed_form, wavefunction_norm};
use landau_decay::rate::{lll_rate_exact, lll_rate_factored};
use landau_decay::{
    decay_rate, DecayChannel, MagnetizedState, OrbitObservables, PhysicalConstants,
    QuadratureConfig,
};

use crate::output::{Record, Value};

/// Everything a computation needs besides its own parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Context {
    pub channel: DecayChannel,
    pub consts: PhysicalConstants,
    pub quadrature: QuadratureConfig,
}

impl Default for Context {
    fn default() -> Self {
        Self {
            channel: DecayChannel::default(),
            consts: PhysicalConstants::CODATA_2018,
            quadrature: QuadratureConfig::default(),
        }
    }
}

/// The four parameter points `(p⊥², m)` of the published results table.
pub const TABLE_POINTS: [(f64, u32); 4] = [(3.0e4, 65), (1.0e4, 30), (5.0e3, 20), (1.0e3, 5)];

/// One parent state: rate, ratio and SI observables.
#[derive(Debug, Clone, PartialEq)]
pub struct RateRecord {
    pub p_perp2: f64,
    pub m: u32,
    pub eb: f64,
    pub omega: f64,
    pub lorentz_gamma: f64,
    pub n_max: Option<u32>,
    pub gamma: f64,
    pub gamma_free_boosted: f64,
    pub ratio: f64,
    pub quad_error: f64,
    pub observables: OrbitObservables,
}

impl Record for RateRecord {
    fn columns() -> &'static [&'static str] {
        &[
            "p_perp2_MeV2",
            "m",
            "eB_MeV2",
            "omega_MeV",
            "lorentz_gamma",
            "n_max",
            "Gamma_MeV",
            "Gamma0_MeV",
            "ratio",
            "quad_error",
            "radius_m",
            "acceleration_m_s2",
            "lambda_dB_m",
            "B_gauss",
        ]
    }

    fn values(&self) -> Vec<Value> {
        vec![
            Value::Float(self.p_perp2),
            Value::Int(self.m.into()),
            Value::Float(self.eb),
            Value::Float(self.omega),
            Value::Float(self.lorentz_gamma),
            Value::OptInt(self.n_max.map(u64::from)),
            Value::Float(self.gamma),
            Value::Float(self.gamma_free_boosted),
            Value::Float(self.ratio),
            Value::Float(self.quad_error),
            Value::Float(self.observables.radius_m),
            Value::Float(self.observables.acceleration_m_s2),
            Value::Float(self.observables.de_broglie_m),
            Value::Float(self.observables.field_gauss),
        ]
    }
}

/// `p_perp2` is echoed as given; it equals `(2m+1)|e|B` of `state` up to
/// rounding.
pub fn rate_record(
    ctx: &Context,
    state: &MagnetizedState,
    p_perp2: f64,
) -> landau_decay::Result<RateRecord> {
    let result = decay_rate(&ctx.channel, state, &ctx.quadrature)?;
    let omega = state.energy(&ctx.channel);
    let observables =
        OrbitObservables::new(&ctx.consts, p_perp2.sqrt(), state.level(), omega, state.eb())?;
    Ok(RateRecord {
        p_perp2,
        m: state.level(),
        eb: state.eb(),
        omega,
        lorentz_gamma: result.lorentz_gamma,
        n_max: result.n_max_used,
        gamma: result.gamma_total,
        gamma_free_boosted: result.gamma_free_boosted,
        ratio: result.ratio,
        quad_error: result.error_estimate,
        observables,
    })
}

/// Single point at fixed `p⊥²` and level `m`.
pub fn rate(ctx: &Context, p_perp2: f64, m: u32) -> landau_decay::Result<RateRecord> {
    rate_record(ctx, &MagnetizedState::from_p_perp_sq(p_perp2, m)?, p_perp2)
}

fn collect_rows<F>(points: Vec<(f64, u32)>, f: F) -> landau_decay::Result<Vec<RateRecord>>
where
    F: Fn(f64, u32) -> landau_decay::Result<RateRecord> + Sync,
{
    // indexed parallel collect keeps row order
    points.into_par_iter().map(|(x, m)| f(x, m)).collect()
}

/// Levels `m_min..=m_max` at fixed `p⊥²`, one block per momentum.
pub fn scan_m(
    ctx: &Context,
    p_perp2: &[f64],
    m_min: u32,
    m_max: u32,
) -> landau_decay::Result<Vec<RateRecord>> {
    let points = p_perp2
        .iter()
        .flat_map(|&p2| (m_min..=m_max).map(move |m| (p2, m)))
        .collect();
    collect_rows(points, |p2, m| rate(ctx, p2, m))
}

/// Levels `m_min..=m_max` on a fixed orbit radius (MeV⁻¹); the field grows
/// as `(2m+1)/R²`.
pub fn scan_field(
    ctx: &Context,
    radius: f64,
    m_min: u32,
    m_max: u32,
) -> landau_decay::Result<Vec<RateRecord>> {
    let points = (m_min..=m_max).map(|m| (radius, m)).collect();
    collect_rows(points, |r, m| {
        let state = MagnetizedState::from_radius(r, m)?;
        rate_record(ctx, &state, state.p_perp_sq())
    })
}

/// The four rows of the published table.
pub fn table(ctx: &Context) -> landau_decay::Result<Vec<RateRecord>> {
    collect_rows(TABLE_POINTS.to_vec(), |p2, m| rate(ctx, p2, m))
}

/// Lowest-Landau-level scan row.
#[derive(Debug, Clone, PartialEq)]
pub struct LllRecord {
    pub eb: f64,
    pub p_perp: f64,
    pub ratio_exact: f64,
    pub ratio_factored: f64,
    pub ratio_general: f64,
}

impl Record for LllRecord {
    fn columns() -> &'static [&'static str] {
        &["eB_MeV2", "p_perp_MeV", "ratio_exact", "ratio_factored", "ratio_general"]
    }

    fn values(&self) -> Vec<Value> {
        vec![
            Value::Float(self.eb),
            Value::Float(self.p_perp),
            Value::Float(self.ratio_exact),
            Value::Float(self.ratio_factored),
            Value::Float(self.ratio_general),
        ]
    }
}

/// `points` log-spaced fields in `[eb_min, eb_max]`, parent in `m = 0`.
pub fn log_grid(min: f64, max: f64, points: usize) -> Vec<f64> {
    let (lo, hi) = (min.ln(), max.ln());
    (0..points)
        .map(|i| {
            if i == 0 {
                min
            } else if i + 1 == points {
                max
            } else {
                (lo + (hi - lo) * i as f64 / (points - 1) as f64).exp()
            }
        })
        .collect()
}

pub fn scan_lll(
    ctx: &Context,
    eb_min: f64,
    eb_max: f64,
    points: usize,
) -> landau_decay::Result<Vec<LllRecord>> {
    log_grid(eb_min, eb_max, points)
        .into_par_iter()
        .map(|eb| {
            let state = MagnetizedState::new(eb, 0)?;
            Ok(LllRecord {
                eb,
                p_perp: eb.sqrt(),
                ratio_exact: lll_rate_exact(&ctx.channel, eb, &ctx.quadrature)?,
                ratio_factored: lll_rate_factored(&ctx.channel, eb, &ctx.quadrature)?,
                ratio_general: decay_rate(&ctx.channel, &state, &ctx.quadrature)?.ratio,
            })
        })
        .collect()
}

/// One named check of the verification suite.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckRecord {
    pub check: String,
    pub passed: bool,
    pub worst: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl Record for CheckRecord {
    fn columns() -> &'static [&'static str] {
        &["check", "passed", "worst", "tolerance", "detail"]
    }

    fn values(&self) -> Vec<Value> {
        vec![
            Value::Text(self.check.clone()),
            Value::Bool(self.passed),
            Value::Float(self.worst),
            Value::Float(self.tolerance),
            Value::Text(self.detail.clone()),
        ]
    }
}

pub const LLL_EQUIVALENCE_TOLERANCE: f64 = 1.0e-7;
pub const LLL_FIELDS_IN_PARENT_MASS_SQ: [f64; 4] = [0.6, 1.0, 10.0, 100.0];
pub const COMPLETENESS_TOLERANCE: f64 = 1.0e-10;
pub const COMPLETENESS_LEVELS: [u32; 4] = [0, 5, 20, 50];
pub const COMPLETENESS_ARGUMENTS: [f64; 4] = [0.1, 1.0, 10.0, 100.0];
pub const NORMALIZATION_TOLERANCE: f64 = 1.0e-8;

fn rel_error(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

/// Randomized closed-form overlap comparison, LLL equivalence, completeness
/// sums and wavefunction normalization.
pub fn verify(ctx: &Context, trials: usize, seed: u64) -> landau_decay::Result<Vec<CheckRecord>> {
    let mut checks = Vec::new();

    let report = verify_closed_form(trials, seed, &ctx.quadrature)?;
    let detail = report.to_string().trim_end().replace('\n', "; ");
    checks.push(CheckRecord {
        check: "closed_form_overlap".into(),
        passed: report.passed(),
        worst: report.max_rel_error,
        tolerance: landau_decay::oracle::CLOSED_FORM_TOLERANCE,
        detail,
    });

    // the LLL forms assume massless daughters; use the configured parent
    let lll_channel = DecayChannel::new(ctx.channel.parent_mass(), 0.0, 0.0, ctx.channel.coupling())?;
    let m2 = lll_channel.parent_mass().powi(2);
    let mut worst = 0.0f64;
    for f in LLL_FIELDS_IN_PARENT_MASS_SQ {
        let eb = f * m2;
        let exact = lll_rate_exact(&lll_channel, eb, &ctx.quadrature)?;
        let general = decay_rate(&lll_channel, &MagnetizedState::new(eb, 0)?, &ctx.quadrature)?.ratio;
        worst = worst.max(rel_error(exact, general));
    }
    checks.push(CheckRecord {
        check: "lll_equivalence".into(),
        passed: worst < LLL_EQUIVALENCE_TOLERANCE,
        worst,
        tolerance: LLL_EQUIVALENCE_TOLERANCE,
        detail: format!("eB/M^2 in {LLL_FIELDS_IN_PARENT_MASS_SQ:?}"),
    });

    let mut worst = 0.0f64;
    for m in COMPLETENESS_LEVELS {
        for x in COMPLETENESS_ARGUMENTS {
            let (s, _) = completeness_sum(m, x)?;
            worst = worst.max((s - 1.0).abs());
        }
    }
    checks.push(CheckRecord {
        check: "completeness".into(),
        passed: worst < COMPLETENESS_TOLERANCE,
        worst,
        tolerance: COMPLETENESS_TOLERANCE,
        detail: format!("m in {COMPLETENESS_LEVELS:?}, x in {COMPLETENESS_ARGUMENTS:?}"),
    });

    let mut worst = 0.0f64;
    for n in 0..=landau_decay::oracle::ORACLE_MAX_INDEX {
        worst = worst.max((wavefunction_norm(n, 100.0)? - 1.0).abs());
    }
    checks.push(CheckRecord {
        check: "wavefunction_normalization".into(),
        passed: worst < NORMALIZATION_TOLERANCE,
        worst,
        tolerance: NORMALIZATION_TOLERANCE,
        detail: "n = 0..=12, eB = 100 MeV^2".into(),
    });

    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_grid_endpoints_and_count() {
        let g = log_grid(2.0, 2000.0, 4);
        assert_eq!(g.len(), 4);
        assert_eq!(g[0], 2.0);
        assert_eq!(g[3], 2000.0);
        assert!((g[1] - 20.0).abs() < 1e-12);
        assert_eq!(log_grid(1.0, 5.0, 2), vec![1.0, 5.0]);
    }

    #[test]
    fn scan_field_rows() {
        let rows = scan_field(&Context::default(), 0.1, 0, 4).unwrap();
        assert_eq!(rows.len(), 5);
        assert!((rows[0].eb - 100.0).abs() < 1e-12);
        assert!(rows.windows(2).all(|w| w[1].eb > w[0].eb));
        for r in &rows {
            let p = (2.0 * f64::from(r.m) + 1.0) / 0.1;
            assert!((r.p_perp2 - p * p).abs() < 1e-9 * p * p);
        }
    }

    #[test]
    fn scan_m_blocks_per_momentum() {
        let rows = scan_m(&Context::default(), &[1.0e3, 2.0e3], 3, 5).unwrap();
        let keys: Vec<_> = rows.iter().map(|r| (r.p_perp2, r.m)).collect();
        assert_eq!(
            keys,
            vec![(1.0e3, 3), (1.0e3, 4), (1.0e3, 5), (2.0e3, 3), (2.0e3, 4), (2.0e3, 5)]
        );
    }
}
