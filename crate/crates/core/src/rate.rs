//! The decay-rate engine.
//!
//! For a parent in Landau level `m` of a field `|e|B` (with `k_z = 0`) the
//! rate into daughter levels `n = 0..=n_max` is
//!
//! ```text
//! Γ = G²/(16π ω_m) Σ_n ∫ dk_z  w(n, m, X) / ω_n(k_z),
//! X = ((ω_m − ω_n)² − k_z² − M_ν²) / (2|e|B),
//! ```
//!
//! where `w` is the [overlap weight](crate::specfun::overlap_weight) and
//! `|k_z| ≤ kz_max(n)`. The integrand is even in `k_z`, so each level is
//! integrated over `[0, kz_max]` and doubled. Level contributions may be
//! computed in parallel but are always reduced in ascending `n` with
//! compensated summation, which makes the total independent of scheduling.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::landau::{kz_max_unchecked, n_max, DecayChannel, MagnetizedState};
use crate::quadrature::{integrate, QuadratureConfig};
use crate::specfun::{overlap_weight, OverlapKernel, OVERLAP_MAX_ARGUMENT, OVERLAP_MAX_INDEX};
use crate::sum::CompensatedSum;

/// Rate into a single daughter level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelContribution {
    pub n: u32,
    /// `Γ_n` in MeV.
    pub rate: f64,
    /// Quadrature error estimate for `Γ_n`, in MeV.
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RateResult {
    /// Total rate `Γ` in MeV.
    pub gamma_total: f64,
    /// Per-level rates in ascending `n`.
    pub level_contributions: Vec<LevelContribution>,
    /// `γ Γ / Γ'₀`; exactly one if the decay behaved like an ideal clock.
    pub ratio: f64,
    /// Rest-frame free rate `Γ'₀`.
    pub gamma_free_rest: f64,
    /// Time-dilated free rate `Γ₀ = Γ'₀ / γ`.
    pub gamma_free_boosted: f64,
    /// Highest daughter level summed, `None` when no level is open.
    pub n_max_used: Option<u32>,
    pub lorentz_gamma: f64,
    /// Sum of the per-level error estimates, in MeV.
    pub error_estimate: f64,
}

/// How per-level integrals are scheduled. The result is identical either way.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Serial,
    #[default]
    Parallel,
}

/// Precomputed kinematics of one (parent, daughter level) pair.
#[derive(Debug, Clone, Copy)]
struct LevelKinematics {
    n: u32,
    m: u32,
    eb: f64,
    omega_m: f64,
    kz_max: f64,
    neutral_mass: f64,
    /// `M_e² + (2n+1)|e|B`
    transverse_mass_sq: f64,
}

impl LevelKinematics {
    fn new(channel: &DecayChannel, state: &MagnetizedState, n: u32) -> Self {
        let eb = state.eb();
        let me = channel.charged_mass();
        Self {
            n,
            m: state.level(),
            eb,
            omega_m: state.energy(channel),
            kz_max: kz_max_unchecked(channel, state, n),
            neutral_mass: channel.neutral_mass(),
            transverse_mass_sq: me * me + (2.0 * f64::from(n) + 1.0) * eb,
        }
    }

    fn omega_n(&self, kz: f64) -> f64 {
        (self.transverse_mass_sq + kz * kz).sqrt()
    }

    /// `X = ((ω_m − ω_n)² − k_z² − M_ν²) / (2|e|B)`.
    fn argument(&self, kz: f64) -> f64 {
        let kz = kz.abs();
        let w = self.omega_m;
        let wn = self.omega_n(kz);
        if self.neutral_mass == 0.0 {
            // With ω_m² − M_e² − (2n+1)eB = 2 ω_m kz_max:
            //   ω_m − ω_n − k_z = 2 ω_m (kz_max − k_z) / (ω_m − k_z + ω_n)
            //   ω_m − ω_n       = (2 ω_m kz_max − k_z²) / (ω_m + ω_n)
            let minus = 2.0 * w * (self.kz_max - kz) / (w - kz + wn);
            let diff = (2.0 * w * self.kz_max - kz * kz) / (w + wn);
            (minus * (diff + kz) / (2.0 * self.eb)).max(0.0)
        } else {
            let diff = w - wn;
            ((diff * diff - kz * kz - self.neutral_mass * self.neutral_mass) / (2.0 * self.eb))
                .max(0.0)
        }
    }

    fn integrand(&self, kernel: &OverlapKernel, kz: f64) -> f64 {
        let x = self.argument(kz);
        debug_assert!(x >= 0.0);
        match kernel.weight(x) {
            Ok(w) => w.value() / self.omega_n(kz),
            Err(_) => f64::NAN,
        }
    }

    fn check_caps(&self) -> Result<()> {
        if self.n.max(self.m) > OVERLAP_MAX_INDEX {
            return Err(Error::range(format!(
                "Landau levels (n = {}, m = {}) exceed the maximum {OVERLAP_MAX_INDEX}",
                self.n, self.m
            )));
        }
        let x0 = self.argument(0.0);
        if x0 > OVERLAP_MAX_ARGUMENT {
            return Err(Error::range(format!(
                "overlap argument {x0} exceeds the maximum {OVERLAP_MAX_ARGUMENT}"
            )));
        }
        Ok(())
    }
}

fn check_open_level(channel: &DecayChannel, state: &MagnetizedState, n: u32) -> Result<()> {
    match n_max(channel, state) {
        Some(top) if n <= top => Ok(()),
        top => Err(Error::range(format!(
            "daughter level {n} is above the kinematic limit {top:?}"
        ))),
    }
}

/// Integrand of the level sum, `w(n, m, X) / ω_n(k_z)`, in MeV⁻¹.
pub fn level_integrand(
    channel: &DecayChannel,
    state: &MagnetizedState,
    n: u32,
    k_z: f64,
) -> Result<f64> {
    check_open_level(channel, state, n)?;
    let kin = LevelKinematics::new(channel, state, n);
    if !(k_z.abs() <= kin.kz_max) {
        return Err(Error::domain(format!(
            "k_z = {k_z} lies outside the kinematic window ±{}",
            kin.kz_max
        )));
    }
    kin.check_caps()?;
    let w = overlap_weight(n, state.level(), kin.argument(k_z))?;
    Ok(w.value() / kin.omega_n(k_z))
}

/// Rate `Γ_n` into daughter level `n` with its quadrature error estimate.
pub fn level_contribution(
    channel: &DecayChannel,
    state: &MagnetizedState,
    n: u32,
    cfg: &QuadratureConfig,
) -> Result<LevelContribution> {
    cfg.validate()?;
    check_open_level(channel, state, n)?;
    level_contribution_unchecked(channel, state, n, cfg).map_err(|e| e.at_level(n))
}

fn level_contribution_unchecked(
    channel: &DecayChannel,
    state: &MagnetizedState,
    n: u32,
    cfg: &QuadratureConfig,
) -> Result<LevelContribution> {
    let kin = LevelKinematics::new(channel, state, n);
    if kin.kz_max == 0.0 {
        return Ok(LevelContribution {
            n,
            rate: 0.0,
            error: 0.0,
        });
    }
    kin.check_caps()?;

    let g = channel.coupling();
    // Γ_n = prefactor · ∫_0^kz_max
    let prefactor = 2.0 * g * g / (16.0 * PI * kin.omega_m);
    let abs_tol = cfg.abs_tol * free_rate_rest(channel) / prefactor;
    // One panel per Laguerre zero (at most min(n, m) of them).
    let panels = (n.min(state.level()) as usize + 1).min(cfg.max_subdivisions / 2).max(1);
    let kernel = OverlapKernel::new(n, state.level())?;
    let est = integrate(
        |kz| kin.integrand(&kernel, kz),
        0.0,
        kin.kz_max,
        panels,
        cfg.rel_tol,
        abs_tol,
        cfg.max_subdivisions,
    )
    .map_err(|e| match e {
        Error::Convergence { level, value, error } => Error::Convergence {
            level,
            value: value * prefactor,
            error: error * prefactor,
        },
        other => other,
    })?;

    Ok(LevelContribution {
        n,
        rate: est.value * prefactor,
        error: est.error * prefactor,
    })
}

/// Total decay rate summed over every open daughter level.
pub fn decay_rate(
    channel: &DecayChannel,
    state: &MagnetizedState,
    cfg: &QuadratureConfig,
) -> Result<RateResult> {
    decay_rate_with(channel, state, cfg, Execution::default())
}

pub fn decay_rate_with(
    channel: &DecayChannel,
    state: &MagnetizedState,
    cfg: &QuadratureConfig,
    execution: Execution,
) -> Result<RateResult> {
    cfg.validate()?;
    let top = n_max(channel, state);
    let levels = top.map_or(0, |t| t + 1);
    let compute = |n: u32| level_contribution_unchecked(channel, state, n, cfg).map_err(|e| e.at_level(n));

    let results: Vec<Result<LevelContribution>> = match execution {
        Execution::Serial => (0..levels).map(compute).collect(),
        Execution::Parallel => (0..levels).into_par_iter().map(compute).collect(),
    };
    // Reports the lowest failing level regardless of scheduling.
    let contributions = results.into_iter().collect::<Result<Vec<_>>>()?;

    let mut total = CompensatedSum::new();
    let mut error = CompensatedSum::new();
    for c in &contributions {
        total.add(c.rate);
        error.add(c.error);
    }
    let gamma_total = total.value();
    let lorentz_gamma = state.lorentz_gamma(channel);
    let gamma_free_rest = free_rate_rest(channel);

    Ok(RateResult {
        gamma_total,
        level_contributions: contributions,
        ratio: lorentz_gamma * gamma_total / gamma_free_rest,
        gamma_free_rest,
        gamma_free_boosted: gamma_free_rest / lorentz_gamma,
        n_max_used: top,
        lorentz_gamma,
        error_estimate: error.value(),
    })
}

/// Rest-frame rate `Γ'₀` of the decay without a field.
///
/// For a massless neutral daughter this is `G²/(16π M) (1 − M_e²/M²)`; in
/// general `G² p*/(8π M²)` with the two-body momentum `p*`.
pub fn free_rate_rest(channel: &DecayChannel) -> f64 {
    let g2 = channel.coupling() * channel.coupling();
    let m = channel.parent_mass();
    let me = channel.charged_mass();
    let mn = channel.neutral_mass();
    if mn == 0.0 {
        g2 / (16.0 * PI * m) * (1.0 - me * me / (m * m))
    } else {
        let lambda = (m * m - (me + mn).powi(2)) * (m * m - (me - mn).powi(2));
        let p_star = lambda.max(0.0).sqrt() / (2.0 * m);
        g2 * p_star / (8.0 * PI * m * m)
    }
}

/// Time-dilated free rate `Γ'₀ / γ`.
pub fn free_rate_boosted(channel: &DecayChannel, lorentz_gamma: f64) -> Result<f64> {
    if !(lorentz_gamma >= 1.0 && lorentz_gamma.is_finite()) {
        return Err(Error::domain(format!(
            "Lorentz factor must be at least 1, got {lorentz_gamma}"
        )));
    }
    Ok(free_rate_rest(channel) / lorentz_gamma)
}

/// Mean lifetime `1/Γ` in MeV⁻¹.
pub fn lifetime(rate: f64) -> Result<f64> {
    if !(rate > 0.0 && rate.is_finite()) {
        return Err(Error::domain(format!("rate must be positive, got {rate}")));
    }
    Ok(1.0 / rate)
}

fn check_lll(channel: &DecayChannel, eb: f64) -> Result<()> {
    if channel.charged_mass() != 0.0 || channel.neutral_mass() != 0.0 {
        return Err(Error::domain(
            "lowest-Landau-level forms assume massless daughters",
        ));
    }
    let m = channel.parent_mass();
    if !(eb > 0.5 * m * m && eb.is_finite()) {
        return Err(Error::domain(format!(
            "lowest-Landau-level regime needs eB > M²/2 = {}, got {eb}",
            0.5 * m * m
        )));
    }
    Ok(())
}

fn lll_integral<F: Fn(f64) -> f64>(f: F, x_max: f64, cfg: &QuadratureConfig) -> Result<f64> {
    cfg.validate()?;
    let est = integrate(f, 0.0, x_max, 1, cfg.rel_tol, 0.0, cfg.max_subdivisions)?;
    Ok(est.value)
}

/// `γΓ/Γ'₀` for `m = n = 0` with massless daughters, reduced directly from
/// the general level sum:
///
/// ```text
/// 2 e^{−(1 + M²/2eB)} ∫_0^{x_max} dk e^{√(1+M²/eB) √(1+k²/eB)} / (√eB √(1+k²/eB)),
/// x_max = M² / (2 √(M² + eB)).
/// ```
///
/// Independent of [`decay_rate`]: no overlap weights, no level bookkeeping.
pub fn lll_rate_exact(channel: &DecayChannel, eb: f64, cfg: &QuadratureConfig) -> Result<f64> {
    check_lll(channel, eb)?;
    let m2 = channel.parent_mass().powi(2);
    let a = (1.0 + m2 / eb).sqrt();
    let shift = 1.0 + m2 / (2.0 * eb);
    let sqrt_eb = eb.sqrt();
    let x_max = m2 / (2.0 * (m2 + eb).sqrt());
    let integral = lll_integral(
        |k| {
            let b = (1.0 + k * k / eb).sqrt();
            (a * b - shift).exp() / (sqrt_eb * b)
        },
        x_max,
        cfg,
    )?;
    Ok(2.0 * integral)
}

/// The same ratio with the exponential factored as
/// `e^{−(1+M²/2eB)} e^{−√(1+M²/eB)} ∫ e^{√(1+k²/eB)} …`.
///
/// This separable form does not follow from the level sum; it tends to
/// `e^{−1} ·` [`lll_rate_exact`] at large fields. Kept for comparison only.
pub fn lll_rate_factored(channel: &DecayChannel, eb: f64, cfg: &QuadratureConfig) -> Result<f64> {
    check_lll(channel, eb)?;
    let m2 = channel.parent_mass().powi(2);
    let outer = (-(1.0 + m2 / (2.0 * eb)) - (1.0 + m2 / eb).sqrt()).exp() / eb.sqrt();
    let x_max = m2 / (2.0 * (m2 + eb).sqrt());
    let integral = lll_integral(
        |k| {
            let b = (1.0 + k * k / eb).sqrt();
            b.exp() / b
        },
        x_max,
        cfg,
    )?;
    Ok(2.0 * outer * integral)
}
