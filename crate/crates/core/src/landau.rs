//! Kinematics of charged scalars in a constant magnetic field.
//!
//! Only the product `|e|B` (written `eb`, in MeV²) enters any formula, so
//! the sign of the charge never appears. The parent's longitudinal momentum
//! `k_z` is fixed to zero throughout.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::specfun::{hermite_scaled, ln_factorial, HERMITE_MAX_ORDER};

/// Two-body scalar decay `Φ_parent → Φ_charged Φ_neutral` with coupling `G`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayChannel {
    parent_mass: f64,
    charged_mass: f64,
    neutral_mass: f64,
    coupling: f64,
}

impl DecayChannel {
    pub fn new(parent_mass: f64, charged_mass: f64, neutral_mass: f64, coupling: f64) -> Result<Self> {
        for (name, v) in [
            ("parent mass", parent_mass),
            ("charged daughter mass", charged_mass),
            ("neutral daughter mass", neutral_mass),
        ] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::domain(format!("{name} must be non-negative, got {v}")));
            }
        }
        if !(coupling > 0.0 && coupling.is_finite()) {
            return Err(Error::domain(format!("coupling must be positive, got {coupling}")));
        }
        if parent_mass <= charged_mass + neutral_mass {
            return Err(Error::domain(format!(
                "decay is closed: {parent_mass} MeV <= {charged_mass} MeV + {neutral_mass} MeV"
            )));
        }
        Ok(Self {
            parent_mass,
            charged_mass,
            neutral_mass,
            coupling,
        })
    }

    pub fn parent_mass(&self) -> f64 {
        self.parent_mass
    }

    pub fn charged_mass(&self) -> f64 {
        self.charged_mass
    }

    pub fn neutral_mass(&self) -> f64 {
        self.neutral_mass
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn with_coupling(self, coupling: f64) -> Result<Self> {
        Self::new(self.parent_mass, self.charged_mass, self.neutral_mass, coupling)
    }
}

impl Default for DecayChannel {
    /// Muon-mass parent, massless daughters, `G = 1 MeV`.
    fn default() -> Self {
        Self {
            parent_mass: 105.7,
            charged_mass: 0.0,
            neutral_mass: 0.0,
            coupling: 1.0,
        }
    }
}

/// Parent particle in Landau level `m` of a field `|e|B`, with `k_z = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MagnetizedState {
    eb: f64,
    level: u32,
}

impl MagnetizedState {
    pub fn new(eb: f64, level: u32) -> Result<Self> {
        check_field(eb)?;
        Ok(Self { eb, level })
    }

    /// State with transverse momentum squared `p⊥² = (2m+1)|e|B` held fixed.
    pub fn from_p_perp_sq(p_perp_sq: f64, level: u32) -> Result<Self> {
        Self::new(eb_for_p_perp(p_perp_sq, level)?, level)
    }

    /// State on an orbit of radius `R` (MeV⁻¹).
    pub fn from_radius(radius: f64, level: u32) -> Result<Self> {
        Self::new(eb_for_radius(radius, level)?, level)
    }

    pub fn eb(&self) -> f64 {
        self.eb
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Parent longitudinal momentum; always zero.
    pub fn k_z(&self) -> f64 {
        0.0
    }

    /// `p⊥² = (2m+1)|e|B`.
    pub fn p_perp_sq(&self) -> f64 {
        level_factor(self.level) * self.eb
    }

    /// Parent energy `ω_m = sqrt(M² + (2m+1)|e|B)`.
    pub fn energy(&self, channel: &DecayChannel) -> f64 {
        (channel.parent_mass * channel.parent_mass + self.p_perp_sq()).sqrt()
    }

    /// `γ = ω_m / M`.
    pub fn lorentz_gamma(&self, channel: &DecayChannel) -> f64 {
        self.energy(channel) / channel.parent_mass
    }
}

fn level_factor(n: u32) -> f64 {
    2.0 * f64::from(n) + 1.0
}

fn check_field(eb: f64) -> Result<()> {
    if eb > 0.0 && eb.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("eB must be positive, got {eb}")))
    }
}

/// Landau energy `sqrt(M² + (2n+1)|e|B + k_z²)`.
pub fn omega(mass: f64, n: u32, eb: f64, k_z: f64) -> Result<f64> {
    check_field(eb)?;
    if !(mass >= 0.0) {
        return Err(Error::domain(format!("mass must be non-negative, got {mass}")));
    }
    Ok((mass * mass + level_factor(n) * eb + k_z * k_z).sqrt())
}

/// Highest daughter Landau level reachable by the charged daughter, or
/// `None` if even `n = 0` is kinematically closed.
///
/// The level `n` is open while `(2n+1)|e|B ≤ (ω_m − M_ν)² − M_e²`. An
/// argument that sits within `1e-9` of an integer is nudged down by `1e-12`
/// before flooring, so a level with exactly zero phase space is excluded
/// deterministically.
pub fn n_max(channel: &DecayChannel, state: &MagnetizedState) -> Option<u32> {
    let eb = state.eb;
    let me2 = channel.charged_mass * channel.charged_mass;
    let arg = if channel.neutral_mass == 0.0 {
        // (ω² − M_e² − eB)/(2eB) with ω² expanded to avoid cancellation
        (channel.parent_mass * channel.parent_mass - me2) / (2.0 * eb) + f64::from(state.level)
    } else {
        let avail = state.energy(channel) - channel.neutral_mass;
        (avail * avail - me2 - eb) / (2.0 * eb)
    };
    let arg = if (arg - arg.round()).abs() < 1.0e-9 {
        arg - 1.0e-12
    } else {
        arg
    };
    if arg < 0.0 {
        None
    } else {
        Some(arg.floor().min(f64::from(u32::MAX)) as u32)
    }
}

/// Largest `|k_z|` of the charged daughter in level `n`.
///
/// For a massless neutral daughter this is
/// `(ω_m² − M_e² − (2n+1)|e|B) / (2ω_m)`.
pub fn kz_max(channel: &DecayChannel, state: &MagnetizedState, n: u32) -> Result<f64> {
    match n_max(channel, state) {
        Some(top) if n <= top => {}
        top => {
            return Err(Error::range(format!(
                "daughter level {n} is above the kinematic limit {top:?}"
            )))
        }
    }
    Ok(kz_max_unchecked(channel, state, n))
}

pub(crate) fn kz_max_unchecked(channel: &DecayChannel, state: &MagnetizedState, n: u32) -> f64 {
    let eb = state.eb;
    let w = state.energy(channel);
    let me2 = channel.charged_mass * channel.charged_mass;
    let value = if channel.neutral_mass == 0.0 {
        let m2 = channel.parent_mass * channel.parent_mass;
        // ω² − (2n+1)eB = M² + 2(m − n)eB
        let levels = 2.0 * (f64::from(state.level) - f64::from(n)) * eb;
        (m2 - me2 + levels) / (2.0 * w)
    } else {
        let e = (me2 + level_factor(n) * eb).sqrt();
        let mn = channel.neutral_mass;
        let lambda = (w * w - (e + mn).powi(2)) * (w * w - (e - mn).powi(2));
        lambda.max(0.0).sqrt() / (2.0 * w)
    };
    value.max(0.0)
}

/// `|e|B = p⊥² / (2m+1)`: the field that puts momentum `p⊥` in level `m`.
pub fn eb_for_p_perp(p_perp_sq: f64, m: u32) -> Result<f64> {
    if !(p_perp_sq > 0.0 && p_perp_sq.is_finite()) {
        return Err(Error::domain(format!("p_perp² must be positive, got {p_perp_sq}")));
    }
    Ok(p_perp_sq / level_factor(m))
}

/// `|e|B = (2m+1)/R²` for an orbit of radius `R`.
pub fn eb_for_radius(radius: f64, m: u32) -> Result<f64> {
    check_radius(radius)?;
    Ok(level_factor(m) / (radius * radius))
}

/// `p⊥ = (2m+1)/R` for an orbit of radius `R`.
pub fn p_perp_for_radius(radius: f64, m: u32) -> Result<f64> {
    check_radius(radius)?;
    Ok(level_factor(m) / radius)
}

fn check_radius(radius: f64) -> Result<()> {
    if radius > 0.0 && radius.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("radius must be positive, got {radius}")))
    }
}

/// Squared orbit radius `(2n+1)/|e|B` of level `n`.
pub fn orbit_radius_sq(n: u32, eb: f64) -> Result<f64> {
    check_field(eb)?;
    Ok(level_factor(n) / eb)
}

/// Normalized Landau wavefunction
/// `I_n(ρ) = (sqrt(|e|B) / (sqrt(π) 2ⁿ n!))^(1/2) e^(−ρ²/2) H_n(ρ)`.
///
/// Normalized so that `∫ I_n(ρ(x))² dx = 1` with `ρ = sqrt(|e|B) x + shift`.
pub fn wavefunction_i(n: u32, eb: f64, rho: f64) -> Result<f64> {
    check_field(eb)?;
    if n > HERMITE_MAX_ORDER {
        return Err(Error::range(format!(
            "Landau level {n} exceeds the maximum {HERMITE_MAX_ORDER}"
        )));
    }
    let (mantissa, ln_h) = hermite_scaled(n, rho)?;
    if mantissa == 0.0 {
        return Ok(0.0);
    }
    let ln_norm = 0.5
        * (0.5 * eb.ln() - 0.5 * PI.ln() - f64::from(n) * std::f64::consts::LN_2 - ln_factorial(n));
    let ln_abs = ln_norm - 0.5 * rho * rho + ln_h + mantissa.abs().ln();
    Ok(mantissa.signum() * ln_abs.exp())
}

/// A Landau state `I_n(ρ)` with `ρ = sqrt(|e|B) (x + k_y/|e|B)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LandauWavefunction {
    pub n: u32,
    pub eb: f64,
    /// `k_y / sqrt(|e|B)`, the shift inside `ρ`.
    pub center_offset: f64,
}

impl LandauWavefunction {
    pub fn new(n: u32, eb: f64, k_y: f64) -> Result<Self> {
        check_field(eb)?;
        if n > HERMITE_MAX_ORDER {
            return Err(Error::range(format!(
                "Landau level {n} exceeds the maximum {HERMITE_MAX_ORDER}"
            )));
        }
        Ok(Self {
            n,
            eb,
            center_offset: k_y / eb.sqrt(),
        })
    }

    pub fn rho(&self, x: f64) -> f64 {
        self.eb.sqrt() * x + self.center_offset
    }

    /// Orbit centre in `x`, in MeV⁻¹.
    pub fn center(&self) -> f64 {
        -self.center_offset / self.eb.sqrt()
    }

    pub fn eval(&self, x: f64) -> f64 {
        wavefunction_i(self.n, self.eb, self.rho(x)).expect("validated at construction")
    }
}
