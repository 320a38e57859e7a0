//! Natural-unit (MeV) to SI conversions for orbit observables.
//!
//! Everything else in the crate works in natural units; this module is the
//! only place where `ħ`, `c` or gauss appear.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const FM_TO_M: f64 = 1.0e-15;

/// Pinned physical constants (CODATA 2018).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// `ħc` in MeV·fm.
    pub hbar_c: f64,
    /// `ħ` in MeV·s.
    pub hbar: f64,
    /// Speed of light in m/s.
    pub c: f64,
    /// Electron mass in MeV.
    pub electron_mass: f64,
    /// Field at which `|e|B = m_e²`, in gauss.
    pub electron_critical_field_gauss: f64,
}

impl PhysicalConstants {
    pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
        hbar_c: 197.326_980_4,
        hbar: 6.582_119_569e-22,
        c: 2.997_924_58e8,
        electron_mass: 0.510_998_95,
        electron_critical_field_gauss: 4.414e13,
    };

    fn hbar_c_m(&self) -> f64 {
        self.hbar_c * FM_TO_M
    }

    /// Orbit radius `(2m+1)/p⊥ · ħc` in metres.
    pub fn radius_si(&self, p_perp: f64, m_level: u32) -> Result<f64> {
        check_positive("p_perp", p_perp)?;
        Ok(level_factor(m_level) / p_perp * self.hbar_c_m())
    }

    /// Centripetal acceleration `p⊥³/((2m+1) ω²) · c/ħ` in m/s².
    pub fn acceleration_si(&self, p_perp: f64, m_level: u32, omega: f64) -> Result<f64> {
        check_positive("p_perp", p_perp)?;
        check_positive("omega", omega)?;
        let natural = p_perp.powi(3) / (level_factor(m_level) * omega * omega);
        Ok(natural * self.c / self.hbar)
    }

    /// de Broglie wavelength `2π ħc / p⊥` in metres.
    pub fn de_broglie_si(&self, p_perp: f64) -> Result<f64> {
        check_positive("p_perp", p_perp)?;
        Ok(2.0 * PI * self.hbar_c_m() / p_perp)
    }

    /// Converts `|e|B` in MeV² to gauss by linear scaling from the electron
    /// critical field.
    pub fn eb_to_gauss(&self, eb: f64) -> Result<f64> {
        if eb.is_nan() || eb < 0.0 {
            return Err(Error::domain(format!("eB must be non-negative, got {eb}")));
        }
        Ok(eb / (self.electron_mass * self.electron_mass) * self.electron_critical_field_gauss)
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::CODATA_2018
    }
}

fn level_factor(m_level: u32) -> f64 {
    2.0 * f64::from(m_level) + 1.0
}

fn check_positive(name: &str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must be positive, got {value}")))
    }
}

/// [`PhysicalConstants::radius_si`] with CODATA 2018 constants.
pub fn radius_si(p_perp: f64, m_level: u32) -> Result<f64> {
    PhysicalConstants::CODATA_2018.radius_si(p_perp, m_level)
}

/// [`PhysicalConstants::acceleration_si`] with CODATA 2018 constants.
pub fn acceleration_si(p_perp: f64, m_level: u32, omega: f64) -> Result<f64> {
    PhysicalConstants::CODATA_2018.acceleration_si(p_perp, m_level, omega)
}

/// [`PhysicalConstants::de_broglie_si`] with CODATA 2018 constants.
pub fn de_broglie_si(p_perp: f64) -> Result<f64> {
    PhysicalConstants::CODATA_2018.de_broglie_si(p_perp)
}

/// [`PhysicalConstants::eb_to_gauss`] with CODATA 2018 constants.
pub fn eb_to_gauss(eb: f64) -> Result<f64> {
    PhysicalConstants::CODATA_2018.eb_to_gauss(eb)
}

/// Classical cyclotron radius `p⊥/|e|B`, in MeV⁻¹.
pub fn classical_radius(p_perp: f64, eb: f64) -> Result<f64> {
    check_positive("p_perp", p_perp)?;
    check_positive("eB", eb)?;
    Ok(p_perp / eb)
}

/// Classical centripetal acceleration `|e|B p⊥ / (γ² M²)`, in MeV.
pub fn classical_acceleration(p_perp: f64, eb: f64, gamma: f64, mass: f64) -> Result<f64> {
    check_positive("p_perp", p_perp)?;
    check_positive("eB", eb)?;
    check_positive("gamma", gamma)?;
    check_positive("mass", mass)?;
    Ok(eb * p_perp / (gamma * gamma * mass * mass))
}

/// Radius, acceleration, de Broglie wavelength and field of a Landau orbit,
/// all in SI (field in gauss).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitObservables {
    pub radius_m: f64,
    pub acceleration_m_s2: f64,
    pub de_broglie_m: f64,
    pub field_gauss: f64,
}

impl OrbitObservables {
    pub fn new(
        consts: &PhysicalConstants,
        p_perp: f64,
        m_level: u32,
        omega: f64,
        eb: f64,
    ) -> Result<Self> {
        check_positive("eB", eb)?;
        Ok(Self {
            radius_m: consts.radius_si(p_perp, m_level)?,
            acceleration_m_s2: consts.acceleration_si(p_perp, m_level, omega)?,
            de_broglie_m: consts.de_broglie_si(p_perp)?,
            field_gauss: consts.eb_to_gauss(eb)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const M_MU: f64 = 105.7;

    fn close(got: f64, want: f64, rel: f64) -> bool {
        (got - want).abs() <= rel * want.abs()
    }

    #[test]
    fn radius_examples() {
        assert!(close(radius_si(1000f64.sqrt(), 5).unwrap(), 6.86e-14, 5e-3));
        assert!(close(radius_si(100.0, 30).unwrap(), 1.20e-13, 5e-3));
        assert!(close(radius_si(197.326_980_4, 0).unwrap(), 1.0e-15, 1e-15));
        assert!(matches!(radius_si(0.0, 1), Err(Error::Domain(_))));
        assert!(matches!(radius_si(-3.0, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn acceleration_examples() {
        let row = |p2: f64, m: u32| {
            acceleration_si(p2.sqrt(), m, (M_MU * M_MU + p2).sqrt()).unwrap()
        };
        assert!(close(row(1000.0, 5), 1.08e29, 5e-3));
        assert!(close(row(30000.0, 65), 4.39e29, 5e-3));
        assert!(close(row(5000.0, 20), 2.43e29, 5e-3));
        assert!(matches!(acceleration_si(10.0, 0, 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn de_broglie_examples() {
        assert!(close(de_broglie_si(1000f64.sqrt()).unwrap(), 39.21e-15, 5e-3));
        assert!(close(de_broglie_si(100.0).unwrap(), 12.38e-15, 5e-3));
        assert!(close(de_broglie_si(30000f64.sqrt()).unwrap(), 7.158_231e-15, 1e-6));
        assert!(close(de_broglie_si(2.0 * PI * 197.326_980_4).unwrap(), 1.0e-15, 1e-15));
        assert!(de_broglie_si(0.0).is_err());
    }

    #[test]
    fn field_examples() {
        assert!(close(eb_to_gauss(0.511 * 0.511).unwrap(), 4.414e13, 1e-5));
        let me = PhysicalConstants::CODATA_2018.electron_mass;
        assert_eq!(eb_to_gauss(me * me).unwrap(), 4.414e13);
        assert_eq!(eb_to_gauss(0.0).unwrap(), 0.0);
        // The commonly quoted "1e15 G" for eB = 1e-2 M² is an order of magnitude low.
        assert!(close(eb_to_gauss(1.0e-2 * M_MU * M_MU).unwrap(), 1.89e16, 5e-3));
        assert!(matches!(eb_to_gauss(-1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn classical_examples() {
        assert!(close(classical_radius(10.0, 100.0).unwrap(), 0.1, 1e-15));
        assert!(close(classical_acceleration(10.0, 100.0, 1.0, 10.0).unwrap(), 10.0, 1e-15));
        assert!(classical_radius(10.0, 0.0).is_err());
        assert!(classical_acceleration(10.0, 1.0, 1.0, 0.0).is_err());
        for m in [0u32, 1, 7, 65] {
            let p: f64 = 173.2;
            let eb = p * p / (2.0 * f64::from(m) + 1.0);
            let r = classical_radius(p, eb).unwrap();
            assert!(close(r, (2.0 * f64::from(m) + 1.0) / p, 1e-14));
        }
    }

    #[test]
    fn classical_acceleration_matches_level_form() {
        // eB p/(γ²M²) with eB = p²/(2m+1), γM = ω  →  p³/((2m+1) ω²)
        let p: f64 = 100.0;
        let m = 30;
        let eb = p * p / 61.0;
        let omega = (M_MU * M_MU + p * p).sqrt();
        let a = classical_acceleration(p, eb, omega / M_MU, M_MU).unwrap();
        let c = PhysicalConstants::CODATA_2018;
        assert!(close(a * c.c / c.hbar, acceleration_si(p, m, omega).unwrap(), 1e-13));
    }

    proptest! {
        #[test]
        fn radius_times_momentum_is_hbar_c(p in 1.0e-3f64..1.0e4, m in 0u32..10_000) {
            let r = radius_si(p, m).unwrap();
            let hbar_c_m = 197.326_980_4e-15;
            prop_assert!(close(r * p / (2.0 * f64::from(m) + 1.0), hbar_c_m, 1e-14));
        }

        #[test]
        fn de_broglie_over_radius(p in 1.0e-3f64..1.0e4, m in 0u32..10_000) {
            let q = de_broglie_si(p).unwrap() / radius_si(p, m).unwrap();
            prop_assert!(close(q, 2.0 * PI / (2.0 * f64::from(m) + 1.0), 1e-14));
        }

        #[test]
        fn field_conversion_is_linear(eb in 0.0f64..1.0e8) {
            let a = eb_to_gauss(2.0 * eb).unwrap();
            let b = 2.0 * eb_to_gauss(eb).unwrap();
            prop_assert!((a - b).abs() <= f64::EPSILON * a);
        }

        #[test]
        fn observables_positive(p2 in 1.0f64..1.0e5, m in 0u32..1000) {
            let p = p2.sqrt();
            let eb = p2 / (2.0 * f64::from(m) + 1.0);
            let omega = (M_MU * M_MU + p2).sqrt();
            let o = OrbitObservables::new(&PhysicalConstants::default(), p, m, omega, eb).unwrap();
            prop_assert!(o.radius_m > 0.0 && o.acceleration_m_s2 > 0.0);
            prop_assert!(o.de_broglie_m > 0.0 && o.field_gauss > 0.0);
        }
    }
}
