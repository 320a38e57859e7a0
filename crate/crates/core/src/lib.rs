//! Decay rates of a charged scalar particle bound to a Landau level of a
//! constant magnetic field.
//!
//! The crate computes the two-body scalar decay rate `Φ_μ → Φ_e Φ_ν` of a
//! parent in Landau level `m`, summed exactly over the daughter levels `n`
//! that energy conservation allows, and compares it with the time-dilated
//! inertial rate `Γ'₀/γ`. Everything inside the crate works in natural units
//! (`ħ = c = 1`, energies in MeV, `|e|B` in MeV², lengths in MeV⁻¹); the
//! [`units`] module converts observables to SI at the boundary.
//!
//! ```
//! use landau_decay::{decay_rate, DecayChannel, MagnetizedState, QuadratureConfig};
//!
//! let channel = DecayChannel::default();
//! let state = MagnetizedState::from_p_perp_sq(1.0e4, 30).unwrap();
//! let result = decay_rate(&channel, &state, &QuadratureConfig::default()).unwrap();
//! assert!((result.ratio - 1.0002).abs() < 5.0e-5);
//! ```

mod error;

pub mod landau;
pub mod oracle;
pub mod quadrature;
pub mod rate;
pub mod specfun;
pub mod sum;
pub mod units;

#[cfg(doctest)]
mod book;

pub use error::{Error, Result};
pub use landau::{DecayChannel, LandauWavefunction, MagnetizedState};
pub use quadrature::QuadratureConfig;
pub use rate::{decay_rate, LevelContribution, RateResult};
pub use specfun::OverlapWeight;
pub use units::{OrbitObservables, PhysicalConstants};
