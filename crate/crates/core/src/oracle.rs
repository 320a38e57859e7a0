//! Brute-force reference paths.
//!
//! [`a_squared_numeric`] integrates the transverse overlap
//! `A = ∫ dx e^{−i k_x x} I_m(ρ^μ(x)) I_n(ρ^e(x))` directly from the Landau
//! wavefunctions, with the parent centred at `k_y^μ = 0` and the daughter at
//! `k_y^e = Δk_y`. It shares nothing with the Laguerre recurrence behind
//! [`overlap_weight`] beyond the Hermite polynomials, so agreement between
//! the two is a real check of the closed form.
//!
//! With wavefunctions normalized to `∫ I_n² dx = 1`, `|A|²` is dimensionless
//! and equals `w(n, m, X)` with `X = (Δk_y² + k_x²) / (2|e|B)`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::landau::LandauWavefunction;
use crate::quadrature::{integrate, QuadratureConfig};
use crate::specfun::overlap_weight;
use crate::sum::CompensatedSum;

/// Largest Landau index the oracle accepts.
pub const ORACLE_MAX_INDEX: u32 = 12;

/// Relative tolerance of the randomized closed-form comparison.
pub const CLOSED_FORM_TOLERANCE: f64 = 1.0e-6;

// |I_m I_n| integrates to at most one, so this sits just above the
// quadrature's round-off floor of 50 ε ∫|f|.
const ABS_TOL: f64 = 2.0e-14;
const DOMAIN_REL_CHANGE: f64 = 1.0e-12;
const MAX_DOMAIN_DOUBLINGS: u32 = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlapParams {
    /// Daughter Landau level.
    pub n: u32,
    /// Parent Landau level.
    pub m: u32,
    /// Neutral daughter momentum along x, MeV.
    pub k_x_neutral: f64,
    /// `k_y^e − k_y^μ`, MeV.
    pub delta_k_y: f64,
    /// `|e|B`, MeV².
    pub eb: f64,
}

impl OverlapParams {
    pub fn validate(&self) -> Result<()> {
        if self.n > ORACLE_MAX_INDEX || self.m > ORACLE_MAX_INDEX {
            return Err(Error::range(format!(
                "oracle indices (n = {}, m = {}) exceed {ORACLE_MAX_INDEX}",
                self.n, self.m
            )));
        }
        if !(self.eb > 0.0 && self.eb.is_finite()) {
            return Err(Error::domain(format!("eB must be positive, got {}", self.eb)));
        }
        if !(self.k_x_neutral.is_finite() && self.delta_k_y.is_finite()) {
            return Err(Error::domain("momenta must be finite"));
        }
        Ok(())
    }

    /// `X = (Δk_y² + k_x²) / (2|e|B)`.
    pub fn argument(&self) -> f64 {
        (self.delta_k_y * self.delta_k_y + self.k_x_neutral * self.k_x_neutral) / (2.0 * self.eb)
    }

    /// Closed form `w(n, m, X)`.
    pub fn closed_form(&self) -> Result<f64> {
        Ok(overlap_weight(self.n, self.m, self.argument())?.value())
    }
}

/// `|A|²` by direct quadrature of the overlap integral.
///
/// The domain starts at `±(8 + sqrt(2 max(n, m) + 1)) / sqrt(|e|B)` (plus
/// half the separation of the two orbit centres) around their midpoint and
/// is doubled until `|A|²` changes by less than `1e-12` relative.
pub fn a_squared_numeric(p: &OverlapParams, cfg: &QuadratureConfig) -> Result<f64> {
    p.validate()?;
    cfg.validate()?;
    let parent = LandauWavefunction::new(p.m, p.eb, 0.0)?;
    let daughter = LandauWavefunction::new(p.n, p.eb, p.delta_k_y)?;
    let sqrt_eb = p.eb.sqrt();
    let mid = 0.5 * (parent.center() + daughter.center());
    let separation = (parent.center() - daughter.center()).abs();
    let top = f64::from(p.n.max(p.m));
    let mut half = (8.0 + (2.0 * top + 1.0).sqrt()) / sqrt_eb + 0.5 * separation;

    let k = p.k_x_neutral;
    let product = |x: f64| parent.eval(x) * daughter.eval(x);
    let over = |half: f64| -> Result<f64> {
        let (a, b) = (mid - half, mid + half);
        // enough panels to resolve the phase and the Hermite nodes
        let cycles = (k.abs() * 2.0 * half / std::f64::consts::TAU).ceil() as usize;
        let panels = 4 + cycles + (p.n + p.m) as usize;
        let tol = cfg.rel_tol.min(1.0e-12);
        let re = integrate(|x| (k * x).cos() * product(x), a, b, panels, tol, ABS_TOL, cfg.max_subdivisions)?;
        let im = integrate(|x| -(k * x).sin() * product(x), a, b, panels, tol, ABS_TOL, cfg.max_subdivisions)?;
        Ok(re.value * re.value + im.value * im.value)
    };

    let mut last = over(half)?;
    for _ in 0..MAX_DOMAIN_DOUBLINGS {
        half *= 2.0;
        let next = over(half)?;
        let change = (next - last).abs();
        last = next;
        // quadrature noise on |A|² is about 2 |A| δ + δ²
        let noise = 4.0 * ABS_TOL * (next.abs().sqrt() + ABS_TOL);
        if change <= DOMAIN_REL_CHANGE * next.abs() + noise {
            return Ok(next);
        }
    }
    Err(Error::Convergence {
        level: Default::default(),
        value: last,
        error: f64::NAN,
    })
}

/// Outcome of one randomized comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialOutcome {
    pub index: usize,
    pub params: OverlapParams,
    pub numeric: f64,
    pub closed_form: f64,
    pub rel_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub seed: u64,
    pub trials: usize,
    pub max_rel_error: f64,
    /// Trials whose relative error exceeds [`CLOSED_FORM_TOLERANCE`].
    pub failures: Vec<TrialOutcome>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "closed-form overlap: {} trials, seed {}, max relative error {:.3e}, {} failure(s)",
            self.trials,
            self.seed,
            self.max_rel_error,
            self.failures.len()
        )?;
        for t in &self.failures {
            writeln!(
                f,
                "  trial {}: n={} m={} k_x={:.6e} dk_y={:.6e} eB={:.6e} numeric={:.10e} closed={:.10e} rel={:.3e}",
                t.index,
                t.params.n,
                t.params.m,
                t.params.k_x_neutral,
                t.params.delta_k_y,
                t.params.eb,
                t.numeric,
                t.closed_form,
                t.rel_error
            )?;
        }
        Ok(())
    }
}

fn rel_error(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

/// Seeded random parameters with `n, m ≤ 8`, `|e|B ∈ [1, 10⁴]` (log-uniform)
/// and `|k_x|, |Δk_y| ≤ 3 sqrt(|e|B)`.
pub fn random_params(trials: usize, seed: u64) -> Vec<OverlapParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|_| {
            let n = rng.random_range(0..=8);
            let m = rng.random_range(0..=8);
            let eb = 10f64.powf(rng.random_range(0.0..4.0));
            let span = 3.0 * eb.sqrt();
            OverlapParams {
                n,
                m,
                k_x_neutral: rng.random_range(-span..=span),
                delta_k_y: rng.random_range(-span..=span),
                eb,
            }
        })
        .collect()
}

/// Compares [`a_squared_numeric`] with the closed form on `trials` seeded
/// random parameter sets.
pub fn verify_closed_form(trials: usize, seed: u64, cfg: &QuadratureConfig) -> Result<VerificationReport> {
    if trials == 0 {
        return Err(Error::domain("at least one trial is required"));
    }
    let outcomes = random_params(trials, seed)
        .into_par_iter()
        .enumerate()
        .map(|(index, params)| {
            let numeric = a_squared_numeric(&params, cfg)?;
            let closed_form = params.closed_form()?;
            Ok(TrialOutcome {
                index,
                params,
                numeric,
                closed_form,
                rel_error: rel_error(numeric, closed_form),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let max_rel_error = outcomes.iter().map(|t| t.rel_error).fold(0.0, f64::max);
    let failures = outcomes
        .into_iter()
        .filter(|t| !(t.rel_error < CLOSED_FORM_TOLERANCE))
        .collect();
    Ok(VerificationReport {
        seed,
        trials,
        max_rel_error,
        failures,
    })
}

/// `∫ I_n(ρ(x))² dx` by quadrature; one for a correctly normalized state.
pub fn wavefunction_norm(n: u32, eb: f64) -> Result<f64> {
    let psi = LandauWavefunction::new(n, eb, 0.0)?;
    let half = (12.0 + (2.0 * f64::from(n) + 1.0).sqrt()) / eb.sqrt();
    let est = integrate(
        |x| psi.eval(x).powi(2),
        -half,
        half,
        4 + n as usize,
        1.0e-13,
        0.0,
        2000,
    )?;
    Ok(est.value)
}

/// `Σ_n w(n, m, x)` with its number of terms.
///
/// Summation runs past the outer turning point `(√x + √m)²` until a term
/// drops below `1e-16`; beyond it terms decay faster than geometrically.
pub fn completeness_sum(m: u32, x: f64) -> Result<(f64, u32)> {
    let turning = (x.sqrt() + f64::from(m).sqrt()).powi(2).ceil() as u32 + 1;
    let mut acc = CompensatedSum::new();
    let mut n = 0u32;
    loop {
        let w = overlap_weight(n, m, x)?.value();
        acc.add(w);
        if n > turning.max(m) && w < 1.0e-16 {
            return Ok((acc.value(), n + 1));
        }
        n += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: u32, m: u32, k_x: f64, dky: f64, eb: f64) -> OverlapParams {
        OverlapParams {
            n,
            m,
            k_x_neutral: k_x,
            delta_k_y: dky,
            eb,
        }
    }

    #[test]
    fn coincident_ground_states_overlap_fully() {
        let cfg = QuadratureConfig::default();
        let a = a_squared_numeric(&params(0, 0, 0.0, 0.0, 40.0), &cfg).unwrap();
        assert!((a - 1.0).abs() < 1e-12);
    }

    #[test]
    fn distinct_levels_are_orthogonal() {
        let cfg = QuadratureConfig::default();
        let a = a_squared_numeric(&params(0, 1, 0.0, 0.0, 40.0), &cfg).unwrap();
        assert!(a < 1e-24);
        let a = a_squared_numeric(&params(3, 7, 0.0, 0.0, 2.0), &cfg).unwrap();
        assert!(a < 1e-24);
    }

    #[test]
    fn matches_closed_form_on_fixed_points() {
        let cfg = QuadratureConfig::default();
        for p in [
            params(2, 5, 1.3, -0.4, 3.0),
            params(8, 0, -20.0, 15.0, 100.0),
            params(4, 4, 0.0, 7.0, 9.0),
            params(12, 11, 30.0, 0.0, 250.0),
        ] {
            let a = a_squared_numeric(&p, &cfg).unwrap();
            let w = p.closed_form().unwrap();
            assert!(rel_error(a, w) < 1e-8, "{p:?}: {a} vs {w}");
        }
    }

    #[test]
    fn conjugate_momenta_give_same_modulus() {
        let cfg = QuadratureConfig::default();
        let p = params(3, 6, 2.2, -1.7, 5.0);
        let q = params(3, 6, -2.2, 1.7, 5.0);
        let a = a_squared_numeric(&p, &cfg).unwrap();
        let b = a_squared_numeric(&q, &cfg).unwrap();
        assert!(rel_error(a, b) < 1e-10);
    }

    #[test]
    fn depends_only_on_total_displacement() {
        let cfg = QuadratureConfig::default();
        let eb = 16.0;
        let r: f64 = 5.0;
        let a = a_squared_numeric(&params(2, 4, 3.0, 4.0, eb), &cfg).unwrap();
        let b = a_squared_numeric(&params(2, 4, r, 0.0, eb), &cfg).unwrap();
        let c = a_squared_numeric(&params(2, 4, 0.0, -r, eb), &cfg).unwrap();
        assert!(rel_error(a, b) < 1e-9 && rel_error(a, c) < 1e-9);
    }

    #[test]
    fn rejects_large_indices_and_zero_trials() {
        let cfg = QuadratureConfig::default();
        assert!(matches!(
            a_squared_numeric(&params(13, 0, 0.0, 0.0, 1.0), &cfg),
            Err(Error::Range(_))
        ));
        assert!(matches!(verify_closed_form(0, 1, &cfg), Err(Error::Domain(_))));
    }

    #[test]
    fn seeded_runs_are_reproducible() {
        let cfg = QuadratureConfig::default();
        let a = verify_closed_form(8, 42, &cfg).unwrap();
        let b = verify_closed_form(8, 42, &cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), b.to_string());
        assert!(a.passed(), "{a}");
        assert_ne!(random_params(4, 1), random_params(4, 2));
    }

    #[test]
    fn normalization() {
        for n in 0..=12 {
            let v = wavefunction_norm(n, 123.0).unwrap();
            assert!((v - 1.0).abs() < 1e-8, "n={n}: {v}");
        }
    }

    #[test]
    fn completeness() {
        let (s, terms) = completeness_sum(5, 10.0).unwrap();
        assert!((s - 1.0).abs() < 1e-10);
        assert!(terms > 30);
    }
}
