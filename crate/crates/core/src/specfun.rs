//! Hermite and associated Laguerre polynomials, factorial ratios, and the
//! squared Landau-level overlap weight.
//!
//! The overlap weight
//!
//! ```text
//! w(n, m, x) = (min! / max!) · e^(−x) · x^|n−m| · [L_min^|n−m|(x)]²
//! ```
//!
//! is the squared overlap of two Landau states whose guiding centres (and
//! momentum phases) are displaced by `x` in units of `2|e|B`. It is computed
//! as the square of the normalized Laguerre function
//! `φ_k^d(x) = sqrt(k!/(k+d)!) · x^(d/2) · e^(−x/2) · L_k^d(x)`, which obeys a
//! three-term recurrence with coefficients of order one and satisfies
//! `|φ_k^d(x)| ≤ 1`.

use crate::error::{Error, Result};

/// Largest Hermite order accepted by [`hermite`].
pub const HERMITE_MAX_ORDER: u32 = 200;

/// Largest degree and order accepted by the unnormalized [`laguerre_assoc`].
pub const LAGUERRE_MAX_INDEX: u32 = 400;

/// Largest Landau index accepted by [`overlap_weight`].
pub const OVERLAP_MAX_INDEX: u32 = 10_000;

/// Largest argument accepted by [`overlap_weight`].
pub const OVERLAP_MAX_ARGUMENT: f64 = 1.0e6;

// Recurrences that carry a separate log scale renormalise by this factor.
const RESCALE: f64 = 1.0e150;
const RESCALE_LN: f64 = 345.387_763_949_107_07;

/// `ln(n!)` via the log-gamma function.
pub fn ln_factorial(n: u32) -> f64 {
    if n < 2 {
        0.0
    } else {
        libm::lgamma(f64::from(n) + 1.0)
    }
}

/// `ln(min(n, m)! / max(n, m)!)`, exactly zero for `n == m`.
pub fn log_factorial_ratio(n: u32, m: u32) -> f64 {
    if n == m {
        0.0
    } else {
        ln_factorial(n.min(m)) - ln_factorial(n.max(m))
    }
}

/// Physicists' Hermite polynomial `H_n(ρ)`.
///
/// Fails with a range error above [`HERMITE_MAX_ORDER`] or when the value
/// overflows `f64`.
pub fn hermite(n: u32, rho: f64) -> Result<f64> {
    let (mantissa, ln_scale) = hermite_scaled(n, rho)?;
    let value = mantissa * ln_scale.exp();
    if value.is_finite() || mantissa == 0.0 {
        Ok(if mantissa == 0.0 { 0.0 } else { value })
    } else {
        Err(Error::range(format!("H_{n}({rho}) overflows f64")))
    }
}

/// `H_n(ρ) = mantissa · exp(ln_scale)`, never overflowing for admissible `n`.
pub(crate) fn hermite_scaled(n: u32, rho: f64) -> Result<(f64, f64)> {
    if n > HERMITE_MAX_ORDER {
        return Err(Error::range(format!(
            "Hermite order {n} exceeds the maximum {HERMITE_MAX_ORDER}"
        )));
    }
    if !rho.is_finite() {
        return Err(Error::domain(format!("Hermite argument must be finite, got {rho}")));
    }
    let mut prev = 1.0;
    if n == 0 {
        return Ok((prev, 0.0));
    }
    let mut cur = 2.0 * rho;
    let mut ln_scale = 0.0;
    for k in 1..n {
        let next = 2.0 * rho * cur - 2.0 * f64::from(k) * prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE {
            cur /= RESCALE;
            prev /= RESCALE;
            ln_scale += RESCALE_LN;
        }
    }
    Ok((cur, ln_scale))
}

/// Associated Laguerre polynomial `L_k^d(x)` by upward recurrence.
///
/// This is the unnormalized reference path; [`overlap_weight`] never forms
/// these values.
pub fn laguerre_assoc(k: u32, d: u32, x: f64) -> Result<f64> {
    if k > LAGUERRE_MAX_INDEX || d > LAGUERRE_MAX_INDEX {
        return Err(Error::range(format!(
            "Laguerre indices (k = {k}, d = {d}) exceed the maximum {LAGUERRE_MAX_INDEX}"
        )));
    }
    check_argument(x)?;
    let d = f64::from(d);
    let mut prev = 1.0;
    if k == 0 {
        return Ok(prev);
    }
    let mut cur = 1.0 + d - x;
    for j in 1..k {
        let j = f64::from(j);
        let next = ((2.0 * j + 1.0 + d - x) * cur - (j + d) * prev) / (j + 1.0);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

fn check_argument(x: f64) -> Result<()> {
    if x.is_nan() || x < 0.0 {
        Err(Error::domain(format!(
            "Laguerre argument must be non-negative, got {x}"
        )))
    } else if x.is_infinite() {
        Err(Error::range("Laguerre argument is infinite"))
    } else {
        Ok(())
    }
}

/// Normalized Laguerre function
/// `φ_k^d(x) = sqrt(k!/(k+d)!) · x^(d/2) · e^(−x/2) · L_k^d(x)`.
///
/// Propagated by
/// `φ_{j+1} = [(2j+1+d−x) φ_j − sqrt(j(j+d)) φ_{j−1}] / sqrt((j+1)(j+d+1))`
/// with a running log scale, so neither an underflowing start value nor a
/// large intermediate ever loses the result.
pub fn normalized_laguerre(k: u32, d: u32, x: f64) -> Result<f64> {
    NormalizedLaguerre::new(k, d)?.eval(x)
}

/// [`normalized_laguerre`] for fixed `(k, d)` with the recurrence
/// coefficients tabulated once, for repeated evaluation in quadrature.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedLaguerre {
    k: u32,
    d: u32,
    ln_d_factorial: f64,
    // (2j + 1 + d, sqrt(j (j + d)), 1 / sqrt((j + 1)(j + 1 + d))) for j < k
    coeffs: Vec<[f64; 3]>,
}

impl NormalizedLaguerre {
    pub fn new(k: u32, d: u32) -> Result<Self> {
        if k > OVERLAP_MAX_INDEX || d > OVERLAP_MAX_INDEX {
            return Err(Error::range(format!(
                "overlap indices (k = {k}, d = {d}) exceed the maximum {OVERLAP_MAX_INDEX}"
            )));
        }
        let df = f64::from(d);
        let coeffs = (0..k)
            .map(|j| {
                let j = f64::from(j);
                [
                    2.0 * j + 1.0 + df,
                    (j * (j + df)).sqrt(),
                    1.0 / ((j + 1.0) * (j + 1.0 + df)).sqrt(),
                ]
            })
            .collect();
        Ok(Self {
            k,
            d,
            ln_d_factorial: ln_factorial(d),
            coeffs,
        })
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        check_argument(x)?;
        if x > OVERLAP_MAX_ARGUMENT {
            return Err(Error::range(format!(
                "overlap argument {x} exceeds the maximum {OVERLAP_MAX_ARGUMENT}"
            )));
        }
        if x == 0.0 {
            // x^d kills everything but d = 0, where φ_k^0(0) = L_k(0) = 1.
            return Ok(if self.d == 0 { 1.0 } else { 0.0 });
        }

        let ln_start = 0.5 * (f64::from(self.d) * x.ln() - x - self.ln_d_factorial);
        if self.k == 0 {
            return Ok(ln_start.exp());
        }

        let mut prev = 0.0;
        let mut cur = 1.0;
        let mut ln_scale = ln_start;
        for &[diag, lower, inv_norm] in &self.coeffs {
            let next = ((diag - x) * cur - lower * prev) * inv_norm;
            prev = cur;
            cur = next;
            let big = cur.abs().max(prev.abs());
            if big > RESCALE {
                cur /= RESCALE;
                prev /= RESCALE;
                ln_scale += RESCALE_LN;
            } else if big < 1.0 / RESCALE && big > 0.0 {
                cur *= RESCALE;
                prev *= RESCALE;
                ln_scale -= RESCALE_LN;
            }
        }
        Ok(cur * ln_scale.exp())
    }
}

/// Squared overlap between Landau levels `n` and `m`, in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct OverlapWeight(f64);

impl OverlapWeight {
    pub fn value(self) -> f64 {
        self.0
    }
}

impl From<OverlapWeight> for f64 {
    fn from(w: OverlapWeight) -> f64 {
        w.0
    }
}

/// `(min!/max!) · e^(−x) · x^|n−m| · [L_min^|n−m|(x)]²`, evaluated as
/// `φ_min^|n−m|(x)²`.
pub fn overlap_weight(n: u32, m: u32, x: f64) -> Result<OverlapWeight> {
    OverlapKernel::new(n, m)?.weight(x)
}

/// [`overlap_weight`] for a fixed pair of levels.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlapKernel(NormalizedLaguerre);

impl OverlapKernel {
    pub fn new(n: u32, m: u32) -> Result<Self> {
        NormalizedLaguerre::new(n.min(m), n.abs_diff(m)).map(Self)
    }

    pub fn weight(&self, x: f64) -> Result<OverlapWeight> {
        let phi = self.0.eval(x)?;
        // |φ| ≤ 1 exactly; the clamp only removes the last-bit excess.
        Ok(OverlapWeight((phi * phi).min(1.0)))
    }
}
