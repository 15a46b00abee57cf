use serde::Serialize;

use crate::error::{usage, Result};

/// Constant of the polynomial-system solving step used by default.
pub const DEFAULT_C: f64 = 4.876;

/// β values of the published exponent table.
pub const TABLE_BETAS: [f64; 7] = [1.0, 0.8, 0.6, 0.4, 0.2, 0.15, 0.1];

const EXPONENT_TABLE_CSV: &str = include_str!("../../data/exponent_table.csv");

/// (β, exponent) pairs as published, to three decimals.
pub fn published_exponents() -> Vec<(f64, f64)> {
    EXPONENT_TABLE_CSV
        .lines()
        .skip(1)
        .filter_map(|l| {
            let (b, e) = l.split_once(',')?;
            Some((b.trim().parse().ok()?, e.trim().parse().ok()?))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ComplexityEstimate {
    pub beta: f64,
    pub c: f64,
    /// `None` for the m → ∞ limit
    pub m: Option<u32>,
    /// α_β = 1/(2cβ)
    pub alpha: f64,
    /// the cost is p^{e·n}
    pub exponent: f64,
    pub beats_bruteforce: bool,
    pub beats_generic: bool,
}

fn alpha(beta: f64, c: f64) -> Result<f64> {
    if !(beta > 0.0) || !(c > 0.0) {
        return usage("β and c must be positive");
    }
    Ok(1.0 / (2.0 * c * beta))
}

/// max(2α/m, 1 − α(1/2 − 1/m))
pub fn exponent_at(alpha: f64, m: u32) -> f64 {
    let m = m as f64;
    (2.0 * alpha / m).max(1.0 - alpha * (0.5 - 1.0 / m))
}

/// lim_{m→∞} e(m) = max(0, 1 − α/2)
pub fn exponent_limit(alpha: f64) -> f64 {
    (1.0 - alpha / 2.0).max(0.0)
}

/// Estimate at a fixed m ≥ 2, or at the m → ∞ limit for `None`.
pub fn complexity_estimate(beta: f64, c: f64, m: Option<u32>) -> Result<ComplexityEstimate> {
    let alpha = alpha(beta, c)?;
    let (exponent, beats_bruteforce) = match m {
        Some(m) if m < 2 => return usage("m must be at least 2"),
        Some(m) => (exponent_at(alpha, m), m as f64 > (2.0 * alpha).max(2.0)),
        None => (exponent_limit(alpha), true),
    };
    Ok(ComplexityEstimate {
        beta,
        c,
        m,
        alpha,
        exponent,
        beats_bruteforce,
        beats_generic: alpha > 1.0,
    })
}

/// e(m) decreases strictly towards its limit, so there is no finite minimiser;
/// this returns the smallest m whose exponent is within `tol` of the limit.
pub fn optimal_m(beta: f64, c: f64, tol: f64) -> Result<(u32, f64)> {
    let alpha = alpha(beta, c)?;
    if !(tol > 0.0) {
        return usage("tolerance must be positive");
    }
    let limit = exponent_limit(alpha);
    let mut m = 2u32;
    while exponent_at(alpha, m) - limit > tol {
        m = m
            .checked_add(1)
            .ok_or_else(|| crate::Error::CapExceeded("m overflow".into()))?;
    }
    Ok((m, exponent_at(alpha, m)))
}

/// α_β > 1 ⟺ β < 1/(2c)
pub fn generic_threshold(c: f64) -> f64 {
    1.0 / (2.0 * c)
}

/// The limit exponents for the published β values.
pub fn exponent_table(c: f64) -> Result<Vec<ComplexityEstimate>> {
    TABLE_BETAS
        .iter()
        .map(|&b| complexity_estimate(b, c, None))
        .collect()
}
