use std::sync::Arc;

use num_bigint::BigUint;
use num_rational::Ratio;
use serde::Serialize;

use super::linearized::{root_count_oracle, Beta, LinearizedQsp};
use crate::algebra::ExtField;
use crate::error::{cap, usage, Result};

/// ⌊n/n'⌋·ℓ + (n mod n') ≥ n', a necessary condition for complete splitting.
pub fn lemma_mc_check(n: usize, n_prime: usize, ell: usize) -> bool {
    (n / n_prime) * ell + n % n_prime >= n_prime
}

/// n' + (n'−ℓ)⌊(n'−1)/ℓ⌋, the smallest n at which a split-complete L with
/// these parameters can exist.
pub fn min_n(n_prime: usize, ell: usize) -> Result<usize> {
    if ell == 0 || ell >= n_prime {
        return usage(format!("need 1 ≤ ℓ < n', got ℓ={ell}, n'={n_prime}"));
    }
    Ok(n_prime + (n_prime - ell) * ((n_prime - 1) / ell))
}

pub fn low_bound_check(n: usize, n_prime: usize, ell: usize) -> Result<bool> {
    Ok(n >= min_n(n_prime, ell)?)
}

/// Every split-complete linearized QSP has β ≥ 3/4.
pub fn theorem_beta_bound(beta: &Beta) -> bool {
    *beta >= Ratio::new(3, 4)
}

#[derive(Clone, Debug, Serialize)]
pub struct TrinomialReport {
    pub p: u64,
    pub k: usize,
    pub d: usize,
    pub ntilde: usize,
    pub field_size: u64,
    /// number of (a, b) pairs with b ≠ 0 examined
    pub candidates: u64,
    pub splitting: u64,
    pub bullet1: u64,
    pub bullet2: u64,
    /// splitting trinomials matching neither bullet
    pub unexplained: u64,
    /// ñ ≤ (d−1)d + 1, the range the two-bullet description covers
    pub in_classification_range: bool,
    /// first few splitting pairs, as field-element indices (a, b)
    pub sample: Vec<(u64, u64)>,
}

/// Enumerates X^{q^d} − bX^q − aX over F_{q^ñ} with q = p^k and b ≠ 0,
/// counting those that split completely and checking each against the
/// two-bullet description of completely splitting trinomials.
pub fn trinomial_classification_check(
    p: u64,
    k: usize,
    d: usize,
    ntilde: usize,
    pair_cap: u64,
) -> Result<TrinomialReport> {
    if k == 0 || d < 2 || ntilde == 0 {
        return usage("need k ≥ 1, d ≥ 2, ñ ≥ 1");
    }
    let field = Arc::new(ExtField::new(p, k * ntilde)?);
    let size = field.size_u64().unwrap_or(u64::MAX);
    let pairs = size.saturating_mul(size - 1);
    if pairs > pair_cap {
        return cap(format!("{pairs} trinomials exceed the cap {pair_cap}"));
    }
    let f = field.as_ref();
    let q = BigUint::from(p).pow(k as u32);
    let n_prime = k * d;
    // e_1 = Σ_{i<d} q^{id}; exponent for bullet 2 is 1 + q + … + q^{(d−1)d}
    let e1: BigUint = (0..d).map(|i| q.pow((i * d) as u32)).sum();
    let qe1 = &q * &e1;
    let norm_exp: BigUint = (0..=((d - 1) * d)).map(|i| q.pow(i as u32)).sum();
    let sign = if (d - 1) % 2 == 0 {
        f.one()
    } else {
        f.neg(&f.one())
    };
    let d_minus_1_is_p_power = {
        let mut m = d - 1;
        while m % p as usize == 0 && m > 1 {
            m /= p as usize;
        }
        m == 1
    };
    let bullet2_frame = ntilde == (d - 1) * d + 1 && d_minus_1_is_p_power;
    let bullet1_frame = ntilde % d == 0 && ntilde / d <= d - 1;

    let mut report = TrinomialReport {
        p,
        k,
        d,
        ntilde,
        field_size: size,
        candidates: 0,
        splitting: 0,
        bullet1: 0,
        bullet2: 0,
        unexplained: 0,
        in_classification_range: ntilde <= (d - 1) * d + 1,
        sample: Vec::new(),
    };
    for ai in 0..size {
        let a = f.element(ai);
        let a_norm = f.pow(&a, &norm_exp);
        let b_pred = f.neg(&f.pow(&a, &qe1));
        for bi in 1..size {
            let b = f.element(bi);
            report.candidates += 1;
            if a.is_zero() {
                // a_0 = 0: 0 is a repeated root, never split-complete
                continue;
            }
            let mut lower = vec![f.zero(); n_prime];
            lower[0] = f.neg(&a);
            lower[k] = f.sub(&lower[k], &b);
            let l = LinearizedQsp::from_lower(field.clone(), lower)?;
            if root_count_oracle(&l)?.dim != n_prime {
                continue;
            }
            report.splitting += 1;
            if report.sample.len() < 8 {
                report.sample.push((ai, bi));
            }
            // bullet 1 requires b = 0, impossible here
            let in_b1 = bullet1_frame && b.is_zero();
            let in_b2 = bullet2_frame && a_norm == sign && b == b_pred;
            if in_b1 {
                report.bullet1 += 1;
            }
            if in_b2 {
                report.bullet2 += 1;
            }
            if !in_b1 && !in_b2 {
                report.unexplained += 1;
            }
        }
    }
    Ok(report)
}
