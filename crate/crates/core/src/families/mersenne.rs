//! Divisors of X^n − 1 over F_2 for n = 2^k − 1 prime.
//!
//! X^n − 1 = (X + 1)·Π g_j with (n − 1)/k irreducible g_j of degree k, so a
//! degree-n' divisor exists only when n' mod k ∈ {0, 1}, and there are
//! N(k, n') = C(⌊n/k⌋, ⌊n'/k⌋) of them.

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::arith::is_prime_u64;
use crate::algebra::FpPoly;
use crate::error::{cap, domain, Result};

/// Largest k handled by the bitset enumeration (deg ≤ 127 fits in u128).
pub const MERSENNE_K_MAX: u32 = 7;

fn mersenne_n(k: u32) -> Result<usize> {
    if !(2..=63).contains(&k) {
        return domain(format!("k = {k} out of range"));
    }
    let n = (1u64 << k) - 1;
    if !is_prime_u64(n) {
        return domain(format!("2^{k} − 1 = {n} is not prime"));
    }
    Ok(n as usize)
}

fn binom(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::from(0u32);
    }
    let mut acc = BigUint::from(1u32);
    for i in 0..r {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// N(k, n') from the closed formula.
pub fn mersenne_formula(k: u32, n_prime: usize) -> Result<BigUint> {
    let n = mersenne_n(k)?;
    let k = k as usize;
    if n_prime > n || n_prime % k > 1 {
        return Ok(BigUint::from(0u32));
    }
    Ok(binom((n / k) as u64, (n_prime / k) as u64))
}

#[derive(Clone, Debug, Serialize)]
pub struct DivisorCount {
    pub n_prime: usize,
    #[serde(serialize_with = "ser_big")]
    pub formula: BigUint,
    /// from explicit enumeration; `None` above the enumeration cap
    pub enumerated: Option<u64>,
}

fn ser_big<S: serde::Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// N(k, n') for n' = 0..n, with an exhaustive cross-check when k ≤ 7.
pub fn mersenne_divisor_count(k: u32) -> Result<Vec<DivisorCount>> {
    let n = mersenne_n(k)?;
    let enumerated = if k <= MERSENNE_K_MAX {
        let mut counts = vec![0u64; n + 1];
        for d in all_divisors(k)? {
            counts[deg(d)] += 1;
        }
        Some(counts)
    } else {
        None
    };
    (0..=n)
        .map(|np| {
            Ok(DivisorCount {
                n_prime: np,
                formula: mersenne_formula(k, np)?,
                enumerated: enumerated.as_ref().map(|c| c[np]),
            })
        })
        .collect()
}

fn deg(a: u128) -> usize {
    127 - a.leading_zeros() as usize
}

fn clmul(a: u128, b: u128) -> u128 {
    let mut r = 0;
    let mut b = b;
    let mut i = 0;
    while b != 0 {
        if b & 1 == 1 {
            r ^= a << i;
        }
        b >>= 1;
        i += 1;
    }
    r
}

fn clrem(mut a: u128, m: u128) -> u128 {
    let dm = deg(m);
    while a != 0 && deg(a) >= dm {
        a ^= m << (deg(a) - dm);
    }
    a
}

/// Irreducibles of degree k over F_2: no factor of degree ≤ k/2.
fn irreducibles(k: u32) -> Vec<u128> {
    let k = k as usize;
    let mut small: Vec<u128> = Vec::new();
    let mut out = Vec::new();
    for d in 1..=k {
        for low in 0..(1u128 << d) {
            let f = (1u128 << d) | low;
            let reducible = small.iter().any(|&g| deg(g) * 2 <= d && clrem(f, g) == 0);
            if reducible {
                continue;
            }
            if d * 2 <= k {
                small.push(f);
            }
            if d == k {
                out.push(f);
            }
        }
    }
    out
}

/// The factors X + 1, g_1, …, g_m of X^n − 1, checked to multiply back.
fn factors(k: u32) -> Result<Vec<u128>> {
    if k > MERSENNE_K_MAX {
        return cap(format!("enumeration supports k ≤ {MERSENNE_K_MAX}"));
    }
    let n = mersenne_n(k)?;
    let mut fs = vec![0b11u128];
    fs.extend(irreducibles(k));
    let prod = fs.iter().fold(1u128, |acc, &g| clmul(acc, g));
    if prod != (1u128 << n) | 1 {
        return crate::error::verification("factor product differs from X^n − 1");
    }
    Ok(fs)
}

/// Every monic divisor of X^n − 1 (including 1 and X^n − 1) as a bitset.
fn all_divisors(k: u32) -> Result<Vec<u128>> {
    let fs = factors(k)?;
    let m = fs.len();
    let mut out: Vec<u128> = (0..1u64 << m)
        .into_par_iter()
        .map(|mask| {
            (0..m)
                .filter(|&j| mask >> j & 1 == 1)
                .fold(1u128, |acc, j| clmul(acc, fs[j]))
        })
        .collect();
    out.sort_unstable();
    Ok(out)
}

fn to_poly(a: u128) -> FpPoly {
    let c = (0..=deg(a)).map(|i| (a >> i & 1) as u64).collect();
    FpPoly::new(2, c).expect("p = 2")
}

#[derive(Clone, Debug, Serialize)]
pub struct SparseDivisor {
    pub f: FpPoly,
    pub n_prime: usize,
    pub ell: usize,
}

/// Divisors X^{n'} + λ with 1 ≤ deg λ ≤ ℓ_max and 1 < n' < n, ordered by n' then coefficients.
pub fn mersenne_sparse_enumerate(k: u32, ell_max: usize) -> Result<Vec<SparseDivisor>> {
    let n = mersenne_n(k)?;
    let mut out: Vec<SparseDivisor> = all_divisors(k)?
        .into_iter()
        .filter_map(|d| {
            let np = deg(d);
            if np <= 1 || np >= n {
                return None;
            }
            let tail = d ^ (1u128 << np);
            let ell = deg(tail);
            (tail != 0 && ell >= 1 && ell <= ell_max).then(|| SparseDivisor {
                f: to_poly(d),
                n_prime: np,
                ell,
            })
        })
        .collect();
    out.sort_by(|a, b| a.n_prime.cmp(&b.n_prime).then_with(|| a.f.cmp_graded(&b.f)));
    Ok(out)
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct HeuristicPrediction {
    /// N(k, n')·2^{ℓ−n'}
    pub predicted_count: f64,
    /// ℓ > n' − (n'/k)·log₂(n/n')
    pub exists_prediction: bool,
    pub threshold: f64,
}

/// The random-polynomial density heuristic for sparse divisors.
pub fn heuristic_density(
    n: usize,
    n_prime: usize,
    k: u32,
    ell: usize,
) -> Result<HeuristicPrediction> {
    if mersenne_n(k)? != n {
        return domain(format!("n = {n} is not 2^{k} − 1"));
    }
    if n_prime == 0 || n_prime > n {
        return domain(format!("n' = {n_prime} out of range"));
    }
    let count = mersenne_formula(k, n_prime)?;
    let count: f64 = count.to_string().parse().unwrap_or(f64::INFINITY);
    let predicted_count = count * 2f64.powi(ell as i32 - n_prime as i32);
    let threshold =
        n_prime as f64 - (n_prime as f64 / k as f64) * (n as f64 / n_prime as f64).log2();
    Ok(HeuristicPrediction {
        predicted_count,
        exists_prediction: ell as f64 > threshold,
        threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducible_counts() {
        assert_eq!(irreducibles(3), vec![0b1011, 0b1101]);
        assert_eq!(irreducibles(5).len(), 6);
        assert_eq!(irreducibles(7).len(), 18);
    }

    #[test]
    fn formula_matches_enumeration() {
        for k in [3, 5, 7] {
            for row in mersenne_divisor_count(k).unwrap() {
                assert_eq!(
                    row.enumerated.map(BigUint::from),
                    Some(row.formula.clone()),
                    "k={k} n'={}",
                    row.n_prime
                );
            }
        }
        assert_eq!(mersenne_formula(3, 3).unwrap(), BigUint::from(2u32));
        assert_eq!(mersenne_formula(5, 15).unwrap(), BigUint::from(20u32));
        assert_eq!(mersenne_formula(5, 2).unwrap(), BigUint::from(0u32));
        assert!(mersenne_divisor_count(4).is_err());
    }

    #[test]
    fn sparse_examples() {
        assert!(mersenne_sparse_enumerate(3, 0).unwrap().is_empty());
        let s = mersenne_sparse_enumerate(3, 1).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].f, FpPoly::from_i64(2, &[1, 1, 0, 1]).unwrap());
        let t2 = FpPoly::from_i64(2, &[1, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1]).unwrap();
        assert!(mersenne_sparse_enumerate(5, 7)
            .unwrap()
            .iter()
            .any(|d| d.f == t2));
    }

    #[test]
    fn heuristic_values() {
        let h = heuristic_density(31, 15, 5, 3).unwrap();
        assert!((h.predicted_count - 20.0 / 4096.0).abs() < 1e-12);
        assert!(!h.exists_prediction);
        let h = heuristic_density(7, 3, 3, 3).unwrap();
        assert_eq!(h.predicted_count, 2.0);
    }
}
