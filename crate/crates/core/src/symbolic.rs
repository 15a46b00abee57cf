//! The four-symbol abstraction {0, 1, a•, ⊛} of companion-matrix products and
//! the closed-form entries of companion-matrix powers.
//!
//! A concrete value x is abstracted by a symbol as follows: `Zero` means x = 0,
//! `One` means x = 1, `APow` means x is a power of −a_ℓ (so nonzero), `Star`
//! means nothing is known.

use std::fmt;

use serde::Serialize;

use crate::error::{usage, Result};
use crate::qsp::min_n;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum SymEntry {
    Zero,
    One,
    APow,
    Star,
}

use SymEntry::*;

impl SymEntry {
    pub const ALL: [SymEntry; 4] = [Zero, One, APow, Star];

    pub fn add(self, other: SymEntry) -> SymEntry {
        match (self, other) {
            (Zero, x) | (x, Zero) => x,
            _ => Star,
        }
    }

    pub fn mul(self, other: SymEntry) -> SymEntry {
        match (self, other) {
            (Zero, _) | (_, Zero) => Zero,
            (One, x) | (x, One) => x,
            (APow, APow) => APow,
            _ => Star,
        }
    }

    /// Whether a concrete value can be abstracted by this symbol. `a_pow` tests
    /// membership in the powers of −a_ℓ.
    pub fn admits(self, is_zero: bool, is_one: bool, a_pow: bool) -> bool {
        match self {
            Zero => is_zero,
            One => is_one,
            APow => a_pow && !is_zero,
            Star => true,
        }
    }
}

impl fmt::Display for SymEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Zero => "0",
            One => "1",
            APow => "a",
            Star => "*",
        };
        write!(f, "{s}")
    }
}

/// The sum and product tables.
pub fn sym_tables(x: SymEntry, y: SymEntry) -> (SymEntry, SymEntry) {
    (x.add(y), x.mul(y))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SymMatrix {
    dim: usize,
    entries: Vec<SymEntry>,
}

impl SymMatrix {
    pub fn filled(dim: usize, v: SymEntry) -> Self {
        SymMatrix {
            dim,
            entries: vec![v; dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// 1-based access.
    pub fn get(&self, i: usize, j: usize) -> SymEntry {
        self.entries[(i - 1) * self.dim + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: SymEntry) {
        self.entries[(i - 1) * self.dim + (j - 1)] = v;
    }

    pub fn mul(&self, other: &SymMatrix) -> SymMatrix {
        let d = self.dim;
        assert_eq!(d, other.dim, "dimension mismatch");
        let mut out = SymMatrix::filled(d, Zero);
        for i in 0..d {
            for j in 0..d {
                let mut acc = Zero;
                for k in 0..d {
                    acc = acc.add(self.entries[i * d + k].mul(other.entries[k * d + j]));
                    if acc == Star {
                        break;
                    }
                }
                out.entries[i * d + j] = acc;
            }
        }
        out
    }

    /// Rows for display.
    pub fn rows(&self) -> Vec<String> {
        self.entries
            .chunks(self.dim)
            .map(|r| {
                r.iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect()
    }
}

/// Abstraction of the companion matrix of X^{n'} − a_ℓX^ℓ − … − a_0 (and of
/// every Frobenius twist of it).
pub fn sym_companion(n_prime: usize, ell: usize) -> Result<SymMatrix> {
    if ell < 1 || ell >= n_prime {
        return usage(format!("need 1 ≤ ℓ < n', got ℓ={ell}, n'={n_prime}"));
    }
    let mut m = SymMatrix::filled(n_prime, Zero);
    for i in 1..n_prime {
        m.set(i + 1, i, One);
    }
    for r in 1..=ell {
        m.set(r, n_prime, Star);
    }
    m.set(ell + 1, n_prime, APow);
    Ok(m)
}

pub fn sym_pow(m: &SymMatrix, n: usize) -> Result<SymMatrix> {
    if n == 0 {
        return usage("symbolic power needs n ≥ 1");
    }
    let mut acc = m.clone();
    for _ in 1..n {
        acc = acc.mul(m);
    }
    Ok(acc)
}

/// False iff a diagonal entry is Zero or an off-diagonal entry is One or APow.
pub fn identity_representable(m: &SymMatrix) -> bool {
    for i in 1..=m.dim {
        for j in 1..=m.dim {
            let e = m.get(i, j);
            if i == j && e == Zero {
                return false;
            }
            if i != j && matches!(e, One | APow) {
                return false;
            }
        }
    }
    true
}

/// Saturating weight: `None` stands for "at least 2".
fn weight(k: &[u64], tail_from: usize) -> Option<u128> {
    let total: u64 = k.iter().sum();
    let tail: u64 = k[tail_from..].iter().sum();
    if tail == 0 {
        return Some(0);
    }
    // multinomial(total; k) computed as a product of binomials
    let mut multi: u128 = 1;
    let mut placed: u64 = 0;
    for &ki in k {
        for t in 1..=ki {
            placed += 1;
            multi = multi.checked_mul(placed as u128)?;
            multi /= t as u128;
        }
    }
    let num = multi.checked_mul(tail as u128)?;
    debug_assert_eq!(num % total as u128, 0);
    Some(num / total as u128)
}

/// Entry (i, j) of M^n for M = sym_companion(n', ℓ), from the closed-form
/// expansion of companion-matrix powers.
///
/// The (i, j) entry of C^n is Σ_k w_k Π_ι c_ι^{k_ι} over vectors k with
/// Σ ι·k_ι = n − i + j, where c_ι = a_{n'−ι} and
/// w_k = (k_{n'−i+1} + … + k_{n'}) / Σk · multinomial(Σk; k).
/// Terms with k_ι > 0 for ι < n' − ℓ vanish, a term whose only nonzero
/// exponent is k_{n'−ℓ} is a power of a_ℓ, anything touching a_{ℓ−1}..a_0 is ⊛.
pub fn chen_louck_entry(
    n_prime: usize,
    ell: usize,
    n: usize,
    i: usize,
    j: usize,
) -> Result<SymEntry> {
    if ell < 1 || ell >= n_prime {
        return usage(format!("need 1 ≤ ℓ < n', got ℓ={ell}, n'={n_prime}"));
    }
    if i < 1 || j < 1 || i > n_prime || j > n_prime {
        return usage(format!("index ({i}, {j}) outside 1..={n_prime}"));
    }
    if n == 0 {
        return usage("power must be at least 1");
    }
    let target = n as i64 - i as i64 + j as i64;
    if target < 0 {
        return Ok(Zero);
    }
    if target == 0 {
        return Ok(One);
    }
    let first = n_prime - ell; // ι of a_ℓ
    let width = ell + 1; // ι = first..=n'
                         // weight tail starts at ι = n' − i + 1; as an index into k[first..]
    let tail_iota = n_prime + 1 - i;
    let mut k = vec![0u64; width];
    let mut acc = Zero;
    dfs(0, target as u64, first, &mut k, tail_iota, &mut acc);
    Ok(acc)
}

fn dfs(
    pos: usize,
    remaining: u64,
    first: usize,
    k: &mut [u64],
    tail_iota: usize,
    acc: &mut SymEntry,
) {
    if *acc == Star {
        return;
    }
    if pos == k.len() {
        if remaining != 0 {
            return;
        }
        // full vector over ι = 1..=n' with zeros below `first`
        let mut full = vec![0u64; first - 1];
        full.extend_from_slice(k);
        let w = weight(&full, tail_iota - 1);
        if w == Some(0) {
            return;
        }
        let sym = if k[1..].iter().any(|&x| x > 0) {
            Star
        } else {
            APow
        };
        let term = if w == Some(1) { sym } else { Star };
        *acc = acc.add(term);
        return;
    }
    let iota = (first + pos) as u64;
    let max = remaining / iota;
    for v in 0..=max {
        k[pos] = v;
        dfs(pos + 1, remaining - v * iota, first, k, tail_iota, acc);
        if *acc == Star {
            break;
        }
    }
    k[pos] = 0;
}

/// Row index of the entry in column 1 of M^n that certifies M^n is not the
/// identity, with its predicted symbol. Only defined below min_n(n', ℓ).
pub fn witness_index(n: usize, n_prime: usize, ell: usize) -> Result<(usize, SymEntry)> {
    if ell < 1 || ell >= n_prime {
        return usage(format!("need 1 ≤ ℓ < n', got ℓ={ell}, n'={n_prime}"));
    }
    let bound = min_n(n_prime, ell)?;
    if n >= bound {
        return usage(format!("no witness claimed for n = {n} ≥ min_n = {bound}"));
    }
    if n < n_prime {
        return Ok((n + 1, One));
    }
    let step = n_prime - ell;
    let i_n = n - step * ((n - ell) / step) + 1;
    assert!(
        (2..=n_prime).contains(&i_n),
        "witness index {i_n} out of 2..={n_prime}"
    );
    Ok((i_n, APow))
}

/// Per-n trace of the bound certification for (n', ℓ).
#[derive(Clone, Debug, Serialize)]
pub struct BoundStep {
    pub n: usize,
    pub identity_representable: bool,
    pub witness_row: usize,
    pub expected: SymEntry,
    pub observed: SymEntry,
    pub chen_louck: SymEntry,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub n_prime: usize,
    pub ell: usize,
    pub min_n: usize,
    pub steps: Vec<BoundStep>,
    /// sym_pow and chen_louck_entry agree on every entry for n ≤ max(min_n, n'^2)
    pub oracles_agree: bool,
    /// every n < min_n is certified non-identity with the predicted witness
    pub bound_certified: bool,
}

pub fn bound_report(n_prime: usize, ell: usize) -> Result<BoundReport> {
    let m = sym_companion(n_prime, ell)?;
    let bound = min_n(n_prime, ell)?;
    let mut steps = Vec::new();
    let mut oracles_agree = true;
    let mut bound_certified = true;
    let mut power = m.clone();
    let last = bound.max(n_prime * n_prime);
    for n in 1..=last {
        if n > 1 {
            power = power.mul(&m);
        }
        for i in 1..=n_prime {
            for j in 1..=n_prime {
                if chen_louck_entry(n_prime, ell, n, i, j)? != power.get(i, j) {
                    oracles_agree = false;
                }
            }
        }
        if n < bound {
            let (row, expected) = witness_index(n, n_prime, ell)?;
            let observed = power.get(row, 1);
            let rep = identity_representable(&power);
            if rep || observed != expected {
                bound_certified = false;
            }
            steps.push(BoundStep {
                n,
                identity_representable: rep,
                witness_row: row,
                expected,
                observed,
                chen_louck: chen_louck_entry(n_prime, ell, n, row, 1)?,
            });
        }
    }
    Ok(BoundReport {
        n_prime,
        ell,
        min_n: bound,
        steps,
        oracles_agree,
        bound_certified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables() {
        assert_eq!(sym_tables(APow, APow), (Star, APow));
        for x in SymEntry::ALL {
            assert_eq!(sym_tables(Zero, x), (x, Zero));
        }
        assert_eq!(sym_tables(One, One).0, Star);
        assert_eq!(sym_tables(APow, Star).1, Star);
        assert_eq!(sym_tables(One, APow).1, APow);
    }

    #[test]
    fn companion_shape() {
        let m = sym_companion(2, 1).unwrap();
        assert_eq!(m.rows(), vec!["0 *", "1 a"]);
        let m = sym_companion(3, 1).unwrap();
        assert_eq!((m.get(1, 3), m.get(2, 3), m.get(3, 3)), (Star, APow, Zero));
        assert!(sym_companion(3, 3).is_err());
    }

    #[test]
    fn identity_tests() {
        assert!(identity_representable(&SymMatrix::filled(3, Star)));
        let mut m = SymMatrix::filled(3, Star);
        m.set(2, 1, APow);
        assert!(!identity_representable(&m));
        let mut m = SymMatrix::filled(3, Star);
        m.set(1, 1, Zero);
        assert!(!identity_representable(&m));
    }

    #[test]
    fn small_powers() {
        let m = sym_companion(3, 1).unwrap();
        assert_eq!(sym_pow(&m, 1).unwrap(), m);
        for n in 3..=6 {
            assert!(!identity_representable(&sym_pow(&m, n).unwrap()));
        }
        let m2 = sym_companion(2, 1).unwrap();
        assert!(!identity_representable(&sym_pow(&m2, 2).unwrap()));
        assert!(identity_representable(&sym_pow(&m2, 3).unwrap()));
    }

    #[test]
    fn witnesses() {
        assert_eq!(witness_index(3, 3, 1).unwrap(), (2, APow));
        assert_eq!(witness_index(2, 3, 1).unwrap(), (3, One));
        assert_eq!(witness_index(6, 3, 1).unwrap(), (3, APow));
        assert!(witness_index(7, 3, 1).is_err());
    }

    #[test]
    fn chen_louck_matches_powers() {
        for np in 2..=6 {
            for ell in 1..np {
                let m = sym_companion(np, ell).unwrap();
                let mut pw = m.clone();
                for n in 1..=np * np {
                    if n > 1 {
                        pw = pw.mul(&m);
                    }
                    for i in 1..=np {
                        for j in 1..=np {
                            assert_eq!(
                                chen_louck_entry(np, ell, n, i, j).unwrap(),
                                pw.get(i, j),
                                "n'={np} l={ell} n={n} ({i},{j})"
                            );
                        }
                    }
                }
            }
        }
    }
}
