//! Dense polynomials over a prime field.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;

use super::arith::{
    add_mod, divisors, inv_mod, is_prime_u64, mul_mod, neg_mod, reduce_i64, sub_mod, MAX_PRIME,
};
use crate::error::{domain, usage, Result};

/// Polynomial over F_p, least-significant coefficient first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

pub(crate) fn check_prime(p: u64) -> Result<()> {
    if !(2..=MAX_PRIME).contains(&p) || !is_prime_u64(p) {
        return usage(format!("characteristic {p} must be a prime in [2, 2^31]"));
    }
    Ok(())
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

impl FpPoly {
    /// Builds a polynomial from residues (reduced mod p). Checks that p is prime.
    pub fn new(p: u64, coeffs: Vec<u64>) -> Result<Self> {
        check_prime(p)?;
        Ok(Self::from_raw(p, coeffs))
    }

    /// Like [`FpPoly::new`] but accepts signed coefficients.
    pub fn from_i64(p: u64, coeffs: &[i64]) -> Result<Self> {
        check_prime(p)?;
        Ok(Self::from_raw(
            p,
            coeffs.iter().map(|&c| reduce_i64(c, p)).collect(),
        ))
    }

    /// No primality check; the caller guarantees `p` is prime.
    pub(crate) fn from_raw(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        trim(&mut coeffs);
        FpPoly { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        FpPoly {
            p,
            coeffs: Vec::new(),
        }
    }

    pub fn one(p: u64) -> Self {
        FpPoly { p, coeffs: vec![1] }
    }

    pub fn x(p: u64) -> Self {
        FpPoly {
            p,
            coeffs: vec![0, 1],
        }
    }

    /// c·X^d
    pub fn monomial(p: u64, d: usize, c: u64) -> Self {
        let mut v = vec![0; d + 1];
        v[d] = c;
        Self::from_raw(p, v)
    }

    /// X^n − 1
    pub fn x_pow_minus_one(p: u64, n: usize) -> Self {
        let mut v = vec![0; n + 1];
        v[n] = 1;
        v[0] = sub_mod(v[0], 1, p);
        Self::from_raw(p, v)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u64> {
        self.coeffs
    }

    /// Coefficient of X^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    /// Coefficients as signed integers in (−p/2, p/2].
    pub fn signed_coeffs(&self) -> Vec<i64> {
        self.coeffs
            .iter()
            .map(|&c| {
                if c > self.p / 2 {
                    c as i64 - self.p as i64
                } else {
                    c as i64
                }
            })
            .collect()
    }

    /// Exponents with nonzero coefficient, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len())
            .filter(|&i| self.coeffs[i] != 0)
            .collect()
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return usage(format!(
                "characteristic mismatch: {} vs {}",
                self.p, other.p
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.add_raw(other))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.sub_raw(other))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.mul_raw(other))
    }

    /// Quotient and remainder. Division by the zero polynomial is a usage error.
    pub fn div_rem(&self, other: &Self) -> Result<(Self, Self)> {
        self.same_field(other)?;
        if other.is_zero() {
            return usage("division by the zero polynomial");
        }
        Ok(self.div_rem_raw(other))
    }

    pub fn rem(&self, other: &Self) -> Result<Self> {
        Ok(self.div_rem(other)?.1)
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.gcd_raw(other))
    }

    /// self^e mod m
    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Result<Self> {
        self.same_field(m)?;
        if m.is_zero() {
            return usage("modulus is the zero polynomial");
        }
        Ok(self.pow_mod_raw(e, m))
    }

    pub fn neg(&self) -> Self {
        let p = self.p;
        FpPoly {
            p,
            coeffs: self.coeffs.iter().map(|&c| neg_mod(c, p)).collect(),
        }
    }

    pub fn scale(&self, c: u64) -> Self {
        let p = self.p;
        Self::from_raw(
            p,
            self.coeffs.iter().map(|&x| mul_mod(x, c % p, p)).collect(),
        )
    }

    pub fn make_monic(&self) -> Self {
        match inv_mod(self.leading(), self.p) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| add_mod(mul_mod(acc, x, p), c, p))
    }

    /// f(X^k)
    pub fn compose_xk(&self, k: usize) -> Self {
        if self.is_zero() || k == 1 {
            return self.clone();
        }
        let mut v = vec![0; (self.coeffs.len() - 1) * k + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[i * k] = c;
        }
        Self::from_raw(self.p, v)
    }

    pub(crate) fn add_raw(&self, other: &Self) -> Self {
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| add_mod(self.coeff(i), other.coeff(i), p))
            .collect();
        Self::from_raw(p, v)
    }

    pub(crate) fn sub_raw(&self, other: &Self) -> Self {
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| sub_mod(self.coeff(i), other.coeff(i), p))
            .collect();
        Self::from_raw(p, v)
    }

    pub(crate) fn mul_raw(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p;
        let mut acc = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        // accumulate without reduction while the sum cannot overflow
        let limit = u128::MAX / ((p as u128 - 1).pow(2).max(1)) - 1;
        let mut pending = 0u128;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            pending += 1;
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] += a as u128 * b as u128;
            }
            if pending >= limit {
                for c in acc.iter_mut() {
                    *c %= p as u128;
                }
                pending = 0;
            }
        }
        Self::from_raw(p, acc.into_iter().map(|c| (c % p as u128) as u64).collect())
    }

    pub(crate) fn div_rem_raw(&self, d: &Self) -> (Self, Self) {
        let p = self.p;
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Self::zero(p), self.clone());
        }
        let inv_lead = inv_mod(d.leading(), p).expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        let mut q = vec![0; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = mul_mod(r[k + dd], inv_lead, p);
            q[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &dj) in d.coeffs.iter().enumerate() {
                if dj != 0 {
                    r[k + j] = sub_mod(r[k + j], mul_mod(c, dj, p), p);
                }
            }
        }
        r.truncate(dd);
        (Self::from_raw(p, q), Self::from_raw(p, r))
    }

    pub(crate) fn rem_raw(&self, d: &Self) -> Self {
        self.div_rem_raw(d).1
    }

    pub(crate) fn gcd_raw(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem_raw(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// Inverse of self modulo m, when gcd(self, m) = 1.
    pub fn inverse_mod(&self, m: &Self) -> Option<Self> {
        let p = self.p;
        let (mut r0, mut r1) = (m.clone(), self.rem_raw(m));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem_raw(&r1);
            let t = t0.sub_raw(&q.mul_raw(&t1));
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t;
        }
        if r0.degree() != Some(0) {
            return None;
        }
        let c = inv_mod(r0.leading(), p)?;
        Some(t0.scale(c).rem_raw(m))
    }

    pub(crate) fn mul_mod_raw(&self, other: &Self, m: &Self) -> Self {
        self.mul_raw(other).rem_raw(m)
    }

    pub(crate) fn pow_mod_raw(&self, e: &BigUint, m: &Self) -> Self {
        let mut acc = Self::one(self.p).rem_raw(m);
        let base = self.rem_raw(m);
        let bits = e.bits();
        for i in (0..bits).rev() {
            acc = acc.mul_mod_raw(&acc, m);
            if e.bit(i) {
                acc = acc.mul_mod_raw(&base, m);
            }
        }
        acc
    }

    pub(crate) fn pow_mod_u64(&self, e: u64, m: &Self) -> Self {
        self.pow_mod_raw(&BigUint::from(e), m)
    }

    /// gcd(X^{p^i} − X, f) = 1 for every proper divisor i of n, and
    /// X^{p^n} ≡ X (mod f).
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            Some(0) | None => return false,
            Some(d) => d,
        };
        if n == 1 {
            return true;
        }
        let p = self.p;
        let f = self.make_monic();
        let x = Self::x(p);
        // frob[i] = X^{p^i} mod f
        let mut frob = vec![x.rem_raw(&f)];
        for i in 1..=n {
            let next = frob[i - 1].pow_mod_u64(p, &f);
            frob.push(next);
        }
        if frob[n] != x.rem_raw(&f) {
            return false;
        }
        for i in Self::proper_divisors(n) {
            let g = frob[i].sub_raw(&x).gcd_raw(&f);
            if !g.is_one() {
                return false;
            }
        }
        true
    }

    pub(crate) fn proper_divisors(n: usize) -> Vec<usize> {
        divisors(n as u64)
            .into_iter()
            .map(|d| d as usize)
            .filter(|&d| d < n)
            .collect()
    }

    /// X·r mod f where deg r < deg f and f monic; one O(deg f) step.
    pub(crate) fn shift_reduce(r: &mut [u64], f: &[u64], p: u64) {
        let n = r.len();
        let top = r[n - 1];
        for i in (1..n).rev() {
            r[i] = r[i - 1];
        }
        r[0] = 0;
        if top != 0 {
            for i in 0..n {
                if f[i] != 0 {
                    r[i] = sub_mod(r[i], mul_mod(top, f[i], p), p);
                }
            }
        }
    }

    /// Smallest k in 1..=bound with X^k ≡ 1 (mod f), for monic f with f(0) ≠ 0.
    /// This is the order of the companion matrix of f.
    pub fn x_order(&self, bound: u64) -> Result<Option<u64>> {
        let n = match self.degree() {
            Some(d) if d >= 1 => d,
            _ => return domain("order of X needs a polynomial of degree at least 1"),
        };
        if !self.is_monic() {
            return domain("order of X needs a monic polynomial");
        }
        if self.coeff(0) == 0 {
            return domain("X is not invertible modulo f when f(0) = 0");
        }
        let p = self.p;
        let f = &self.coeffs[..n];
        let mut r = vec![0u64; n];
        if n == 1 {
            // X ≡ −f_0
            let x = neg_mod(f[0], p);
            let mut acc = 1;
            for k in 1..=bound {
                acc = mul_mod(acc, x, p);
                if acc == 1 {
                    return Ok(Some(k));
                }
            }
            return Ok(None);
        }
        r[1] = 1;
        for k in 1..=bound {
            if r[0] == 1 && r[1..].iter().all(|&c| c == 0) {
                return Ok(Some(k));
            }
            Self::shift_reduce(&mut r, f, p);
        }
        Ok(None)
    }

    /// Ordering used for deterministic output: by degree, then coefficients
    /// from the top down.
    pub fn cmp_graded(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

/// Serialized as its display string.
impl serde::Serialize for FpPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl fmt::Display for FpPoly {
    /// Descending sparse form: "X^16+X^4+X+1", with p−1 shown as a minus sign.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let p = self.p;
        let mut first = true;
        for i in (0..self.coeffs.len()).rev() {
            let c = self.coeffs[i];
            if c == 0 {
                continue;
            }
            let (neg, mag) = if p > 2 && c == p - 1 {
                (true, 1)
            } else {
                (false, c)
            };
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{i}"),
            };
            if i == 0 {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}{mono}")?;
            }
        }
        Ok(())
    }
}
