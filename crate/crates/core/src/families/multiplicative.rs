//! Binomials L = X^{p^{n'}} − X^a over F_{p^n} whose roots are {0} together
//! with a multiplicative subgroup.
//!
//! Given r | p^n − 1 and a = p^{n'} mod r, L has 1 + gcd(p^{n'} − a, p^n − 1)
//! roots, all of them when p^{n'} − a | p^n − 1. Three parameter families:
//! * M1: n = 2ik, n' = n − i, r = (p^n − 1)/(p^{2i} − 1)
//! * M2: p = k^n + k − 1 prime, n' = 1, r = (p − k)/(k − 1)
//! * M3: p = k^n − k − (−1)^n prime, n > 2, n' = n − 1,
//!   r = (p^n − 1)(k − (−1)^n) / ((k^n − k)(k^n − (−1)^n))

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::arith::{is_prime_big, ln_big, MAX_PRIME};
use crate::algebra::{ExtField, ExtPoly};
use crate::error::{cap, domain, usage, verification, Result};

/// Exponent ceiling for the integer arithmetic (p^n is formed exactly).
pub const MULT_BITS_CAP: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MultFamily {
    M1 { p: u64, i: u32, k: u32 },
    M2 { k: u64, n: u32 },
    M3 { k: u64, n: u32 },
}

#[derive(Clone, Debug, Serialize)]
pub struct MultiplicativeQsp {
    pub family: MultFamily,
    #[serde(serialize_with = "ser_big")]
    pub p: BigUint,
    pub n: u32,
    pub n_prime: u32,
    #[serde(serialize_with = "ser_big")]
    pub r: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub a: BigUint,
    /// p^{n'} − a + 1
    #[serde(serialize_with = "ser_big")]
    pub root_count: BigUint,
    /// n·ln a / (n'² ln p); a and p are kept so it can be recomputed exactly
    pub beta: f64,
    /// root_count / p^{n'}
    pub root_ratio: f64,
}

fn ser_big<S: serde::Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl MultiplicativeQsp {
    /// p^{n'} − a, the order of the root subgroup.
    pub fn subgroup_order(&self) -> BigUint {
        self.p.pow(self.n_prime) - &self.a
    }

    /// 1 + gcd(p^{n'} − a, p^n − 1): the number of roots of L in F_{p^n}.
    pub fn gcd_root_count(&self) -> BigUint {
        let field_units = self.p.pow(self.n) - 1u32;
        self.subgroup_order().gcd(&field_units) + 1u32
    }

    /// Root count of L from polynomial arithmetic over F_{p^n}: deg gcd(L, X^{p^n} − X).
    /// Only for small instances.
    pub fn dense_root_count(&self, degree_cap: usize) -> Result<usize> {
        let p = match self.p.to_u64() {
            Some(p) if p <= MAX_PRIME => p,
            _ => return cap("p too large for the dense oracle"),
        };
        let deg = match self.p.pow(self.n_prime).to_usize() {
            Some(d) if d <= degree_cap => d,
            _ => return cap(format!("p^n' exceeds the dense degree cap {degree_cap}")),
        };
        let a = self.a.to_usize().expect("a < p^n'");
        let field = ExtField::new(p, self.n as usize)?;
        let mut c = vec![field.zero(); deg + 1];
        c[deg] = field.one();
        c[a] = field.sub(&c[a], &field.one());
        ExtPoly::from_coeffs(c).count_roots(&field, degree_cap)
    }
}

/// Root data of an arbitrary binomial X^{p^{n'}} − X^a over F_{p^n}.
#[derive(Clone, Debug, Serialize)]
pub struct BinomialReport {
    #[serde(serialize_with = "ser_big")]
    pub p: BigUint,
    pub n: u32,
    pub n_prime: u32,
    #[serde(serialize_with = "ser_big")]
    pub a: BigUint,
    /// 1 + gcd(p^{n'} − a, p^n − 1)
    #[serde(serialize_with = "ser_big")]
    pub root_count: BigUint,
    /// p^{n'} − a + 1, the number of distinct roots L can have
    #[serde(serialize_with = "ser_big")]
    pub max_roots: BigUint,
    pub splits: bool,
    pub beta: f64,
    /// from polynomial arithmetic when p^{n'} is small
    pub dense_root_count: Option<u64>,
}

/// Counts the roots of X^{p^{n'}} − X^a in F_{p^n} for 1 < a < p^{n'}.
pub fn verify_binomial(p: u64, n: u32, n_prime: u32, a: &BigUint) -> Result<BinomialReport> {
    crate::algebra::poly::check_prime(p)?;
    if n == 0 || n_prime == 0 {
        return usage("n and n' must be positive");
    }
    let pb = big(p);
    check_size(&pb, n.max(n_prime))?;
    let pnp = pb.pow(n_prime);
    if *a <= BigUint::one() || *a >= pnp {
        return usage(format!("need 1 < a < p^n' = {pnp}"));
    }
    let order = &pnp - a;
    let units = pb.pow(n) - 1u32;
    let root_count = order.gcd(&units) + 1u32;
    let max_roots = &order + 1u32;
    let splits = root_count == max_roots;
    let beta = n as f64 * ln_big(a) / ((n_prime as f64).powi(2) * (p as f64).ln());
    let dense_root_count = match (pnp.to_usize(), a.to_usize()) {
        (Some(deg), Some(a)) if deg <= 4096 && p <= MAX_PRIME => {
            let field = ExtField::new(p, n as usize)?;
            let mut c = vec![field.zero(); deg + 1];
            c[deg] = field.one();
            c[a] = field.sub(&c[a], &field.one());
            Some(ExtPoly::from_coeffs(c).count_roots(&field, 4096)? as u64)
        }
        _ => None,
    };
    if let Some(d) = dense_root_count {
        if BigUint::from(d) != root_count {
            return verification(format!(
                "dense count {d} differs from the gcd count {root_count}"
            ));
        }
    }
    Ok(BinomialReport {
        p: pb,
        n,
        n_prime,
        a: a.clone(),
        root_count,
        max_roots,
        splits,
        beta,
        dense_root_count,
    })
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn check_size(p: &BigUint, n: u32) -> Result<()> {
    if p.bits().saturating_mul(n as u64) > MULT_BITS_CAP {
        return cap(format!("p^{n} exceeds {MULT_BITS_CAP} bits"));
    }
    Ok(())
}

/// Builds and verifies a member of one of the three families.
pub fn gen_mult(family: MultFamily) -> Result<MultiplicativeQsp> {
    let (p, n, n_prime, r, closed_a) = match family {
        MultFamily::M1 { p, i, k } => {
            if k < 2 || i < 1 {
                return usage("family M1 needs k ≥ 2 and i ≥ 1");
            }
            crate::algebra::poly::check_prime(p).or_else(|_| {
                if is_prime_big(&big(p)) {
                    Ok(())
                } else {
                    usage(format!("{p} is not prime"))
                }
            })?;
            let n = 2 * i * k;
            let pb = big(p);
            check_size(&pb, n)?;
            let r = (pb.pow(n) - 1u32) / (pb.pow(2 * i) - 1u32);
            // a = (p^{i(2k−1)} + 1)/(p^i + 1)
            let closed = (pb.pow(i * (2 * k - 1)) + 1u32) / (pb.pow(i) + 1u32);
            (pb, n, n - i, r, closed)
        }
        MultFamily::M2 { k, n } => {
            if k < 2 {
                return usage("family M2 needs k ≥ 2");
            }
            if n < 2 {
                return domain("family M2 with n = 1 gives a = 0, no QSP");
            }
            let kb = big(k);
            check_size(&kb, n)?;
            let p = kb.pow(n) + &kb - 1u32;
            require_prime(&p, n, true)?;
            check_size(&p, n)?;
            let r = (&p - &kb) / (&kb - 1u32);
            (p, n, 1, r, kb)
        }
        MultFamily::M3 { k, n } => {
            if k < 2 || n <= 2 {
                return usage("family M3 needs k ≥ 2 and n > 2");
            }
            let kb = big(k);
            check_size(&kb, n)?;
            let kn = kb.pow(n);
            let even = n % 2 == 0;
            // p = k^n − k − (−1)^n
            let p = if even {
                &kn - &kb - 1u32
            } else {
                &kn - &kb + 1u32
            };
            require_prime(&p, n, false)?;
            check_size(&p, n)?;
            let pn1 = p.pow(n) - 1u32;
            let (k_minus_sign, kn_minus_sign) = if even {
                (&kb - 1u32, &kn - 1u32)
            } else {
                (&kb + 1u32, &kn + 1u32)
            };
            let num = &pn1 * &k_minus_sign;
            let den = (&kn - &kb) * &kn_minus_sign;
            if !(&num % &den).is_zero() {
                return verification("family M3 r is not an integer");
            }
            let r = num / den;
            let pn_1 = p.pow(n - 1);
            let closed = if even {
                (&pn_1 + 1u32) / (&kn - &kb)
            } else {
                (&pn_1 * &kb + 1u32) / (&kn + 1u32)
            };
            (p, n, n - 1, r, closed)
        }
    };
    finish(family, p, n, n_prime, r, closed_a)
}

fn require_prime(p: &BigUint, n: u32, m2: bool) -> Result<()> {
    if is_prime_big(p) {
        return Ok(());
    }
    let note = if m2 && n % 6 == 5 {
        "; k^n + k − 1 is always divisible by k² − k + 1 when n ≡ 5 mod 6"
    } else {
        ""
    };
    domain(format!("p = {p} is composite{note}"))
}

fn finish(
    family: MultFamily,
    p: BigUint,
    n: u32,
    n_prime: u32,
    r: BigUint,
    closed_a: BigUint,
) -> Result<MultiplicativeQsp> {
    let pn1 = p.pow(n) - 1u32;
    if r.is_zero() || !(&pn1 % &r).is_zero() {
        return verification(format!("r = {r} does not divide p^n − 1"));
    }
    let pnp = p.pow(n_prime);
    let a = &pnp % &r;
    if a != closed_a {
        let msg = format!("a = p^n' mod r = {a} differs from the closed form {closed_a} (r = {r})");
        return match family {
            MultFamily::M3 { .. } => domain(format!("instance rejected: {msg}")),
            _ => verification(msg),
        };
    }
    if a.is_zero() || a.is_one() {
        return domain(format!("a = {a} gives β ≤ 0"));
    }
    let order = &pnp - &a;
    if !(&pn1 % &order).is_zero() {
        return domain(format!("p^n' − a = {order} does not divide p^n − 1"));
    }
    if let MultFamily::M1 { i, k, .. } = family {
        // p^{n'} − a = (p^{2ik} − 1)/(p^i + 1)
        let rhs = (p.pow(2 * i * k) - 1u32) / (p.pow(i) + 1u32);
        if order != rhs {
            return verification("family M1 identity p^n' − a = (p^2ik − 1)/(p^i + 1) fails");
        }
    }
    let beta = n as f64 * ln_big(&a) / ((n_prime * n_prime) as f64 * ln_big(&p));
    if beta > 1.0 {
        return domain(format!("instance rejected: β = {beta:.6} > 1"));
    }
    let root_count = &order + 1u32;
    let root_ratio = (ln_big(&root_count) - ln_big(&pnp)).exp();
    let m = MultiplicativeQsp {
        family,
        p,
        n,
        n_prime,
        r,
        a,
        root_count,
        beta,
        root_ratio,
    };
    if m.gcd_root_count() != m.root_count {
        return verification("gcd root count disagrees with p^n' − a + 1");
    }
    Ok(m)
}
