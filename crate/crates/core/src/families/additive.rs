//! Explicit families of linearized QSPs and structural membership tests.
//!
//! With q = p^r and p_i = 1 + q + … + q^i:
//! * Type 1: h = X^{p_a} + … + X^{p_0} + 1 splits at n = p_{a+1}; r = 0 is Type 1bis
//!   (the all-ones polynomial of degree n − 1).
//! * Type 2: f_a = X^{q^d} + … + X^q + X + a for a ∈ F_p^*, and
//!   f_0 = X^{q^d − 1} + … + X^{q−1} + 1, split at n = q^{d+1} − 1.
//! * Type 3: the inverses (X^n − 1)/f of the above.

use num_rational::Ratio;
use serde::Serialize;

use crate::algebra::{ExtField, ExtPoly, FpPoly};
use crate::error::{cap, usage, verification, Result};
use crate::qsp::{beta_of, invert_qsp, split_test_div, tail_degree, Beta};

/// Largest polynomial degree the generators will build.
pub const GEN_DEGREE_CAP: u128 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum FamilySpec {
    Type1 { p: u64, r: u32, a: usize },
    Type2 { p: u64, r: u32, d: u32, a: u64 },
}

#[derive(Clone, Debug)]
pub struct FamilyInstance {
    pub spec: FamilySpec,
    pub f: FpPoly,
    pub n: usize,
    pub beta: Beta,
}

fn checked_pow(base: u128, e: u32) -> Option<u128> {
    base.checked_pow(e).filter(|&v| v <= GEN_DEGREE_CAP * 64)
}

/// p_0..p_{a+1} for q = p^r (q = 1 when r = 0).
fn p_sequence(q: u128, a: usize) -> Option<Vec<u128>> {
    let mut out = Vec::with_capacity(a + 2);
    let mut acc: u128 = 1;
    let mut qi: u128 = 1;
    out.push(acc);
    for _ in 0..=a {
        qi = qi.checked_mul(q)?;
        acc = acc.checked_add(qi)?;
        out.push(acc);
    }
    Some(out)
}

pub fn gen_type1(p: u64, r: u32, a: usize) -> Result<FamilyInstance> {
    crate::algebra::poly::check_prime(p)?;
    if a < 1 {
        return usage("Type 1 needs a ≥ 1");
    }
    let q =
        checked_pow(p as u128, r).ok_or_else(|| crate::Error::CapExceeded("q too large".into()))?;
    let ps = p_sequence(q, a).ok_or_else(|| crate::Error::CapExceeded("degree overflow".into()))?;
    let (np, n) = (ps[a], ps[a + 1]);
    if n > GEN_DEGREE_CAP {
        return cap(format!("splitting degree {n} exceeds {GEN_DEGREE_CAP}"));
    }
    let mut c = vec![0u64; np as usize + 1];
    c[0] = 1;
    for &e in &ps[..=a] {
        c[e as usize] = 1;
    }
    let h = FpPoly::new(p, c)?;
    let n = n as usize;
    let beta = beta_of(n, np as usize, ps[a - 1] as usize)?;
    let pa = np as i128;
    let qq = q as i128;
    // 1 − (1/p_a)(1 − 1/q + 1/(q·p_a))
    let closed = Ratio::from_integer(1)
        - Ratio::new(1, pa) * (Ratio::from_integer(1) - Ratio::new(1, qq) + Ratio::new(1, qq * pa));
    if closed != beta {
        return verification(format!(
            "Type 1 β {beta} differs from the closed form {closed}"
        ));
    }
    if !split_test_div(&h, n)? {
        return verification(format!("{h} does not split at n = {n}"));
    }
    Ok(FamilyInstance {
        spec: FamilySpec::Type1 { p, r, a },
        f: h,
        n,
        beta,
    })
}

pub fn gen_type2(p: u64, r: u32, d: u32, a: u64) -> Result<FamilyInstance> {
    crate::algebra::poly::check_prime(p)?;
    if r < 1 || d < 1 {
        return usage("Type 2 needs r ≥ 1 and d ≥ 1");
    }
    let a = a % p;
    let q =
        checked_pow(p as u128, r).ok_or_else(|| crate::Error::CapExceeded("q too large".into()))?;
    let qd =
        checked_pow(q, d).ok_or_else(|| crate::Error::CapExceeded("degree overflow".into()))?;
    let n = checked_pow(q, d + 1)
        .ok_or_else(|| crate::Error::CapExceeded("degree overflow".into()))?
        - 1;
    if n > GEN_DEGREE_CAP {
        return cap(format!("splitting degree {n} exceeds {GEN_DEGREE_CAP}"));
    }
    let f = if a == 0 {
        let mut c = vec![0u64; qd as usize];
        for i in 0..=d {
            c[(q.pow(i) - 1) as usize] = 1;
        }
        FpPoly::new(p, c)?
    } else {
        let mut c = vec![0u64; qd as usize + 1];
        c[0] = a;
        for i in 0..=d {
            c[q.pow(i) as usize] = 1;
        }
        FpPoly::new(p, c)?
    };
    let n = n as usize;
    let beta = beta_of(n, f.degree().unwrap_or(0), tail_degree(&f))?;
    let closed = if a == 0 {
        let s: i128 = (0..d).map(|i| (q as i128).pow(i)).sum();
        Ratio::from_integer(1) - Ratio::new((q as i128).pow(d - 1), s * s)
    } else {
        Ratio::from_integer(1) - Ratio::new(1, (q as i128).pow(d + 1))
    };
    if closed != beta {
        return verification(format!(
            "Type 2 β {beta} differs from the closed form {closed}"
        ));
    }
    if !split_test_div(&f, n)? {
        return verification(format!("{f} does not split at n = {n}"));
    }
    Ok(FamilyInstance {
        spec: FamilySpec::Type2 { p, r, d, a },
        f,
        n,
        beta,
    })
}

/// The Type 3 partner of a Type 1 or Type 2 instance, built from the family
/// formula and checked against the quotient (X^n − 1)/f.
pub fn gen_type3(inst: &FamilyInstance) -> Result<FpPoly> {
    let g = match inst.spec {
        FamilySpec::Type1 { p, r, .. } => {
            // X·h^{q−1} − 1
            let q = (p as u128).pow(r);
            let mut acc = FpPoly::one(p);
            for _ in 1..q {
                acc = acc.mul_raw(&inst.f);
            }
            acc.mul_raw(&FpPoly::x(p)).sub_raw(&FpPoly::one(p))
        }
        FamilySpec::Type2 { p, r, d, a } => {
            // Π_{b ∈ F_q, b ≠ a} f_b over F_q
            let fq = ExtField::new(p, r as usize)?;
            let q = (p as u128).pow(r) as usize;
            let qd = q.pow(d);
            let mut g_coeffs = vec![fq.zero(); qd + 1];
            for i in 0..=d {
                g_coeffs[q.pow(i)] = fq.one();
            }
            let g = ExtPoly::from_coeffs(g_coeffs);
            let a_elem = fq.from_base(a);
            let mut acc = ExtPoly::from_coeffs(vec![fq.one()]);
            for bi in 0..q as u64 {
                let b = fq.element(bi);
                if b == a_elem {
                    continue;
                }
                let fb = if b.is_zero() {
                    ExtPoly::from_coeffs(g.coeffs()[1..].to_vec())
                } else {
                    g.add(&fq, &ExtPoly::from_coeffs(vec![b]))
                };
                acc = acc.mul(&fq, &fb);
            }
            acc.to_fp(&fq).ok_or_else(|| {
                crate::Error::Verification("Type 3 product left the prime field".into())
            })?
        }
    };
    let (quotient, _) = invert_qsp(&inst.f, inst.n)?;
    if quotient != g {
        return verification(format!(
            "family inverse {g} differs from (X^n-1)/f = {quotient}"
        ));
    }
    Ok(g)
}

/// (r, a) when f is the Type 1 polynomial splitting at n (r = 0 is Type 1bis).
pub fn match_type1(f: &FpPoly, n: usize) -> Option<(u32, usize)> {
    let p = f.p();
    let np = f.degree()?;
    if np < 2 || f.coeffs().iter().any(|&c| c > 1) {
        return None;
    }
    let support = f.support();
    if support.len() == np + 1 {
        // all ones: Type 1bis with a = n' − 1
        return (n == np + 1).then_some((0, np - 1));
    }
    let mut r = 1u32;
    let mut q = p as u128;
    while q < np as u128 {
        let mut ps = vec![1u128];
        while *ps.last()? < np as u128 {
            let next = ps.last()? * q + 1;
            ps.push(next);
        }
        if *ps.last()? == np as u128 && ps.len() >= 2 {
            let a = ps.len() - 1;
            let mut expected: Vec<usize> = std::iter::once(0)
                .chain(ps.iter().map(|&e| e as usize))
                .collect();
            expected.dedup();
            if expected == support && (np as u128) * q + 1 == n as u128 {
                return Some((r, a));
            }
        }
        r += 1;
        q *= p as u128;
    }
    None
}

/// (r, d, a) when f is a Type 2 polynomial splitting at n.
pub fn match_type2(f: &FpPoly, n: usize) -> Option<(u32, u32, u64)> {
    let p = f.p();
    let np = f.degree()?;
    let support = f.support();
    let mut r = 1u32;
    let mut q = p as usize;
    while q <= np + 1 {
        // f_a: exponents 1, q, …, q^d = n' with unit coefficients plus a ≠ 0
        let mut d = 0u32;
        let mut qd = 1usize;
        while qd < np {
            qd *= q;
            d += 1;
        }
        if qd == np && d >= 1 && f.coeff(0) != 0 {
            let expected: Vec<usize> = std::iter::once(0)
                .chain((0..=d).map(|i| q.pow(i)))
                .collect();
            let ones = (0..=d).all(|i| f.coeff(q.pow(i)) == 1);
            if expected == support && ones && qd * q - 1 == n {
                return Some((r, d, f.coeff(0)));
            }
        }
        // f_0: exponents q^i − 1 for i = 0..d with n' = q^d − 1
        let mut d = 0u32;
        let mut qd = 1usize;
        while qd - 1 < np {
            qd *= q;
            d += 1;
        }
        if qd - 1 == np && d >= 2 {
            let expected: Vec<usize> = (0..=d).map(|i| q.pow(i) - 1).collect();
            let ones = expected.iter().all(|&e| f.coeff(e) == 1);
            if expected == support && ones && qd * q - 1 == n {
                return Some((r, d, 0));
            }
        }
        r += 1;
        q *= p as usize;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u64, c: &[i64]) -> FpPoly {
        FpPoly::from_i64(p, c).unwrap()
    }

    #[test]
    fn type1_examples() {
        let t = gen_type1(2, 1, 2).unwrap();
        assert_eq!(t.f.to_string(), "X^7+X^3+X+1");
        assert_eq!(t.n, 15);
        assert_eq!(t.beta, Ratio::new(45, 49));
        let bis = gen_type1(3, 0, 3).unwrap();
        assert_eq!(bis.f.to_string(), "X^4+X^3+X^2+X+1");
        assert_eq!(bis.n, 5);
        assert_eq!(match_type1(&t.f, 15), Some((1, 2)));
        assert_eq!(match_type1(&bis.f, 5), Some((0, 3)));
    }

    #[test]
    fn type2_examples() {
        let t = gen_type2(2, 1, 2, 0).unwrap();
        assert_eq!(t.f.to_string(), "X^3+X+1");
        assert_eq!(t.n, 7);
        let t = gen_type2(3, 1, 1, 1).unwrap();
        assert_eq!(t.f.to_string(), "X^3+X+1");
        assert_eq!(t.n, 8);
        assert_eq!(match_type2(&t.f, 8), Some((1, 1, 1)));
        assert_eq!(match_type2(&poly(2, &[1, 1, 0, 0, 1]), 15), Some((2, 1, 1)));
        assert_eq!(match_type2(&poly(2, &[1, 1, 0, 0, 1]), 13), None);
    }

    #[test]
    fn type3_examples() {
        let t = gen_type2(2, 1, 2, 0).unwrap();
        assert_eq!(gen_type3(&t).unwrap().to_string(), "X^4+X^2+X+1");
        let t = gen_type1(2, 1, 2).unwrap();
        assert_eq!(gen_type3(&t).unwrap().degree(), Some(8));
        let t = gen_type2(2, 2, 1, 1).unwrap();
        assert_eq!(
            gen_type3(&t).unwrap().to_string(),
            "X^11+X^8+X^7+X^5+X^3+X^2+X+1"
        );
    }
}
