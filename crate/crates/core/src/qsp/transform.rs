use num_integer::Integer;
use num_rational::Ratio;

use super::linearized::{split_test_div, Beta, LinearizedQsp};
use crate::algebra::arith::{inv_mod, mul_mod, pow_mod};
use crate::algebra::{ExtElem, FpPoly};
use crate::error::{domain, usage, verification, Result};

/// ℓ of a monic f: the degree of f − X^{n'} (0 when f is a binomial).
pub fn tail_degree(f: &FpPoly) -> usize {
    let d = f.degree().unwrap_or(0);
    (0..d).rev().find(|&i| f.coeff(i) != 0).unwrap_or(0)
}

/// β computed directly from a polynomial; ℓ = 0 gives 0 here so that the
/// inversion formula can be stated for f = X − 1 as well.
fn raw_beta(f: &FpPoly, n: usize) -> Beta {
    let np = f.degree().unwrap_or(0) as i128;
    Ratio::new(tail_degree(f) as i128 * n as i128, np * np)
}

/// g = (X^n − 1)/f together with β(L_g) from the inversion formula
/// β_g = 1 − (n'/(n−n'))²(1 − β_f), checked against the direct value.
pub fn invert_qsp(f: &FpPoly, n: usize) -> Result<(FpPoly, Beta)> {
    let np = match f.degree() {
        Some(d) if d >= 1 && f.is_monic() => d,
        _ => return usage(format!("{f} is not monic of degree ≥ 1")),
    };
    if np >= n {
        return usage(format!("deg f = {np} must be below n = {n}"));
    }
    let (g, r) = FpPoly::x_pow_minus_one(f.p(), n).div_rem(f)?;
    if !r.is_zero() {
        return domain(format!("{f} does not divide X^{n} - 1"));
    }
    let ratio = Ratio::new(np as i128, (n - np) as i128);
    let beta_g = Ratio::from_integer(1) - ratio * ratio * (Ratio::from_integer(1) - raw_beta(f, n));
    if beta_g != raw_beta(&g, n) {
        return verification(format!("inversion formula gives {beta_g} for {g}"));
    }
    if g.coeff(0) != 0 && !split_test_div(&g, n)? {
        return verification(format!("{g} does not split over F_p^{n}"));
    }
    Ok((g, beta_g))
}

/// f(X^k): splits over F_{p^{kn}} exactly when f splits over F_{p^n}.
pub fn substitute_xk(f: &FpPoly, k: usize) -> Result<FpPoly> {
    if k == 0 {
        return usage("substitution exponent must be at least 1");
    }
    Ok(f.compose_xk(k))
}

/// α^{−n'} f(αX) for α ∈ F_p with α^n = 1.
pub fn scale_alpha(f: &FpPoly, alpha: u64, n: usize) -> Result<FpPoly> {
    let p = f.p();
    let alpha = alpha % p;
    if alpha == 0 || pow_mod(alpha, n as u64, p) != 1 {
        return domain(format!("α = {alpha} does not satisfy α^{n} = 1 in F_{p}"));
    }
    let np = f.degree().unwrap_or(0);
    let inv = inv_mod(alpha, p).expect("nonzero");
    let coeffs = (0..=np)
        .map(|i| {
            // α^{i − n'}
            let s = pow_mod(inv, (np - i) as u64, p);
            mul_mod(f.coeff(i), s, p)
        })
        .collect();
    Ok(FpPoly::from_raw(p, coeffs))
}

/// γ^{−p^{n'}} L(γX) for γ ≠ 0: c_i ↦ c_i·γ^{p^i}/γ^{p^{n'}}.
pub fn conjugate_gamma(q: &LinearizedQsp, gamma: &ExtElem) -> Result<LinearizedQsp> {
    let field = q.field();
    if gamma.is_zero() {
        return domain("γ must be nonzero");
    }
    let top_inv = field.inv(&field.frobenius(gamma, q.n_prime()))?;
    let lower = q
        .lower()
        .iter()
        .enumerate()
        .map(|(i, c)| field.mul(&field.mul(c, &field.frobenius(gamma, i)), &top_inv))
        .collect();
    LinearizedQsp::from_lower(field.clone(), lower)
}

/// d = gcd of the nonzero exponents (≥ 1) of f and n.
pub fn canonical_gcd(f: &FpPoly, n: usize) -> usize {
    f.support()
        .into_iter()
        .filter(|&i| i >= 1)
        .fold(n, |g, i| g.gcd(&i))
}

/// Reduces f = f̂(X^d) to (f̂, n/d) when d = gcd(exponents ∪ {n}) > 1.
pub fn canonical_representative(f: &FpPoly, n: usize) -> (FpPoly, usize) {
    let d = canonical_gcd(f, n);
    if d <= 1 {
        return (f.clone(), n);
    }
    let deg = f.degree().unwrap_or(0);
    let coeffs = (0..=deg / d).map(|i| f.coeff(i * d)).collect();
    (FpPoly::from_raw(f.p(), coeffs), n / d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsp::linearized::{root_count_oracle, split_test_div};

    fn poly(p: u64, c: &[i64]) -> FpPoly {
        FpPoly::from_i64(p, c).unwrap()
    }

    #[test]
    fn inverse_examples() {
        for n in 3..12 {
            let (g, b) = invert_qsp(&poly(2, &[1, 1]), n).unwrap();
            assert_eq!(g, FpPoly::from_raw(2, vec![1; n]));
            let m = (n - 1) as i128;
            assert_eq!(b, Ratio::from_integer(1) - Ratio::new(1, m * m));
        }
        let (g, _) = invert_qsp(&poly(2, &[1, 1, 1, 0, 1]), 7).unwrap();
        assert_eq!(g, poly(2, &[1, 1, 0, 1]));
        let (h, _) = invert_qsp(&g, 7).unwrap();
        assert_eq!(h, poly(2, &[1, 1, 1, 0, 1]));
        assert!(invert_qsp(&poly(2, &[1, 1, 1]), 4).is_err());
    }

    #[test]
    fn substitution_example() {
        let f = substitute_xk(&poly(2, &[1, 1, 1]), 2).unwrap();
        assert_eq!(f, poly(2, &[1, 0, 1, 0, 1]));
        assert!(split_test_div(&f, 6).unwrap());
        assert_eq!(raw_beta(&f, 6), Ratio::new(3, 4));
    }

    #[test]
    fn scale_identity_and_error() {
        let f = poly(5, &[3, 1, 1]);
        assert_eq!(scale_alpha(&f, 1, 4).unwrap(), f);
        assert!(scale_alpha(&f, 2, 3).is_err());
        let g = scale_alpha(&f, 2, 4).unwrap();
        assert!(split_test_div(&g, 4).unwrap());
    }

    #[test]
    fn gamma_roundtrip() {
        let q = LinearizedQsp::linearize_fp(&poly(3, &[1, 1, 0, 1]), 8).unwrap();
        let field = q.field().clone();
        let gamma = field.element(17);
        let t = conjugate_gamma(&q, &gamma).unwrap();
        assert_eq!(
            root_count_oracle(&t).unwrap(),
            root_count_oracle(&q).unwrap()
        );
        assert_eq!(t.beta().unwrap(), q.beta().unwrap());
        let back = conjugate_gamma(&t, &field.inv(&gamma).unwrap()).unwrap();
        assert_eq!(back.lower(), q.lower());
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(
            canonical_representative(&poly(2, &[1, 0, 1, 0, 1]), 6),
            (poly(2, &[1, 1, 1]), 3)
        );
        let f = poly(2, &[1, 1, 0, 1]);
        assert_eq!(canonical_representative(&f, 7), (f.clone(), 7));
        let g = poly(2, &[1, 0, 0, 1, 0, 0, 1]);
        let (h, m) = canonical_representative(&g, 9);
        assert_eq!((h.clone(), m), (poly(2, &[1, 1, 1]), 3));
        assert!(split_test_div(&g, 9).unwrap() && split_test_div(&h, 3).unwrap());
    }
}
