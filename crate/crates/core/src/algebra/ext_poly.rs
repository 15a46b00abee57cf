//! Dense univariate polynomials with coefficients in F_{p^n}.

use super::ext::{ExtElem, ExtField};
use super::poly::FpPoly;
use crate::error::{cap, usage, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtPoly {
    coeffs: Vec<ExtElem>,
}

impl ExtPoly {
    pub fn zero() -> Self {
        ExtPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<ExtElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ExtPoly { coeffs }
    }

    pub fn from_fp(field: &ExtField, f: &FpPoly) -> Self {
        Self::from_coeffs(f.coeffs().iter().map(|&c| field.from_base(c)).collect())
    }

    /// c·X^d
    pub fn monomial(field: &ExtField, d: usize, c: ExtElem) -> Self {
        let mut v = vec![field.zero(); d + 1];
        v[d] = c;
        Self::from_coeffs(v)
    }

    pub fn coeffs(&self) -> &[ExtElem] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, field: &ExtField, i: usize) -> ExtElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| field.zero())
    }

    /// The same polynomial over F_p, when every coefficient is in the prime subfield.
    pub fn to_fp(&self, field: &ExtField) -> Option<FpPoly> {
        let v: Option<Vec<u64>> = self.coeffs.iter().map(|c| field.as_base(c)).collect();
        Some(FpPoly::from_raw(field.p(), v?))
    }

    pub fn add(&self, field: &ExtField, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs(
            (0..n)
                .map(|i| field.add(&self.coeff(field, i), &other.coeff(field, i)))
                .collect(),
        )
    }

    pub fn sub(&self, field: &ExtField, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs(
            (0..n)
                .map(|i| field.sub(&self.coeff(field, i), &other.coeff(field, i)))
                .collect(),
        )
    }

    pub fn scale(&self, field: &ExtField, c: &ExtElem) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| field.mul(x, c)).collect())
    }

    pub fn mul(&self, field: &ExtField, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = field.add(&out[i + j], &field.mul(a, b));
            }
        }
        Self::from_coeffs(out)
    }

    /// Long division; skips zero coefficients of the divisor so sparse
    /// divisors such as X^{p^k} − X^a reduce in time linear in the dividend.
    pub fn div_rem(&self, field: &ExtField, d: &Self) -> Result<(Self, Self)> {
        let dd = match d.degree() {
            Some(dd) => dd,
            None => return usage("division by the zero polynomial"),
        };
        if self.coeffs.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let inv_lead = field.inv(&d.coeffs[dd])?;
        let support: Vec<(usize, &ExtElem)> = d.coeffs[..dd]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut r = self.coeffs.clone();
        let mut q = vec![field.zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let c = field.mul(top, &inv_lead);
            for &(j, dj) in &support {
                let t = field.mul(&c, dj);
                r[k + j] = field.sub(&r[k + j], &t);
            }
            r[k + dd] = field.zero();
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Self::from_coeffs(q), Self::from_coeffs(r)))
    }

    pub fn rem(&self, field: &ExtField, d: &Self) -> Result<Self> {
        Ok(self.div_rem(field, d)?.1)
    }

    pub fn make_monic(&self, field: &ExtField) -> Self {
        match self.coeffs.last() {
            Some(lead) => self.scale(
                field,
                &field.inv(lead).expect("nonzero leading coefficient"),
            ),
            None => Self::zero(),
        }
    }

    pub fn gcd(&self, field: &ExtField, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(field, &b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.make_monic(field)
    }

    pub fn eval(&self, field: &ExtField, x: &ExtElem) -> ExtElem {
        self.coeffs
            .iter()
            .rev()
            .fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
    }

    /// self^p mod m, using (Σ c_i X^i)^p = Σ c_i^p X^{ip}.
    pub fn frobenius_pow_mod(&self, field: &ExtField, m: &Self) -> Result<Self> {
        let p = field.p() as usize;
        let Some(d) = self.degree() else {
            return Ok(Self::zero());
        };
        let mut v = vec![field.zero(); d * p + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                v[i * p] = field.frobenius(c, 1);
            }
        }
        Self::from_coeffs(v).rem(field, m)
    }

    /// Number of distinct roots in the coefficient field: deg gcd(f, X^q − X),
    /// with X^q mod f built by n successive p-th powers.
    pub fn count_roots(&self, field: &ExtField, degree_cap: usize) -> Result<usize> {
        let d = match self.degree() {
            Some(d) => d,
            None => return usage("the zero polynomial has every element as a root"),
        };
        if d > degree_cap {
            return cap(format!(
                "degree {d} exceeds the root-count cap {degree_cap}"
            ));
        }
        if d == 0 {
            return Ok(0);
        }
        let x = Self::monomial(field, 1, field.one());
        let mut r = x.rem(field, self)?;
        for _ in 0..field.n() {
            r = r.frobenius_pow_mod(field, self)?;
        }
        let g = self.gcd(field, &r.sub(field, &x));
        Ok(g.degree().unwrap_or(0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subfield_polynomial_roots() {
        // X^{p^{n'}} − X over F_{p^n} has p^{n'} roots when n' | n
        let field = ExtField::new(2, 4).unwrap();
        let mut c = vec![field.zero(); 5];
        c[4] = field.one();
        c[1] = field.neg(&field.one());
        let f = ExtPoly::from_coeffs(c);
        assert_eq!(f.count_roots(&field, 1000).unwrap(), 4);
    }

    #[test]
    fn count_matches_enumeration() {
        let field = ExtField::new(3, 2).unwrap();
        let f = ExtPoly::from_fp(
            &field,
            &FpPoly::from_i64(3, &[1, 0, 0, 0, 0, 1, 1]).unwrap(),
        );
        let brute = field
            .elements(100)
            .unwrap()
            .iter()
            .filter(|x| f.eval(&field, x).is_zero())
            .count();
        assert_eq!(f.count_roots(&field, 100).unwrap(), brute);
    }

    #[test]
    fn x8_minus_x3_over_f16() {
        let field = ExtField::new(2, 4).unwrap();
        let f = ExtPoly::from_fp(
            &field,
            &FpPoly::from_i64(2, &[0, 0, 0, -1, 0, 0, 0, 0, 1]).unwrap(),
        );
        assert_eq!(f.count_roots(&field, 100).unwrap(), 6);
    }
}
