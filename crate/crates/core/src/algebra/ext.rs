//! The finite field F_{p^n} = F_p[X]/(m) with a deterministic modulus.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::Rng;

use super::arith::{add_mod, inv_mod, mul_mod, neg_mod, sub_mod};
use super::poly::{check_prime, FpPoly};
use crate::error::{cap, domain, usage, Result};

/// Default bound on p^n for fields that get enumerated.
pub const DEFAULT_FIELD_CAP: u128 = 1 << 40;

/// Element of F_{p^n}: coefficients of the residue in the polynomial basis,
/// always exactly n of them.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct ExtElem(pub(crate) Vec<u64>);

impl ExtElem {
    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

#[derive(Debug)]
pub struct ExtField {
    p: u64,
    n: usize,
    modulus: FpPoly,
    /// frob[j] = (X^j)^p reduced, i.e. the Frobenius image of basis element j
    frob: Vec<Vec<u64>>,
    /// products fit in u64 accumulators without intermediate reduction
    small: bool,
    non_residue: OnceLock<ExtElem>,
}

impl Clone for ExtField {
    fn clone(&self) -> Self {
        ExtField {
            p: self.p,
            n: self.n,
            modulus: self.modulus.clone(),
            frob: self.frob.clone(),
            small: self.small,
            non_residue: OnceLock::new(),
        }
    }
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for ExtField {}

impl ExtField {
    /// F_{p^n} with the first irreducible monic modulus in increasing order of
    /// Σ c_i p^i (higher-degree coefficients are more significant).
    pub fn new(p: u64, n: usize) -> Result<Self> {
        Self::with_cap(p, n, DEFAULT_FIELD_CAP)
    }

    pub fn with_cap(p: u64, n: usize, size_cap: u128) -> Result<Self> {
        check_prime(p).map_err(|_| crate::Error::Domain(format!("{p} is not prime")))?;
        if n == 0 {
            return usage("extension degree must be at least 1");
        }
        let size = (p as u128).checked_pow(n as u32);
        match size {
            Some(s) if s <= size_cap => {}
            _ => return cap(format!("field size {p}^{n} exceeds the cap {size_cap}")),
        }
        let modulus = Self::first_irreducible(p, n);
        Ok(Self::build(modulus))
    }

    /// Field defined by a caller-supplied modulus, checked for irreducibility.
    pub fn with_modulus(modulus: FpPoly) -> Result<Self> {
        check_prime(modulus.p())?;
        if !modulus.is_monic() || !modulus.is_irreducible() {
            return domain(format!("modulus {modulus} is not monic irreducible"));
        }
        Ok(Self::build(modulus))
    }

    fn first_irreducible(p: u64, n: usize) -> FpPoly {
        let mut digits = vec![0u64; n];
        loop {
            let mut c = digits.clone();
            c.push(1);
            let f = FpPoly::from_raw(p, c);
            if f.is_irreducible() {
                return f;
            }
            // increment the base-p counter, low digit first
            let mut i = 0;
            while i < n {
                digits[i] += 1;
                if digits[i] < p {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            assert!(i < n, "an irreducible polynomial of every degree exists");
        }
    }

    fn build(modulus: FpPoly) -> Self {
        let p = modulus.p();
        let n = modulus.degree().expect("nonzero modulus");
        let small = (p as u128 - 1).pow(2) * (n as u128) < (1u128 << 63);
        let mut field = ExtField {
            p,
            n,
            modulus,
            frob: Vec::new(),
            small,
            non_residue: OnceLock::new(),
        };
        let g = field.gen();
        let gp = field.pow_u64(&g, p);
        let mut acc = field.one();
        let mut frob = Vec::with_capacity(n);
        for _ in 0..n {
            frob.push(acc.0.clone());
            acc = field.mul(&acc, &gp);
        }
        field.frob = frob;
        field
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> &FpPoly {
        &self.modulus
    }

    /// p^n
    pub fn size(&self) -> BigUint {
        BigUint::from(self.p).pow(self.n as u32)
    }

    /// p^n when it fits in 64 bits.
    pub fn size_u64(&self) -> Option<u64> {
        self.size().to_u64()
    }

    pub fn zero(&self) -> ExtElem {
        ExtElem(vec![0; self.n])
    }

    pub fn one(&self) -> ExtElem {
        self.from_base(1)
    }

    pub fn from_base(&self, c: u64) -> ExtElem {
        let mut v = vec![0; self.n];
        v[0] = c % self.p;
        ExtElem(v)
    }

    /// Residue class of X.
    pub fn gen(&self) -> ExtElem {
        self.from_poly(&FpPoly::x(self.p))
    }

    /// Residue of an arbitrary polynomial over F_p.
    pub fn from_poly(&self, f: &FpPoly) -> ExtElem {
        let r = f.rem_raw(&self.modulus);
        let mut v = r.into_coeffs();
        v.resize(self.n, 0);
        ExtElem(v)
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> ExtElem {
        self.from_poly(&FpPoly::from_raw(self.p, coeffs.to_vec()))
    }

    pub fn to_poly(&self, x: &ExtElem) -> FpPoly {
        FpPoly::from_raw(self.p, x.0.clone())
    }

    /// Element with base-p digits given by `index` (bijection with 0..p^n).
    pub fn element(&self, mut index: u64) -> ExtElem {
        let mut v = vec![0; self.n];
        for c in v.iter_mut() {
            *c = index % self.p;
            index /= self.p;
        }
        ExtElem(v)
    }

    pub fn index(&self, x: &ExtElem) -> u64 {
        x.0.iter().rev().fold(0u64, |acc, &c| acc * self.p + c)
    }

    /// All elements in index order, refusing fields above `size_cap`.
    pub fn elements(&self, size_cap: u64) -> Result<Vec<ExtElem>> {
        match self.size_u64() {
            Some(q) if q <= size_cap => Ok((0..q).map(|i| self.element(i)).collect()),
            _ => cap(format!(
                "enumerating F_{}^{} exceeds the cap {size_cap}",
                self.p, self.n
            )),
        }
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> ExtElem {
        ExtElem((0..self.n).map(|_| rng.gen_range(0..self.p)).collect())
    }

    pub fn add(&self, x: &ExtElem, y: &ExtElem) -> ExtElem {
        let p = self.p;
        ExtElem(
            x.0.iter()
                .zip(&y.0)
                .map(|(&a, &b)| add_mod(a, b, p))
                .collect(),
        )
    }

    pub fn sub(&self, x: &ExtElem, y: &ExtElem) -> ExtElem {
        let p = self.p;
        ExtElem(
            x.0.iter()
                .zip(&y.0)
                .map(|(&a, &b)| sub_mod(a, b, p))
                .collect(),
        )
    }

    pub fn neg(&self, x: &ExtElem) -> ExtElem {
        let p = self.p;
        ExtElem(x.0.iter().map(|&a| neg_mod(a, p)).collect())
    }

    pub fn scale(&self, x: &ExtElem, c: u64) -> ExtElem {
        let p = self.p;
        let c = c % p;
        ExtElem(x.0.iter().map(|&a| mul_mod(a, c, p)).collect())
    }

    pub fn mul(&self, x: &ExtElem, y: &ExtElem) -> ExtElem {
        let n = self.n;
        let p = self.p;
        debug_assert_eq!(x.0.len(), n);
        debug_assert_eq!(y.0.len(), n);
        if n == 1 {
            return ExtElem(vec![mul_mod(x.0[0], y.0[0], p)]);
        }
        let mut prod = vec![0u64; 2 * n - 1];
        if self.small {
            let mut acc = vec![0u64; 2 * n - 1];
            for (i, &a) in x.0.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (j, &b) in y.0.iter().enumerate() {
                    acc[i + j] += a * b;
                }
            }
            for (d, s) in prod.iter_mut().zip(acc) {
                *d = s % p;
            }
        } else {
            let mut acc = vec![0u128; 2 * n - 1];
            for (i, &a) in x.0.iter().enumerate() {
                for (j, &b) in y.0.iter().enumerate() {
                    acc[i + j] += a as u128 * b as u128;
                }
            }
            for (d, s) in prod.iter_mut().zip(acc) {
                *d = (s % p as u128) as u64;
            }
        }
        let m = self.modulus.coeffs();
        for k in (n..2 * n - 1).rev() {
            let t = prod[k];
            if t == 0 {
                continue;
            }
            for j in 0..n {
                if m[j] != 0 {
                    let idx = k - n + j;
                    prod[idx] = sub_mod(prod[idx], mul_mod(t, m[j], p), p);
                }
            }
        }
        prod.truncate(n);
        ExtElem(prod)
    }

    pub fn square(&self, x: &ExtElem) -> ExtElem {
        self.mul(x, x)
    }

    pub fn inv(&self, x: &ExtElem) -> Result<ExtElem> {
        if x.is_zero() {
            return domain("inverse of zero");
        }
        if self.n == 1 {
            return Ok(ExtElem(vec![inv_mod(x.0[0], self.p).expect("nonzero")]));
        }
        let inv = self
            .to_poly(x)
            .inverse_mod(&self.modulus)
            .expect("field element is a unit");
        Ok(self.from_poly(&inv))
    }

    pub fn div(&self, x: &ExtElem, y: &ExtElem) -> Result<ExtElem> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    pub fn pow(&self, x: &ExtElem, e: &BigUint) -> ExtElem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.square(&acc);
            if e.bit(i) {
                acc = self.mul(&acc, x);
            }
        }
        acc
    }

    pub fn pow_u64(&self, x: &ExtElem, mut e: u64) -> ExtElem {
        let mut acc = self.one();
        let mut base = x.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.square(&base);
            }
        }
        acc
    }

    /// One application of x ↦ x^p, as a linear map on coefficients.
    fn frob_once(&self, x: &ExtElem) -> ExtElem {
        let p = self.p;
        let n = self.n;
        let mut out = vec![0u64; n];
        for (j, &c) in x.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(&self.frob[j]) {
                *o = add_mod(*o, mul_mod(c, b, p), p);
            }
        }
        ExtElem(out)
    }

    /// x ↦ x^{p^i}
    pub fn frobenius(&self, x: &ExtElem, i: usize) -> ExtElem {
        let mut y = x.clone();
        for _ in 0..(i % self.n) {
            y = self.frob_once(&y);
        }
        y
    }

    /// The value in F_p when x lies in the prime subfield.
    pub fn as_base(&self, x: &ExtElem) -> Option<u64> {
        if x.0[1..].iter().all(|&c| c == 0) {
            Some(x.0[0])
        } else {
            None
        }
    }

    /// x^{(q−1)/2} ∈ {0, 1, −1} for odd q; always 1 for nonzero x in characteristic 2.
    pub fn quadratic_character(&self, x: &ExtElem) -> i8 {
        if x.is_zero() {
            return 0;
        }
        if self.p == 2 {
            return 1;
        }
        let e = (self.size() - BigUint::one()) >> 1;
        let r = self.pow(x, &e);
        if r == self.one() {
            1
        } else {
            -1
        }
    }

    /// A square root, if one exists (Tonelli-Shanks for odd q).
    pub fn sqrt(&self, x: &ExtElem) -> Option<ExtElem> {
        if x.is_zero() {
            return Some(self.zero());
        }
        let q = self.size();
        if self.p == 2 {
            // squaring is bijective; x^{q/2} is the root
            return Some(self.pow(x, &(q >> 1)));
        }
        if self.quadratic_character(x) != 1 {
            return None;
        }
        let qm1 = &q - BigUint::one();
        let s = qm1.trailing_zeros().unwrap_or(0);
        let t = &qm1 >> s;
        let z = self.non_residue.get_or_init(|| {
            let mut i = 2u64;
            loop {
                let c = self.element(i);
                if self.quadratic_character(&c) == -1 {
                    return c;
                }
                i += 1;
            }
        });
        let mut m = s;
        let mut c = self.pow(z, &t);
        let mut tt = self.pow(x, &t);
        let mut r = self.pow(x, &((&t + BigUint::one()) >> 1));
        let one = self.one();
        while tt != one {
            let mut i = 0;
            let mut probe = tt.clone();
            while probe != one {
                probe = self.square(&probe);
                i += 1;
            }
            let mut b = c.clone();
            for _ in 0..(m - i - 1) {
                b = self.square(&b);
            }
            m = i;
            c = self.square(&b);
            tt = self.mul(&tt, &c);
            r = self.mul(&r, &b);
        }
        Some(r)
    }

    /// Root of an F_p-polynomial in this field, found by scanning elements.
    pub fn find_root(&self, f: &FpPoly, size_cap: u64) -> Result<Option<ExtElem>> {
        for x in self.elements(size_cap)? {
            if self.eval_base_poly(f, &x).is_zero() {
                return Ok(Some(x));
            }
        }
        Ok(None)
    }

    /// f(x) for f with F_p coefficients.
    pub fn eval_base_poly(&self, f: &FpPoly, x: &ExtElem) -> ExtElem {
        let mut acc = self.zero();
        for &c in f.coeffs().iter().rev() {
            acc = self.mul(&acc, x);
            acc.0[0] = add_mod(acc.0[0], c, self.p);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn modulus_choice() {
        assert_eq!(
            ExtField::new(2, 3).unwrap().modulus().to_string(),
            "X^3+X+1"
        );
        let f32 = ExtField::new(3, 2).unwrap();
        let m = f32.modulus();
        assert!((0..3).all(|x| m.eval(x) != 0));
        assert_eq!(ExtField::new(5, 1).unwrap().modulus().degree(), Some(1));
    }

    #[test]
    fn modulus_is_first_in_scan_order() {
        // exhaustive scan oracle for small (p, n)
        for (p, n) in [(2u64, 3usize), (2, 4), (3, 2), (3, 3), (5, 2), (2, 8)] {
            let field = ExtField::new(p, n).unwrap();
            let total = p.pow(n as u32);
            let first = (0..total)
                .map(|idx| {
                    let mut c: Vec<u64> = (0..n).map(|i| idx / p.pow(i as u32) % p).collect();
                    c.push(1);
                    FpPoly::from_raw(p, c)
                })
                .find(|f| {
                    (1..n).all(|d| {
                        // no factor of degree d: brute-force over monic degree-d polys
                        (0..p.pow(d as u32)).all(|j| {
                            let mut g: Vec<u64> = (0..d).map(|i| j / p.pow(i as u32) % p).collect();
                            g.push(1);
                            !f.rem_raw(&FpPoly::from_raw(p, g)).is_zero()
                        })
                    })
                })
                .unwrap();
            assert_eq!(field.modulus(), &first, "p={p} n={n}");
        }
    }

    #[test]
    fn frobenius_full_cycle() {
        let f = ExtField::new(2, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let x = f.random(&mut rng);
            assert_eq!(f.frobenius(&x, 3), x);
            assert_eq!(f.frobenius(&x, 1), f.pow_u64(&x, 2));
        }
    }

    #[test]
    fn inverses_in_f9() {
        let f = ExtField::new(3, 2).unwrap();
        for x in f.elements(100).unwrap().into_iter().skip(1) {
            assert_eq!(f.mul(&f.inv(&x).unwrap(), &x), f.one());
        }
        assert!(f.inv(&f.zero()).is_err());
    }

    #[test]
    fn multiplicative_order_divides() {
        let f = ExtField::new(5, 3).unwrap();
        for x in f.elements(200).unwrap().into_iter().skip(1) {
            assert_eq!(f.pow_u64(&x, 124), f.one());
        }
    }

    #[test]
    fn square_roots() {
        for (p, n) in [(5u64, 3usize), (3, 2), (2, 4), (17, 1), (7, 2)] {
            let f = ExtField::new(p, n).unwrap();
            for x in f.elements(1000).unwrap() {
                let sq = f.square(&x);
                let r = f.sqrt(&sq).unwrap();
                assert_eq!(f.square(&r), sq);
            }
        }
    }

    #[test]
    fn caps_and_errors() {
        assert!(matches!(ExtField::new(4, 2), Err(crate::Error::Domain(_))));
        assert!(matches!(
            ExtField::new(2, 50),
            Err(crate::Error::CapExceeded(_))
        ));
    }
}
