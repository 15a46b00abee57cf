//! Square matrices over F_p and over F_{p^n}.

use super::arith::{add_mod, inv_mod, mul_mod, neg_mod, sub_mod};
use super::ext::{ExtElem, ExtField};
use super::poly::FpPoly;
use crate::error::{domain, usage, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FpMatrix {
    p: u64,
    dim: usize,
    data: Vec<u64>,
}

impl FpMatrix {
    pub fn zero(p: u64, dim: usize) -> Self {
        FpMatrix {
            p,
            dim,
            data: vec![0; dim * dim],
        }
    }

    pub fn identity(p: u64, dim: usize) -> Self {
        let mut m = Self::zero(p, dim);
        for i in 0..dim {
            m.data[i * dim + i] = 1;
        }
        m
    }

    /// Rows given as residues; must be square.
    pub fn from_rows(p: u64, rows: &[Vec<u64>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return usage("matrix rows must form a square");
        }
        Ok(FpMatrix {
            p,
            dim,
            data: rows.iter().flatten().map(|&c| c % p).collect(),
        })
    }

    /// Companion matrix of a monic f: ones on the subdiagonal, last column −f_i.
    pub fn companion(f: &FpPoly) -> Result<Self> {
        let d = match f.degree() {
            Some(d) if d >= 1 && f.is_monic() => d,
            _ => return usage("companion matrix needs a monic polynomial of degree ≥ 1"),
        };
        let p = f.p();
        let mut m = Self::zero(p, d);
        for i in 1..d {
            m.set(i, i - 1, 1);
        }
        for i in 0..d {
            m.set(i, d - 1, neg_mod(f.coeff(i), p));
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.dim + j] = v % self.p;
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim || self.p != other.p {
            return usage("dimension or characteristic mismatch");
        }
        Ok(self.mul_raw(other))
    }

    fn mul_raw(&self, other: &Self) -> Self {
        let (d, p) = (self.dim, self.p);
        let mut out = Self::zero(p, d);
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == 0 {
                    continue;
                }
                for j in 0..d {
                    let idx = i * d + j;
                    out.data[idx] = add_mod(out.data[idx], mul_mod(a, other.data[k * d + j], p), p);
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::identity(self.p, self.dim);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_raw(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_raw(&base);
            }
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        let d = self.dim;
        (0..d).all(|i| (0..d).all(|j| self.data[i * d + j] == u64::from(i == j)))
    }

    pub fn sub_identity(&self) -> Self {
        let mut m = self.clone();
        for i in 0..self.dim {
            let v = sub_mod(m.get(i, i), 1, self.p);
            m.set(i, i, v);
        }
        m
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let (d, p) = (self.dim, self.p);
        let mut a = self.data.clone();
        let mut rank = 0;
        for col in 0..d {
            let Some(piv) = (rank..d).find(|&r| a[r * d + col] != 0) else {
                continue;
            };
            for j in 0..d {
                a.swap(rank * d + j, piv * d + j);
            }
            let inv = inv_mod(a[rank * d + col], p).expect("nonzero pivot");
            for j in 0..d {
                a[rank * d + j] = mul_mod(a[rank * d + j], inv, p);
            }
            for r in 0..d {
                if r != rank && a[r * d + col] != 0 {
                    let f = a[r * d + col];
                    for j in 0..d {
                        a[r * d + j] = sub_mod(a[r * d + j], mul_mod(f, a[rank * d + j], p), p);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Smallest k ≤ bound with A^k = I, found by accumulating A, A², ….
    pub fn order(&self, bound: u64) -> Result<Option<u64>> {
        if bound == 0 {
            return usage("order bound must be at least 1");
        }
        if self.rank() < self.dim {
            return domain("matrix is singular (a_0 = 0 gives a repeated root at 0)");
        }
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc.is_identity() {
                return Ok(Some(k));
            }
            acc = acc.mul_raw(self);
        }
        Ok(None)
    }

    /// Lift to a matrix over an extension of the same characteristic.
    pub fn to_ext(&self, field: &ExtField) -> ExtMatrix {
        ExtMatrix {
            dim: self.dim,
            data: self.data.iter().map(|&c| field.from_base(c)).collect(),
        }
    }
}

/// Smallest k ≤ bound with A^k = I (see [`FpMatrix::order`]).
pub fn matrix_order(a: &FpMatrix, bound: u64) -> Result<Option<u64>> {
    a.order(bound)
}

/// Square matrix with entries in F_{p^n}; the field is passed to each operation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtMatrix {
    dim: usize,
    data: Vec<ExtElem>,
}

impl ExtMatrix {
    pub fn zero(field: &ExtField, dim: usize) -> Self {
        ExtMatrix {
            dim,
            data: vec![field.zero(); dim * dim],
        }
    }

    pub fn identity(field: &ExtField, dim: usize) -> Self {
        let mut m = Self::zero(field, dim);
        for i in 0..dim {
            m.data[i * dim + i] = field.one();
        }
        m
    }

    /// Companion matrix of X^d + Σ c_i X^i with c_i in F_{p^n}.
    pub fn companion(field: &ExtField, lower: &[ExtElem]) -> Self {
        let d = lower.len();
        let mut m = Self::zero(field, d);
        for i in 1..d {
            m.data[i * d + i - 1] = field.one();
        }
        for (i, c) in lower.iter().enumerate() {
            m.data[i * d + d - 1] = field.neg(c);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &ExtElem {
        &self.data[i * self.dim + j]
    }

    pub fn mul(&self, field: &ExtField, other: &Self) -> Self {
        let d = self.dim;
        assert_eq!(d, other.dim, "dimension mismatch");
        let mut out = Self::zero(field, d);
        for i in 0..d {
            for k in 0..d {
                let a = &self.data[i * d + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let prod = field.mul(a, &other.data[k * d + j]);
                    let idx = i * d + j;
                    out.data[idx] = field.add(&out.data[idx], &prod);
                }
            }
        }
        out
    }

    pub fn pow(&self, field: &ExtField, mut e: u64) -> Self {
        let mut acc = Self::identity(field, self.dim);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(field, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(field, &base);
            }
        }
        acc
    }

    /// Entrywise x ↦ x^{p^i}.
    pub fn frobenius(&self, field: &ExtField, i: usize) -> Self {
        ExtMatrix {
            dim: self.dim,
            data: self.data.iter().map(|x| field.frobenius(x, i)).collect(),
        }
    }

    pub fn sub_identity(&self, field: &ExtField) -> Self {
        let mut m = self.clone();
        for i in 0..self.dim {
            let idx = i * self.dim + i;
            m.data[idx] = field.sub(&m.data[idx], &field.one());
        }
        m
    }

    pub fn is_identity(&self, field: &ExtField) -> bool {
        *self == Self::identity(field, self.dim)
    }

    pub fn rank(&self, field: &ExtField) -> usize {
        let d = self.dim;
        let mut a = self.data.clone();
        let mut rank = 0;
        for col in 0..d {
            let Some(piv) = (rank..d).find(|&r| !a[r * d + col].is_zero()) else {
                continue;
            };
            for j in 0..d {
                a.swap(rank * d + j, piv * d + j);
            }
            let inv = field.inv(&a[rank * d + col]).expect("nonzero pivot");
            for j in 0..d {
                a[rank * d + j] = field.mul(&a[rank * d + j], &inv);
            }
            for r in 0..d {
                if r != rank && !a[r * d + col].is_zero() {
                    let f = a[r * d + col].clone();
                    for j in 0..d {
                        let t = field.mul(&f, &a[rank * d + j]);
                        a[r * d + j] = field.sub(&a[r * d + j], &t);
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn companion(p: u64, c: &[i64]) -> FpMatrix {
        FpMatrix::companion(&FpPoly::from_i64(p, c).unwrap()).unwrap()
    }

    #[test]
    fn identity_powers() {
        let i = FpMatrix::identity(3, 4);
        assert!(i.pow(17).is_identity());
        assert_eq!(i.sub_identity().rank(), 0);
    }

    #[test]
    fn companion_orders() {
        assert!(companion(2, &[1, 1, 1]).pow(3).is_identity());
        assert_eq!(companion(2, &[1, 1, 1]).order(4).unwrap(), Some(3));
        assert_eq!(companion(3, &[1, 1, 0, 1]).order(9).unwrap(), Some(8));
        assert_eq!(companion(2, &[1, 1, 0, 0, 1]).order(16).unwrap(), Some(15));
    }

    #[test]
    fn singular_rejected() {
        assert!(matches!(
            companion(2, &[0, 1, 1]).order(5),
            Err(crate::Error::Domain(_))
        ));
    }

    #[test]
    fn dimension_mismatch() {
        let a = FpMatrix::identity(2, 2);
        let b = FpMatrix::identity(2, 3);
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn order_agrees_with_x_order() {
        // companion(f) is multiplication by X on F_p[X]/f
        for idx in 1..81u64 {
            let mut c: Vec<u64> = (0..4).map(|i| idx / 3u64.pow(i) % 3).collect();
            if c[0] == 0 {
                continue;
            }
            c.push(1);
            let f = FpPoly::new(3, c).unwrap();
            let m = FpMatrix::companion(&f).unwrap();
            assert_eq!(m.order(100).unwrap(), f.x_order(100).unwrap(), "{f}");
        }
    }
}
