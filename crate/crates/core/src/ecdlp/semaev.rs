use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::curve::{Curve, CurvePoint};
use crate::algebra::{ExtElem, ExtField, ExtPoly};
use crate::error::{cap, verification, Result};

/// Sparse polynomial in `nvars` variables over F_{p^n}, keyed by exponent vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, ExtElem>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &ExtField, nvars: usize, c: ExtElem) -> Self {
        let mut m = Self::zero(nvars);
        m.add_term(field, vec![0; nvars], c);
        m
    }

    pub fn var(field: &ExtField, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut m = Self::zero(nvars);
        m.add_term(field, e, field.one());
        m
    }

    /// Univariate g placed in variable i.
    pub fn from_univariate(field: &ExtField, nvars: usize, i: usize, g: &ExtPoly) -> Self {
        let mut m = Self::zero(nvars);
        for (d, c) in g.coeffs().iter().enumerate() {
            let mut e = vec![0; nvars];
            e[i] = d as u32;
            m.add_term(field, e, c.clone());
        }
        m
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &ExtElem)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, field: &ExtField, e: Vec<u32>, c: ExtElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = field.add(v, &c);
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, field: &ExtField, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(field, e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, field: &ExtField, other: &Self) -> Self {
        self.add(field, &other.scale(field, &field.neg(&field.one())))
    }

    pub fn scale(&self, field: &ExtField, c: &ExtElem) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, v) in &self.terms {
            out.add_term(field, e.clone(), field.mul(v, c));
        }
        out
    }

    pub fn mul(&self, field: &ExtField, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(field, e, field.mul(c1, c2));
            }
        }
        out
    }

    pub fn pow(&self, field: &ExtField, k: u32) -> Self {
        let mut acc = Self::constant(field, self.nvars, field.one());
        for _ in 0..k {
            acc = acc.mul(field, self);
        }
        acc
    }

    pub fn eval(&self, field: &ExtField, x: &[ExtElem]) -> ExtElem {
        let mut acc = field.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                if k > 0 {
                    t = field.mul(&t, &field.pow_u64(xi, k as u64));
                }
            }
            acc = field.add(&acc, &t);
        }
        acc
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    /// Variables renamed: x_i ↦ x_{perm[i]}.
    pub fn permute(&self, field: &ExtField, perm: &[usize]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut f = vec![0; self.nvars];
            for (i, &k) in e.iter().enumerate() {
                f[perm[i]] = k;
            }
            out.add_term(field, f, c.clone());
        }
        out
    }
}

/// S_3 at a point, from the closed form
/// (x1 − x2)²x3² − 2((x1 + x2)(x1x2 + A) + 2B)x3 + (x1x2 − A)² − 4B(x1 + x2).
pub fn s3_eval(curve: &Curve, x1: &ExtElem, x2: &ExtElem, x3: &ExtElem) -> ExtElem {
    let (q2, q1, q0) = s3_in_x3(curve, x1, x2);
    let f = curve.field();
    f.add(&f.mul(&f.add(&f.mul(&q2, x3), &q1), x3), &q0)
}

/// Coefficients (c2, c1, c0) of S_3(x1, x2, X) as a quadratic in X.
pub fn s3_in_x3(curve: &Curve, x1: &ExtElem, x2: &ExtElem) -> (ExtElem, ExtElem, ExtElem) {
    let f = curve.field().as_ref();
    let (a, b) = (curve.a(), curve.b());
    let s = f.add(x1, x2);
    let p = f.mul(x1, x2);
    let c2 = f.square(&f.sub(x1, x2));
    let c1 = f.scale(&f.add(&f.mul(&s, &f.add(&p, a)), &f.scale(b, 2)), 2);
    let c1 = f.neg(&c1);
    let c0 = f.sub(&f.square(&f.sub(&p, a)), &f.scale(&f.mul(b, &s), 4));
    (c2, c1, c0)
}

/// S_3 for the curve as a polynomial in three variables.
pub fn semaev_s3(curve: &Curve) -> MPoly {
    let f = curve.field().as_ref();
    let x = |i| MPoly::var(f, 3, i);
    let k = |c: ExtElem| MPoly::constant(f, 3, c);
    let (x1, x2, x3) = (x(0), x(1), x(2));
    let s = x1.add(f, &x2);
    let p = x1.mul(f, &x2);
    let d = x1.sub(f, &x2);
    let t2 = d.mul(f, &d).mul(f, &x3.mul(f, &x3));
    let inner = s
        .mul(f, &p.add(f, &k(curve.a().clone())))
        .add(f, &k(f.scale(curve.b(), 2)));
    let t1 = inner.mul(f, &x3).scale(f, &f.from_base(2));
    let pa = p.sub(f, &k(curve.a().clone()));
    let t0 = pa.mul(f, &pa).sub(f, &s.scale(f, &f.scale(curve.b(), 4)));
    t2.sub(f, &t1).add(f, &t0)
}

/// φ(g): coefficients raised to p^{n'}, then x_i ↦ λ(x_i). On the root set V,
/// v^{p^{n'}} = λ(v), so φ(g)(v) = g(v)^{p^{n'}}.
pub fn phi_map(field: &ExtField, g: &MPoly, lambda: &ExtPoly, n_prime: usize) -> MPoly {
    let k = g.nvars();
    let lam: Vec<MPoly> = (0..k)
        .map(|i| MPoly::from_univariate(field, k, i, lambda))
        .collect();
    let mut powers: Vec<Vec<MPoly>> = vec![vec![MPoly::constant(field, k, field.one())]; k];
    let mut out = MPoly::zero(k);
    for (e, c) in g.terms() {
        let mut t = MPoly::constant(field, k, field.frobenius(c, n_prime));
        for i in 0..k {
            while powers[i].len() <= e[i] as usize {
                let next = powers[i].last().expect("nonempty").mul(field, &lam[i]);
                powers[i].push(next);
            }
            t = t.mul(field, &powers[i][e[i] as usize]);
        }
        out = out.add(field, &t);
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct S3Report {
    pub p: u64,
    pub n: usize,
    pub triples: u64,
    pub s3_zero: u64,
    pub lift_sum_zero: u64,
    pub mismatches: u64,
}

/// Compares S_3 = 0 with the existence of lifts summing to O for every
/// x-triple in F_q³. Lifts are taken over F_{q²}, where every x has one;
/// F_q is embedded by sending its generator to a root of its modulus.
pub fn validate_s3(curve: &Curve, triple_cap: u64) -> Result<S3Report> {
    let small = curve.field().as_ref();
    let q = small.size_u64().unwrap_or(u64::MAX);
    let triples = q.saturating_mul(q).saturating_mul(q);
    if triples > triple_cap {
        return cap(format!("{triples} triples exceed the cap {triple_cap}"));
    }
    let big = Arc::new(ExtField::new(small.p(), 2 * small.n())?);
    let theta = big
        .find_root(small.modulus(), u64::MAX)?
        .ok_or_else(|| crate::Error::Verification("no embedding of the base field".into()))?;
    let embed = |x: &ExtElem| {
        let mut acc = big.zero();
        for &c in x.coeffs().iter().rev() {
            acc = big.add(&big.mul(&acc, &theta), &big.from_base(c));
        }
        acc
    };
    let big_curve = Curve::new(big.clone(), embed(curve.a()), embed(curve.b()))?;
    let xs: Vec<ExtElem> = (0..q).map(|i| small.element(i)).collect();
    let lifts: Vec<[CurvePoint; 2]> = xs
        .iter()
        .map(|x| {
            let bx = embed(x);
            let y = big
                .sqrt(&big_curve.rhs(&bx))
                .expect("every element of F_q is a square in F_q²");
            let pt = CurvePoint::Affine { x: bx, y };
            [pt.clone(), big_curve.neg(&pt)]
        })
        .collect();
    for l in &lifts {
        if !big_curve.is_on(&l[0]) {
            return verification("lift is off the curve");
        }
    }
    let mut rep = S3Report {
        p: small.p(),
        n: small.n(),
        triples,
        s3_zero: 0,
        lift_sum_zero: 0,
        mismatches: 0,
    };
    for i in 0..xs.len() {
        for j in 0..xs.len() {
            let sums = [
                big_curve.add(&lifts[i][0], &lifts[j][0]),
                big_curve.add(&lifts[i][0], &lifts[j][1]),
            ];
            for k in 0..xs.len() {
                let s_zero = s3_eval(curve, &xs[i], &xs[j], &xs[k]).is_zero();
                // ±P3 = −(P1 ± P2) for some sign choice
                let lift = sums.iter().any(|s| s.x() == lifts[k][0].x());
                rep.s3_zero += s_zero as u64;
                rep.lift_sum_zero += lift as u64;
                rep.mismatches += (s_zero != lift) as u64;
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(p: u64, n: usize) -> Curve {
        let field = Arc::new(ExtField::new(p, n).unwrap());
        Curve::new(field.clone(), field.gen(), field.from_base(3)).unwrap()
    }

    #[test]
    fn s3_structure() {
        let c = curve(7, 1);
        let s = semaev_s3(&c);
        let f = c.field().as_ref();
        for i in 0..3 {
            assert_eq!(s.degree_in(i), 2);
        }
        for perm in [[1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]] {
            assert_eq!(s.permute(f, &perm), s);
        }
        for i in 0..7 {
            for j in 0..7 {
                for k in 0..7 {
                    let x = [f.element(i), f.element(j), f.element(k)];
                    assert_eq!(s.eval(f, &x), s3_eval(&c, &x[0], &x[1], &x[2]));
                }
            }
        }
    }

    #[test]
    fn s3_validation_small() {
        for (p, n) in [(7, 1), (5, 2)] {
            let r = validate_s3(&curve(p, n), 1 << 20).unwrap();
            assert_eq!(r.mismatches, 0, "{r:?}");
            assert!(r.s3_zero > 0);
        }
    }

    #[test]
    fn phi_identity_on_roots() {
        use crate::qsp::LinearizedQsp;
        let field = Arc::new(ExtField::new(5, 3).unwrap());
        let c = Curve::new(field.clone(), field.gen(), field.one()).unwrap();
        let q = LinearizedQsp::linearize(
            &crate::algebra::FpPoly::from_i64(5, &[1, 1, 1]).unwrap(),
            field.clone(),
        )
        .unwrap();
        let lambda = crate::ecdlp::lambda_linearized(&q);
        let v: Vec<ExtElem> = (0..125)
            .map(|i| field.element(i))
            .filter(|x| q.eval(x).is_zero())
            .collect();
        assert_eq!(v.len(), 25);
        let s = semaev_s3(&c);
        let phi = phi_map(&field, &s, &lambda, 2);
        for a in v.iter().step_by(3) {
            for b in v.iter().step_by(4) {
                for d in v.iter().step_by(5) {
                    let x = [a.clone(), b.clone(), d.clone()];
                    assert_eq!(
                        phi.eval(&field, &x),
                        field.frobenius(&s.eval(&field, &x), 2)
                    );
                }
            }
        }
        let k = MPoly::constant(&field, 1, field.gen());
        assert_eq!(
            phi_map(&field, &k, &lambda, 2),
            MPoly::constant(&field, 1, field.frobenius(&field.gen(), 2))
        );
        let x = MPoly::var(&field, 1, 0);
        assert_eq!(
            phi_map(&field, &x, &lambda, 2),
            MPoly::from_univariate(&field, 1, 0, &lambda)
        );
    }
}
