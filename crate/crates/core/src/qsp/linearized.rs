use std::sync::Arc;

use num_bigint::BigUint;
use num_rational::Ratio;

use crate::algebra::{ExtElem, ExtField, ExtMatrix, ExtPoly, FpPoly};
use crate::error::{cap, domain, usage, Result};

/// Exact β values.
pub type Beta = Ratio<i128>;

/// β = ℓn/n'² as an exact rational. ℓ = 0 is the subfield case and rejected.
pub fn beta_of(n: usize, n_prime: usize, ell: usize) -> Result<Beta> {
    if ell == 0 {
        return domain("subfield polynomial, out of scope (ℓ = 0)");
    }
    if n_prime == 0 {
        return usage("n' must be at least 1");
    }
    Ok(Ratio::new((ell * n) as i128, (n_prime * n_prime) as i128))
}

/// L = X^{p^{n'}} + Σ_{i<n'} c_i X^{p^i} over F_{p^n}, stored through the
/// conventional polynomial f = X^{n'} + Σ c_i X^i. Written as
/// L = X^{p^{n'}} − Σ a_i X^{p^i}, so a_i = −c_i.
#[derive(Clone, Debug)]
pub struct LinearizedQsp {
    field: Arc<ExtField>,
    n_prime: usize,
    lower: Vec<ExtElem>,
}

/// Number of roots in F_{p^n}, kept as the F_p-dimension of the root space.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RootCount {
    pub p: u64,
    pub dim: usize,
}

impl RootCount {
    pub fn value(&self) -> BigUint {
        BigUint::from(self.p).pow(self.dim as u32)
    }
}

impl LinearizedQsp {
    /// L_f for monic f over F_p, viewed over the given field.
    pub fn linearize(f: &FpPoly, field: Arc<ExtField>) -> Result<Self> {
        if f.p() != field.p() {
            return usage("polynomial and field have different characteristic");
        }
        let n_prime = match f.degree() {
            Some(d) if d >= 1 && f.is_monic() => d,
            _ => return usage(format!("{f} is not monic of degree ≥ 1")),
        };
        let lower = (0..n_prime).map(|i| field.from_base(f.coeff(i))).collect();
        Ok(LinearizedQsp {
            field,
            n_prime,
            lower,
        })
    }

    /// L_f for f over F_p, splitting field F_{p^n} built with the default cap.
    pub fn linearize_fp(f: &FpPoly, n: usize) -> Result<Self> {
        Self::linearize(f, Arc::new(ExtField::new(f.p(), n)?))
    }

    /// From the lower coefficients c_0..c_{n'−1} of a monic f over F_{p^n}.
    pub fn from_lower(field: Arc<ExtField>, lower: Vec<ExtElem>) -> Result<Self> {
        if lower.is_empty() {
            return usage("n' must be at least 1");
        }
        if lower.iter().any(|c| c.coeffs().len() != field.n()) {
            return usage("coefficient does not belong to the field");
        }
        Ok(LinearizedQsp {
            n_prime: lower.len(),
            field,
            lower,
        })
    }

    pub fn field(&self) -> &Arc<ExtField> {
        &self.field
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    pub fn n(&self) -> usize {
        self.field.n()
    }

    pub fn n_prime(&self) -> usize {
        self.n_prime
    }

    /// c_i, the coefficient of X^{p^i} (and of X^i in f).
    pub fn lower(&self) -> &[ExtElem] {
        &self.lower
    }

    /// a_i in L = X^{p^{n'}} − Σ a_i X^{p^i}.
    pub fn a(&self, i: usize) -> ExtElem {
        self.field.neg(&self.lower[i])
    }

    /// ℓ = log_p deg λ; `None` when λ = 0.
    pub fn ell(&self) -> Option<usize> {
        (0..self.n_prime).rev().find(|&i| !self.lower[i].is_zero())
    }

    pub fn beta(&self) -> Result<Beta> {
        match self.ell() {
            Some(ell) => beta_of(self.n(), self.n_prime, ell),
            None => domain("λ = 0, β undefined"),
        }
    }

    /// Exponents p^i carrying a nonzero coefficient, including p^{n'}.
    pub fn exponents(&self) -> Vec<BigUint> {
        let p = BigUint::from(self.p());
        let mut out: Vec<BigUint> = (0..self.n_prime)
            .filter(|&i| !self.lower[i].is_zero())
            .map(|i| p.pow(i as u32))
            .collect();
        out.push(p.pow(self.n_prime as u32));
        out
    }

    /// Inverse of the exponent map: f over F_p, if the coefficients allow it.
    pub fn delinearize(&self) -> Option<FpPoly> {
        let mut v: Vec<u64> = Vec::with_capacity(self.n_prime + 1);
        for c in &self.lower {
            v.push(self.field.as_base(c)?);
        }
        v.push(1);
        Some(FpPoly::from_raw(self.p(), v))
    }

    pub fn in_prime_subfield(&self) -> bool {
        self.lower.iter().all(|c| self.field.as_base(c).is_some())
    }

    /// L(x)
    pub fn eval(&self, x: &ExtElem) -> ExtElem {
        let f = &self.field;
        let mut acc = f.frobenius(x, self.n_prime);
        let mut y = x.clone();
        for c in &self.lower {
            acc = f.add(&acc, &f.mul(c, &y));
            y = f.frobenius(&y, 1);
        }
        acc
    }

    /// Coefficient vector of L over all exponents p^0..p^{n'} (monic top).
    fn linear_coeffs(&self) -> Vec<ExtElem> {
        let mut v = self.lower.clone();
        v.push(self.field.one());
        v
    }

    /// L as a dense conventional polynomial of degree p^{n'}.
    pub fn to_ext_poly(&self, degree_cap: usize) -> Result<ExtPoly> {
        let f = &self.field;
        let deg = (self.p() as u128).checked_pow(self.n_prime as u32);
        let deg = match deg {
            Some(d) if d <= degree_cap as u128 => d as usize,
            _ => return cap(format!("p^n' exceeds the dense degree cap {degree_cap}")),
        };
        let mut c = vec![f.zero(); deg + 1];
        let mut e = 1usize;
        for coef in self.linear_coeffs() {
            c[e] = coef;
            e = e.saturating_mul(self.p() as usize);
        }
        Ok(ExtPoly::from_coeffs(c))
    }

    fn require_a0(&self) -> Result<()> {
        if self.lower[0].is_zero() {
            return domain("a_0 = 0: 0 is a root of multiplicity at least p");
        }
        Ok(())
    }
}

/// Roots of L in F_{p^n} from A_L = C·C^σ·…·C^{σ^{n−1}}: p^{n' − rank(A_L − I)}.
pub fn split_test_companion(q: &LinearizedQsp) -> Result<RootCount> {
    q.require_a0()?;
    let a = companion_product(q);
    let rank = a.sub_identity(&q.field).rank(&q.field);
    Ok(RootCount {
        p: q.p(),
        dim: q.n_prime - rank,
    })
}

/// A_L = C·C^σ·…·C^{σ^{n−1}} for the companion matrix C of f.
pub fn companion_product(q: &LinearizedQsp) -> ExtMatrix {
    let f = &q.field;
    let c = ExtMatrix::companion(f, &q.lower);
    let mut acc = c.clone();
    let mut twist = c;
    for _ in 1..q.n() {
        twist = twist.frobenius(f, 1);
        acc = acc.mul(f, &twist);
    }
    acc
}

/// Remainder of a by b in the composition sense: a − Q∘b with Q linearized.
/// For linearized polynomials this equals the ordinary polynomial remainder.
fn lin_rem(field: &ExtField, a: &[ExtElem], b: &[ExtElem]) -> Vec<ExtElem> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    while r.len() > db {
        let top = r.len() - 1;
        let lead = r[top].clone();
        if !lead.is_zero() {
            let k = top - db;
            let scale = field
                .div(&lead, &field.frobenius(&b[db], k))
                .expect("nonzero lead");
            for (i, bi) in b.iter().enumerate() {
                if bi.is_zero() {
                    continue;
                }
                let t = field.mul(&scale, &field.frobenius(bi, k));
                r[i + k] = field.sub(&r[i + k], &t);
            }
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

/// Independent count: deg gcd(L, X^{p^n} − X) computed entirely in linearized
/// form, with X^{p^n} mod L obtained by n Frobenius steps.
pub fn root_count_oracle(q: &LinearizedQsp) -> Result<RootCount> {
    q.require_a0()?;
    let f = &q.field;
    let np = q.n_prime;
    let l = q.linear_coeffs();
    // r = X^{p^k} mod L, as coefficients of X^{p^0..p^{n'−1}}
    let mut r = vec![f.zero(); np];
    if np == 1 {
        r[0] = f.neg(&q.lower[0]);
    } else {
        r[1] = f.one();
    }
    // r currently holds X^{p^1}; n−1 more steps reach X^{p^n}
    for _ in 1..q.n() {
        let mut next = vec![f.zero(); np + 1];
        for (i, c) in r.iter().enumerate() {
            next[i + 1] = f.frobenius(c, 1);
        }
        let t = next[np].clone();
        if !t.is_zero() {
            for i in 0..np {
                next[i] = f.sub(&next[i], &f.mul(&t, &q.lower[i]));
            }
        }
        next.truncate(np);
        r = next;
    }
    r[0] = f.sub(&r[0], &f.one());
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
    // linearized Euclid on (L, R − X)
    let mut a = l;
    let mut b = r;
    while !b.is_empty() {
        let rem = lin_rem(f, &a, &b);
        a = b;
        b = rem;
    }
    Ok(RootCount {
        p: q.p(),
        dim: a.len() - 1,
    })
}

/// Dense oracle: deg gcd(L, X^{p^n} − X) over F_{p^n}[X].
pub fn dense_root_count(q: &LinearizedQsp, degree_cap: usize) -> Result<usize> {
    q.to_ext_poly(degree_cap)?.count_roots(&q.field, degree_cap)
}

/// Near-split criterion: at least `min_fraction`·p^{n'} roots (1.0 = complete).
pub fn meets_root_fraction(count: &RootCount, n_prime: usize, min_fraction: f64) -> bool {
    if count.dim >= n_prime {
        return true;
    }
    let ratio = (count.p as f64).powi(count.dim as i32 - n_prime as i32);
    ratio >= min_fraction
}

/// X^n ≡ 1 (mod f), equivalent to L_f splitting completely over F_{p^n}.
pub fn split_test_div(f: &FpPoly, n: usize) -> Result<bool> {
    if f.is_zero() || f.coeff(0) == 0 {
        return domain("f(0) = 0");
    }
    let r = FpPoly::x(f.p()).pow_mod(&BigUint::from(n), f)?;
    Ok(r.sub_raw(&FpPoly::one(f.p())).rem_raw(f).is_zero())
}
