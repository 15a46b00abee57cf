use std::sync::{Arc, OnceLock};

use num_integer::Roots;
use serde::Serialize;

use crate::algebra::arith::{is_prime_u64, prime_factors};
use crate::algebra::{ExtElem, ExtField};
use crate::error::{cap, domain, usage, verification, Result};

/// Point counting scans every x, so the field is kept small.
pub const POINT_COUNT_CAP: u64 = 1 << 22;

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum CurvePoint {
    Infinity,
    Affine { x: ExtElem, y: ExtElem },
}

impl CurvePoint {
    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn x(&self) -> Option<&ExtElem> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine { x, .. } => Some(x),
        }
    }
}

/// y² = x³ + Ax + B over F_{p^n}, p ≥ 5.
#[derive(Debug)]
pub struct Curve {
    field: Arc<ExtField>,
    a: ExtElem,
    b: ExtElem,
    count: OnceLock<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CurveInfo {
    pub p: u64,
    pub n: usize,
    pub a: Vec<u64>,
    pub b: Vec<u64>,
    pub order: u64,
    pub order_factors: Vec<u64>,
}

impl Curve {
    pub fn new(field: Arc<ExtField>, a: ExtElem, b: ExtElem) -> Result<Self> {
        if field.p() < 5 {
            return usage("short Weierstrass curves need p ≥ 5");
        }
        let f = field.as_ref();
        // 4A³ + 27B²
        let disc = f.add(
            &f.scale(&f.mul(&a, &f.square(&a)), 4),
            &f.scale(&f.square(&b), 27),
        );
        if disc.is_zero() {
            return domain("singular curve: 4A³ + 27B² = 0");
        }
        Ok(Curve {
            field,
            a,
            b,
            count: OnceLock::new(),
        })
    }

    pub fn field(&self) -> &Arc<ExtField> {
        &self.field
    }

    pub fn a(&self) -> &ExtElem {
        &self.a
    }

    pub fn b(&self) -> &ExtElem {
        &self.b
    }

    /// x³ + Ax + B
    pub fn rhs(&self, x: &ExtElem) -> ExtElem {
        let f = self.field.as_ref();
        f.add(&f.mul(x, &f.add(&f.square(x), &self.a)), &self.b)
    }

    pub fn is_on(&self, pt: &CurvePoint) -> bool {
        match pt {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => self.field.square(y) == self.rhs(x),
        }
    }

    pub fn check(&self, pt: &CurvePoint) -> Result<()> {
        if self.is_on(pt) {
            Ok(())
        } else {
            domain("point is not on the curve")
        }
    }

    pub fn neg(&self, pt: &CurvePoint) -> CurvePoint {
        match pt {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine {
                x: x.clone(),
                y: self.field.neg(y),
            },
        }
    }

    pub fn add(&self, p1: &CurvePoint, p2: &CurvePoint) -> CurvePoint {
        let f = self.field.as_ref();
        let (x1, y1, x2, y2) = match (p1, p2) {
            (CurvePoint::Infinity, q) | (q, CurvePoint::Infinity) => return q.clone(),
            (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => {
                (x1, y1, x2, y2)
            }
        };
        let lambda = if x1 == x2 {
            if f.add(y1, y2).is_zero() {
                return CurvePoint::Infinity;
            }
            // (3x² + A) / 2y
            let num = f.add(&f.scale(&f.square(x1), 3), &self.a);
            f.div(&num, &f.scale(y1, 2)).expect("y ≠ 0")
        } else {
            f.div(&f.sub(y2, y1), &f.sub(x2, x1)).expect("x1 ≠ x2")
        };
        let x3 = f.sub(&f.sub(&f.square(&lambda), x1), x2);
        let y3 = f.sub(&f.mul(&lambda, &f.sub(x1, &x3)), y1);
        CurvePoint::Affine { x: x3, y: y3 }
    }

    pub fn double(&self, pt: &CurvePoint) -> CurvePoint {
        self.add(pt, pt)
    }

    pub fn sub(&self, p1: &CurvePoint, p2: &CurvePoint) -> CurvePoint {
        self.add(p1, &self.neg(p2))
    }

    pub fn scalar_mul(&self, k: u64, pt: &CurvePoint) -> CurvePoint {
        let mut acc = CurvePoint::Infinity;
        let mut base = pt.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.double(&base);
            k >>= 1;
        }
        acc
    }

    /// Points with the given x, ordered by y index (0, 1 or 2 of them).
    pub fn lift_x(&self, x: &ExtElem) -> Vec<CurvePoint> {
        let f = self.field.as_ref();
        let r = self.rhs(x);
        let Some(y) = f.sqrt(&r) else {
            return Vec::new();
        };
        if y.is_zero() {
            return vec![CurvePoint::Affine { x: x.clone(), y }];
        }
        let mut ys = [y.clone(), f.neg(&y)];
        ys.sort_by_key(|v| f.index(v));
        ys.into_iter()
            .map(|y| CurvePoint::Affine { x: x.clone(), y })
            .collect()
    }

    /// #E(F_{p^n}) = q + 1 + Σ_x χ(x³ + Ax + B), checked against the Hasse bound.
    pub fn point_count(&self) -> Result<u64> {
        if let Some(&c) = self.count.get() {
            return Ok(c);
        }
        let q = match self.field.size_u64() {
            Some(q) if q <= POINT_COUNT_CAP => q,
            _ => {
                return cap(format!(
                    "point counting limited to fields of size ≤ {POINT_COUNT_CAP}"
                ))
            }
        };
        let f = self.field.as_ref();
        let mut total = q as i64 + 1;
        for i in 0..q {
            total += f.quadratic_character(&self.rhs(&f.element(i))) as i64;
        }
        let dev = (total - q as i64 - 1).unsigned_abs();
        // |t| ≤ 2√q  ⟺  t² ≤ 4q
        if dev * dev > 4 * q {
            return verification(format!("point count {total} violates the Hasse bound"));
        }
        let c = total as u64;
        let _ = self.count.set(c);
        Ok(c)
    }

    /// Every affine point, ordered by (x index, y index).
    pub fn points(&self) -> Result<Vec<CurvePoint>> {
        let q = match self.field.size_u64() {
            Some(q) if q <= POINT_COUNT_CAP => q,
            _ => return cap("point enumeration cap exceeded"),
        };
        Ok((0..q)
            .flat_map(|i| self.lift_x(&self.field.element(i)))
            .collect())
    }

    /// First affine point in (x index, y index) order.
    pub fn first_point(&self) -> Result<CurvePoint> {
        let q = self.field.size_u64().unwrap_or(u64::MAX);
        for i in 0..q.min(POINT_COUNT_CAP) {
            if let Some(pt) = self.lift_x(&self.field.element(i)).into_iter().next() {
                return Ok(pt);
            }
        }
        domain("curve has no affine point in range")
    }

    pub fn info(&self) -> Result<CurveInfo> {
        let order = self.point_count()?;
        Ok(CurveInfo {
            p: self.field.p(),
            n: self.field.n(),
            a: self.a.coeffs().to_vec(),
            b: self.b.coeffs().to_vec(),
            order,
            order_factors: prime_factors(order),
        })
    }
}

/// First (A, B) in index order with a nonsingular curve of prime order.
pub fn demo_curve(field: Arc<ExtField>) -> Result<Curve> {
    let q = match field.size_u64() {
        Some(q) if q <= 1 << 12 => q,
        _ => return cap("demo curve search limited to fields of size ≤ 4096"),
    };
    for ai in 0..q {
        for bi in 1..q {
            let c = match Curve::new(field.clone(), field.element(ai), field.element(bi)) {
                Ok(c) => c,
                Err(crate::Error::Domain(_)) => continue,
                Err(e) => return Err(e),
            };
            if is_prime_u64(c.point_count()?) {
                return Ok(c);
            }
        }
    }
    domain("no prime-order curve over this field")
}

/// Discrete log of Q in ⟨P⟩ by baby-step giant-step, n the order of P.
pub fn bsgs(curve: &Curve, p: &CurvePoint, q: &CurvePoint, n: u64) -> Result<u64> {
    if n == 0 || n > 1 << 40 {
        return usage("bsgs needs 1 ≤ N ≤ 2^40");
    }
    curve.check(p)?;
    curve.check(q)?;
    let m = n.sqrt() + 1;
    let mut baby = std::collections::HashMap::with_capacity(m as usize);
    let mut cur = CurvePoint::Infinity;
    for j in 0..m {
        baby.entry(cur.clone()).or_insert(j);
        cur = curve.add(&cur, p);
    }
    let giant = curve.neg(&curve.scalar_mul(m, p));
    let mut gamma = q.clone();
    for i in 0..=m {
        if let Some(&j) = baby.get(&gamma) {
            let k = (i * m + j) % n;
            return Ok(k);
        }
        gamma = curve.add(&gamma, &giant);
    }
    domain("Q is not in the subgroup generated by P")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> Arc<ExtField> {
        Arc::new(ExtField::new(7, 1).unwrap())
    }

    #[test]
    fn group_law_basics() {
        let field = f7();
        let c = Curve::new(field.clone(), field.from_base(1), field.from_base(3)).unwrap();
        let pts = c.points().unwrap();
        let n = c.point_count().unwrap();
        assert_eq!(pts.len() as u64 + 1, n);
        for p in &pts {
            assert!(c.add(p, &c.neg(p)).is_infinity());
            assert!(c.scalar_mul(n, p).is_infinity());
            for q in &pts {
                assert!(c.is_on(&c.add(p, q)));
                assert_eq!(c.add(p, q), c.add(q, p));
            }
        }
        assert!(Curve::new(field.clone(), field.zero(), field.zero()).is_err());
        assert!(Curve::new(
            Arc::new(ExtField::new(3, 2).unwrap()),
            field.zero(),
            field.zero()
        )
        .is_err());
    }

    #[test]
    fn bsgs_matches_scan() {
        let field = Arc::new(ExtField::new(5, 3).unwrap());
        let c = demo_curve(field).unwrap();
        let n = c.point_count().unwrap();
        assert!(is_prime_u64(n));
        let p = c.first_point().unwrap();
        let mut q = CurvePoint::Infinity;
        for k in 0..n {
            assert_eq!(bsgs(&c, &p, &q, n).unwrap(), k);
            q = c.add(&q, &p);
        }
    }
}
