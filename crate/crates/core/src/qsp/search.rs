use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::linearized::{beta_of, Beta};
use super::transform::{canonical_gcd, invert_qsp, tail_degree};
use crate::algebra::arith::reduce_i64;
use crate::algebra::FpPoly;
use crate::error::{usage, Result};
use crate::families::additive::{match_type1, match_type2};

/// Inverses up to this degree are attached to records.
pub const INVERSE_DISPLAY_CAP: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub enum FamilyTag {
    T1,
    T1bis,
    T2,
    T3,
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchRecord {
    pub f: FpPoly,
    pub p: u64,
    /// minimal splitting extension degree
    pub n: usize,
    pub n_prime: usize,
    pub ell: usize,
    pub beta: Beta,
    pub tags: Vec<FamilyTag>,
    pub inverse: Option<FpPoly>,
}

/// Wire form of a record: coefficients as residues, lowest degree first.
#[derive(Clone, Debug, Serialize)]
pub struct SearchRecordOut {
    pub p: u64,
    pub n: usize,
    pub n_prime: usize,
    pub f: Vec<u64>,
    pub beta_num: i128,
    pub beta_den: i128,
    pub tags: Vec<String>,
    pub inverse: Option<Vec<u64>>,
}

impl SearchRecord {
    /// Builds a record for f splitting minimally at n, with tags and inverse.
    pub fn new(f: FpPoly, n: usize) -> Result<Self> {
        let n_prime = f.degree().unwrap_or(0);
        let ell = tail_degree(&f);
        let beta = beta_of(n, n_prime, ell)?;
        let mut rec = SearchRecord {
            p: f.p(),
            f,
            n,
            n_prime,
            ell,
            beta,
            tags: Vec::new(),
            inverse: None,
        };
        let (inv, _) = invert_qsp(&rec.f, n)?;
        rec.tags = classify_with_inverse(&rec.f, n, &inv);
        if inv.degree().unwrap_or(0) <= INVERSE_DISPLAY_CAP {
            rec.inverse = Some(inv);
        }
        Ok(rec)
    }

    pub fn to_out(&self) -> SearchRecordOut {
        SearchRecordOut {
            p: self.p,
            n: self.n,
            n_prime: self.n_prime,
            f: self.f.coeffs().to_vec(),
            beta_num: *self.beta.numer(),
            beta_den: *self.beta.denom(),
            tags: self.tags.iter().map(|t| t.to_string()).collect(),
            inverse: self.inverse.as_ref().map(|g| g.coeffs().to_vec()),
        }
    }

    pub fn beta_f64(&self) -> f64 {
        *self.beta.numer() as f64 / *self.beta.denom() as f64
    }
}

fn classify_with_inverse(f: &FpPoly, n: usize, inv: &FpPoly) -> Vec<FamilyTag> {
    let mut tags = Vec::new();
    match match_type1(f, n) {
        Some((0, _)) => tags.extend([FamilyTag::T1, FamilyTag::T1bis]),
        Some(_) => tags.push(FamilyTag::T1),
        None => {}
    }
    if match_type2(f, n).is_some() {
        tags.push(FamilyTag::T2);
    }
    let inv_deg = inv.degree().unwrap_or(0);
    if inv_deg < f.degree().unwrap_or(0) {
        let inv_t1 = match_type1(inv, n);
        let inv_t2 = match_type2(inv, n);
        if inv_t1.is_some() || inv_t2.is_some() {
            tags.push(FamilyTag::T3);
        }
        // X·h^{q−1} − 1 for a Type 1 member h
        if inv_t1.is_some_and(|(r, _)| r >= 1) && !tags.contains(&FamilyTag::T1) {
            tags.push(FamilyTag::T1);
        }
    }
    tags.sort();
    tags.dedup();
    tags
}

/// Family tags of a verified record.
pub fn classify_family(rec: &SearchRecord) -> Vec<FamilyTag> {
    match invert_qsp(&rec.f, rec.n) {
        Ok((inv, _)) => classify_with_inverse(&rec.f, rec.n, &inv),
        Err(_) => Vec::new(),
    }
}

/// Coefficient alphabet for the search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoeffSet {
    /// {0, 1, −1}
    Signed,
    /// {0, 1}
    Binary,
    /// every residue
    All,
    Custom(Vec<i64>),
}

impl CoeffSet {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "signed" | "0,1,-1" => Ok(CoeffSet::Signed),
            "binary" | "0,1" => Ok(CoeffSet::Binary),
            "all" => Ok(CoeffSet::All),
            other => {
                let vals: std::result::Result<Vec<i64>, _> = other
                    .split(',')
                    .filter(|t| !t.trim().is_empty())
                    .map(|t| t.trim().parse())
                    .collect();
                match vals {
                    Ok(v) => Ok(CoeffSet::Custom(v)),
                    Err(_) => usage(format!("cannot read coefficient set '{other}'")),
                }
            }
        }
    }

    /// Sorted distinct residues.
    pub fn residues(&self, p: u64) -> Vec<u64> {
        let mut v: Vec<u64> = match self {
            CoeffSet::Signed => vec![0, 1, reduce_i64(-1, p)],
            CoeffSet::Binary => vec![0, 1],
            CoeffSet::All => (0..p).collect(),
            CoeffSet::Custom(c) => c.iter().map(|&x| reduce_i64(x, p)).collect(),
        };
        v.sort_unstable();
        v.dedup();
        v
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub p: u64,
    pub n_prime_max: usize,
    pub coeffs: CoeffSet,
    pub beta_max: Beta,
    /// cap on the number of candidate polynomials
    pub candidate_cap: u128,
}

impl SearchConfig {
    pub fn new(p: u64, n_prime_max: usize, coeffs: CoeffSet) -> Self {
        SearchConfig {
            p,
            n_prime_max,
            coeffs,
            beta_max: Beta::from_integer(1),
            candidate_cap: 1 << 32,
        }
    }

    /// Number of monic candidates with c_0 ≠ 0.
    pub fn candidate_count(&self) -> u128 {
        let set = self.coeffs.residues(self.p);
        let s = set.len() as u128;
        let nz = set.iter().filter(|&&c| c != 0).count() as u128;
        (1..=self.n_prime_max)
            .map(|np| nz.saturating_mul(s.saturating_pow(np as u32 - 1)))
            .sum()
    }
}

/// Orders records by n' and then by the coefficients from the top down.
pub fn record_order(a: &SearchRecord, b: &SearchRecord) -> Ordering {
    a.n_prime
        .cmp(&b.n_prime)
        .then_with(|| a.f.cmp_graded(&b.f))
        .then_with(|| a.n.cmp(&b.n))
}

/// Canonical representatives of split-complete linearized QSPs with F_p
/// coefficients from the given set and β ≤ β_max.
pub fn search_representatives(cfg: &SearchConfig) -> Result<Vec<SearchRecord>> {
    crate::algebra::poly::check_prime(cfg.p)?;
    let set = cfg.coeffs.residues(cfg.p);
    if !set.iter().any(|&c| c != 0) {
        return usage("coefficient set has no nonzero element");
    }
    if cfg.n_prime_max == 0 {
        return usage("n' bound must be at least 1");
    }
    let total = cfg.candidate_count();
    if total > cfg.candidate_cap {
        return crate::error::cap(format!(
            "{total} candidates exceed the cap {}",
            cfg.candidate_cap
        ));
    }
    let nonzero: Vec<u64> = set.iter().copied().filter(|&c| c != 0).collect();
    let mut out = Vec::new();
    for np in 1..=cfg.n_prime_max {
        // c_0 from the nonzero part, c_1..c_{n'−1} from the full set
        let s = set.len() as u64;
        let inner = s.pow(np as u32 - 1);
        let count = nonzero.len() as u64 * inner;
        const CHUNK: u64 = 4096;
        let found: Vec<Vec<(FpPoly, usize)>> = (0..count.div_ceil(CHUNK))
            .into_par_iter()
            .map(|c| {
                let mut local = Vec::new();
                let mut coeffs = vec![0u64; np + 1];
                coeffs[np] = 1;
                for idx in c * CHUNK..((c + 1) * CHUNK).min(count) {
                    coeffs[0] = nonzero[(idx % nonzero.len() as u64) as usize];
                    let mut rest = idx / nonzero.len() as u64;
                    for c in coeffs[1..np].iter_mut() {
                        *c = set[(rest % s) as usize];
                        rest /= s;
                    }
                    if let Some(rec) = examine(cfg, &coeffs) {
                        local.push(rec);
                    }
                }
                local
            })
            .collect();
        out.extend(found.into_iter().flatten());
    }
    let mut records: Vec<SearchRecord> = out
        .into_par_iter()
        .map(|(f, n)| SearchRecord::new(f, n))
        .collect::<Result<_>>()?;
    records.sort_by(record_order);
    Ok(records)
}

fn examine(cfg: &SearchConfig, coeffs: &[u64]) -> Option<(FpPoly, usize)> {
    let np = coeffs.len() - 1;
    let ell = (1..np).rev().find(|&i| coeffs[i] != 0)?;
    let num = *cfg.beta_max.numer();
    let den = *cfg.beta_max.denom();
    if num <= 0 {
        return None;
    }
    let bound = (num * (np * np) as i128) / (den * ell as i128);
    let f = FpPoly::from_raw(cfg.p, coeffs.to_vec());
    let n = f.x_order(bound as u64).ok()?? as usize;
    if canonical_gcd(&f, n) > 1 {
        return None;
    }
    Some((f, n))
}
