//! The published list of search outputs, vendored as CSV, and a row-by-row
//! comparison against search records.

use serde::Serialize;

use super::search::{FamilyTag, SearchRecord};
use crate::algebra::parse_poly;
use crate::error::{usage, Result};

pub const TABLE_B1_CSV: &str = include_str!("../../data/table_b1.csv");

/// (p, n' bound) pairs searched by default.
pub const DEFAULT_SCOPE: [(u64, usize); 4] = [(2, 16), (3, 10), (5, 8), (7, 8)];

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub f: String,
    pub n: usize,
    /// as printed (rounded)
    pub beta: f64,
    pub primes: Vec<u64>,
    pub t1: bool,
    pub t2: bool,
    pub t3_inverse: Option<String>,
}

pub fn parse_table(text: &str) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate().skip(1) {
        if line.trim().is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split(',').map(str::trim).collect();
        if cells.len() != 7 {
            return usage(format!("table line {}: expected 7 fields", lineno + 1));
        }
        let bad =
            |what: &str| crate::Error::Usage(format!("table line {}: bad {what}", lineno + 1));
        rows.push(TableRow {
            f: cells[0].to_string(),
            n: cells[1].parse().map_err(|_| bad("n"))?,
            beta: cells[2].parse().map_err(|_| bad("beta"))?,
            primes: cells[3]
                .split(';')
                .map(|s| s.parse().map_err(|_| bad("p")))
                .collect::<Result<_>>()?,
            t1: cells[4] == "1",
            t2: cells[5] == "1",
            t3_inverse: (!cells[6].is_empty()).then(|| cells[6].to_string()),
        });
    }
    Ok(rows)
}

pub fn table_b1() -> Result<Vec<TableRow>> {
    parse_table(TABLE_B1_CSV)
}

#[derive(Clone, Debug, Serialize)]
pub struct RowCheck {
    pub f: String,
    pub p: u64,
    pub n: usize,
    pub found: bool,
    /// exact β of the matching record, as "num/den"
    pub beta: Option<String>,
    pub beta_ok: bool,
    pub tags_ok: bool,
    pub tags: Vec<String>,
}

impl RowCheck {
    pub fn ok(&self) -> bool {
        self.found && self.beta_ok && self.tags_ok
    }
}

/// Checks every table row for prime p with deg f ≤ n'_max against the records.
pub fn compare_table(
    rows: &[TableRow],
    p: u64,
    n_prime_max: usize,
    records: &[SearchRecord],
) -> Result<Vec<RowCheck>> {
    let mut out = Vec::new();
    for row in rows.iter().filter(|r| r.primes.contains(&p)) {
        let f = parse_poly(&row.f, p)?;
        if f.degree().unwrap_or(0) > n_prime_max {
            continue;
        }
        let rec = records.iter().find(|r| r.f == f && r.n == row.n);
        let mut check = RowCheck {
            f: row.f.clone(),
            p,
            n: row.n,
            found: rec.is_some(),
            beta: None,
            beta_ok: false,
            tags_ok: false,
            tags: Vec::new(),
        };
        if let Some(rec) = rec {
            let exact = super::linearized::beta_of(rec.n, rec.n_prime, rec.ell)?;
            check.beta = Some(rec.beta.to_string());
            check.beta_ok = exact == rec.beta && (rec.beta_f64() - row.beta).abs() <= 0.1;
            let has = |t| rec.tags.contains(&t);
            let inverse_ok = match &row.t3_inverse {
                Some(g) => has(FamilyTag::T3) && rec.inverse.as_ref() == Some(&parse_poly(g, p)?),
                None => !has(FamilyTag::T3),
            };
            check.tags_ok =
                has(FamilyTag::T1) == row.t1 && has(FamilyTag::T2) == row.t2 && inverse_ok;
            check.tags = rec.tags.iter().map(|t| t.to_string()).collect();
        }
        out.push(check);
    }
    Ok(out)
}
