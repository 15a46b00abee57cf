use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::curve::{bsgs, demo_curve, Curve, CurveInfo, CurvePoint};
use super::semaev::s3_in_x3;
use crate::algebra::arith::{inv_mod, is_prime_u64, mul_mod, sub_mod};
use crate::algebra::{ExtElem, ExtField, ExtPoly, FpPoly};
use crate::error::{cap, domain, usage, verification, Result};
use crate::families::MultiplicativeQsp;
use crate::qsp::{root_count_oracle, LinearizedQsp};

/// Roots V of a QSP in F_{p^n} and the curve points F above them.
#[derive(Clone, Debug)]
pub struct FactorBase {
    roots: Vec<ExtElem>,
    points: Vec<CurvePoint>,
    /// for each root, the indices of the points above it
    lifts: Vec<Vec<usize>>,
    index: HashMap<CurvePoint, usize>,
    lambda: ExtPoly,
    n_prime: usize,
}

/// λ with L = X^{p^{n'}} − λ(X).
pub fn lambda_linearized(q: &LinearizedQsp) -> ExtPoly {
    let field = q.field();
    let p = q.p() as usize;
    let ell = q.ell().unwrap_or(0);
    let mut c = vec![field.zero(); p.pow(ell as u32) + 1];
    let mut e = 1usize;
    for i in 0..=ell {
        c[e] = q.a(i);
        e *= p;
    }
    ExtPoly::from_coeffs(c)
}

impl FactorBase {
    /// V = roots of L_f in the curve's field, checked against the root-count oracle.
    pub fn from_linearized(curve: &Curve, q: &LinearizedQsp) -> Result<Self> {
        if q.field().as_ref() != curve.field().as_ref() {
            return usage("QSP and curve live over different fields");
        }
        let field = curve.field();
        let size = field
            .size_u64()
            .filter(|&s| s <= super::curve::POINT_COUNT_CAP);
        let Some(size) = size else {
            return cap("factor base enumeration cap exceeded");
        };
        let roots: Vec<ExtElem> = (0..size)
            .map(|i| field.element(i))
            .filter(|x| q.eval(x).is_zero())
            .collect();
        let expected = root_count_oracle(q)?.value();
        if num_bigint::BigUint::from(roots.len()) != expected {
            return verification(format!(
                "found {} roots, oracle says {expected}",
                roots.len()
            ));
        }
        Ok(Self::build(curve, roots, lambda_linearized(q), q.n_prime()))
    }

    /// V = {0} ∪ {x : x^{p^{n'} − a} = 1} for X^{p^{n'}} − X^a.
    pub fn from_multiplicative(curve: &Curve, m: &MultiplicativeQsp) -> Result<Self> {
        let field = curve.field();
        if m.p != field.p().into() || m.n as usize != field.n() {
            return usage("binomial and curve live over different fields");
        }
        let size = field
            .size_u64()
            .filter(|&s| s <= super::curve::POINT_COUNT_CAP);
        let Some(size) = size else {
            return cap("factor base enumeration cap exceeded");
        };
        let order: u64 = m
            .subgroup_order()
            .try_into()
            .map_err(|_| crate::Error::CapExceeded("order".into()))?;
        let roots: Vec<ExtElem> = (0..size)
            .map(|i| field.element(i))
            .filter(|x| x.is_zero() || field.pow_u64(x, order) == field.one())
            .collect();
        if num_bigint::BigUint::from(roots.len()) != m.root_count {
            return verification("binomial root count mismatch");
        }
        let a: usize = (&m.a)
            .try_into()
            .map_err(|_| crate::Error::CapExceeded("a".into()))?;
        let lambda = ExtPoly::monomial(field, a, field.one());
        Ok(Self::build(curve, roots, lambda, m.n_prime as usize))
    }

    fn build(curve: &Curve, roots: Vec<ExtElem>, lambda: ExtPoly, n_prime: usize) -> Self {
        let mut points = Vec::new();
        let mut lifts = Vec::with_capacity(roots.len());
        for x in &roots {
            let mut l = Vec::new();
            for pt in curve.lift_x(x) {
                l.push(points.len());
                points.push(pt);
            }
            lifts.push(l);
        }
        let index = points
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        FactorBase {
            roots,
            points,
            lifts,
            index,
            lambda,
            n_prime,
        }
    }

    pub fn roots(&self) -> &[ExtElem] {
        &self.roots
    }

    pub fn points(&self) -> &[CurvePoint] {
        &self.points
    }

    pub fn index_of(&self, pt: &CurvePoint) -> Option<usize> {
        self.index.get(pt).copied()
    }

    pub fn lambda(&self) -> &ExtPoly {
        &self.lambda
    }

    pub fn n_prime(&self) -> usize {
        self.n_prime
    }

    /// Fraction of V lying under exactly two points.
    pub fn two_point_fraction(&self) -> f64 {
        if self.roots.is_empty() {
            return 0.0;
        }
        self.lifts.iter().filter(|l| l.len() == 2).count() as f64 / self.roots.len() as f64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DecompMode {
    /// S_3(x_R, x_1, x_2) = 0 over V², then sign resolution (m = 2)
    Semaev,
    /// every multiset of m factor-base points
    Direct,
}

impl DecompMode {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "semaev" => Ok(DecompMode::Semaev),
            "direct" => Ok(DecompMode::Direct),
            _ => usage(format!("unknown decomposition mode '{s}'")),
        }
    }
}

/// Cap on |F|^m for direct decomposition.
pub const DIRECT_CAP: u64 = 1 << 24;

/// R = P_1 + … + P_m with P_i ∈ F, as sorted factor-base indices.
pub fn decompose(
    curve: &Curve,
    r: &CurvePoint,
    fb: &FactorBase,
    m: usize,
    mode: DecompMode,
) -> Result<Option<Vec<usize>>> {
    match mode {
        DecompMode::Semaev => {
            if m != 2 {
                return usage("semaev mode supports m = 2 only");
            }
            let Some(xr) = r.x() else { return Ok(None) };
            let f = curve.field().as_ref();
            for (i, x1) in fb.roots.iter().enumerate() {
                if fb.lifts[i].is_empty() {
                    continue;
                }
                let (c2, c1, c0) = s3_in_x3(curve, xr, x1);
                for (j, x2) in fb.roots.iter().enumerate().skip(i) {
                    if fb.lifts[j].is_empty() {
                        continue;
                    }
                    let v = f.add(&f.mul(&f.add(&f.mul(&c2, x2), &c1), x2), &c0);
                    if !v.is_zero() {
                        continue;
                    }
                    for &a in &fb.lifts[i] {
                        for &b in &fb.lifts[j] {
                            if curve.add(&fb.points[a], &fb.points[b]) == *r {
                                return Ok(Some(vec![a.min(b), a.max(b)]));
                            }
                        }
                    }
                }
            }
            Ok(None)
        }
        DecompMode::Direct => {
            if m == 0 {
                return usage("m must be at least 1");
            }
            let size = fb.points.len() as u64;
            if size.checked_pow(m as u32).map_or(true, |t| t > DIRECT_CAP) {
                return cap(format!("|F|^{m} exceeds the direct cap {DIRECT_CAP}"));
            }
            let mut idx = vec![0usize; m];
            Ok(direct_search(
                curve,
                r,
                fb,
                &mut idx,
                0,
                0,
                &CurvePoint::Infinity,
            ))
        }
    }
}

fn direct_search(
    curve: &Curve,
    r: &CurvePoint,
    fb: &FactorBase,
    idx: &mut Vec<usize>,
    pos: usize,
    start: usize,
    acc: &CurvePoint,
) -> Option<Vec<usize>> {
    if pos == idx.len() {
        return (acc == r).then(|| idx.clone());
    }
    for i in start..fb.points.len() {
        idx[pos] = i;
        let next = curve.add(acc, &fb.points[i]);
        if let Some(found) = direct_search(curve, r, fb, idx, pos + 1, i, &next) {
            return Some(found);
        }
    }
    None
}

/// Number of unordered pairs {P_1, P_2} ⊂ F (repetition allowed) with P_1 + P_2 = R.
pub fn count_decompositions(curve: &Curve, r: &CurvePoint, fb: &FactorBase) -> u64 {
    let pts = &fb.points;
    let mut count = 0;
    for i in 0..pts.len() {
        for j in i..pts.len() {
            if curve.add(&pts[i], &pts[j]) == *r {
                count += 1;
            }
        }
    }
    count
}

/// a·P + b·Q = Σ F[points[i]]
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub a: u64,
    pub b: u64,
    pub points: Vec<usize>,
    /// index of the seeded trial that produced it
    pub trial: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationRun {
    pub relations: Vec<Relation>,
    pub trials: u64,
    pub successes: u64,
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

#[allow(clippy::too_many_arguments)]
/// Gathers `target` verified relations from random a·P + b·Q; trial t always
/// uses the same (a, b) for a given seed, so the output does not depend on
/// the number of worker threads.
pub fn gather_relations(
    curve: &Curve,
    p: &CurvePoint,
    q: &CurvePoint,
    order: u64,
    fb: &FactorBase,
    m: usize,
    mode: DecompMode,
    target: usize,
    seed: u64,
    trial_cap: u64,
) -> Result<RelationRun> {
    const BATCH: u64 = 64;
    let mut run = RelationRun {
        relations: Vec::new(),
        trials: 0,
        successes: 0,
    };
    let mut next = 0u64;
    while run.relations.len() < target {
        if next >= trial_cap {
            return cap(format!(
                "{} relations after {trial_cap} trials, {target} wanted",
                run.relations.len()
            ));
        }
        let end = (next + BATCH).min(trial_cap);
        let batch: Vec<Option<Relation>> = (next..end)
            .into_par_iter()
            .map(|t| {
                let mut rng = trial_rng(seed, t);
                let a = rng.gen_range(0..order);
                let b = rng.gen_range(0..order);
                let r = curve.add(&curve.scalar_mul(a, p), &curve.scalar_mul(b, q));
                Ok(decompose(curve, &r, fb, m, mode)?.map(|points| Relation {
                    a,
                    b,
                    points,
                    trial: t,
                }))
            })
            .collect::<Result<_>>()?;
        for rel in batch {
            run.trials += 1;
            if let Some(rel) = rel {
                run.successes += 1;
                verify_relation(curve, p, q, fb, &rel)?;
                run.relations.push(rel);
                if run.relations.len() == target {
                    break;
                }
            }
        }
        next = end;
    }
    Ok(run)
}

fn verify_relation(
    curve: &Curve,
    p: &CurvePoint,
    q: &CurvePoint,
    fb: &FactorBase,
    rel: &Relation,
) -> Result<()> {
    let lhs = curve.add(&curve.scalar_mul(rel.a, p), &curve.scalar_mul(rel.b, q));
    let rhs = rel.points.iter().fold(CurvePoint::Infinity, |acc, &i| {
        curve.add(&acc, &fb.points[i])
    });
    if lhs != rhs {
        return verification(format!("relation from trial {} does not hold", rel.trial));
    }
    Ok(())
}

/// k with Q = kP from the relations: the unknowns are the logs of F and k;
/// log(−T) = −log(T) is added as known structure.
pub fn solve_dlog(
    curve: &Curve,
    p: &CurvePoint,
    q: &CurvePoint,
    order: u64,
    fb: &FactorBase,
    relations: &[Relation],
) -> Result<u64> {
    if !is_prime_u64(order) {
        return usage(format!("group order {order} is not prime"));
    }
    let nf = fb.points.len();
    let (kcol, rhs) = (nf, nf + 1);
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for rel in relations {
        verify_relation(curve, p, q, fb, rel)?;
        let mut row = vec![0u64; nf + 2];
        for &i in &rel.points {
            row[i] = (row[i] + 1) % order;
        }
        row[kcol] = sub_mod(0, rel.b % order, order);
        row[rhs] = rel.a % order;
        rows.push(row);
    }
    for (i, pt) in fb.points.iter().enumerate() {
        let j = fb
            .index_of(&curve.neg(pt))
            .expect("F is closed under negation");
        if i <= j {
            let mut row = vec![0u64; nf + 2];
            row[i] = (row[i] + 1) % order;
            row[j] = (row[j] + 1) % order;
            rows.push(row);
        }
    }
    let mut pivot_row = 0;
    for col in 0..nf {
        let Some(r) = (pivot_row..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(pivot_row, r);
        let inv = inv_mod(rows[pivot_row][col], order).expect("prime order");
        for v in rows[pivot_row].iter_mut() {
            *v = mul_mod(*v, inv, order);
        }
        let pivot = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != pivot_row && row[col] != 0 {
                let factor = row[col];
                for (v, &pv) in row.iter_mut().zip(&pivot) {
                    *v = sub_mod(*v, mul_mod(factor, pv, order), order);
                }
            }
        }
        pivot_row += 1;
    }
    for row in &rows[pivot_row..] {
        if row[kcol] != 0 {
            let k = mul_mod(
                row[rhs],
                inv_mod(row[kcol], order).expect("prime order"),
                order,
            );
            if curve.scalar_mul(k, p) != *q {
                return verification(format!("linear algebra gave k = {k}, which fails Q = kP"));
            }
            return Ok(k);
        }
    }
    domain("degenerate system: gather more relations")
}

#[derive(Clone, Debug)]
pub struct DemoConfig {
    pub p: u64,
    pub n: usize,
    pub f: FpPoly,
    pub m: usize,
    pub mode: DecompMode,
    pub seed: u64,
    pub instances: usize,
    pub trials_cap: u64,
    /// relations beyond |F|
    pub extra_relations: usize,
}

impl DemoConfig {
    pub fn default_demo() -> Self {
        DemoConfig {
            p: 5,
            n: 3,
            f: FpPoly::from_i64(5, &[1, 1, 1]).expect("p = 5"),
            m: 2,
            mode: DecompMode::Semaev,
            seed: 0,
            instances: 20,
            trials_cap: 1 << 20,
            extra_relations: 10,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DemoInstance {
    pub k: u64,
    pub k_index_calculus: u64,
    pub k_bsgs: u64,
    pub agree: bool,
    pub relations: usize,
    pub trials: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DemoReport {
    pub curve: CurveInfo,
    pub generator: (Vec<u64>, Vec<u64>),
    pub v_size: usize,
    pub f_size: usize,
    pub two_point_fraction: f64,
    pub m: usize,
    pub mode: DecompMode,
    pub instances: Vec<DemoInstance>,
    pub agreements: usize,
    pub trials: u64,
    pub successes: u64,
    pub success_rate: f64,
    /// |F|^m / (m!·p^n)
    pub heuristic_rate: f64,
    /// binomial σ of the measured rate under the heuristic (NaN when it is not a probability)
    pub heuristic_sigma: f64,
    pub within_3sigma_heuristic: bool,
    /// fraction of group elements that decompose (exact, m = 2)
    pub exact_rate: Option<f64>,
    pub within_3sigma_exact: Option<bool>,
    /// mean number of decompositions of a uniform group element (exact, m = 2)
    pub mean_decompositions: Option<f64>,
    pub trials_per_relation: f64,
    /// m!·p^n/|F|^m
    pub heuristic_trials_per_relation: f64,
}

fn factorial(m: usize) -> f64 {
    (1..=m).map(|i| i as f64).product()
}

/// Curve search, factor base, relations, linear algebra and a BSGS cross-check
/// on `instances` seeded discrete logs.
pub fn run_demo(cfg: &DemoConfig) -> Result<DemoReport> {
    if cfg.f.p() != cfg.p {
        return usage("polynomial and field have different characteristic");
    }
    let field = Arc::new(ExtField::new(cfg.p, cfg.n)?);
    let curve = demo_curve(field.clone())?;
    let order = curve.point_count()?;
    let q = LinearizedQsp::linearize(&cfg.f, field.clone())?;
    let fb = FactorBase::from_linearized(&curve, &q)?;
    let gen = curve.first_point()?;
    let target = fb.points().len() + cfg.extra_relations;
    let mut instances = Vec::with_capacity(cfg.instances);
    let (mut trials, mut successes) = (0u64, 0u64);
    for t in 0..cfg.instances {
        let mut rng = trial_rng(cfg.seed, u64::MAX - t as u64);
        let k = rng.gen_range(1..order);
        let qpt = curve.scalar_mul(k, &gen);
        let run = gather_relations(
            &curve,
            &gen,
            &qpt,
            order,
            &fb,
            cfg.m,
            cfg.mode,
            target,
            cfg.seed
                .wrapping_add(t as u64)
                .wrapping_mul(0x9e37_79b9_7f4a_7c15),
            cfg.trials_cap,
        )?;
        trials += run.trials;
        successes += run.successes;
        let k_ic = solve_dlog(&curve, &gen, &qpt, order, &fb, &run.relations)?;
        let k_bsgs = bsgs(&curve, &gen, &qpt, order)?;
        instances.push(DemoInstance {
            k,
            k_index_calculus: k_ic,
            k_bsgs,
            agree: k_ic == k_bsgs && k_ic == k,
            relations: run.relations.len(),
            trials: run.trials,
        });
    }
    let fsize = fb.points().len() as f64;
    let q_size = field.size_u64().unwrap_or(u64::MAX) as f64;
    let heuristic_rate = fsize.powi(cfg.m as i32) / (factorial(cfg.m) * q_size);
    let success_rate = if trials == 0 {
        0.0
    } else {
        successes as f64 / trials as f64
    };
    let sigma_of = |h: f64| {
        if (0.0..=1.0).contains(&h) && trials > 0 {
            (h * (1.0 - h) / trials as f64).sqrt()
        } else {
            f64::NAN
        }
    };
    let heuristic_sigma = sigma_of(heuristic_rate);
    let within = |h: f64, s: f64| s.is_finite() && (success_rate - h).abs() <= 3.0 * s;
    let (exact_rate, mean_decompositions) = if cfg.m == 2 {
        let pts = fb.points();
        let mut sums = HashSet::new();
        let mut pairs = 0u64;
        for i in 0..pts.len() {
            for j in i..pts.len() {
                sums.insert(curve.add(&pts[i], &pts[j]));
                pairs += 1;
            }
        }
        // semaev mode never decomposes O
        if cfg.mode == DecompMode::Semaev {
            sums.remove(&CurvePoint::Infinity);
        }
        (
            Some(sums.len() as f64 / order as f64),
            Some(pairs as f64 / order as f64),
        )
    } else {
        (None, None)
    };
    let relations: usize = instances.iter().map(|i| i.relations).sum();
    Ok(DemoReport {
        curve: curve.info()?,
        generator: match &gen {
            CurvePoint::Affine { x, y } => (x.coeffs().to_vec(), y.coeffs().to_vec()),
            CurvePoint::Infinity => (Vec::new(), Vec::new()),
        },
        v_size: fb.roots().len(),
        f_size: fb.points().len(),
        two_point_fraction: fb.two_point_fraction(),
        m: cfg.m,
        mode: cfg.mode,
        agreements: instances.iter().filter(|i| i.agree).count(),
        instances,
        trials,
        successes,
        success_rate,
        heuristic_rate,
        heuristic_sigma,
        within_3sigma_heuristic: within(heuristic_rate, heuristic_sigma),
        exact_rate,
        within_3sigma_exact: exact_rate.map(|h| within(h, sigma_of(h))),
        mean_decompositions,
        trials_per_relation: if relations == 0 {
            f64::INFINITY
        } else {
            trials as f64 / relations as f64
        },
        heuristic_trials_per_relation: 1.0 / heuristic_rate,
    })
}
