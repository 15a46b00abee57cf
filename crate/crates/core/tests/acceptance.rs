//! Acceptance run: one PASS/FAIL line per criterion, each timed against its limit.

use std::collections::HashMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use qsp_core::ecdlp::{
    demo_curve, exponent_table, generic_threshold, published_exponents, run_demo, validate_s3,
    DemoConfig, DEFAULT_C,
};
use qsp_core::families::{gen_mult, heuristic_density, mersenne_sparse_enumerate, MultFamily};
use qsp_core::qsp::{
    beta_of, compare_table, dense_root_count, min_n, root_count_oracle, search_representatives,
    split_test_companion, split_test_div, table_b1, trinomial_classification_check, CoeffSet,
    SearchConfig,
};
use qsp_core::symbolic::bound_report;
use qsp_core::{ExtElem, ExtField, FpPoly, LinearizedQsp};

struct Outcome {
    pass: bool,
    detail: String,
}

fn run(id: u32, limit: Duration, body: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = body();
    let took = start.elapsed();
    let in_time = took <= limit;
    let pass = out.pass && in_time;
    println!(
        "criterion {id} {}: {} [{:.2}s, limit {}s{}]",
        if pass { "PASS" } else { "FAIL" },
        out.detail,
        took.as_secs_f64(),
        limit.as_secs_f64(),
        if in_time { "" } else { ", over time" }
    );
    pass
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: false,
        detail: detail.into(),
    }
}

fn c1_table() -> Outcome {
    let rows = match table_b1() {
        Ok(r) => r,
        Err(e) => return fail(format!("table load: {e}")),
    };
    let scope = [
        (2u64, 16usize, CoeffSet::Binary),
        (3, 10, CoeffSet::Signed),
        (5, 8, CoeffSet::Signed),
        (7, 8, CoeffSet::Signed),
    ];
    let mut checked = 0;
    let mut problems = Vec::new();
    for (p, np, coeffs) in scope {
        let recs = match search_representatives(&SearchConfig::new(p, np, coeffs)) {
            Ok(r) => r,
            Err(e) => return fail(format!("search p={p}: {e}")),
        };
        let checks = match compare_table(&rows, p, np, &recs) {
            Ok(c) => c,
            Err(e) => return fail(format!("compare p={p}: {e}")),
        };
        for c in checks {
            checked += 1;
            if !c.found {
                problems.push(format!("{} n={} p={} missing", c.f, c.n, c.p));
            } else if !c.beta_ok {
                problems.push(format!("{} p={} beta {:?}", c.f, c.p, c.beta));
            } else if !c.tags_ok {
                problems.push(format!(
                    "{} n={} p={} tags [{}]",
                    c.f,
                    c.n,
                    c.p,
                    c.tags.join(" ")
                ));
            }
        }
    }
    let pass = problems.is_empty();
    let mut detail = format!(
        "{checked} row/prime pairs checked, {} mismatches",
        problems.len()
    );
    if !pass {
        detail.push_str(&format!(" ({})", problems.join("; ")));
    }
    Outcome { pass, detail }
}

fn c2_floor() -> Outcome {
    let three_quarters = Ratio::new(3i128, 4);
    let mut below = Vec::new();
    let mut examined = 0u64;
    for p in [2u64, 3] {
        for np in 2..=6usize {
            let count = (p - 1) * p.pow(np as u32 - 1);
            let hits: Vec<Option<(FpPoly, u64)>> = (0..count)
                .into_par_iter()
                .filter_map(|idx| {
                    let mut c = vec![0u64; np + 1];
                    c[np] = 1;
                    c[0] = 1 + idx % (p - 1);
                    let mut rest = idx / (p - 1);
                    for x in c[1..np].iter_mut() {
                        *x = rest % p;
                        rest /= p;
                    }
                    let ell = (1..np).rev().find(|&i| c[i] != 0)?;
                    let f = FpPoly::new(p, c).ok()?;
                    // β < 3/4 ⟺ 4ℓn < 3n'², and every splitting n is a multiple of the order
                    let bound = (3 * np * np - 1) / (4 * ell);
                    let hit = f.x_order(bound as u64).ok().flatten().filter(|&n| {
                        beta_of(n as usize, np, ell).is_ok_and(|b| b < three_quarters)
                    });
                    Some(hit.map(|n| (f, n)))
                })
                .collect();
            examined += hits.len() as u64;
            below.extend(hits.into_iter().flatten());
        }
    }
    let f = |p| FpPoly::from_i64(p, &[1, 1, 1]).unwrap();
    let equality: Vec<u64> = [2u64, 3, 5, 7]
        .into_iter()
        .filter(|&p| {
            let f = f(p);
            f.x_order(3).ok().flatten() == Some(3)
                && split_test_div(&f, 3).unwrap_or(false)
                && beta_of(3, 2, 1).ok() == Some(three_quarters)
        })
        .collect();
    let pass = below.is_empty() && equality.len() == 4;
    let mut detail = format!(
        "{examined} polynomials with l >= 1, {} split with beta < 3/4; X^2+X+1 at n=3 with beta=3/4 for p in {equality:?}",
        below.len()
    );
    if let Some((f, n)) = below.first() {
        detail.push_str(&format!(", first offender {f} n={n}"));
    }
    Outcome { pass, detail }
}

fn c3_bounds() -> Outcome {
    let pairs: Vec<(usize, usize)> = (2..=8)
        .flat_map(|np| (1..np).map(move |l| (np, l)))
        .collect();
    let reports: Vec<_> = pairs
        .par_iter()
        .map(|&(np, l)| (np, l, bound_report(np, l)))
        .collect();
    let mut bad = Vec::new();
    let mut steps = 0;
    for (np, l, r) in reports {
        match r {
            Ok(r) => {
                steps += r.steps.len();
                let want = min_n(np, l).unwrap_or(0);
                if !(r.oracles_agree && r.bound_certified && r.min_n == want) {
                    bad.push(format!("(n'={np}, l={l})"));
                }
            }
            Err(e) => bad.push(format!("(n'={np}, l={l}): {e}")),
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!(
            "{} (n', l) pairs, {steps} powers compared, failures: [{}]",
            pairs.len(),
            bad.join(", ")
        ),
    }
}

/// Subspace polynomial of a random n'-dimensional F_p-subspace: splits completely.
fn subspace_lower(field: &ExtField, np: usize, rng: &mut ChaCha8Rng) -> Vec<ExtElem> {
    // coefficients of X^{p^0}, …, X^{p^d}
    let mut l = vec![field.one()];
    while l.len() <= np {
        let b = field.random(rng);
        let lb = l.iter().enumerate().fold(field.zero(), |acc, (j, c)| {
            field.add(&acc, &field.mul(c, &field.frobenius(&b, j)))
        });
        if lb.is_zero() {
            continue;
        }
        let t = field.pow_u64(&lb, field.p() - 1);
        let mut next = vec![field.zero(); l.len() + 1];
        for (j, c) in l.iter().enumerate() {
            next[j + 1] = field.add(&next[j + 1], &field.frobenius(c, 1));
            next[j] = field.sub(&next[j], &field.mul(&t, c));
        }
        l = next;
    }
    l.truncate(np);
    l
}

fn c4_split_tests() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut fields: HashMap<(u64, usize), Arc<ExtField>> = HashMap::new();
    let mut field = |p: u64, n: usize| -> Arc<ExtField> {
        fields
            .entry((p, n))
            .or_insert_with(|| Arc::new(ExtField::with_cap(p, n, u128::MAX).unwrap()))
            .clone()
    };
    let mut disagreements = Vec::new();
    let (mut positives, mut dense_checked, mut ext_instances) = (0, 0, 0);
    for inst in 0..1000 {
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let np = rng.gen_range(1..=5usize);
        if inst % 2 == 0 {
            // F_p coefficients: X^n ≡ 1 mod f vs companion vs oracle
            let mut c: Vec<u64> = (0..np).map(|_| rng.gen_range(0..p)).collect();
            c[0] = rng.gen_range(1..p);
            c.push(1);
            let f = FpPoly::new(p, c).unwrap();
            let n = match (inst % 4 == 0)
                .then(|| f.x_order(20).ok().flatten())
                .flatten()
            {
                Some(ord) => ord as usize,
                None => rng.gen_range(1..=20usize),
            };
            let q = LinearizedQsp::linearize(&f, field(p, n)).unwrap();
            let div = split_test_div(&f, n).unwrap();
            let comp = split_test_companion(&q).unwrap();
            let orc = root_count_oracle(&q).unwrap();
            positives += div as usize;
            if comp != orc || div != (orc.dim == np) {
                disagreements.push(format!("{f} n={n}"));
            }
        } else {
            ext_instances += 1;
            let complete = inst % 4 == 1;
            // a subspace of dimension n' needs n ≥ n'
            let n = rng.gen_range(if complete { np.max(2) } else { 2 }..=20usize);
            let fld = field(p, n);
            let lower = if complete {
                subspace_lower(&fld, np, &mut rng)
            } else {
                let mut v: Vec<ExtElem> = (0..np).map(|_| fld.random(&mut rng)).collect();
                while v[0].is_zero() {
                    v[0] = fld.random(&mut rng);
                }
                v
            };
            let q = LinearizedQsp::from_lower(fld.clone(), lower).unwrap();
            let comp = split_test_companion(&q).unwrap();
            let orc = root_count_oracle(&q).unwrap();
            positives += (orc.dim == np) as usize;
            let mut ok = comp == orc;
            if p.pow(np as u32) <= 243 && n <= 8 {
                dense_checked += 1;
                let dense = dense_root_count(&q, 243).unwrap();
                ok &= BigUint::from(dense) == orc.value();
            }
            if !ok {
                disagreements.push(format!("ext p={p} n={n} n'={np}"));
            }
        }
    }
    Outcome {
        pass: disagreements.is_empty(),
        detail: format!(
            "1000 instances ({ext_instances} with extension coefficients, {positives} complete splits, {dense_checked} dense cross-checks), {} disagreements{}",
            disagreements.len(),
            disagreements.first().map(|d| format!(", first {d}")).unwrap_or_default()
        ),
    }
}

fn c5_multiplicative() -> Outcome {
    let mut problems = Vec::new();
    let base = match gen_mult(MultFamily::M1 { p: 2, i: 1, k: 2 }) {
        Ok(m) => m,
        Err(e) => return fail(format!("M1(2,1,2): {e}")),
    };
    let want_beta = 4.0 * 3f64.log2() / 9.0;
    if !(base.n == 4 && base.n_prime == 3 && base.a == BigUint::from(3u32)) {
        problems.push(format!(
            "M1(2,1,2) gave n={} n'={} a={}",
            base.n, base.n_prime, base.a
        ));
    }
    if base.gcd_root_count() != BigUint::from(6u32) || base.dense_root_count(4096).ok() != Some(6) {
        problems.push("X^8-X^3 root count".into());
    }
    if (base.beta - want_beta).abs() > 1e-9 || (base.beta - 0.70442).abs() > 1e-5 {
        problems.push(format!("beta {}", base.beta));
    }
    // exact identities for the two base instances of the other families
    let checks: [(MultFamily, u64, u32, u32, u64, u64); 2] = [
        (MultFamily::M2 { k: 2, n: 2 }, 5, 2, 1, 3, 2),
        (MultFamily::M3 { k: 2, n: 3 }, 7, 3, 2, 19, 11),
    ];
    for (fam, p, n, np, r, a) in checks {
        match gen_mult(fam) {
            Ok(m) => {
                let pn1 = BigUint::from(p).pow(n) - 1u32;
                let pnp = BigUint::from(p).pow(np);
                let ok = m.p == BigUint::from(p)
                    && m.n == n
                    && m.n_prime == np
                    && m.r == BigUint::from(r)
                    && m.a == BigUint::from(a)
                    && pn1.is_multiple_of(&m.r)
                    && (&pnp % &m.r) == m.a
                    && pn1.is_multiple_of(&(&pnp - &m.a))
                    && m.gcd_root_count() == &pnp - &m.a + 1u32
                    && m.dense_root_count(4096).ok().map(BigUint::from) == Some(&pnp - &m.a + 1u32);
                if !ok {
                    problems.push(format!("{fam:?} identities"));
                }
            }
            Err(e) => problems.push(format!("{fam:?}: {e}")),
        }
    }
    let mut further = Vec::new();
    for (p, i, k) in [
        (2, 1, 3),
        (2, 1, 4),
        (2, 1, 5),
        (2, 2, 2),
        (2, 2, 3),
        (2, 3, 2),
        (3, 1, 2),
        (3, 1, 3),
        (3, 2, 2),
        (5, 1, 2),
        (7, 1, 2),
        (11, 1, 2),
        (13, 1, 2),
    ] {
        further.push(MultFamily::M1 { p, i, k });
    }
    for (k, n) in [(3, 2), (4, 2), (5, 2), (6, 2), (8, 2), (3, 3), (2, 4)] {
        further.push(MultFamily::M2 { k, n });
    }
    for (k, n) in [(4, 3), (6, 3)] {
        further.push(MultFamily::M3 { k, n });
    }
    let mut dense = 0;
    for fam in &further {
        match gen_mult(*fam) {
            Ok(m) => {
                let expect = m.p.pow(m.n_prime) - &m.a + 1u32;
                let mut ok =
                    m.beta <= 1.0 && m.gcd_root_count() == expect && m.root_count == expect;
                if let Ok(d) = m.dense_root_count(4096) {
                    dense += 1;
                    ok &= BigUint::from(d) == expect;
                }
                if !ok {
                    problems.push(format!("{fam:?}"));
                }
            }
            Err(e) => problems.push(format!("{fam:?}: {e}")),
        }
    }
    Outcome {
        pass: problems.is_empty(),
        detail: format!(
            "X^8-X^3 has {} roots, beta={:.9}; {} further sets ({dense} dense-checked); problems: [{}]",
            base.gcd_root_count(),
            base.beta,
            further.len(),
            problems.join("; ")
        ),
    }
}

fn c6_complexity() -> Outcome {
    let table = match exponent_table(DEFAULT_C) {
        Ok(t) => t,
        Err(e) => return fail(e.to_string()),
    };
    let published = published_exponents();
    let mut worst = 0f64;
    for (est, (b, e)) in table.iter().zip(&published) {
        if est.beta != *b {
            return fail("beta order differs from the published table");
        }
        worst = worst.max((est.exponent - e).abs());
    }
    let thr = generic_threshold(DEFAULT_C);
    let pass = published.len() == 7
        && table.len() == 7
        && worst <= 0.001
        && thr < 0.103
        && (thr - 0.1026).abs() < 5e-4;
    let got: Vec<String> = table.iter().map(|e| format!("{:.3}", e.exponent)).collect();
    Outcome {
        pass,
        detail: format!(
            "exponents [{}], max deviation {worst:.5}, generic threshold {thr:.5}",
            got.join(", ")
        ),
    }
}

fn c7_ecdlp() -> Outcome {
    let cfg = DemoConfig::default_demo();
    let r = match run_demo(&cfg) {
        Ok(r) => r,
        Err(e) => return fail(e.to_string()),
    };
    let need = r.f_size + 10;
    let enough = r.instances.iter().all(|i| i.relations >= need);
    let agree = r.agreements == cfg.instances && r.instances.len() == cfg.instances;
    let pass = agree && enough && r.within_3sigma_heuristic;
    let detail = format!(
        "curve order {} over F_5^3, |V|={} |F|={}, {}/{} agree with BSGS, relations >= {need}: {enough}; measured rate {:.4} over {} trials vs |F|^2/(2p^n) = {:.4} (within 3 sigma: {}); exact rate {:.4}, mean decompositions {:.4}",
        r.curve.order,
        r.v_size,
        r.f_size,
        r.agreements,
        cfg.instances,
        r.success_rate,
        r.trials,
        r.heuristic_rate,
        r.within_3sigma_heuristic,
        r.exact_rate.unwrap_or(f64::NAN),
        r.mean_decompositions.unwrap_or(f64::NAN),
    );
    Outcome { pass, detail }
}

fn c8_semaev() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for (p, n) in [(7u64, 1usize), (5, 2)] {
        let res = ExtField::new(p, n)
            .map(Arc::new)
            .and_then(demo_curve)
            .and_then(|c| validate_s3(&c, 1 << 20));
        match res {
            Ok(rep) => {
                pass &= rep.mismatches == 0 && rep.s3_zero == rep.lift_sum_zero;
                parts.push(format!(
                    "F_{p}^{n}: {} triples, {} zeros, {} mismatches",
                    rep.triples, rep.s3_zero, rep.mismatches
                ));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("F_{p}^{n}: {e}"));
            }
        }
    }
    Outcome {
        pass,
        detail: parts.join("; "),
    }
}

fn c9_mersenne() -> Outcome {
    let t2 = FpPoly::from_i64(2, &[1, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1]).unwrap();
    let found = match mersenne_sparse_enumerate(5, 7) {
        Ok(v) => v,
        Err(e) => return fail(e.to_string()),
    };
    let deg15: Vec<_> = found
        .iter()
        .filter(|d| d.n_prime == 15 && d.ell == 7)
        .collect();
    let has_t2 = deg15.iter().any(|d| d.f == t2);
    let h = match heuristic_density(31, 15, 5, 7) {
        Ok(h) => h,
        Err(e) => return fail(e.to_string()),
    };
    Outcome {
        pass: has_t2 && h.predicted_count < 0.01,
        detail: format!(
            "{} degree-15 divisors of X^31-1 with l=7 (X^15+X^7+X^3+X+1 among them: {has_t2}); heuristic expected count {:.5} (needs < 0.01)",
            deg15.len(),
            h.predicted_count
        ),
    }
}

fn c10_trinomials() -> Outcome {
    let mut with_split = Vec::new();
    let mut counts = Vec::new();
    for nt in 2..=7usize {
        match trinomial_classification_check(2, 1, 2, nt, u64::MAX) {
            Ok(r) => {
                counts.push(format!("n~={nt}: {} of {}", r.splitting, r.candidates));
                if r.splitting > 0 {
                    with_split.push(nt);
                }
            }
            Err(e) => return fail(format!("n~={nt}: {e}")),
        }
    }
    Outcome {
        pass: with_split == vec![3],
        detail: format!(
            "splitting trinomials with b != 0 at n~ in {with_split:?} ({})",
            counts.join(", ")
        ),
    }
}

fn main() {
    let s = Duration::from_secs;
    let results = [
        run(1, s(600), c1_table),
        run(2, s(60), c2_floor),
        run(3, s(120), c3_bounds),
        run(4, s(600), c4_split_tests),
        run(5, s(60), c5_multiplicative),
        run(6, s(1), c6_complexity),
        run(7, s(60), c7_ecdlp),
        run(8, s(600), c8_semaev),
        run(9, s(30), c9_mersenne),
        run(10, s(60), c10_trinomials),
    ];
    let passed = results.iter().filter(|&&b| b).count();
    println!("acceptance: {passed}/{} criteria pass", results.len());
    // failing criteria are reported above; a nonzero exit is opt-in so the
    // rest of the workspace tests still run
    if std::env::var_os("ACCEPTANCE_STRICT").is_some() && passed < results.len() {
        std::process::exit(1);
    }
}
