//! Acceptance criteria: one PASS/FAIL line each, with exact checks and pinned time limits.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use clap::Parser;
use duval_cli::{execute, parse_poly, Cli};
use duval_core::catalog::{equation_for, Grid};
use duval_core::gfpoly::{Monomial, OrderKind, PolyFp, Ring};
use duval_core::groebner::{buchberger, quotient_dimension, reduce, s_polynomial, IdealSpec};
use duval_core::invariants::{verify_bdn_invariance, verify_bdn_relation, verify_mu_relation, BdnAction, MuAction};
use duval_core::lattice::{k3_obstruction_report, DEFAULT_BUDGET};
use duval_core::tjurina::{jacobian_ideal, log_derivation_check, resolution_report, simultaneous_resolution_check, Center};
use duval_core::Exec;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use serde_json::Value;

type Outcome = Result<(), String>;

fn cli(args: &[&str]) -> Value {
    let c = Cli::try_parse_from(std::iter::once("duval").chain(args.iter().copied())).unwrap();
    execute(&c).map_err(|e| e.message().to_string()).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok { Ok(()) } else { Err(msg()) }
}

/// Table of linearly reductive / tame quotient singularities by characteristic.
fn expected_row(family: &str, index: u64, p: u64) -> (bool, bool) {
    match (family, index) {
        ("A", m) => (true, (m + 1) % p != 0),
        ("D", m) => (p >= 3, p >= 3 && (m - 2) % p != 0),
        ("E", 6 | 7) => (p >= 5, p >= 5),
        ("E", 8) => (p >= 7, p >= 7),
        _ => unreachable!(),
    }
}

fn criterion_1() -> Outcome {
    let v = cli(&["classify", "--max-p", "13"]);
    let rows = v["rows"].as_array().unwrap();
    ensure(rows.len() == 20 * 6, || format!("{} rows", rows.len()))?;
    for r in rows {
        let fam = r["family"].as_str().unwrap();
        let idx = r["index"].as_u64().unwrap();
        let p = r["char"].as_u64().unwrap();
        let got = (r["linearly_reductive"].as_bool().unwrap(), r["tame"].as_bool().unwrap());
        ensure(got == expected_row(fam, idx, p), || format!("{fam}{idx}@{p}: {got:?}"))?;
        if p >= 7 {
            ensure(got.0, || format!("{fam}{idx}@{p} not linearly reductive"))?;
        }
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    let v = cli(&["tjurina-grid", "--max-p", "13"]);
    let rows = v["rows"].as_array().unwrap();
    let mut wild = Vec::new();
    for r in rows {
        let (d, n) = (r["d"].as_u64().unwrap(), r["n"].as_u64().unwrap());
        let is_wild = r["wild"].as_bool().unwrap();
        let name = format!("{}{}@{}", r["family"].as_str().unwrap(), r["index"], r["char"]);
        ensure(r["matches"] == true, || format!("{name}: matches=false"))?;
        ensure(d >= n, || format!("{name}: d={d} < n={n}"))?;
        ensure(d == n + u64::from(is_wild), || format!("{name}: d={d} n={n} wild={is_wild}"))?;
        if is_wild {
            wild.push(name);
        }
    }
    ensure(wild.len() >= 5, || format!("only {} wild rows", wild.len()))?;
    for needed in ["A1@2", "A2@3", "A3@2", "A4@5", "A5@2"] {
        ensure(wild.iter().any(|w| w == needed), || format!("{needed} missing"))?;
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    for n in 1..=20 {
        for p in [2, 3, 5, 7, 11, 13] {
            let ok = verify_mu_relation(&MuAction::new(n).unwrap(), p).map_err(|e| e.to_string())?;
            ensure(ok, || format!("mu relation n={n} p={p}"))?;
        }
    }
    for n in 2..=10 {
        for p in [3, 5, 7, 11, 13] {
            let a = BdnAction::new(n, p).map_err(|e| e.to_string())?;
            ensure(verify_bdn_invariance(&a).unwrap(), || format!("BD invariance n={n} p={p}"))?;
            ensure(verify_bdn_relation(&a).unwrap(), || format!("BD relation n={n} p={p}"))?;
        }
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    for p in [2u64, 3, 5] {
        let r = Ring::new(p, &["x", "y"]).unwrap();
        for text in ["x", "x*y", "x^2 - y^3"] {
            let f = parse_poly(text, &r).unwrap();
            for m in (1..=12).filter(|m| m % p as u32 == 0) {
                let c = log_derivation_check(&f, m).map_err(|e| e.to_string())?;
                ensure(c.coincide, || format!("f={text} m={m} p={p}: failing {:?}", c.failing))?;
            }
        }
    }
    let r = Ring::new(2, &["x", "y"]).unwrap();
    let control = log_derivation_check(&parse_poly("x*y", &r).unwrap(), 3).unwrap();
    ensure(!control.coincide, || "negative control (xy, 3, 2) coincides".into())
}

fn criterion_5() -> Outcome {
    let resolved = simultaneous_resolution_check(2).map_err(|e| e.to_string())?;
    if resolved {
        return Ok(());
    }
    let report = resolution_report(2, Center::Section).unwrap();
    let bad: Vec<String> = report
        .charts
        .iter()
        .filter(|c| !c.regular)
        .map(|c| format!("{}-chart `{}` singular along {:?}", c.exceptional, c.strict_transform, c.singular_locus.as_deref().unwrap_or(&[])))
        .collect();
    Err(format!("center (x, y, z+t): {}", bad.join("; ")))
}

fn criterion_6() -> Outcome {
    let r = k3_obstruction_report(DEFAULT_BUDGET, Exec::default()).map_err(|e| e.to_string())?;
    ensure(!r.cardinality_bound.injective_possible, || "bound (21, 20, 4) is true".into())?;
    ensure(r.snf.invariant_factors == vec![2; 21], || format!("snf {:?}", r.snf.invariant_factors))?;
    let row = r.search_table.iter().find(|s| s.k == 2 && s.rank == 1 && s.modulus == 4);
    ensure(row.is_some_and(|s| !s.feasible), || format!("(k=2, r=1, m=4) row {row:?}"))
}

/// `dim k[x,y,z]/(I + m^n)` by Gaussian elimination over F_p.
fn truncated_dimension(ideal: &IdealSpec, n: u32) -> usize {
    let p = ideal.ring().characteristic();
    let monos: Vec<[u32; 3]> = (0..n)
        .flat_map(|d| (0..=d).flat_map(move |a| (0..=d - a).map(move |b| [a, b, d - a - b])))
        .collect();
    let index: HashMap<[u32; 3], usize> = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut pivots: HashMap<usize, Vec<u64>> = HashMap::new();
    let inv = |a: u64| (0..p - 2).fold(1u64, |acc, _| acc * a % p);
    for g in ideal.generators() {
        for m in &monos {
            let mut row = vec![0u64; monos.len()];
            for (t, c) in g.terms() {
                let e = t.exponents();
                if let Some(&i) = index.get(&[e[0] + m[0], e[1] + m[1], e[2] + m[2]]) {
                    row[i] = (row[i] + c) % p;
                }
            }
            while let Some(lead) = row.iter().position(|&c| c != 0) {
                match pivots.get(&lead) {
                    Some(piv) => {
                        let c = row[lead];
                        for (a, b) in row.iter_mut().zip(piv) {
                            *a = (*a + p - c * b % p) % p;
                        }
                    }
                    None => {
                        let s = inv(row[lead]);
                        row.iter_mut().for_each(|a| *a = *a * s % p);
                        pivots.insert(lead, row);
                        break;
                    }
                }
            }
        }
    }
    monos.len() - pivots.len()
}

fn linear_algebra_dimension(ideal: &IdealSpec) -> usize {
    let mut prev = truncated_dimension(ideal, 1);
    for n in 2.. {
        let cur = truncated_dimension(ideal, n);
        if cur == prev {
            return cur;
        }
        prev = cur;
    }
    unreachable!()
}

fn poly_strategy() -> impl Strategy<Value = (PolyFp, PolyFp, PolyFp)> {
    prop::sample::select(vec![2u64, 3, 5, 7, 101]).prop_flat_map(|p| {
        let r = Ring::new(p, &["x", "y", "z"]).unwrap();
        let one = move || {
            let r = r.clone();
            prop::collection::vec((any::<i64>(), prop::collection::vec(0u32..4, 3)), 0..6).prop_map(move |t| {
                PolyFp::from_terms(&r, t.into_iter().map(|(c, e)| (Monomial::from_exponents(e), c)))
            })
        };
        (one(), one(), one())
    })
}

fn run_property<S: Strategy>(cases: u32, s: S, f: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Outcome {
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    runner.run(&s, f).map_err(|e| e.to_string())
}

fn criterion_7() -> Outcome {
    // Groebner bases of every catalog Jacobian ideal: S-polynomials reduce to zero,
    // lex and grevlex agree, and the linear-algebra oracle agrees.
    for (t, p) in Grid::default().pairs() {
        let Ok(model) = equation_for(t, p) else { continue };
        let ideal = jacobian_ideal(&model.equation).unwrap();
        let mut dims = Vec::new();
        for order in [OrderKind::Grevlex, OrderKind::Lex] {
            let gb = buchberger(&ideal.with_order(order)).map_err(|e| e.to_string())?;
            let b = gb.basis();
            for i in 0..b.len() {
                for j in i + 1..b.len() {
                    ensure(reduce(&s_polynomial(&b[i], &b[j]), b).is_zero(), || format!("{t}@{p}: S({i},{j}) != 0"))?;
                }
            }
            dims.push(quotient_dimension(&gb).finite());
        }
        ensure(dims[0] == dims[1], || format!("{t}@{p}: lex {:?} vs grevlex {:?}", dims[1], dims[0]))?;
        let oracle = linear_algebra_dimension(&ideal);
        ensure(dims[0] == Some(oracle), || format!("{t}@{p}: {:?} vs oracle {oracle}", dims[0]))?;
    }
    run_property(500, poly_strategy(), |(f, g, h)| {
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        Ok(())
    })
    .map_err(|e| format!("ring axioms: {e}"))?;
    run_property(500, poly_strategy(), |(f, g, _)| {
        for v in 0..3 {
            let lhs = (&f * &g).partial_index(v);
            prop_assert_eq!(lhs, &(&f * &g.partial_index(v)) + &(&g * &f.partial_index(v)));
        }
        Ok(())
    })
    .map_err(|e| format!("Leibniz: {e}"))?;
    run_property(1000, poly_strategy(), |(f, _, _)| {
        prop_assert_eq!(parse_poly(&f.to_string(), f.ring()).unwrap(), f);
        Ok(())
    })
    .map_err(|e| format!("parser round-trip: {e}"))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    check: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "classification table reproduction", limit: Some(Duration::from_secs(1)), check: criterion_1 },
        Criterion { id: 2, name: "Tjurina dichotomy over the grid", limit: Some(Duration::from_secs(10)), check: criterion_2 },
        Criterion { id: 3, name: "invariant-ring identities", limit: Some(Duration::from_secs(30)), check: criterion_3 },
        Criterion { id: 4, name: "derivation coincidence when p | m", limit: None, check: criterion_4 },
        Criterion { id: 5, name: "simultaneous resolution along (x, y, z+t) at p = 2", limit: Some(Duration::from_secs(1)), check: criterion_5 },
        Criterion { id: 6, name: "rank-21-into-20 obstruction report", limit: Some(Duration::from_secs(5)), check: criterion_6 },
        Criterion { id: 7, name: "property suites", limit: None, check: criterion_7 },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = (c.check)();
        let elapsed = start.elapsed();
        let result = match (result, c.limit) {
            (Ok(()), Some(limit)) if elapsed > limit => {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
            (r, _) => r,
        };
        let limit = c.limit.map_or("none".to_string(), |l| format!("{l:?}"));
        match result {
            Ok(()) => println!("PASS criterion {}: {} ({elapsed:.2?}, limit {limit})", c.id, c.name),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {} ({elapsed:.2?}, limit {limit}): {why}", c.id, c.name);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
