//! One PASS/FAIL line per acceptance criterion; exits non-zero on any FAIL.

use std::panic;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use subgrad::fp::coset::{coset_enumerate, CosetTable};
use subgrad::fp::presentation::Presentation;
use subgrad::fp::rs::reidemeister_schreier;
use subgrad::gradient::{run_sequence, summarize, to_csv, SequenceSpec};
use subgrad::smith::{smith_normal_form, IntMatrix};
use subgrad::suites::run_suite;
use subgrad::witt::{build_witt_table, check_ratio_threshold, witt_number};
use subgrad::Caps;

mod common;

type Outcome = Result<String, String>;

fn ensure(ok: bool, what: &str) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn suites(names: &[(&str, Option<usize>)]) -> Outcome {
    let caps = Caps::default();
    let mut parts = Vec::new();
    for &(name, max_order) in names {
        let r = run_suite(name, max_order, &caps).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.checks > 0, &format!("{name}: no checks ran"))?;
        ensure(r.passed(), &format!("{name}: {} of {} checks failed", r.failures, r.checks))?;
        parts.push(format!("{name} {} checks", r.checks));
    }
    Ok(parts.join(", "))
}

fn witt() -> Outcome {
    for i in 1..=20u32 {
        ensure(witt_number(i as u64) == BigInt::from(common::lyndon_oracle(i)), &format!("witt number {i} differs from the Lyndon count"))?;
    }
    let t = build_witt_table(2, 64).map_err(|e| e.to_string())?;
    let first: Vec<[BigInt; 3]> = t.rows[..4].iter().map(|r| [r.r.clone(), r.a.clone(), r.b.clone()]).collect();
    let expected: Vec<[BigInt; 3]> = [[2, 2, 2], [1, 3, 5], [2, 5, 10], [3, 8, 18]].iter().map(|r| r.map(BigInt::from)).collect();
    ensure(first == expected, "rows 1..4")?;
    ensure(t.rows[2].index_exponent == Some(BigInt::from(5)), "index exponent of U3")?;
    for row in &t.rows[1..] {
        ensure(row.ratio().unwrap() == row.growth().unwrap() - BigRational::one(), &format!("ratio identity at n = {}", row.n))?;
    }
    let report = check_ratio_threshold(&t, &BigRational::new(1.into(), 10.into())).map_err(|e| e.to_string())?;
    let (at, max) = report.max_growth.clone().unwrap();
    ensure(max > BigRational::new(199.into(), 100.into()), "running max of b_n/b_(n-1)")?;
    let settles = report.growth_settles_at.ok_or("b_n/b_(n-1) never settles at 1.9 or above")?;
    let tail = t.rows.last().unwrap().growth().unwrap();
    Ok(format!(
        "Lyndon oracle i <= 20, 64 rows, max b_n/b_(n-1) {:.4} at n = {at}, {:.4} at n = 64, >= 1.9 from n = {settles}",
        ratio_f64(&max),
        ratio_f64(&tail)
    ))
}

fn ratio_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

fn machinery() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for case in 0..500 {
        let m = common::random_matrix(&mut rng, 6, 9);
        let snf = smith_normal_form(&IntMatrix::from_rows(&m).unwrap());
        ensure(common::smith_agrees(&m, &snf.factors, snf.rank), &format!("Smith form of matrix {case}"))?;
    }
    for case in 0..100 {
        let r = rng.gen_range(2..=3usize);
        let degree = rng.gen_range(1..=15usize);
        let perms = common::random_action(&mut rng, r, degree);
        let free = Presentation::free(r);
        let table = CosetTable::from_permutations(free.clone(), Vec::new(), &perms, 0).map_err(|e| e.to_string())?;
        let m = table.index();
        let sp = reidemeister_schreier(&table).map_err(|e| e.to_string())?;
        let inv = sp.abelian_invariants();
        ensure(inv.betti == m * (r - 1) + 1 && inv.torsion_factors.is_empty(), &format!("Nielsen-Schreier rank, subgroup {case}"))?;
        ensure(sp.schreier_generators.iter().all(|g| common::act(&perms, g, 0) == 0), "Schreier generators fix the base point")?;
        let again = coset_enumerate(&free, &sp.schreier_generators, 100_000).map_err(|e| e.to_string())?;
        ensure(again.index() == m, "re-enumerated index")?;
    }
    let s3 = Presentation::from_strs(2, &["aa", "bbb", "abab"]).unwrap();
    ensure(coset_enumerate(&s3, &[], 1000).map_err(|e| e.to_string())?.index() == 6, "order of <a,b | a^2, b^3, abab>")?;
    Ok("500 Smith forms, 100 free subgroups, coset enumeration of S3".into())
}

fn trend() -> Outcome {
    let spec = SequenceSpec::standard_fiber_products();
    let records = run_sequence(&spec).map_err(|e| e.to_string())?;
    let again = run_sequence(&spec).map_err(|e| e.to_string())?;
    ensure(to_csv(&records) == to_csv(&again), "output differs between runs")?;
    ensure(records.len() == 3, "three levels")?;
    let first = records.first().unwrap().index as f64;
    let last = records.last().unwrap();
    ensure((last.index as f64 / first).log10() >= 2.0, "indices span two orders of magnitude")?;
    let s = summarize(&records).map_err(|e| e.to_string())?;
    ensure(s.rank_ratio_decreasing, "rank_ratio strictly decreasing")?;
    ensure(s.torsion_ratio_decreasing, "torsion_ratio strictly decreasing")?;
    ensure(last.rank_ratio < BigRational::new(1.into(), 5.into()), "final rank_ratio below 0.2")?;
    let idx: Vec<String> = records.iter().map(|r| r.index.to_string()).collect();
    Ok(format!("indices {}, final rank_ratio {}", idx.join("/"), last.rank_ratio))
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("1 witt numbers and index table", Box::new(witt)),
        ("2 schur multipliers", Box::new(|| suites(&[("schur", Some(16)), ("commutator-index", Some(32))]))),
        ("3 generator bounds in products", Box::new(|| suites(&[("generator-bounds", Some(8)), ("normality", Some(8))]))),
        ("4 relator bounds", Box::new(|| suites(&[("recursion-step", None), ("relator-bounds", Some(8))]))),
        ("5 torsion bounds", Box::new(|| suites(&[("torsion-bounds", Some(8))]))),
        ("6 machinery oracles", Box::new(machinery)),
        ("7 gradient trend", Box::new(trend)),
    ];
    let mut all = true;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(panic::AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail} ({secs:.1}s)"),
            Err(why) => {
                all = false;
                println!("FAIL criterion {name}: {why} ({secs:.1}s)");
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
