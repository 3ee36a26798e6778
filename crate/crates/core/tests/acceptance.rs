//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Expected values are recomputed here from closed forms and
//! independent arithmetic wherever possible instead of being read back from
//! the library.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Pow};

use tpgroup::arith::{prodpi_collision_scan, prop_097, prop_097_constant};
use tpgroup::catalog::{scan_and_report, Catalog, RunReport, ScanOptions};
use tpgroup::group::{
    alternating_group, c2_cubed_rtimes_c7, c3_squared_rtimes_c4, general_linear_3_2, make_named_family,
    special_linear_2, Family, GroupTable, Lattice,
};
use tpgroup::rational::{self, ratio, BigRational};
use tpgroup::tp::{tp, TheoremVerdict, MONOTONICITY_IDS, STRUCTURE_IDS};
use tpgroup::transversal::{bounds_report, oracle_agreement, ENUMERATION_BUDGET};
use tpgroup::Exec;

type Outcome = Result<String, String>;

fn half_pow(k: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2).pow(k))
}

/// `t!/t^t` from integer factorials.
fn f(t: u64) -> BigRational {
    let fact: BigInt = (1..=t).map(BigInt::from).product();
    BigRational::new(fact, BigInt::from(t).pow(t as u32))
}

fn fam(f: Family) -> GroupTable {
    make_named_family(f).expect("family builds")
}

fn check(failures: &mut Vec<String>, ok: bool, what: impl FnOnce() -> String) {
    if !ok {
        failures.push(what());
    }
}

fn finish(failures: Vec<String>, detail: String) -> Outcome {
    if failures.is_empty() {
        Ok(detail)
    } else {
        Err(failures.join("; "))
    }
}

/// The full builtin scan, shared by the verdict-based criteria.
fn scan() -> &'static RunReport {
    static REPORT: OnceLock<RunReport> = OnceLock::new();
    REPORT.get_or_init(|| {
        scan_and_report(&Catalog::builtin(), &ScanOptions::default(), None)
            .expect("builtin scan runs")
            .report
    })
}

fn verdicts<'a>(theorems: &'a [&'a str]) -> impl Iterator<Item = &'static TheoremVerdict> + 'a {
    scan()
        .entries
        .iter()
        .flat_map(|e| &e.verdicts)
        .filter(move |v| theorems.contains(&v.theorem.as_str()))
}

fn verdict(id: &str, theorem: &str) -> &'static TheoremVerdict {
    scan()
        .entries
        .iter()
        .find(|e| e.id == id)
        .and_then(|e| e.verdicts.iter().find(|v| v.theorem == theorem))
        .unwrap_or_else(|| panic!("no {theorem} verdict for {id}"))
}

fn criterion_1() -> Outcome {
    let mut failures = Vec::new();
    let mut cases: Vec<(String, GroupTable, BigRational)> = Vec::new();
    for p in [3usize, 5, 7] {
        for k in 1..=3 {
            let g = fam(Family::CpRtimesC2n { p, k });
            cases.push((format!("C{p}⋊C{}", 1 << k), g, half_pow((p as u32 - 1) / 2)));
        }
    }
    for n in 3usize..=12 {
        let e = if n % 2 == 1 { (n - 1) / 2 } else { (n - 2) / 2 };
        cases.push((format!("D{n}"), fam(Family::Dihedral(n)), half_pow(e as u32)));
    }
    cases.push(("Q16".into(), fam(Family::GeneralizedQuaternion(16)), ratio(1, 2)));
    cases.push(("C4⋊C4".into(), fam(Family::Metacyclic { m: 4, n: 4, r: 3 }), ratio(1, 2)));
    cases.push(("A4".into(), alternating_group(4).unwrap(), ratio(2, 9)));
    cases.push(("A5".into(), alternating_group(5).unwrap(), half_pow(14)));
    cases.push(("C2³⋊C7".into(), c2_cubed_rtimes_c7().unwrap(), half_pow(12)));
    cases.push(("C3²⋊C4".into(), c3_squared_rtimes_c4().unwrap(), half_pow(8)));
    cases.push(("SL2(3)".into(), special_linear_2(3).unwrap(), ratio(2, 9) * ratio(2, 9)));

    let start = Instant::now();
    for (name, g, want) in &cases {
        let got = tp(g).map(|r| r.tp);
        check(&mut failures, got.as_ref().ok() == Some(want), || {
            format!("{name}: {:?}, expected {}", got.map(|x| rational::display(&x)), rational::display(want))
        });
    }
    let small = start.elapsed();
    check(&mut failures, small < Duration::from_secs(10), || format!("small groups took {small:?}"));

    let start = Instant::now();
    let psl = tp(&general_linear_3_2().unwrap()).map(|r| r.tp);
    let big = start.elapsed();
    check(&mut failures, psl.as_ref().ok() == Some(&half_pow(40)), || format!("PSL3(2): {psl:?}"));
    check(&mut failures, big < Duration::from_secs(300), || format!("PSL3(2) took {big:?}"));
    finish(
        failures,
        format!("{} groups in {:.2?}, PSL3(2) = 2^-40 in {big:.2?}", cases.len() + 1, small),
    )
}

fn criterion_2() -> Outcome {
    let mut failures = Vec::new();
    let (mut groups, mut pairs, mut enumerated) = (0, 0, 0);
    for e in Catalog::builtin().entries() {
        if e.known_order().is_none_or(|n| n > 24) {
            continue;
        }
        let g = e.build().map_err(|x| x.to_string())?;
        let lat = Lattice::new(&g).map_err(|x| x.to_string())?;
        groups += 1;
        for h in lat.subgroups() {
            for k in lat.subgroups().iter().filter(|k| k.order() == h.order()) {
                pairs += 1;
                let leaves = (h.order() as u128).checked_pow(h.index() as u32);
                let fits = leaves.is_some_and(|l| l <= ENUMERATION_BUDGET);
                match oracle_agreement(&g, h, k, Exec::default()) {
                    Ok(r) => {
                        enumerated += r.from_enumeration.is_some() as usize;
                        check(&mut failures, r.agree() && r.from_enumeration.is_some() == fits, || {
                            format!("{}: |H| = {} pair disagrees", e.id, h.order())
                        });
                    }
                    Err(err) => failures.push(format!("{}: {err}", e.id)),
                }
            }
        }
    }
    finish(
        failures,
        format!("{groups} groups, {pairs} pairs, {enumerated} also enumerated"),
    )
}

fn criterion_3() -> Outcome {
    let mut failures = Vec::new();
    let mut subgroups = 0;
    for e in Catalog::builtin().entries() {
        let g = e.build().map_err(|x| x.to_string())?;
        let lat = Lattice::new(&g).map_err(|x| x.to_string())?;
        for (i, h) in lat.subgroups().iter().enumerate() {
            if lat.is_normal(i) {
                continue;
            }
            subgroups += 1;
            match bounds_report(&g, h, h) {
                Ok(b) => check(&mut failures, b.all_hold, || format!("{}: subgroup {i}", e.id)),
                Err(err) => failures.push(format!("{}: {err}", e.id)),
            }
        }
    }
    check(&mut failures, verdicts(&["bounds"]).all(|v| v.consistent), || "bounds verdicts".into());

    let mut instances = 0;
    for n in 1..=60u64 {
        for s in (1..=n).filter(|s| 4 * s <= 3 * n) {
            instances += 1;
            let ok = prop_097(n, s).is_ok_and(|p| p.holds);
            check(&mut failures, ok, || format!("gamma bound fails at n = {n}, s = {s}"));
        }
    }

    // c = (8/7) f(4/3)^(3/4) with Γ(7/3) = (4/9) Γ(1/3).
    let gamma_third = 2.678_938_534_707_747_6_f64;
    let f43 = (4.0 / 9.0) * gamma_third / (4.0f64 / 3.0).powf(4.0 / 3.0);
    let c_oracle = 8.0 / 7.0 * f43.powf(0.75);
    let c = prop_097_constant();
    check(&mut failures, (c - 0.976986).abs() <= 1e-6 && (c - c_oracle).abs() <= 1e-12, || {
        format!("c = {c}, oracle {c_oracle}")
    });
    finish(
        failures,
        format!("{subgroups} non-normal subgroups, {instances} (n, s) instances, c = {c:.6}"),
    )
}

fn criterion_4() -> Outcome {
    let mut failures = Vec::new();
    let r = scan();
    let ids_with = |t: &BigRational, cap: usize| -> BTreeSet<&str> {
        r.entries
            .iter()
            .filter(|e| e.order <= cap && e.tp == *t)
            .map(|e| e.id.as_str())
            .collect()
    };
    // Catalog entries that are, by construction, members of the families.
    let half: BTreeSet<&str> =
        ["cp3k1", "cp3k2", "cp3k3", "d03", "d04", "q16", "c4c4", "frob3", "c3_by_c4"].into();
    let quarter: BTreeSet<&str> =
        ["cp5k1", "cp5k2", "cp5k3", "d05", "d06", "m4_2", "c4od4", "c2xd4", "c2sq_c4"].into();
    let got_half = ids_with(&ratio(1, 2), 48);
    let got_quarter = ids_with(&ratio(1, 4), 48);
    check(&mut failures, got_half == half, || format!("tp = 1/2 on {got_half:?}"));
    check(&mut failures, got_quarter == quarter, || format!("tp = 1/4 on {got_quarter:?}"));

    let sweep = ["tp-half-classification", "tp-quarter-classification", "no-two-prime-value"];
    check(&mut failures, verdicts(&sweep).all(|v| v.consistent), || "classification verdicts".into());

    let primes: Vec<u64> = (2..=100u64).filter(|&p| (2..p).all(|d| p % d != 0)).collect();
    let min = r.entries.iter().map(|e| &e.tp).min().cloned().unwrap_or_else(BigRational::one);
    let mut two_prime = BTreeMap::new();
    for (i, &p) in primes.iter().enumerate() {
        for &q in &primes[i + 1..] {
            let v = f(p) * f(q);
            if v < min {
                break;
            }
            two_prime.insert(v, (p, q));
        }
    }
    for e in r.entries.iter().filter(|e| e.order <= 100) {
        if let Some((p, q)) = two_prime.get(&e.tp) {
            failures.push(format!("{} has tp = f({p}) f({q})", e.id));
        }
    }
    let swept = r.entries.iter().filter(|e| e.order <= 48).count();
    finish(
        failures,
        format!("{swept} entries of order <= 48, {} two-prime values excluded", two_prime.len()),
    )
}

fn criterion_5() -> Outcome {
    let mut failures = Vec::new();
    let n = verdicts(STRUCTURE_IDS).count();
    check(&mut failures, verdicts(STRUCTURE_IDS).all(|v| v.consistent), || "inconsistent verdict".into());
    let sharp = [
        ("psl3_2", "solubility-gate", half_pow(40)),
        ("c3sq_c4", "supersolubility-gate", half_pow(8)),
        ("c7c3", "nilpotency-gate", ratio(4, 81)),
        ("sl2_3", "derived-length", ratio(4, 81)),
    ];
    for (id, theorem, value) in &sharp {
        let v = verdict(id, theorem);
        let on = v.details.get("on_bound").map(String::as_str) == Some("true");
        let exact = v.details.get("tp") == Some(&rational::display(value));
        // Sharp: the value sits on the threshold and the conclusion fails.
        check(&mut failures, on && exact && !v.conclusion_holds, || format!("{id} {theorem}: {:?}", v.details));
    }
    check(
        &mut failures,
        verdict("sl2_3", "derived-length").details.get("derived_length").map(String::as_str) == Some("3"),
        || "SL2(3) derived length".into(),
    );
    finish(failures, format!("{n} verdicts, {} sharpness witnesses on their bounds", sharp.len()))
}

/// Multisets of integers >= 2 with sum <= `max`, by brute force.
fn multisets(max: u64) -> Vec<Vec<u64>> {
    fn go(rem: u64, largest: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        out.push(cur.clone());
        for t in 2..=largest.min(rem) {
            cur.push(t);
            go(rem - t, t, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(max, max, &mut Vec::new(), &mut out);
    out
}

fn criterion_6() -> Outcome {
    let mut failures = Vec::new();
    let start = Instant::now();
    let report = prodpi_collision_scan(28).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    check(&mut failures, report.holds(), || format!("{} violations", report.prime_product_violations.len()));
    check(&mut failures, took < Duration::from_secs(60), || format!("scan took {took:?}"));

    // Independent brute force on a smaller range.
    let mut by_value: BTreeMap<BigRational, Vec<Vec<u64>>> = BTreeMap::new();
    for m in multisets(18) {
        let v = m.iter().fold(BigRational::one(), |acc, &t| acc * f(t));
        by_value.entry(v).or_default().push(m);
    }
    let is_prime = |t: u64| (2..t).all(|d| t % d != 0);
    for sets in by_value.values() {
        let distinct_primes = sets.iter().any(|m| {
            m.iter().all(|&t| is_prime(t)) && m.windows(2).all(|w| w[0] != w[1])
        });
        check(&mut failures, !distinct_primes || sets.len() == 1, || format!("brute force collision {sets:?}"));
    }
    finish(
        failures,
        format!("{} multisets up to sum 28 in {took:.2?}", report.multisets_scanned),
    )
}

fn criterion_7() -> Outcome {
    let mut failures = Vec::new();
    let mut ids: Vec<&str> = MONOTONICITY_IDS.to_vec();
    ids.extend(["direct-bound", "semidirect-bound"]);
    let n = verdicts(&ids).count();
    for v in verdicts(&ids).filter(|v| !v.consistent) {
        failures.push(format!("{} {}", v.group, v.theorem));
    }
    for law in ["pg-sub", "normal-quotient", "subgroup-monotone", "quotient-monotone"] {
        check(&mut failures, verdicts(&[law]).any(|v| v.hypothesis_holds), || format!("{law} never exercised"));
    }
    let ext = verdict("s3xc5", "direct-bound");
    // tp(S3)^5 = (1/2)^5, attained.
    let bound = rational::display(&rational::pow(&ratio(1, 2), 5));
    let ok = ext.details["bound"] == bound && ext.details["tp"] == bound && ext.details["equality"] == "true";
    check(&mut failures, ok, || format!("S3×C5: {:?}", ext.details));
    finish(failures, format!("{n} verdicts, S3×C5 attains 2^-5"))
}

fn criterion_8() -> Outcome {
    let mut failures = Vec::new();
    let mut pairs = 0usize;
    for v in verdicts(&["graph-invariants"]) {
        pairs += v.details["instances"].parse::<usize>().unwrap_or(0);
        check(&mut failures, v.consistent && v.hypothesis_holds, || format!("{}: {:?}", v.group, v.details));
    }
    let entries = scan().entries.len();
    check(&mut failures, verdicts(&["graph-invariants"]).count() == entries, || "missing entries".into());
    finish(failures, format!("{entries} groups, {pairs} coset graphs"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("lemma values", criterion_1),
        ("oracle triple agreement", criterion_2),
        ("bounds suite", criterion_3),
        ("classification sweeps", criterion_4),
        ("structure verdicts and sharpness", criterion_5),
        ("prime product collision scan", criterion_6),
        ("monotonicity and extension laws", criterion_7),
        ("graph property suites", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}; {took:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({why})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
