//! One PASS/FAIL line per acceptance criterion.

use std::time::{Duration, Instant};

use fatpoint_core::degen::ledger::run_ledger;
use fatpoint_core::degen::staircase::{colon_by_ideal, restrict_by_ideal, staircase_colon, staircase_restrict, OnCurveScheme};
use fatpoint_core::degen::{identity_scan, theorem_b_sweep, twisted_thresholds, DegenPlan};
use fatpoint_core::dims::{
    check_small_pairs, g_value, parse_multiplicities, randomized_min_config, scan_discrete_convexity, scan_superadditivity,
    SurfaceSeriesSpec,
};
use fatpoint_core::lowdeg::enumerate_special;
use fatpoint_core::oracle::crosscheck::{cremona_agreement, lowdeg_agreement};
use fatpoint_core::oracle::{delta_condition_count, oracle_verdict, OracleConfig, DEFAULT_PRIME, SECOND_PRIME};
use OnCurveScheme::{DeltaAligned, Fat};

const QUADRIC_SPECIAL: [(i64, &str); 17] = [
    (2, "2^3"),
    (2, "4"),
    (3, "2,3^2"),
    (3, "3^3"),
    (3, "4,2^2"),
    (4, "4,2^5"),
    (4, "4,3^2"),
    (4, "4,3^2,2"),
    (4, "4^2,2"),
    (4, "4^2,2^2"),
    (4, "4^2,3"),
    (4, "4^3"),
    (5, "4^3"),
    (5, "4^3,2"),
    (5, "4^3,2^2"),
    (5, "4^3,3"),
    (6, "4^5"),
];

type Criterion = fn() -> Result<Outcome, String>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn spec(d: u32, e: i64, m: &str) -> SurfaceSeriesSpec {
    SurfaceSeriesSpec::new(d, e, parse_multiplicities(m).unwrap()).unwrap()
}

fn two_primes() -> OracleConfig {
    OracleConfig { p: DEFAULT_PRIME, p2: Some(SECOND_PRIME), trials: 3, ..OracleConfig::default() }
}

fn special_tables() -> Result<Outcome, String> {
    let quadric = enumerate_special(2, 8, 20).map_err(|e| e.to_string())?;
    let cubic = enumerate_special(3, 8, 20).map_err(|e| e.to_string())?;
    let mut expected: Vec<SurfaceSeriesSpec> = QUADRIC_SPECIAL.iter().map(|&(e, m)| spec(2, e, m)).collect();
    expected.sort();
    let mut found = quadric.specs();
    found.sort();
    let extra: Vec<String> = found.iter().filter(|s| !expected.contains(s)).map(|s| s.to_string()).collect();
    let missing: Vec<String> = expected.iter().filter(|s| !found.contains(s)).map(|s| s.to_string()).collect();
    let cubic_ok = cubic.specs() == vec![spec(3, 2, "4")] && cubic.conditional.is_empty();
    Ok(Outcome {
        pass: extra.is_empty() && missing.is_empty() && cubic_ok && quadric.conditional.is_empty(),
        detail: format!(
            "quadric: {} found, {} listed, extra {:?}, missing {:?}; cubic: {:?}",
            found.len(),
            expected.len(),
            extra,
            missing,
            cubic.specs().iter().map(|s| s.to_string()).collect::<Vec<_>>()
        ),
    })
}

fn oracle_dimensions() -> Result<Outcome, String> {
    let cases = [(4, 2, "4", 1), (4, 3, "4^2", 0), (4, 5, "10", 1), (4, 5, "9", 7), (5, 5, "10", 1)];
    let mut pass = true;
    let mut parts = Vec::new();
    for (d, e, m, want) in cases {
        let start = Instant::now();
        let v = oracle_verdict(&spec(d, e, m), &two_primes()).map_err(|e| e.to_string())?;
        let took = start.elapsed();
        let dims: Vec<i64> = v.trials.iter().map(|t| t.dim).collect();
        let ok = dims.len() == 6 && dims.iter().all(|&x| x == want) && took < Duration::from_secs(120);
        pass &= ok;
        parts.push(format!("{} = {:?} ({:.1?})", v.spec, dims, took));
    }
    Ok(Outcome { pass, detail: parts.join("; ") })
}

fn delta_calculus() -> Result<Outcome, String> {
    let cfg = OracleConfig::default();
    let anchor = delta_condition_count(4, 5, 9, 7, &cfg).map_err(|e| e.to_string())?;
    let mut tested = 0;
    let mut vacuous = 0;
    let mut broken = Vec::new();
    for d in 1..=5u32 {
        for e in 0..=5i64 {
            for m in 1..=9u32 {
                for n in 0..=m {
                    let c = delta_condition_count(d, e, m, n, &cfg).map_err(|e| e.to_string())?;
                    tested += 1;
                    if !c.hypothesis {
                        vacuous += 1;
                    }
                    if !c.dichotomy_holds {
                        broken.push((d, e, m, n));
                    }
                }
            }
        }
    }
    Ok(Outcome {
        pass: anchor.conditions == 51 && broken.is_empty(),
        detail: format!("delta_{{9,7}} on a quartic in degree 5: {} conditions; dichotomy fails on {:?} of {tested} ({vacuous} without the m-fold hypothesis)", anchor.conditions, broken),
    })
}

fn inequalities() -> Result<Outcome, String> {
    let diffs = [g_value(5, 2) - g_value(5, 1), g_value(5, 3) - g_value(5, 2), g_value(5, 4) - g_value(5, 3)];
    let diffs_ok = diffs.iter().zip([1.77, 1.91, 2.08]).all(|(x, y)| (x - y).abs() <= 0.01);
    let mut super_bad = Vec::new();
    let mut convex_bad = Vec::new();
    for d in 5..=20 {
        let mut failures = scan_superadditivity(d, 60).failures;
        failures.sort();
        if failures != vec![(1, 1), (2, 1)] {
            super_bad.push((d, failures));
        }
        let c = scan_discrete_convexity(d, 50);
        if !c.failures.is_empty() {
            convex_bad.push((d, c.failures));
        }
    }
    let pairs: usize = [5, 6].iter().map(|&d| check_small_pairs(d, 9).violations.len()).sum();
    let min_a = randomized_min_config(5, 2, 1, 5, 10_000, 1).map_err(|e| e.to_string())?;
    let min_b = randomized_min_config(5, 3, 3, 3, 10_000, 2).map_err(|e| e.to_string())?;
    Ok(Outcome {
        pass: diffs_ok && super_bad.is_empty() && convex_bad.is_empty() && pairs == 0 && min_a.ok && min_b.ok,
        detail: format!(
            "g differences {:.3}/{:.3}/{:.3}; superadditivity off-pattern {:?}; convexity failures {:?}; small-pair violations {pairs}; sampled minima {:.4} >= {:.4}, {:.4} >= {:.4}",
            diffs[0], diffs[1], diffs[2], super_bad, convex_bad,
            min_a.min_observed, min_a.single_point_value, min_b.min_observed, min_b.single_point_value
        ),
    })
}

fn identity() -> Result<Outcome, String> {
    let start = Instant::now();
    let r = identity_scan(8, 10, 3, 8, 4, &OracleConfig::default()).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    Ok(Outcome {
        pass: r.failures.is_empty() && r.checked > 0 && took < Duration::from_secs(300),
        detail: format!("{} plans checked, {} skipped, {} failures ({:.1?})", r.checked, r.skipped, r.failures.len(), took),
    })
}

fn figure_one() -> Result<Outcome, String> {
    let plan = DegenPlan::new(6, 2, 2, 3, vec![], vec![4, 4, 4]).map_err(|e| e.to_string())?;
    let thresholds = twisted_thresholds(&plan, 1);
    let tr = run_ledger(&[4, 4, 4], &thresholds[..2], 2).map_err(|e| e.to_string())?;
    let state_ok = tr.splits.len() == 2
        && tr.splits[1].on_curve == vec![DeltaAligned { m: 2, n: 2 }, Fat { m: 3 }]
        && tr.splits[1].pending == vec![4];
    let mut rule_failures = 0;
    for m in 1..=12 {
        for n in 0..=m {
            let sch = OnCurveScheme::normalized(m, n).unwrap();
            if restrict_by_ideal(sch) != staircase_restrict(sch) as u64 || colon_by_ideal(sch) != Some(staircase_colon(sch)) {
                rule_failures += 1;
            }
        }
    }
    Ok(Outcome {
        pass: thresholds == vec![1, 8, 16] && state_ok && rule_failures == 0,
        detail: format!(
            "thresholds {:?}; after two splits on C [{}] pending {:?}; staircase rule mismatches {rule_failures}",
            thresholds,
            tr.splits.last().map(|s| s.on_curve.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")).unwrap_or_default(),
            tr.pending
        ),
    })
}

fn sweep() -> Result<Outcome, String> {
    let start = Instant::now();
    let cfg = OracleConfig { max_columns: 500, ..two_primes() };
    let r = theorem_b_sweep(&[4, 5, 6], 6, 12, &cfg).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    let expected: Vec<SurfaceSeriesSpec> = [4, 5, 6].iter().map(|&d| spec(d, 2, "4")).collect();
    Ok(Outcome {
        pass: r.inconclusive.is_empty()
            && r.special == expected
            && r.oracle_disagreements.is_empty()
            && r.oracle_skipped == 0
            && took < Duration::from_secs(900),
        detail: format!(
            "{} instances, {} complete, {} inconclusive, special {:?}, oracle checked {} (skipped {}), disagreements {} ({:.1?})",
            r.instances,
            r.complete,
            r.inconclusive.len(),
            r.special.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            r.oracle_checked,
            r.oracle_skipped,
            r.oracle_disagreements.len(),
            took
        ),
    })
}

fn agreement() -> Result<Outcome, String> {
    let cfg = OracleConfig { max_columns: 500, ..OracleConfig::default() };
    let mut pass = true;
    let mut parts = Vec::new();
    for d in 1..=3 {
        let r = lowdeg_agreement(d, 8, 10, 4, &cfg).map_err(|e| e.to_string())?;
        pass &= r.disagreements.is_empty() && r.conditional == 0;
        parts.push(format!("d = {d}: {} series, {} disagreements", r.checked, r.disagreements.len()));
    }
    let c = cremona_agreement(200, 8, 2024, &OracleConfig { max_columns: 500, ..two_primes() }).map_err(|e| e.to_string())?;
    pass &= c.mismatches == 0 && c.checks.len() == 200;
    parts.push(format!("Cremona steps: {} instances, {} mismatches", c.checks.len(), c.mismatches));
    Ok(Outcome { pass, detail: parts.join("; ") })
}

fn main() {
    let criteria: [(&str, Criterion); 8] = [
        ("special quadric and cubic series", special_tables),
        ("oracle dimensions", oracle_dimensions),
        ("delta-point conditions", delta_calculus),
        ("g inequalities", inequalities),
        ("virtual dimension identity", identity),
        ("three quadruple points ledger", figure_one),
        ("case analysis sweep", sweep),
        ("classifier and oracle agreement", agreement),
    ];
    let mut passed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (verdict, detail) = match run() {
            Ok(o) => (if o.pass { "PASS" } else { "FAIL" }, o.detail),
            Err(e) => ("FAIL", format!("error: {e}")),
        };
        if verdict == "PASS" {
            passed += 1;
        }
        println!("criterion {}: {verdict} {name}: {detail} [{:.1?}]", i + 1, start.elapsed());
    }
    println!("acceptance: {passed}/{} criteria pass", criteria.len());
}
