use std::fmt::Write as _;

use fatpoint_core::degen::ledger::run_ledger;
use fatpoint_core::degen::{identity_scan, theorem_b_sweep, TheoremBOutcome, TheoremBVerifier};
use fatpoint_core::dims::{
    check_small_pairs, fat_degree, format_multiplicities, g_value, h0_curve, h0_surface, parse_multiplicities,
    randomized_min_config, scan_discrete_convexity, scan_superadditivity, CICurve, SurfaceSeriesSpec,
};
use fatpoint_core::lowdeg::{classify_lowdeg, enumerate_special};
use fatpoint_core::oracle::crosscheck::{cremona_agreement, lowdeg_agreement};
use fatpoint_core::oracle::{delta_condition_count, oracle_verdict, Certification, OracleError};
use fatpoint_core::planar::Confidence;
use serde_json::json;

use crate::report::{rules, to_value, CliError, Outcome, Verdict};
use crate::{CheckCommand, ClassifyArgs, Command, DegenCommand, DimsCommand, EnumerateArgs, Expectation, OracleCmdArgs, SeriesArgs};

const H0_SURFACE_RULE: &str = "h0(O_S(e)) = C(e+3,3) - C(e-d+3,3)";
const H0_CURVE_RULE: &str = "h0(O_C(k)) = C(k+3,3) - C(k-s+3,3) - C(k-t+3,3) + C(k-s-t+3,3)";
const VDIM_RULE: &str = "vdim = h0(O_S(e)) - sum C(m_i+1,2)";
const EDIM_RULE: &str = "edim = max(vdim, -1) + 1";
const G_RULE: &str = "g(a) solves g(g+1)/2 = f(a)";
const SUPERADDITIVITY_RULE: &str = "g(a) + g(a') >= g(a+a') except (a,a') in {(1,1),(2,1)}";
const CONVEXITY_RULE: &str = "g(k+1) - g(k) nondecreasing";
const SMALL_PAIRS_RULE: &str = "v(D) + v(D') over quadric and linear classes";
const MIN_CONFIG_RULE: &str = "sampled v(D + D') >= single-point value - 1e-6";
const PLANAR_RULES: [&str; 3] = ["planar-model", "line-split: m1 + m2 >= e + 1", "cremona: m1 + m2 + m3 > e"];
const ORACLE_RULES: [&str; 3] = ["jet-conditions-on-random-surface", "rank-over-F_p", "minimum-over-trials"];
const DELTA_RULE: &str = "delta(m,n) imposes min(deg, h0) or the conditions of an (m+1)-fold point";
const IDENTITY_RULE: &str = "vdim L_e^d(G_S, G_T) = vdim L_{e+s*mu}^T(G_T; mu^{dst}; w)";

pub fn run(cmd: &Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Dims(c) => dims(c),
        Command::Classify(a) => classify(a),
        Command::EnumerateSpecial(a) => enumerate(a),
        Command::Oracle(a) => oracle(a),
        Command::Degen(c) => degen(c),
        Command::Check(c) => check(c),
    }
}

fn series(a: &SeriesArgs) -> Result<SurfaceSeriesSpec, CliError> {
    let mults = parse_multiplicities(&a.mults).map_err(CliError::usage)?;
    SurfaceSeriesSpec::new(a.d, a.e, mults).map_err(CliError::usage)
}

fn plain(config: serde_json::Value, rules: Vec<String>, payload: serde_json::Value, text: String) -> Outcome {
    Outcome { config, rules, verdict: Verdict::Verified, payload, text }
}

fn held(ok: bool) -> Verdict {
    if ok {
        Verdict::Verified
    } else {
        Verdict::Violated
    }
}

/// Budget overruns are inconclusive; anything else is a bad request.
fn oracle_failure(config: serde_json::Value, rules: Vec<String>, e: OracleError) -> Result<Outcome, CliError> {
    match e {
        OracleError::BudgetExceeded { .. } => Ok(Outcome {
            config,
            rules,
            verdict: Verdict::Inconclusive,
            payload: json!({ "error": e.to_string() }),
            text: format!("inconclusive: {e}\n"),
        }),
        e => Err(CliError::usage(e)),
    }
}

fn expectation_verdict(expect: Option<Expectation>, special: bool) -> Verdict {
    match expect {
        Some(Expectation::Special) if !special => Verdict::Violated,
        Some(Expectation::Nonspecial) if special => Verdict::Violated,
        _ => Verdict::Verified,
    }
}

fn dims(cmd: &DimsCommand) -> Result<Outcome, CliError> {
    Ok(match *cmd {
        DimsCommand::H0Surface { d, e } => {
            let h0 = h0_surface(d, e).map_err(CliError::usage)?;
            plain(
                json!({ "d": d, "e": e }),
                rules(&[H0_SURFACE_RULE]),
                json!({ "h0": h0 }),
                format!("{h0}\nformula: {H0_SURFACE_RULE}\n"),
            )
        }
        DimsCommand::H0Curve { s, t, k } => {
            let h0 = h0_curve(CICurve::new(s, t).map_err(CliError::usage)?, k);
            plain(
                json!({ "s": s, "t": t, "k": k }),
                rules(&[H0_CURVE_RULE]),
                json!({ "h0": h0 }),
                format!("{h0}\nformula: {H0_CURVE_RULE}\n"),
            )
        }
        DimsCommand::Vdim(ref a) => {
            let spec = series(a)?;
            let (vdim, edim) = (spec.vdim(), spec.edim());
            plain(
                json!({ "d": a.d, "e": a.e, "mults": spec.mults }),
                rules(&[H0_SURFACE_RULE, VDIM_RULE, EDIM_RULE]),
                json!({ "spec": spec, "h0": spec.h0(), "degree": spec.degree_of_scheme(), "vdim": vdim, "edim": edim }),
                format!(
                    "{vdim}\n{spec}: h0 {}, scheme degree {}, vdim {vdim}, edim {edim}\nformula: {VDIM_RULE}\n",
                    spec.h0(),
                    spec.degree_of_scheme()
                ),
            )
        }
        DimsCommand::GScan { d, amax } => {
            let g: Vec<f64> = (0..=amax).map(|a| g_value(d, a)).collect();
            let diffs: Vec<f64> = g.windows(2).map(|w| w[1] - w[0]).collect();
            let scan = scan_superadditivity(d, amax);
            let mut text = String::new();
            for (a, x) in g.iter().enumerate().skip(1).take(6) {
                let _ = writeln!(text, "g({a}) = {x:.4}");
            }
            let _ = writeln!(text, "superadditivity failures (a, a'): {:?}", scan.failures);
            if let Some(w) = &scan.warning {
                let _ = writeln!(text, "warning: {w}");
            }
            let verdict = held(scan.failures.iter().all(|p| [(1, 1), (2, 1)].contains(p)));
            Outcome {
                config: json!({ "d": d, "amax": amax }),
                rules: rules(&[G_RULE, SUPERADDITIVITY_RULE]),
                verdict,
                payload: json!({ "g": g, "differences": diffs, "superadditivity": scan }),
                text,
            }
        }
        DimsCommand::ConvexityScan { d, kmax } => {
            let scan = scan_discrete_convexity(d, kmax);
            Outcome {
                config: json!({ "d": d, "kmax": kmax }),
                rules: rules(&[G_RULE, CONVEXITY_RULE]),
                verdict: held(scan.failures.is_empty()),
                text: format!("convexity failures for k <= {kmax}: {:?}\n", scan.failures),
                payload: to_value(&scan),
            }
        }
        DimsCommand::SmallPairs { d, r } => {
            let rep = check_small_pairs(d, r);
            Outcome {
                config: json!({ "d": d, "r": r }),
                rules: rules(&[SMALL_PAIRS_RULE]),
                verdict: held(rep.violations.is_empty()),
                text: format!("{} pairs checked, {} violations\n", rep.checked, rep.violations.len()),
                payload: to_value(&rep),
            }
        }
    })
}

fn classify(a: &ClassifyArgs) -> Result<Outcome, CliError> {
    let spec = series(&a.series)?;
    let config = json!({ "d": spec.d, "e": spec.e, "mults": spec.mults, "expect": a.expect.map(|x| format!("{x:?}").to_lowercase()), "oracle": a.oracle.config() });
    if spec.d <= 3 {
        let v = classify_lowdeg(&spec).map_err(CliError::usage)?;
        let verdict = if v.confidence == Confidence::Unconditional {
            expectation_verdict(a.expect, v.special)
        } else {
            Verdict::Inconclusive
        };
        let mut text = format!(
            "{}: {} (dim {}, vdim {}, edim {})\n",
            spec,
            if v.special { "special" } else { "nonspecial" },
            v.dim,
            spec.vdim(),
            v.edim
        );
        let tr = &v.planar_verdict.trace;
        let _ = writeln!(text, "planar model {}: {} steps to {}", v.planar, tr.steps.len(), tr.terminal);
        if v.confidence != Confidence::Unconditional {
            let _ = writeln!(text, "conditional on the planar conjecture beyond its known range");
        }
        let mut rs = rules(&PLANAR_RULES);
        rs.extend(rules(&[VDIM_RULE]));
        return Ok(Outcome { config, rules: rs, verdict, payload: to_value(&v), text });
    }
    theorem_b(&spec, a.expect, &a.oracle, config)
}

fn theorem_b(
    spec: &SurfaceSeriesSpec,
    expect: Option<Expectation>,
    oracle: &crate::OracleArgs,
    config: serde_json::Value,
) -> Result<Outcome, CliError> {
    let out = TheoremBVerifier::new(oracle.config()).verify(spec.d, spec.e, &spec.mults).map_err(CliError::usage)?;
    let (verdict, rs, text) = match &out {
        TheoremBOutcome::Complete(tr) => {
            let c = tr.conclusion;
            let head = format!(
                "{}: {} (dim {}, edim {})\n",
                spec,
                if c.special { "special" } else { "nonspecial" },
                c.dim,
                c.edim
            );
            (expectation_verdict(expect, c.special), tr.rules.clone(), format!("{head}{tr}"))
        }
        TheoremBOutcome::Inconclusive(i) => {
            (Verdict::Inconclusive, Vec::new(), format!("{}: inconclusive at {}\n", spec, i.step))
        }
    };
    Ok(Outcome { config, rules: rs, verdict, payload: to_value(&out), text })
}

fn enumerate(a: &EnumerateArgs) -> Result<Outcome, CliError> {
    let table = enumerate_special(a.d, a.emax, a.slack).map_err(CliError::usage)?;
    let text = if a.csv {
        let mut w = csv::Writer::from_writer(Vec::new());
        let csv_error = |e: csv::Error| CliError::usage(e);
        w.write_record(["d", "e", "mults", "vdim", "dim"]).map_err(csv_error)?;
        for x in &table.entries {
            w.serialize((x.spec.d, x.spec.e, format_multiplicities(&x.spec.mults), x.vdim, x.dim)).map_err(csv_error)?;
        }
        String::from_utf8(w.into_inner().map_err(|e| CliError::usage(e.error()))?).expect("csv is utf8")
    } else {
        table.to_string()
    };
    let mut rs = rules(&PLANAR_RULES);
    rs.push("scan L_e^d(4^a,3^b,2^c) with degree <= h0 + slack".into());
    Ok(Outcome {
        config: json!({ "d": a.d, "emax": a.emax, "slack": a.slack }),
        rules: rs,
        verdict: if table.conditional.is_empty() { Verdict::Verified } else { Verdict::Inconclusive },
        payload: to_value(&table),
        text,
    })
}

fn oracle(a: &OracleCmdArgs) -> Result<Outcome, CliError> {
    let spec = series(&a.series)?;
    let cfg = a.oracle.config();
    let config = json!({ "d": spec.d, "e": spec.e, "mults": spec.mults, "oracle": cfg });
    let v = match oracle_verdict(&spec, &cfg) {
        Ok(v) => v,
        Err(e) => return oracle_failure(config, rules(&ORACLE_RULES), e),
    };
    let mut text = format!(
        "{}: dim {} (edim {}), {}\n",
        v.spec,
        v.observed_dim,
        v.edim,
        serde_json::to_value(v.certified).ok().and_then(|x| x.as_str().map(String::from)).unwrap_or_default()
    );
    for t in &v.trials {
        let _ = writeln!(text, "  p = {}, trial {}: dim {}", t.prime, t.trial, t.dim);
    }
    Ok(Outcome {
        config,
        rules: rules(&ORACLE_RULES),
        verdict: if v.certified == Certification::Inconclusive { Verdict::Inconclusive } else { Verdict::Verified },
        payload: to_value(&v),
        text,
    })
}

fn degen(cmd: &DegenCommand) -> Result<Outcome, CliError> {
    match cmd {
        DegenCommand::Ledger { thresholds, queue, t } => {
            let queue = parse_multiplicities(queue).map_err(CliError::usage)?;
            let config = json!({ "thresholds": thresholds, "queue": queue, "t": t });
            let base = ["residuals-on-C-contribute-first", "tipping-point-leaves-delta(m-1,m-v)", "general-position: a + 2b <= h0(O_T(2)) - 1"];
            match run_ledger(&queue, thresholds, *t) {
                Ok(tr) => {
                    let mut rs = rules(&base);
                    rs.push(tr.rule.clone());
                    let verdict = held(tr.general_position.ok);
                    Ok(Outcome { config, rules: rs, verdict, text: tr.to_string(), payload: to_value(&tr) })
                }
                Err(e) => {
                    use fatpoint_core::degen::ledger::LedgerError::*;
                    let partial = match &e {
                        InsufficientMultiplicity { partial, .. } | ResidualTipsSplit { partial, .. } => Some(partial.as_ref()),
                        ZeroThreshold { .. } | ZeroMultiplicity => return Err(CliError::usage(e)),
                    };
                    let mut text = String::new();
                    if let Some(p) = partial {
                        text.push_str(&p.to_string());
                    }
                    let _ = writeln!(text, "inconclusive: {e}");
                    Ok(Outcome {
                        config,
                        rules: rules(&base),
                        verdict: Verdict::Inconclusive,
                        payload: json!({ "error": e.to_string(), "partial": partial }),
                        text,
                    })
                }
            }
        }
        DegenCommand::VerifyTheoremB { series: s, pad, expect, oracle } => {
            let spec = series(s)?;
            if !pad && spec.vdim() > 0 {
                return Err(CliError::Usage(format!(
                    "{spec} has vdim {} > 0; pass --pad to add simple points",
                    spec.vdim()
                )));
            }
            let config = json!({ "d": spec.d, "e": spec.e, "mults": spec.mults, "pad": pad, "expect": expect.map(|x| format!("{x:?}").to_lowercase()), "oracle": oracle.config() });
            theorem_b(&spec, *expect, oracle, config)
        }
        DegenCommand::Sweep { degrees, emax, max_points, oracle } => {
            let cfg = oracle.config();
            let r = theorem_b_sweep(degrees, *emax, *max_points, &cfg).map_err(CliError::usage)?;
            let verdict = if !r.inconclusive.is_empty() {
                Verdict::Inconclusive
            } else {
                held(r.oracle_disagreements.is_empty())
            };
            let text = format!(
                "{} instances, {} complete, {} inconclusive\nspecial: [{}]\noracle: {} checked, {} over budget, {} disagreements\n",
                r.instances,
                r.complete,
                r.inconclusive.len(),
                r.special.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", "),
                r.oracle_checked,
                r.oracle_skipped,
                r.oracle_disagreements.len()
            );
            Ok(Outcome {
                config: json!({ "degrees": degrees, "emax": emax, "max_points": max_points, "oracle": cfg }),
                rules: rules(&ORACLE_RULES),
                verdict,
                payload: to_value(&r),
                text,
            })
        }
        DegenCommand::IdentityScan { max_d, emax, max_mu, max_points, max_mult, oracle } => {
            let cfg = oracle.config();
            let r = identity_scan(*max_d, *emax, *max_mu, *max_points, *max_mult, &cfg).map_err(CliError::usage)?;
            Ok(Outcome {
                config: json!({ "max_d": max_d, "emax": emax, "max_mu": max_mu, "max_points": max_points, "max_mult": max_mult, "oracle": cfg }),
                rules: rules(&[IDENTITY_RULE, VDIM_RULE]),
                verdict: held(r.failures.is_empty()),
                text: format!("{} plans checked, {} skipped, {} failures\n", r.checked, r.skipped, r.failures.len()),
                payload: to_value(&r),
            })
        }
    }
}

fn check(cmd: &CheckCommand) -> Result<Outcome, CliError> {
    match cmd {
        CheckCommand::Inequalities { d, amax, kmax, samples, seed } => {
            let (d, amax, kmax, samples, seed) = (*d, *amax, *kmax, *samples, *seed);
            let diffs: Vec<f64> = (1..=3).map(|a| g_value(d, a + 1) - g_value(d, a)).collect();
            let sup = scan_superadditivity(d, amax);
            let conv = scan_discrete_convexity(d, kmax);
            let pairs = check_small_pairs(d, 9);
            let min_a = randomized_min_config(d, 2, 1, 5, samples, seed).map_err(CliError::usage)?;
            let min_b = randomized_min_config(d, 3, 3, 3, samples, seed.wrapping_add(1)).map_err(CliError::usage)?;
            let sup_ok = sup.failures.iter().all(|p| [(1, 1), (2, 1)].contains(p));
            let ok = sup_ok && conv.failures.is_empty() && pairs.violations.is_empty() && min_a.ok && min_b.ok;
            let text = format!(
                "g differences: {}\nsuperadditivity failures: {:?}\nconvexity failures: {:?}\nsmall pairs: {} checked, {} violations\nsampled minima: {:.4} (single point {:.4}), {:.4} (single point {:.4})\n",
                diffs.iter().map(|x| format!("{x:.3}")).collect::<Vec<_>>().join(" / "),
                sup.failures,
                conv.failures,
                pairs.checked,
                pairs.violations.len(),
                min_a.min_observed,
                min_a.single_point_value,
                min_b.min_observed,
                min_b.single_point_value
            );
            Ok(Outcome {
                config: json!({ "d": d, "amax": amax, "kmax": kmax, "samples": samples, "seed": seed }),
                rules: rules(&[G_RULE, SUPERADDITIVITY_RULE, CONVEXITY_RULE, SMALL_PAIRS_RULE, MIN_CONFIG_RULE]),
                verdict: held(ok),
                payload: json!({
                    "g_differences": diffs,
                    "superadditivity": sup,
                    "convexity": conv,
                    "small_pairs": pairs,
                    "min_config": [min_a, min_b],
                }),
                text,
            })
        }
        CheckCommand::Delta { d, e, m, n, oracle } => {
            let cfg = oracle.config();
            let config = json!({ "d": d, "e": e, "m": m, "n": n, "oracle": cfg });
            let c = match delta_condition_count(*d, *e, *m, *n, &cfg) {
                Ok(c) => c,
                Err(err) => return oracle_failure(config, rules(&[DELTA_RULE]), err),
            };
            let text = format!(
                "delta_{{{m},{n}}} on a surface of degree {d} in degree {e}: {} conditions (independent {}, {}-fold point {}, deg {})\n",
                c.conditions,
                c.independent,
                m + 1,
                c.fat_next,
                fat_degree(*m) + *n as i64
            );
            Ok(Outcome { config, rules: rules(&[DELTA_RULE]), verdict: held(c.dichotomy_holds), payload: to_value(&c), text })
        }
        CheckCommand::Agreement { d, emax, slack, max_simple, oracle } => {
            let cfg = oracle.config();
            let config = json!({ "d": d, "emax": emax, "slack": slack, "max_simple": max_simple, "oracle": cfg });
            let mut rs = rules(&PLANAR_RULES);
            rs.extend(rules(&ORACLE_RULES));
            let r = match lowdeg_agreement(*d, *emax, *slack, *max_simple, &cfg) {
                Ok(r) => r,
                Err(e @ OracleError::BudgetExceeded { .. }) => return oracle_failure(config, rs, e),
                Err(e) => return Err(CliError::usage(e)),
            };
            let text = format!(
                "{} series checked, {} conditional, {} resampled, {} disagreements\n",
                r.checked,
                r.conditional,
                r.resampled,
                r.disagreements.len()
            );
            Ok(Outcome { config, rules: rs, verdict: held(r.disagreements.is_empty()), payload: to_value(&r), text })
        }
        CheckCommand::Cremona { count, emax, instances_seed, oracle } => {
            let cfg = oracle.config();
            let config = json!({ "count": count, "emax": emax, "instances_seed": instances_seed, "oracle": cfg });
            let rs = vec!["cremona: (e, m1, m2, m3) -> (e - a, m1 - a, m2 - a, m3 - a), a = m1 + m2 + m3 - e".to_string()];
            let r = match cremona_agreement(*count, *emax, *instances_seed, &cfg) {
                Ok(r) => r,
                Err(e) => return oracle_failure(config, rs, e),
            };
            let text = format!("{} instances, {} mismatches\n", r.checks.len(), r.mismatches);
            Ok(Outcome { config, rules: rs, verdict: held(r.mismatches == 0), payload: to_value(&r), text })
        }
    }
}
