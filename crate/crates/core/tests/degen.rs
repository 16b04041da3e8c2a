use fatpoint_core::degen::ledger::{general_position_ok, run_ledger, LedgerError};
use fatpoint_core::degen::staircase::OnCurveScheme::{DeltaAligned, Fat};
use fatpoint_core::degen::{
    h0_modified, identity_scan, plan_hypotheses, twisted_thresholds, vdim_identity, vdim_t, verify_theorem_b, CaseKind,
    DegenPlan, TheoremBOutcome,
};
use fatpoint_core::dims::h0_surface;
use fatpoint_core::oracle::OracleConfig;

fn complete(d: u32, e: i64, mults: &[u32]) -> fatpoint_core::degen::CaseTrace {
    match verify_theorem_b(d, e, mults).unwrap() {
        TheoremBOutcome::Complete(t) => *t,
        TheoremBOutcome::Inconclusive(i) => panic!("{i:?}"),
    }
}

#[test]
fn modified_sections() {
    assert_eq!(h0_modified(6, 2, 2, 3), 74);
    assert_eq!(h0_modified(3, 2, 2, 1), 20);
    for e in 0..8 {
        assert_eq!(h0_modified(e, 2, 3, 0), h0_surface(3, e).unwrap());
    }
}

#[test]
fn two_quadruple_plan_counts() {
    let plan = DegenPlan::new(3, 2, 2, 1, vec![], vec![4, 4]).unwrap();
    let hyp = plan_hypotheses(&plan, &OracleConfig::default()).unwrap();
    assert_eq!(hyp.w, 4);
    assert!(hyp.kernel_empty);
    assert_eq!(vdim_t(&plan, 4).unwrap(), 0);
    let id = vdim_identity(&plan, &OracleConfig::default()).unwrap();
    assert_eq!((id.original, id.on_t), (0, 0));
}

#[test]
fn plane_plan_for_tenfold_point() {
    let plan = DegenPlan::new(5, 1, 4, 1, vec![], vec![10]).unwrap();
    let hyp = plan_hypotheses(&plan, &OracleConfig::default()).unwrap();
    assert!(hyp.kernel_empty);
    assert_eq!(hyp.w, 3);
}

#[test]
fn figure_one_thresholds_and_state() {
    let plan = DegenPlan::new(6, 2, 2, 3, vec![], vec![4, 4, 4]).unwrap();
    assert_eq!(twisted_thresholds(&plan, 1), vec![1, 8, 16]);
    let tr = run_ledger(&[4, 4, 4], &[1, 8], 2).unwrap();
    assert_eq!(tr.splits[0].on_curve, vec![DeltaAligned { m: 3, n: 3 }]);
    assert_eq!(tr.splits[1].on_curve, vec![DeltaAligned { m: 2, n: 2 }, Fat { m: 3 }]);
    assert_eq!(tr.splits[1].pending, vec![4]);
}

#[test]
fn ledger_examples() {
    assert_eq!(run_ledger(&[4], &[4], 2).unwrap().final_residuals, vec![Fat { m: 3 }]);
    assert_eq!(run_ledger(&[10], &[3], 4).unwrap().final_residuals, vec![DeltaAligned { m: 9, n: 7 }]);
    assert!(matches!(run_ledger(&[2], &[5], 2), Err(LedgerError::InsufficientMultiplicity { .. })));
    assert!(matches!(run_ledger(&[4], &[0], 2), Err(LedgerError::ZeroThreshold { index: 0 })));
}

#[test]
fn general_position_examples() {
    assert!(!general_position_ok(7, 1, 2));
    assert!(general_position_ok(6, 1, 2));
    assert!(general_position_ok(7, 1, 3));
    assert!(general_position_ok(0, 0, 9));
}

#[test]
fn two_quadruple_points_on_a_quartic() {
    let tr = complete(4, 3, &[4, 4]);
    assert_eq!(tr.case, CaseKind::QuarticThreeTwoQuadruple);
    let r = tr.residual.as_ref().unwrap();
    assert_eq!(r.to_string(), "L_3^2(4,3)");
    assert_eq!(tr.conclusion.dim, 0);
    assert!(tr.sub_verdicts.iter().any(|s| s.spec.to_string() == "L_3^2(4,3)" && s.dim == 0));
}

#[test]
fn figure_one_trace() {
    let tr = complete(4, 6, &[4, 4, 4]);
    assert_eq!(tr.thresholds, vec![1, 8, 16]);
    let ledger = tr.ledger.as_ref().unwrap();
    assert_eq!(ledger.splits[1].on_curve, vec![DeltaAligned { m: 2, n: 2 }, Fat { m: 3 }]);
    assert_eq!(ledger.splits[1].pending[0], 4);
    assert!(tr.checks.iter().all(|c| c.holds));
    assert!(!tr.conclusion.special);
    let log = tr.to_string();
    assert!(log.contains("thresholds [1, 8, 16]"));
    assert!(log.contains("on C: [delta_{2,2}, Fat(3)]"));
}

#[test]
fn tangent_plane_squares_are_special() {
    for d in 4..=7 {
        let tr = complete(d, 2, &[4]);
        assert!(tr.conclusion.special, "d = {d}");
        assert_eq!(tr.conclusion.dim, 1);
        assert_eq!(tr.conclusion.edim, 0);
    }
    assert_eq!(complete(5, 2, &[4]).case, CaseKind::PlaneSplit);
}

#[test]
fn traces_serialize() {
    let out = verify_theorem_b(4, 5, &[4, 4, 3]).unwrap();
    let json = serde_json::to_string(&out).unwrap();
    assert!(json.contains("\"outcome\":\"complete\""));
    let back: TheoremBOutcome = serde_json::from_str(&json).unwrap();
    assert_eq!(back, out);
}

#[test]
fn multiplicity_above_four_is_rejected() {
    assert!(verify_theorem_b(5, 6, &[5, 2]).is_err());
}

#[test]
fn identity_scan_small() {
    let r = identity_scan(6, 6, 2, 4, 4, &OracleConfig::default()).unwrap();
    assert!(r.checked > 10_000);
    assert!(r.failures.is_empty());
}
