//! Scripted case analysis: `L_e^d(4^a, 3^b, 2^c)` with `d >= 4` is special
//! only for `L_2^d(4)`.
//!
//! Each case degenerates the surface, checks the hypotheses on `S`, splits
//! `C` off with the ledger, and settles the residual series on `T` with the
//! quadric and cubic classifiers or by recursion on the degree. Any failed
//! step ends in [`TheoremBOutcome::Inconclusive`].

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use super::ledger::{run_ledger, LedgerTrace};
use super::plan::{plan_hypotheses, twisted_thresholds, vdim_t, DegenPlan, PlanHypotheses};
use super::staircase::OnCurveScheme;
use super::DegenError;
use crate::dims::{fat_degree, format_multiplicities, h0_curve, h0_surface_unchecked, SurfaceSeriesSpec};
use crate::lowdeg::classify_lowdeg;
use crate::oracle::{oracle_verdict, OracleConfig, OracleError};
use crate::planar::Confidence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseKind {
    /// `d <= 3`: quadric and cubic classifiers.
    LowDegree,
    /// `e < 0` or only simple points.
    Trivial,
    /// `e < d - 1`: plane plus a surface of degree `d - 1`.
    PlaneSplit,
    /// `d = 4`, `e >= 8`.
    QuarticLarge,
    /// `d = 4`, `e = 7`.
    QuarticSeven,
    /// `d = 4`, `e = 6`, twist 3.
    QuarticSix,
    /// `d = 4`, `e` in {4, 5}, twist 2.
    QuarticFourFive,
    /// `d = 4`, `e = 3` with two quadruple points.
    QuarticThreeTwoQuadruple,
    /// `d = 4`, `e = 3` otherwise.
    QuarticThree,
    /// `(e, d)` in {(4,5), (5,5), (5,6)}, twist 1.
    ExceptionalPair,
    /// `d >= 5`, `e >= 6`.
    GeneralLarge,
}

pub const EXCEPTIONAL_PAIRS: [(i64, u32); 3] = [(4, 5), (5, 5), (5, 6)];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conclusion {
    pub dim: i64,
    pub edim: i64,
    pub special: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub label: String,
    pub lhs: i64,
    pub relation: String,
    pub rhs: i64,
    pub holds: bool,
}

impl Check {
    fn at_least(label: &str, lhs: i64, rhs: i64) -> Self {
        Self { label: label.into(), lhs, relation: ">=".into(), rhs, holds: lhs >= rhs }
    }

    fn at_most(label: &str, lhs: i64, rhs: i64) -> Self {
        Self { label: label.into(), lhs, relation: "<=".into(), rhs, holds: lhs <= rhs }
    }
}

/// The series left on `T` after the splits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualSeries {
    pub t: u32,
    pub e: i64,
    pub fats: Vec<u32>,
    pub deltas: Vec<(u32, u32)>,
    pub vdim: i64,
}

impl ResidualSeries {
    fn new(t: u32, e: i64, mut fats: Vec<u32>, deltas: Vec<(u32, u32)>) -> Self {
        fats.sort_unstable_by(|a, b| b.cmp(a));
        let deg: i64 =
            fats.iter().map(|&m| fat_degree(m)).sum::<i64>() + deltas.iter().map(|&(m, n)| fat_degree(m) + n as i64).sum::<i64>();
        Self { t, e, vdim: h0_surface_unchecked(t, e) - deg, fats, deltas }
    }
}

impl fmt::Display for ResidualSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.deltas.iter().map(|(m, n)| format!("delta_{{{m},{n}}}")).collect();
        if !self.fats.is_empty() {
            parts.push(format_multiplicities(&self.fats));
        }
        write!(f, "L_{}^{}({})", self.e, self.t, parts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Via {
    Classifier,
    Recursion,
}

/// A fat-point series whose dimension a step relies on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubVerdict {
    pub spec: SurfaceSeriesSpec,
    pub dim: i64,
    pub special: bool,
    pub via: Via,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseTrace {
    pub spec: SurfaceSeriesSpec,
    /// The series after adding simple points until `vdim <= 0`.
    pub padded: SurfaceSeriesSpec,
    pub case: CaseKind,
    pub plan: Option<DegenPlan>,
    pub hypotheses: Option<PlanHypotheses>,
    /// `(vdim of the padded series, vdim on T)`.
    pub vdim_identity: Option<(i64, i64)>,
    pub thresholds: Vec<u32>,
    pub queue: Vec<u32>,
    pub checks: Vec<Check>,
    pub ledger: Option<LedgerTrace>,
    pub residual: Option<ResidualSeries>,
    pub sub_verdicts: Vec<SubVerdict>,
    pub attempts: usize,
    pub rules: Vec<String>,
    pub conclusion: Conclusion,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inconclusive {
    pub spec: SurfaceSeriesSpec,
    pub case: Option<CaseKind>,
    pub step: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum TheoremBOutcome {
    Complete(Box<CaseTrace>),
    Inconclusive(Inconclusive),
}

impl TheoremBOutcome {
    pub fn trace(&self) -> Option<&CaseTrace> {
        match self {
            Self::Complete(t) => Some(t),
            Self::Inconclusive(_) => None,
        }
    }
}

struct Failure {
    case: Option<CaseKind>,
    step: String,
}

impl Failure {
    fn new(case: CaseKind, step: impl Into<String>) -> Self {
        Self { case: Some(case), step: step.into() }
    }
}

/// Outcome of one plan attempt.
struct PlanRun {
    hypotheses: PlanHypotheses,
    identity: (i64, i64),
    thresholds: Vec<u32>,
    ledger: LedgerTrace,
    residual: ResidualSeries,
    subs: Vec<SubVerdict>,
}

const RULES_BASE: [&str; 4] = [
    "residuals-on-C-contribute-first",
    "tipping-point-leaves-delta(m-1,m-v)",
    "colon-by-C: Fat(m)->Fat(m-1), delta(m,n)->delta(m-1,n-1)",
    "delta(m,n)-dim-is-max(dim(m)-n,dim(m+1))",
];

/// Runs the case analysis with memoized recursion.
pub struct TheoremBVerifier {
    oracle: OracleConfig,
    max_attempts: usize,
    memo: Mutex<HashMap<SurfaceSeriesSpec, Result<Conclusion, String>>>,
}

impl Default for TheoremBVerifier {
    fn default() -> Self {
        Self::new(OracleConfig::default())
    }
}

pub fn verify_theorem_b(d: u32, e: i64, mults: &[u32]) -> Result<TheoremBOutcome, DegenError> {
    TheoremBVerifier::default().verify(d, e, mults)
}

fn counts(mults: &[u32]) -> [usize; 5] {
    let mut c = [0usize; 5];
    for &m in mults {
        c[m as usize] += 1;
    }
    c
}

fn from_counts(c: &[usize; 5]) -> Vec<u32> {
    (1..=4u32).rev().flat_map(|m| std::iter::repeat_n(m, c[m as usize])).collect()
}

fn degree(mults: &[u32]) -> i64 {
    mults.iter().map(|&m| fat_degree(m)).sum()
}

fn mult_sum(mults: &[u32]) -> i64 {
    mults.iter().map(|&m| m as i64).sum()
}

impl TheoremBVerifier {
    pub fn new(oracle: OracleConfig) -> Self {
        Self { oracle, max_attempts: 64, memo: Mutex::new(HashMap::new()) }
    }

    pub fn verify(&self, d: u32, e: i64, mults: &[u32]) -> Result<TheoremBOutcome, DegenError> {
        if let Some(&m) = mults.iter().find(|&&m| m == 0 || m > 4) {
            return Err(DegenError::UnsupportedMultiplicity(m));
        }
        let spec = SurfaceSeriesSpec::new(d, e, mults.to_vec()).map_err(|e| DegenError::InvalidPlan(e.to_string()))?;
        Ok(match self.run(&spec) {
            Ok(trace) => TheoremBOutcome::Complete(Box::new(trace)),
            Err(f) => TheoremBOutcome::Inconclusive(Inconclusive { spec, case: f.case, step: f.step }),
        })
    }

    /// Dimension verdict for a series, memoized.
    pub fn conclusion(&self, spec: &SurfaceSeriesSpec) -> Result<Conclusion, String> {
        if let Some(hit) = self.memo.lock().expect("memo lock").get(spec) {
            return hit.clone();
        }
        let out = self.run(spec).map(|t| t.conclusion).map_err(|f| format!("{spec}: {}", f.step));
        self.memo.lock().expect("memo lock").insert(spec.clone(), out.clone());
        out
    }

    fn run(&self, spec: &SurfaceSeriesSpec) -> Result<CaseTrace, Failure> {
        let (d, e) = (spec.d, spec.e);
        let base = |case: CaseKind, padded: SurfaceSeriesSpec, conclusion: Conclusion| CaseTrace {
            spec: spec.clone(),
            padded,
            case,
            plan: None,
            hypotheses: None,
            vdim_identity: None,
            thresholds: Vec::new(),
            queue: Vec::new(),
            checks: Vec::new(),
            ledger: None,
            residual: None,
            sub_verdicts: Vec::new(),
            attempts: 0,
            rules: Vec::new(),
            conclusion,
        };
        if d <= 3 {
            let v = classify_lowdeg(spec).map_err(|err| Failure::new(CaseKind::LowDegree, err.to_string()))?;
            if v.confidence != Confidence::Unconditional {
                return Err(Failure::new(CaseKind::LowDegree, format!("{spec}: classifier verdict is conditional")));
            }
            let mut tr = base(CaseKind::LowDegree, spec.clone(), Conclusion { dim: v.dim, edim: v.edim, special: v.special });
            tr.rules.push("planar-model-cremona-reduction".into());
            return Ok(tr);
        }
        if e < 0 || spec.mults.iter().all(|&m| m == 1) {
            let mut tr = base(CaseKind::Trivial, spec.clone(), Conclusion { dim: spec.edim(), edim: spec.edim(), special: false });
            tr.rules.push("general-simple-points-impose-independent-conditions".into());
            return Ok(tr);
        }
        if e < d as i64 - 1 {
            return self.plane_split(spec, base(CaseKind::PlaneSplit, spec.clone(), Conclusion { dim: 0, edim: 0, special: false }));
        }
        let mut padded_mults = spec.mults.clone();
        padded_mults.extend(std::iter::repeat_n(1, spec.vdim().max(0) as usize));
        let padded = SurfaceSeriesSpec::new(d, e, padded_mults).expect("valid");
        let done = Conclusion { dim: spec.edim(), edim: spec.edim(), special: false };
        let c = counts(&padded.mults);
        let mut tr = match (d, e) {
            (4, e) if e >= 8 => {
                self.glue(&padded, 2, CaseKind::QuarticLarge, |_, w| (4..=13).contains(&w), Some(53), base(CaseKind::QuarticLarge, padded.clone(), done))?
            }
            (4, 7) => self.glue(&padded, 2, CaseKind::QuarticSeven, |_, w| (5..=14).contains(&w), Some(41), base(CaseKind::QuarticSeven, padded.clone(), done))?,
            (4, 6) => self.quartic_six(&padded, base(CaseKind::QuarticSix, padded.clone(), done))?,
            (4, 4) | (4, 5) => {
                let queue = padded.mults.clone();
                let tr = base(CaseKind::QuarticFourFive, padded.clone(), done);
                self.twisted(&padded, 2, 2, queue, Vec::new(), CaseKind::QuarticFourFive, tr)?
            }
            (4, 3) if c[4] >= 2 => self.two_quadruple(spec, &padded, base(CaseKind::QuarticThreeTwoQuadruple, padded.clone(), done))?,
            (4, 3) => self.glue(
                &padded,
                2,
                CaseKind::QuarticThree,
                |cs, w| (w == 4 && cs[4] == 0) || (w == 6 && *cs == [0, 0, 0, 0, 1]),
                None,
                base(CaseKind::QuarticThree, padded.clone(), done),
            )?,
            (d, e) if EXCEPTIONAL_PAIRS.contains(&(e, d)) => {
                let t = d - 2;
                let gluing = h0_curve(crate::dims::CICurve { s: 2, t }, e - t as i64);
                let checks = vec![Check::at_most("h0(O_C(e-d+2)) <= 9", gluing, 9)];
                let tr = base(CaseKind::ExceptionalPair, padded.clone(), done);
                self.twisted(&padded, 2, 1, padded.mults.clone(), checks, CaseKind::ExceptionalPair, tr)?
            }
            (_, e) if e >= 6 => self.glue(&padded, d - 2, CaseKind::GeneralLarge, |_, w| (7..=16).contains(&w), None, base(CaseKind::GeneralLarge, padded.clone(), done))?,
            _ => return Err(Failure { case: None, step: format!("no case covers {spec}") }),
        };
        tr.rules.splice(0..0, RULES_BASE.iter().map(|s| s.to_string()));
        Ok(tr)
    }

    fn plane_split(&self, spec: &SurfaceSeriesSpec, mut tr: CaseTrace) -> Result<CaseTrace, Failure> {
        let case = CaseKind::PlaneSplit;
        let plan = DegenPlan::new(spec.e, 1, spec.d - 1, 0, Vec::new(), spec.mults.clone()).expect("valid");
        let hyp = plan_hypotheses(&plan, &self.oracle).map_err(|e| Failure::new(case, e.to_string()))?;
        if !hyp.hold() || hyp.w != plan.gluing_dimension() {
            return Err(Failure::new(case, "restriction from the plane to C is not an isomorphism"));
        }
        let on_t = vdim_t(&plan, hyp.w).map_err(|e| Failure::new(case, e.to_string()))?;
        let sub_spec = SurfaceSeriesSpec::new(spec.d - 1, spec.e, spec.mults.clone()).expect("valid");
        let sub = self.fat_series(&sub_spec).map_err(|s| Failure::new(case, s))?;
        tr.conclusion = Conclusion { dim: sub.dim, edim: spec.edim(), special: sub.dim != spec.edim() };
        tr.vdim_identity = Some((spec.vdim(), on_t));
        if spec.vdim() != on_t {
            return Err(Failure::new(case, "virtual dimension not preserved"));
        }
        tr.plan = Some(plan);
        tr.hypotheses = Some(hyp);
        tr.sub_verdicts.push(sub);
        tr.rules.push("restriction-isomorphism-e<d-1".into());
        Ok(tr)
    }

    fn two_quadruple(&self, spec: &SurfaceSeriesSpec, padded: &SurfaceSeriesSpec, mut tr: CaseTrace) -> Result<CaseTrace, Failure> {
        let case = CaseKind::QuarticThreeTwoQuadruple;
        let core = SurfaceSeriesSpec::new(4, 3, vec![4, 4]).expect("valid");
        let inner = if padded == &core { None } else { Some(core.clone()) };
        let mut run_on = self.twisted(&core, 2, 1, vec![4, 4], Vec::new(), case, tr.clone())?;
        if let Some(core) = inner {
            tr.checks.push(Check::at_least("padded series contains L_3^4(4^2)", counts(&padded.mults)[4] as i64, 2));
            run_on.sub_verdicts.push(SubVerdict { spec: core, dim: 0, special: false, via: Via::Recursion });
            run_on.rules.push("subseries-of-empty-series".into());
            run_on.checks.extend(tr.checks);
        }
        run_on.spec = spec.clone();
        run_on.padded = padded.clone();
        Ok(run_on)
    }

    fn quartic_six(&self, padded: &SurfaceSeriesSpec, tr: CaseTrace) -> Result<CaseTrace, Failure> {
        let case = CaseKind::QuarticSix;
        let c = counts(&padded.mults);
        let deg = padded.degree_of_scheme();
        let mut checks = vec![Check::at_least("deg Gamma >= 74", deg, 74)];
        let priority: Option<(u32, usize)> = [(4, 3), (3, 3), (2, 4), (1, 11)].into_iter().find(|&(m, k)| c[m as usize] >= k);
        let Some((m, k)) = priority else {
            checks.push(Check::at_most("deg Gamma <= 2*10 + 2*6 + 3*3 + 10*1", deg, 51));
            return Err(Failure::new(case, "none of the four specializations applies"));
        };
        let mut rest = c;
        rest[m as usize] -= k;
        let mut queue = vec![m; k];
        queue.extend(from_counts(&rest));
        checks.push(Check::at_least(&format!("contains {k} points of multiplicity {m}"), c[m as usize] as i64, k as i64));
        checks.push(Check::at_least("multiplicity sum >= 1 + 8 + 16", mult_sum(&padded.mults), 25));
        let mut tr = self.twisted(padded, 2, 3, queue, checks, case, tr)?;
        tr.rules.push(format!("first-specialize-{k}-points-of-multiplicity-{m}"));
        Ok(tr)
    }

    /// All points on `T`, twist `mu`, queue in the given order.
    #[allow(clippy::too_many_arguments)]
    fn twisted(
        &self,
        padded: &SurfaceSeriesSpec,
        s: u32,
        mu: u32,
        queue: Vec<u32>,
        mut checks: Vec<Check>,
        case: CaseKind,
        mut tr: CaseTrace,
    ) -> Result<CaseTrace, Failure> {
        let t = padded.d - s;
        let plan = DegenPlan::new(padded.e, s, t, mu, Vec::new(), padded.mults.clone()).expect("valid");
        let run = self.run_plan(&plan, &queue).map_err(|step| Failure::new(case, step))?;
        let total: i64 = run.thresholds.iter().map(|&x| x as i64).sum();
        checks.push(Check::at_least("multiplicity sum >= total threshold", mult_sum(&queue), total));
        if let Some(c) = checks.iter().find(|c| !c.holds) {
            return Err(Failure::new(case, format!("check failed: {}", c.label)));
        }
        tr.queue = queue;
        tr.attempts = 1;
        fill(&mut tr, plan, run, checks);
        tr.rules.push(format!("twist-{mu}-all-points-on-T"));
        Ok(tr)
    }

    /// Twist 0: points split between `S` (chosen so that `window` accepts
    /// the counts and `w`) and `T`; one split of `C`.
    fn glue(
        &self,
        padded: &SurfaceSeriesSpec,
        t: u32,
        case: CaseKind,
        window: impl Fn(&[usize; 5], i64) -> bool,
        floor: Option<i64>,
        mut tr: CaseTrace,
    ) -> Result<CaseTrace, Failure> {
        let s = padded.d - t;
        let e = padded.e;
        let avail = counts(&padded.mults);
        let h0_s = h0_surface_unchecked(s, e);
        let mut candidates = Vec::new();
        for a in 0..=avail[4] {
            for b in 0..=avail[3] {
                for c2 in 0..=avail[2] {
                    for c1 in 0..=avail[1] {
                        let cs = [0, c1, c2, b, a];
                        let w = h0_s - (10 * a + 6 * b + 3 * c2 + c1) as i64;
                        if window(&cs, w) {
                            candidates.push(cs);
                        }
                    }
                }
            }
        }
        let mut last = format!("no admissible split of the points between S and T for {padded}");
        for (attempt, cs) in candidates.iter().take(self.max_attempts).enumerate() {
            let gamma_s = from_counts(cs);
            let rest: [usize; 5] = std::array::from_fn(|i| avail[i] - cs[i]);
            let gamma_t = from_counts(&rest);
            let plan = DegenPlan::new(e, s, t, 0, gamma_s, gamma_t.clone()).expect("valid");
            let w = h0_s - degree(&plan.gamma_s);
            let h0_res = h0_surface_unchecked(t, e - s as i64);
            let mut checks = vec![Check::at_least(&format!("deg Gamma' >= w + h0(O_T({}))", e - s as i64), degree(&gamma_t), w + h0_res)];
            if let Some(f) = floor {
                checks.push(Check::at_least(&format!("w + h0(O_T({})) >= {f}", e - s as i64), w + h0_res, f));
            }
            checks.push(Check::at_least("multiplicity sum of Gamma' >= w", mult_sum(&gamma_t), w));
            if let Some(c) = checks.iter().find(|c| !c.holds) {
                last = format!("check failed: {}", c.label);
                continue;
            }
            match self.run_plan(&plan, &gamma_t) {
                Ok(run) => {
                    if run.hypotheses.w != w {
                        last = format!("series on S has dimension {} instead of {w}", run.hypotheses.w);
                        continue;
                    }
                    tr.queue = gamma_t;
                    tr.attempts = attempt + 1;
                    fill(&mut tr, plan, run, checks);
                    tr.rules.push("twist-0-split-points-between-S-and-T".into());
                    tr.rules.push("descending-specialization-order".into());
                    return Ok(tr);
                }
                Err(step) => last = step,
            }
        }
        Err(Failure::new(case, last))
    }

    /// Hypotheses, vdim identity, ledger, general position, and the residual series.
    fn run_plan(&self, plan: &DegenPlan, queue: &[u32]) -> Result<PlanRun, String> {
        let hypotheses = plan_hypotheses(plan, &self.oracle).map_err(|e| e.to_string())?;
        if !hypotheses.kernel_empty {
            return Err(format!("kernel series {} is not empty", plan.kernel_on_s()));
        }
        if !hypotheses.nonspecial_s {
            return Err(format!("series on S {} is special", plan.series_on_s()));
        }
        let w = hypotheses.w;
        let on_t = vdim_t(plan, w).map_err(|e| e.to_string())?;
        let original = plan.original().vdim();
        if on_t != original {
            return Err(format!("vdim identity fails: {original} != {on_t}"));
        }
        let thresholds = twisted_thresholds(plan, w);
        if thresholds.contains(&0) {
            return Err("a split threshold is zero".into());
        }
        let ledger = run_ledger(queue, &thresholds, plan.t).map_err(|e| format!("ledger: {e}"))?;
        if !ledger.general_position.ok {
            let gp = &ledger.general_position;
            return Err(format!("residuals not in general position: {} + 2*{} > {}", gp.alpha, gp.beta, gp.bound));
        }
        let mut fats = ledger.pending.clone();
        let mut deltas = Vec::new();
        for r in &ledger.final_residuals {
            match *r {
                OnCurveScheme::Fat { m } => fats.push(m),
                OnCurveScheme::DeltaAligned { m, n } => deltas.push((m, n)),
            }
        }
        let final_e = if plan.mu >= 1 { plan.e } else { plan.e - plan.s as i64 };
        let residual = ResidualSeries::new(plan.t, final_e, fats, deltas);
        if residual.vdim != on_t {
            return Err(format!("residual {residual} has vdim {} but {on_t} was expected", residual.vdim));
        }
        if residual.vdim > 0 {
            return Err(format!("residual {residual} has positive vdim"));
        }
        let mut subs = Vec::new();
        let dim = self.dim_with_deltas(plan.t, final_e, &residual.fats, &residual.deltas, &mut subs)?;
        if dim != 0 {
            return Err(format!("residual {residual} has dimension {dim}"));
        }
        Ok(PlanRun { hypotheses, identity: (original, on_t), thresholds, ledger, residual, subs })
    }

    /// Dimension with general `δ`-points: for the last `δ_{m,n}` over `V`,
    /// if an `m`-fold point cuts `V` by `min(C(m+1,2), dim V)` then the
    /// `δ`-point leaves `max(dim V(-m) - n, dim V(-(m+1)))`.
    fn dim_with_deltas(
        &self,
        t: u32,
        e: i64,
        fats: &[u32],
        deltas: &[(u32, u32)],
        subs: &mut Vec<SubVerdict>,
    ) -> Result<i64, String> {
        let Some((&(m, n), rest)) = deltas.split_last() else {
            let spec = SurfaceSeriesSpec::new(t, e, fats.to_vec()).map_err(|e| e.to_string())?;
            let v = self.fat_series(&spec)?;
            let dim = v.dim;
            if !subs.contains(&v) {
                subs.push(v);
            }
            return Ok(dim);
        };
        let with = |extra: u32, subs: &mut Vec<SubVerdict>| {
            let mut f = fats.to_vec();
            f.push(extra);
            self.dim_with_deltas(t, e, &f, rest, subs)
        };
        let base = self.dim_with_deltas(t, e, fats, rest, subs)?;
        let dim_m = with(m, subs)?;
        let dim_next = with(m + 1, subs)?;
        if dim_m != (base - fat_degree(m)).max(0) {
            return Err(format!("a general {m}-fold point does not impose the expected conditions on L_{e}^{t}"));
        }
        Ok((dim_m - n as i64).max(dim_next))
    }

    fn fat_series(&self, spec: &SurfaceSeriesSpec) -> Result<SubVerdict, String> {
        if spec.d <= 3 {
            let v = classify_lowdeg(spec).map_err(|e| e.to_string())?;
            if v.confidence != Confidence::Unconditional {
                return Err(format!("{spec}: classifier verdict is conditional"));
            }
            return Ok(SubVerdict { spec: spec.clone(), dim: v.dim, special: v.special, via: Via::Classifier });
        }
        if spec.mults.iter().any(|&m| m > 4) {
            return Err(format!("{spec}: multiplicity above 4"));
        }
        let c = self.conclusion(spec)?;
        Ok(SubVerdict { spec: spec.clone(), dim: c.dim, special: c.special, via: Via::Recursion })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleDisagreement {
    pub spec: SurfaceSeriesSpec,
    pub traced_dim: i64,
    pub oracle_dim: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremBSweep {
    pub degrees: Vec<u32>,
    pub e_max: i64,
    pub max_points: usize,
    pub instances: usize,
    pub complete: usize,
    pub inconclusive: Vec<Inconclusive>,
    /// Series concluded special.
    pub special: Vec<SurfaceSeriesSpec>,
    pub oracle_checked: usize,
    /// Instances over the oracle column budget.
    pub oracle_skipped: usize,
    pub oracle_disagreements: Vec<OracleDisagreement>,
}

/// Runs the case analysis on every `L_e^d(4^a,3^b,2^c)` with `d` in `degrees`,
/// `0 <= e <= e_max` and at most `max_points` points, and compares each
/// concluded dimension with the oracle where the column budget allows.
pub fn theorem_b_sweep(degrees: &[u32], e_max: i64, max_points: usize, oracle: &OracleConfig) -> Result<TheoremBSweep, DegenError> {
    let verifier = TheoremBVerifier::new(*oracle);
    let mut sweep = TheoremBSweep {
        degrees: degrees.to_vec(),
        e_max,
        max_points,
        instances: 0,
        complete: 0,
        inconclusive: Vec::new(),
        special: Vec::new(),
        oracle_checked: 0,
        oracle_skipped: 0,
        oracle_disagreements: Vec::new(),
    };
    let mut traced = Vec::new();
    for &d in degrees {
        for e in 0..=e_max {
            for mults in super::plan::multisets(max_points, 4) {
                if mults.contains(&1) {
                    continue;
                }
                sweep.instances += 1;
                match verifier.verify(d, e, &mults)? {
                    TheoremBOutcome::Complete(t) => {
                        sweep.complete += 1;
                        if t.conclusion.special {
                            sweep.special.push(t.spec.clone());
                        }
                        traced.push((t.spec, t.conclusion.dim));
                    }
                    TheoremBOutcome::Inconclusive(i) => sweep.inconclusive.push(i),
                }
            }
        }
    }
    use rayon::prelude::*;
    let checks = traced
        .par_iter()
        .map(|(spec, dim)| match oracle_verdict(spec, oracle) {
            Ok(v) => Ok(Some((spec, *dim, v.observed_dim))),
            Err(OracleError::BudgetExceeded { .. }) => Ok(None),
            Err(err) => Err(err),
        })
        .collect::<Result<Vec<_>, OracleError>>()?;
    for c in checks {
        match c {
            None => sweep.oracle_skipped += 1,
            Some((spec, traced_dim, oracle_dim)) => {
                sweep.oracle_checked += 1;
                if traced_dim != oracle_dim {
                    sweep.oracle_disagreements.push(OracleDisagreement { spec: spec.clone(), traced_dim, oracle_dim });
                }
            }
        }
    }
    Ok(sweep)
}

fn fill(tr: &mut CaseTrace, plan: DegenPlan, run: PlanRun, checks: Vec<Check>) {
    tr.plan = Some(plan);
    tr.hypotheses = Some(run.hypotheses);
    tr.vdim_identity = Some(run.identity);
    tr.thresholds = run.thresholds;
    tr.ledger = Some(run.ledger);
    tr.residual = Some(run.residual);
    tr.sub_verdicts = run.subs;
    tr.checks = checks;
}

impl fmt::Display for CaseTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "series {} (vdim {})", self.spec, self.spec.vdim())?;
        if self.padded != self.spec {
            writeln!(f, "add simple points: {} (vdim {})", self.padded, self.padded.vdim())?;
        }
        writeln!(f, "case: {:?}", self.case)?;
        if let Some(p) = &self.plan {
            writeln!(
                f,
                "degenerate to S of degree {} and T of degree {}, twist {}; on S: ({}), on T: ({})",
                p.s,
                p.t,
                p.mu,
                format_multiplicities(&p.gamma_s),
                format_multiplicities(&p.gamma_t)
            )?;
        }
        if let Some(h) = &self.hypotheses {
            writeln!(f, "kernel on S empty: {}; series on S nonspecial of dimension w = {} ({:?})", h.kernel_empty, h.w, h.method)?;
        }
        if let Some((a, b)) = self.vdim_identity {
            writeln!(f, "vdim identity: {a} = {b}")?;
        }
        for c in &self.checks {
            writeln!(f, "check {}: {} {} {} [{}]", c.label, c.lhs, c.relation, c.rhs, if c.holds { "ok" } else { "fails" })?;
        }
        if !self.thresholds.is_empty() {
            writeln!(f, "thresholds {:?}, queue ({})", self.thresholds, format_multiplicities(&self.queue))?;
        }
        if let Some(l) = &self.ledger {
            write!(f, "{l}")?;
        }
        if let Some(r) = &self.residual {
            writeln!(f, "residual series {r} (vdim {})", r.vdim)?;
        }
        for s in &self.sub_verdicts {
            writeln!(f, "  uses {}: dim {}, {} ({:?})", s.spec, s.dim, if s.special { "special" } else { "nonspecial" }, s.via)?;
        }
        let c = &self.conclusion;
        writeln!(f, "conclusion: dim {} (expected {}), {}", c.dim, c.edim, if c.special { "special" } else { "nonspecial" })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(d: u32, e: i64, mults: &[u32]) -> CaseTrace {
        match verify_theorem_b(d, e, mults).unwrap() {
            TheoremBOutcome::Complete(t) => *t,
            TheoremBOutcome::Inconclusive(i) => panic!("inconclusive: {:?}", i),
        }
    }

    #[test]
    fn two_quadruple_points() {
        let tr = complete(4, 3, &[4, 4]);
        assert_eq!(tr.case, CaseKind::QuarticThreeTwoQuadruple);
        assert_eq!(tr.thresholds, vec![4]);
        let r = tr.residual.unwrap();
        assert_eq!((r.t, r.e, r.fats.clone()), (2, 3, vec![4, 3]));
        assert!(!tr.conclusion.special);
        assert_eq!(tr.conclusion.dim, 0);
    }

    #[test]
    fn three_quadruple_points_in_degree_six() {
        let tr = complete(4, 6, &[4, 4, 4]);
        assert_eq!(tr.case, CaseKind::QuarticSix);
        assert_eq!(tr.thresholds, vec![1, 8, 16]);
        let ledger = tr.ledger.unwrap();
        assert_eq!(
            ledger.splits[1].on_curve,
            vec![OnCurveScheme::DeltaAligned { m: 2, n: 2 }, OnCurveScheme::Fat { m: 3 }]
        );
        assert_eq!(ledger.splits[1].pending[0], 4);
        assert_eq!(tr.padded.mults.len(), 3 + 44);
    }

    #[test]
    fn tangent_plane_series_is_special() {
        let tr = complete(5, 2, &[4]);
        assert_eq!(tr.case, CaseKind::PlaneSplit);
        assert!(tr.conclusion.special);
        assert_eq!(tr.conclusion.dim, 1);
        assert!(complete(4, 2, &[4]).conclusion.special);
    }

    #[test]
    fn other_cases_complete() {
        for (d, e, m) in [
            (4, 5, vec![4, 4, 3]),
            (4, 4, vec![3, 3, 2]),
            (4, 7, vec![4, 4, 4, 3, 2]),
            (4, 8, vec![4; 6]),
            (4, 3, vec![3, 3, 3, 3]),
            (4, 3, vec![4, 2]),
            (5, 4, vec![4, 4]),
            (5, 5, vec![4, 3, 3]),
            (6, 5, vec![4, 4, 4]),
            (5, 6, vec![4, 4, 2]),
            (6, 6, vec![3, 3, 3]),
        ] {
            let tr = complete(d, e, &m);
            assert!(!tr.conclusion.special, "{}", tr.spec);
        }
    }

    #[test]
    fn rejects_large_multiplicities() {
        assert_eq!(verify_theorem_b(4, 5, &[5]), Err(DegenError::UnsupportedMultiplicity(5)));
    }
}
