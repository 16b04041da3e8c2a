//! Degenerating a surface of degree `d` to `S ∪ T` with `deg S = s`, `deg T = t`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::DegenError;
use crate::dims::{fat_degree, h0_curve, h0_surface_unchecked, CICurve, SurfaceSeriesSpec};
use crate::lowdeg::classify_lowdeg;
use crate::oracle::{oracle_verdict, Certification, FatTable, OracleConfig, PointPool};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DegenPlan {
    pub e: i64,
    pub s: u32,
    pub t: u32,
    pub mu: u32,
    pub gamma_s: Vec<u32>,
    pub gamma_t: Vec<u32>,
}

impl DegenPlan {
    pub fn new(e: i64, s: u32, t: u32, mu: u32, gamma_s: Vec<u32>, gamma_t: Vec<u32>) -> Result<Self, DegenError> {
        if s == 0 || t == 0 {
            return Err(DegenError::InvalidPlan("surface degrees must be positive".into()));
        }
        if gamma_s.contains(&0) || gamma_t.contains(&0) {
            return Err(DegenError::InvalidPlan("multiplicities must be positive".into()));
        }
        Ok(Self { e, s, t, mu, gamma_s, gamma_t })
    }

    pub fn d(&self) -> u32 {
        self.s + self.t
    }

    pub fn curve(&self) -> CICurve {
        CICurve { s: self.s, t: self.t }
    }

    /// The series being degenerated.
    pub fn original(&self) -> SurfaceSeriesSpec {
        let mults = self.gamma_s.iter().chain(&self.gamma_t).copied().collect();
        SurfaceSeriesSpec::new(self.d(), self.e, mults).expect("validated plan")
    }

    /// Series on `S` whose restriction to `C` has to glue: `L_{e-tμ}^S(Γ)`.
    pub fn series_on_s(&self) -> SurfaceSeriesSpec {
        SurfaceSeriesSpec::new(self.s, self.e - (self.t * self.mu) as i64, self.gamma_s.clone()).expect("validated")
    }

    /// Sections on `S` vanishing on `C`: `L_{e-t(μ+1)}^S(Γ)`.
    pub fn kernel_on_s(&self) -> SurfaceSeriesSpec {
        SurfaceSeriesSpec::new(self.s, self.e - (self.t * (self.mu + 1)) as i64, self.gamma_s.clone())
            .expect("validated")
    }

    pub fn gluing_dimension(&self) -> i64 {
        h0_curve(self.curve(), self.e - (self.t * self.mu) as i64)
    }
}

/// `h^0(O_T(e)) + Σ_{k=1..μ} h^0(O_C(e - t k))`.
pub fn h0_modified(e: i64, s: u32, t: u32, mu: u32) -> i64 {
    let c = CICurve { s, t };
    h0_surface_unchecked(t, e) + (1..=mu as i64).map(|k| h0_curve(c, e - t as i64 * k)).sum::<i64>()
}

/// Virtual dimension of the series on `T` restricting into a `w`-dimensional gluing space.
pub fn vdim_t(plan: &DegenPlan, w: i64) -> Result<i64, DegenError> {
    let full = plan.gluing_dimension();
    if !(0..=full).contains(&w) {
        return Err(DegenError::GluingOutOfRange { w, max: full });
    }
    let deg: i64 = plan.gamma_t.iter().map(|&m| fat_degree(m)).sum();
    Ok(h0_modified(plan.e, plan.s, plan.t, plan.mu) - deg - (full - w))
}

/// Conditions along `C` needed for each split of `C`: `w` first, then
/// `h^0(O_C(e - t(μ-k+1)))` for the `k`-th. With `μ = 0` and no gluing
/// constraint nothing splits.
pub fn twisted_thresholds(plan: &DegenPlan, w: i64) -> Vec<u32> {
    let c = plan.curve();
    if plan.mu == 0 {
        return if w >= plan.gluing_dimension() { Vec::new() } else { vec![w as u32] };
    }
    let mut out = vec![w as u32];
    for k in 2..=plan.mu as i64 {
        out.push(h0_curve(c, plan.e - plan.t as i64 * (plan.mu as i64 - k + 1)) as u32);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HypothesisMethod {
    Classifier,
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanHypotheses {
    pub kernel_empty: bool,
    pub w: i64,
    pub nonspecial_s: bool,
    pub method: HypothesisMethod,
}

impl PlanHypotheses {
    pub fn hold(&self) -> bool {
        self.kernel_empty && self.nonspecial_s
    }
}

/// Decides the two hypotheses on `S`: the kernel series is empty and the
/// gluing series is nonspecial of nonnegative virtual dimension `w`.
pub fn plan_hypotheses(plan: &DegenPlan, oracle: &OracleConfig) -> Result<PlanHypotheses, DegenError> {
    let on_s = plan.series_on_s();
    let kernel = plan.kernel_on_s();
    if plan.s <= 3 {
        let k = classify_lowdeg(&kernel)?;
        let g = classify_lowdeg(&on_s)?;
        return Ok(PlanHypotheses {
            kernel_empty: k.dim == 0,
            w: g.dim,
            nonspecial_s: !g.special && on_s.vdim() >= 0,
            method: HypothesisMethod::Classifier,
        });
    }
    let k = oracle_verdict(&kernel, oracle)?;
    let g = oracle_verdict(&on_s, oracle)?;
    if k.observed_dim != 0 || g.certified != Certification::NonspecialCertified || on_s.vdim() < 0 {
        return Err(DegenError::Undecided(format!("oracle could not certify the hypotheses on S for {on_s}")));
    }
    Ok(PlanHypotheses { kernel_empty: true, w: g.observed_dim, nonspecial_s: true, method: HypothesisMethod::Oracle })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VdimIdentity {
    pub original: i64,
    pub on_t: i64,
    pub hypotheses: PlanHypotheses,
    pub holds: bool,
}

/// Checks `vdim L_e^d(Γ, Γ') = vdim L_{e+sμ}^T(Γ'; μ^{dst}; w)` under the hypotheses.
pub fn vdim_identity(plan: &DegenPlan, oracle: &OracleConfig) -> Result<VdimIdentity, DegenError> {
    let hypotheses = plan_hypotheses(plan, oracle)?;
    if !hypotheses.hold() {
        return Err(DegenError::HypothesesFail(format!("{:?}", hypotheses)));
    }
    let original = plan.original().vdim();
    let on_t = vdim_t(plan, hypotheses.w)?;
    Ok(VdimIdentity { original, on_t, holds: original == on_t, hypotheses })
}

/// Result of [`identity_scan`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityScan {
    pub max_d: u32,
    pub max_e: i64,
    pub max_mu: u32,
    pub max_points: usize,
    pub max_mult: u32,
    /// Plans whose hypotheses were decided and hold.
    pub checked: usize,
    /// Plans whose hypotheses fail or could not be decided.
    pub skipped: usize,
    pub failures: Vec<DegenPlan>,
}

/// Multisets of at most `max_points` entries from `1..=max_mult`, each sorted descending.
pub fn multisets(max_points: usize, max_mult: u32) -> Vec<Vec<u32>> {
    fn rec(top: u32, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(cur.clone());
        if left == 0 {
            return;
        }
        for m in (1..=top).rev() {
            cur.push(m);
            rec(m, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(max_mult, max_points, &mut Vec::new(), &mut out);
    out
}

/// Dimensions of series on `S` that are known exactly: classifier verdicts
/// for `s <= 3`, and for `s >= 4` one random instance that reaches the
/// expected dimension.
/// Dimension and whether it reached the expected one.
type KnownDim = Option<(i64, bool)>;

struct SeriesOnS {
    pools: HashMap<u32, PointPool>,
    tables: HashMap<(u32, i64), FatTable>,
    memo: HashMap<(u32, i64, Vec<u32>), KnownDim>,
}

impl SeriesOnS {
    fn dim(&mut self, s: u32, e: i64, mults: &[u32]) -> Result<KnownDim, DegenError> {
        let key = (s, e, mults.to_vec());
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        let spec = SurfaceSeriesSpec::new(s, e, mults.to_vec()).map_err(|e| DegenError::InvalidPlan(e.to_string()))?;
        let out = if e < 0 {
            Some((0, false))
        } else if s <= 3 {
            let v = classify_lowdeg(&spec)?;
            (v.confidence == crate::planar::Confidence::Unconditional).then_some((v.dim, v.special))
        } else {
            let pool = &self.pools[&s];
            let table = self.tables.entry((s, e)).or_insert_with(|| pool.table(e));
            let dim = table.series_dim(mults)?;
            (dim == spec.edim()).then_some((dim, false))
        };
        self.memo.insert(key, out);
        Ok(out)
    }
}

fn on_s_vdim(s: u32, e: i64, mults: &[u32]) -> i64 {
    h0_surface_unchecked(s, e) - mults.iter().map(|&m| fat_degree(m)).sum::<i64>()
}

/// Checks the virtual dimension identity on every plan with `s + t <= max_d`,
/// `0 <= e <= max_e`, `μ <= max_mu` and every split of at most `max_points`
/// points of multiplicity at most `max_mult`, wherever the hypotheses on
/// `S` are decided and hold.
pub fn identity_scan(
    max_d: u32,
    max_e: i64,
    max_mu: u32,
    max_points: usize,
    max_mult: u32,
    oracle: &OracleConfig,
) -> Result<IdentityScan, DegenError> {
    let mut on_s = SeriesOnS { pools: HashMap::new(), tables: HashMap::new(), memo: HashMap::new() };
    for s in 4..max_d {
        on_s.pools.insert(s, PointPool::from_config(s, max_points, max_mult.saturating_sub(1), oracle)?);
    }
    let all = multisets(max_points, max_mult);
    let mut report = IdentityScan {
        max_d,
        max_e,
        max_mu,
        max_points,
        max_mult,
        checked: 0,
        skipped: 0,
        failures: Vec::new(),
    };
    for d in 2..=max_d {
        for s in 1..d {
            let t = d - s;
            for e in 0..=max_e {
                for mu in 0..=max_mu {
                    let e_s = e - (t * mu) as i64;
                    for gamma_s in &all {
                        let t_choices = all.iter().filter(|g| g.len() + gamma_s.len() <= max_points);
                        let kernel = on_s.dim(s, e_s - t as i64, gamma_s)?;
                        let series = on_s.dim(s, e_s, gamma_s)?;
                        let w = match (kernel, series) {
                            (Some((0, _)), Some((w, false))) if w == on_s_vdim(s, e_s, gamma_s) => w,
                            _ => {
                                report.skipped += t_choices.count();
                                continue;
                            }
                        };
                        for gamma_t in t_choices {
                            let plan = DegenPlan::new(e, s, t, mu, gamma_s.clone(), gamma_t.clone())?;
                            let holds = vdim_t(&plan, w).is_ok_and(|v| v == plan.original().vdim());
                            report.checked += 1;
                            if !holds {
                                report.failures.push(plan);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_identity_scan() {
        assert_eq!(multisets(2, 2), vec![vec![], vec![2], vec![2, 2], vec![2, 1], vec![1], vec![1, 1]]);
        let r = identity_scan(5, 4, 2, 3, 3, &OracleConfig::default()).unwrap();
        assert!(r.checked > 1000);
        assert!(r.failures.is_empty(), "{} failures, first {:?}", r.failures.len(), &r.failures[..r.failures.len().min(5)]);
    }

    #[test]
    fn modified_counts() {
        assert_eq!(h0_modified(6, 2, 2, 3), 74);
        assert_eq!(h0_modified(3, 2, 2, 1), 20);
        assert_eq!(h0_modified(7, 1, 3, 0), h0_surface_unchecked(3, 7));
    }

    #[test]
    fn two_quadruple_plan() {
        let plan = DegenPlan::new(3, 2, 2, 1, vec![], vec![4, 4]).unwrap();
        let h = plan_hypotheses(&plan, &OracleConfig::default()).unwrap();
        assert!(h.kernel_empty && h.nonspecial_s);
        assert_eq!(h.w, 4);
        assert_eq!(vdim_t(&plan, 4).unwrap(), 0);
        assert_eq!(twisted_thresholds(&plan, 4), vec![4]);
        assert!(vdim_identity(&plan, &OracleConfig::default()).unwrap().holds);
    }

    #[test]
    fn tenfold_point_plan() {
        let plan = DegenPlan::new(5, 1, 4, 1, vec![], vec![10]).unwrap();
        let h = plan_hypotheses(&plan, &OracleConfig::default()).unwrap();
        assert!(h.kernel_empty);
        assert_eq!(h.w, 3);
        assert_eq!(twisted_thresholds(&plan, 3), vec![3]);
    }

    #[test]
    fn case_three_thresholds() {
        let plan = DegenPlan::new(6, 2, 2, 3, vec![], vec![4; 8]).unwrap();
        assert_eq!(twisted_thresholds(&plan, 1), vec![1, 8, 16]);
        assert_eq!(vdim_t(&plan, 1).unwrap(), 74 - 80);
        assert!(vdim_t(&plan, 2).is_err());
    }

    #[test]
    fn overfull_s_has_empty_kernel() {
        let plan = DegenPlan::new(2, 2, 2, 0, vec![4, 4, 4], vec![]).unwrap();
        let h = plan_hypotheses(&plan, &OracleConfig::default()).unwrap();
        assert!(h.kernel_empty);
        assert_eq!(h.w, 0);
    }

    #[test]
    fn untwisted_plan_without_gluing_constraint() {
        let plan = DegenPlan::new(2, 1, 4, 0, vec![], vec![4]).unwrap();
        assert!(twisted_thresholds(&plan, 6).is_empty());
        assert_eq!(vdim_t(&plan, 6).unwrap(), h0_surface_unchecked(5, 2) - 10);
    }
}
