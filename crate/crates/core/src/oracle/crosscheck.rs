//! Sweeps comparing the oracle with the planar, quadric and cubic classifiers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{oracle_verdict, FatTable, OracleConfig, OracleError, PointPool};
use crate::dims::{fat_degree, h0_surface_unchecked, PlanarSeriesSpec, SurfaceSeriesSpec};
use crate::lowdeg::classify_lowdeg;
use crate::planar::{cremona, Confidence};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disagreement {
    pub spec: SurfaceSeriesSpec,
    pub classifier_dim: i64,
    pub oracle_dim: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgreementReport {
    pub d: u32,
    pub e_max: i64,
    pub slack: i64,
    pub max_simple: usize,
    pub checked: usize,
    /// Series left out because the classifier verdict is conditional.
    pub conditional: usize,
    /// Extra surfaces drawn because the first instance was not general enough.
    pub resampled: usize,
    pub disagreements: Vec<Disagreement>,
}

/// Extra surfaces tried before a classifier/oracle difference is reported.
const RESAMPLES: u64 = 4;

/// Compares classifier and oracle dimensions on every `L_e^d(4^a,3^b,2^c,1^k)`
/// with `0 <= e <= e_max`, `k <= max_simple` and total degree at most
/// `h^0 + slack`, using one cached surface per degree `e`.
pub fn lowdeg_agreement(
    d: u32,
    e_max: i64,
    slack: i64,
    max_simple: usize,
    cfg: &OracleConfig,
) -> Result<AgreementReport, OracleError> {
    if !(1..=3).contains(&d) {
        return Err(OracleError::InvalidSurface);
    }
    cfg.check_budget(e_max)?;
    let per_e = (0..=e_max)
        .into_par_iter()
        .map(|e| agreement_in_degree(d, e, slack, max_simple, cfg))
        .collect::<Result<Vec<_>, OracleError>>()?;
    let mut report = AgreementReport {
        d,
        e_max,
        slack,
        max_simple,
        checked: 0,
        conditional: 0,
        resampled: 0,
        disagreements: Vec::new(),
    };
    for (checked, conditional, resampled, dis) in per_e {
        report.checked += checked;
        report.conditional += conditional;
        report.resampled += resampled;
        report.disagreements.extend(dis);
    }
    Ok(report)
}

type DegreeTally = (usize, usize, usize, Vec<Disagreement>);

fn agreement_in_degree(d: u32, e: i64, slack: i64, max_simple: usize, cfg: &OracleConfig) -> Result<DegreeTally, OracleError> {
    let budget = h0_surface_unchecked(d, e) + slack;
    let mut specs = Vec::new();
    for a in 0..=budget / fat_degree(4) {
        for b in 0..=(budget - a * fat_degree(4)) / fat_degree(3) {
            let left = budget - a * fat_degree(4) - b * fat_degree(3);
            for c in 0..=left / fat_degree(2) {
                for k in 0..=(max_simple as i64).min(left - c * fat_degree(2)) {
                    let mut mults = vec![4; a as usize];
                    mults.extend(std::iter::repeat_n(3, b as usize));
                    mults.extend(std::iter::repeat_n(2, c as usize));
                    mults.extend(std::iter::repeat_n(1, k as usize));
                    specs.push(SurfaceSeriesSpec::new(d, e, mults).expect("positive multiplicities"));
                }
            }
        }
    }
    let points = specs.iter().map(|s| s.mults.len()).max().unwrap_or(0);
    let table = |shift: u64| -> Result<FatTable, OracleError> {
        let c = OracleConfig { seed: cfg.seed.wrapping_add(shift.wrapping_mul(0x9e37_79b9)).wrapping_add(e as u64), ..*cfg };
        Ok(PointPool::from_config(d, points, 3, &c)?.table(e))
    };
    let mut tables = vec![table(0)?];
    let (mut checked, mut conditional, mut resampled) = (0, 0, 0);
    let mut disagreements = Vec::new();
    for spec in specs {
        let v = classify_lowdeg(&spec).map_err(|_| OracleError::InvalidSurface)?;
        if v.confidence != Confidence::Unconditional {
            conditional += 1;
            continue;
        }
        checked += 1;
        let mut dim = tables[0].series_dim(&spec.mults)?;
        let mut shift = 1;
        while dim > v.dim && shift <= RESAMPLES {
            if tables.len() <= shift as usize {
                tables.push(table(shift)?);
            }
            resampled += 1;
            dim = dim.min(tables[shift as usize].series_dim(&spec.mults)?);
            shift += 1;
        }
        if dim != v.dim {
            disagreements.push(Disagreement { spec, classifier_dim: v.dim, oracle_dim: dim });
        }
    }
    Ok((checked, conditional, resampled, disagreements))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CremonaCheck {
    pub before: PlanarSeriesSpec,
    pub amount: i64,
    pub after: PlanarSeriesSpec,
    pub dim_before: i64,
    pub dim_after: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CremonaAgreement {
    pub seed: u64,
    pub checks: Vec<CremonaCheck>,
    pub mismatches: usize,
}

/// Random planar series `L_e(m_1, ..., m_r)` with `2 <= e <= e_max` on which a
/// Cremona step applies, drawn from `seed`.
pub fn random_cremona_instances(count: usize, e_max: i64, seed: u64) -> Vec<PlanarSeriesSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let e = rng.random_range(2..=e_max.max(2));
        let r = rng.random_range(3..=8);
        let mults = (0..r).map(|_| rng.random_range(1..=e as u32)).collect();
        let spec = PlanarSeriesSpec::new(e, mults);
        if cremona(&spec).is_ok() {
            out.push(spec);
        }
    }
    out
}

/// Oracle dimensions before and after one Cremona step on random instances.
pub fn cremona_agreement(count: usize, e_max: i64, seed: u64, cfg: &OracleConfig) -> Result<CremonaAgreement, OracleError> {
    let checks = random_cremona_instances(count, e_max, seed)
        .into_par_iter()
        .map(|before| {
            let (amount, after) = cremona(&before).expect("filtered");
            let dim_before = oracle_verdict(&before.as_surface(), cfg)?.observed_dim;
            let dim_after = oracle_verdict(&after.as_surface(), cfg)?.observed_dim;
            Ok(CremonaCheck { before, amount, after, dim_before, dim_after })
        })
        .collect::<Result<Vec<_>, OracleError>>()?;
    let mismatches = checks.iter().filter(|c| c.dim_before != c.dim_after).count();
    Ok(CremonaAgreement { seed, checks, mismatches })
}
