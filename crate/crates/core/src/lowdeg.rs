//! Series on planes, quadrics and cubics, via their planar models.
//!
//! A quadric blown up at one point is the plane blown up at two points, and
//! a cubic is the plane blown up at six, so `L_e^2(Γ)` and `L_e^3(Γ)` become
//! `L_{2e}^1(e^2, Γ)` and `L_{3e}^1(e^6, Γ)`.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dims::{fat_degree, h0_surface_unchecked, PlanarSeriesSpec, SurfaceSeriesSpec};
use crate::planar::{classify_planar, Confidence, PlanarVerdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LowdegError {
    #[error("expected a surface of degree {expected}, got {got}")]
    WrongDegree { expected: u32, got: u32 },
    #[error("negative degree {0} has no planar model")]
    NegativeDegree(i64),
    #[error("degree {0} surfaces are handled by the degeneration verifier or the oracle")]
    Unsupported(u32),
}

pub fn quadric_to_planar(spec: &SurfaceSeriesSpec) -> Result<PlanarSeriesSpec, LowdegError> {
    to_planar(spec, 2, 2)
}

pub fn cubic_to_planar(spec: &SurfaceSeriesSpec) -> Result<PlanarSeriesSpec, LowdegError> {
    to_planar(spec, 3, 6)
}

fn to_planar(spec: &SurfaceSeriesSpec, d: u32, extra: usize) -> Result<PlanarSeriesSpec, LowdegError> {
    if spec.d != d {
        return Err(LowdegError::WrongDegree { expected: d, got: spec.d });
    }
    if spec.e < 0 {
        return Err(LowdegError::NegativeDegree(spec.e));
    }
    let mut mults = vec![spec.e as u32; extra];
    mults.extend_from_slice(&spec.mults);
    Ok(PlanarSeriesSpec::new(d as i64 * spec.e, mults))
}

/// Verdict for a series on a surface of degree 1, 2 or 3.
///
/// `edim` and `special` refer to the surface series; for `e < 0` the series
/// is empty and the trace is the trivial one on the planar spec `L_e^1(Γ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowdegVerdict {
    pub spec: SurfaceSeriesSpec,
    pub planar: PlanarSeriesSpec,
    pub dim: i64,
    pub edim: i64,
    pub special: bool,
    pub confidence: Confidence,
    pub planar_verdict: PlanarVerdict,
}

pub fn classify_lowdeg(spec: &SurfaceSeriesSpec) -> Result<LowdegVerdict, LowdegError> {
    let planar = match spec.d {
        _ if spec.e < 0 => PlanarSeriesSpec::new(spec.e, spec.mults.clone()),
        1 => PlanarSeriesSpec::new(spec.e, spec.mults.clone()),
        2 => quadric_to_planar(spec)?,
        3 => cubic_to_planar(spec)?,
        d => return Err(LowdegError::Unsupported(d)),
    };
    let planar_verdict = classify_planar(&planar);
    let dim = planar_verdict.dim;
    let edim = spec.edim();
    Ok(LowdegVerdict {
        spec: spec.clone(),
        planar,
        dim,
        edim,
        special: dim != edim,
        confidence: planar_verdict.confidence,
        planar_verdict,
    })
}

/// Special series found by [`enumerate_special`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialSeriesTable {
    pub d: u32,
    pub e_max: i64,
    pub slack: i64,
    pub entries: Vec<SpecialEntry>,
    /// Special verdicts that relied on the conjecture beyond its known range.
    pub conditional: Vec<SpecialEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialEntry {
    pub spec: SurfaceSeriesSpec,
    pub vdim: i64,
    pub dim: i64,
}

impl SpecialSeriesTable {
    pub fn specs(&self) -> Vec<SurfaceSeriesSpec> {
        self.entries.iter().map(|e| e.spec.clone()).collect()
    }
}

impl fmt::Display for SpecialSeriesTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "special series on a general surface of degree {} (e <= {}, slack {})", self.d, self.e_max, self.slack)?;
        let mut last_e = None;
        for entry in &self.entries {
            if last_e != Some(entry.spec.e) {
                write!(f, "{}e = {}:", if last_e.is_some() { "\n" } else { "" }, entry.spec.e)?;
                last_e = Some(entry.spec.e);
            }
            write!(f, "  {} [vdim {}, dim {}]", entry.spec, entry.vdim, entry.dim)?;
        }
        if last_e.is_some() {
            writeln!(f)?;
        }
        for entry in &self.conditional {
            writeln!(f, "conditional: {}", entry.spec)?;
        }
        Ok(())
    }
}

/// Canonical order: by `e`, then by the multiset in descending lexicographic order.
fn canonical_order(a: &SurfaceSeriesSpec, b: &SurfaceSeriesSpec) -> std::cmp::Ordering {
    a.e.cmp(&b.e).then_with(|| b.mults.cmp(&a.mults))
}

/// Scans `L_e^d(4^a, 3^b, 2^c)` for `1 <= e <= e_max` with total degree at
/// most `h^0 + slack` and returns the special ones.
pub fn enumerate_special(d: u32, e_max: i64, slack: i64) -> Result<SpecialSeriesTable, LowdegError> {
    if !(2..=3).contains(&d) {
        return Err(LowdegError::Unsupported(d));
    }
    let mut tuples = Vec::new();
    for e in 1..=e_max {
        let budget = h0_surface_unchecked(d, e) + slack;
        for a in 0..=budget / fat_degree(4) {
            for b in 0..=(budget - a * fat_degree(4)) / fat_degree(3) {
                let rest = budget - a * fat_degree(4) - b * fat_degree(3);
                for c in 0..=rest / fat_degree(2) {
                    tuples.push((e, a as usize, b as usize, c as usize));
                }
            }
        }
    }
    let found: Vec<(SpecialEntry, Confidence)> = tuples
        .par_iter()
        .filter_map(|&(e, a, b, c)| {
            let mut mults = vec![4; a];
            mults.extend(std::iter::repeat_n(3, b));
            mults.extend(std::iter::repeat_n(2, c));
            let spec = SurfaceSeriesSpec::new(d, e, mults).expect("valid");
            let v = classify_lowdeg(&spec).expect("degree checked");
            v.special.then(|| (SpecialEntry { vdim: spec.vdim(), dim: v.dim, spec }, v.confidence))
        })
        .collect();
    let (mut entries, mut conditional): (Vec<_>, Vec<_>) =
        found.into_iter().partition(|(_, c)| *c == Confidence::Unconditional);
    entries.sort_by(|x, y| canonical_order(&x.0.spec, &y.0.spec));
    conditional.sort_by(|x, y| canonical_order(&x.0.spec, &y.0.spec));
    Ok(SpecialSeriesTable {
        d,
        e_max,
        slack,
        entries: entries.into_iter().map(|x| x.0).collect(),
        conditional: conditional.into_iter().map(|x| x.0).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dims::parse_multiplicities;

    fn s(d: u32, e: i64, m: &str) -> SurfaceSeriesSpec {
        SurfaceSeriesSpec::new(d, e, parse_multiplicities(m).unwrap()).unwrap()
    }

    #[test]
    fn planar_models() {
        assert_eq!(quadric_to_planar(&s(2, 3, "4,3")).unwrap(), PlanarSeriesSpec::new(6, vec![3, 3, 4, 3]));
        assert_eq!(quadric_to_planar(&s(2, 4, "4^3")).unwrap(), PlanarSeriesSpec::new(8, vec![4; 5]));
        assert_eq!(quadric_to_planar(&s(2, 0, "")).unwrap(), PlanarSeriesSpec::new(0, vec![]));
        assert_eq!(cubic_to_planar(&s(3, 2, "4")).unwrap(), PlanarSeriesSpec::new(6, vec![2, 2, 2, 2, 2, 2, 4]));
        assert_eq!(cubic_to_planar(&s(3, 1, "2")).unwrap(), PlanarSeriesSpec::new(3, vec![1, 1, 1, 1, 1, 1, 2]));
        assert_eq!(cubic_to_planar(&s(3, 0, "")).unwrap(), PlanarSeriesSpec::new(0, vec![]));
        assert!(quadric_to_planar(&s(3, 1, "")).is_err());
        assert!(cubic_to_planar(&s(2, 1, "")).is_err());
    }

    #[test]
    fn lowdeg_examples() {
        assert!(classify_lowdeg(&s(2, 6, "4^5")).unwrap().special);
        let v = classify_lowdeg(&s(3, 2, "4")).unwrap();
        assert!(v.special);
        assert_eq!(v.dim, 1);
        assert!(!classify_lowdeg(&s(2, 7, "4^3")).unwrap().special);
        assert!(classify_lowdeg(&s(4, 2, "4")).is_err());
        assert_eq!(classify_lowdeg(&s(2, 3, "4,3")).unwrap().dim, 0);
        assert_eq!(classify_lowdeg(&s(2, -1, "")).unwrap().dim, 0);
    }

    #[test]
    fn no_special_series_in_degree_one() {
        assert!(enumerate_special(2, 1, 20).unwrap().entries.is_empty());
    }

    #[test]
    fn special_entries_have_positive_dimension() {
        let table = enumerate_special(2, 6, 20).unwrap();
        for entry in &table.entries {
            assert!(entry.dim >= 1 && entry.dim > entry.vdim.max(0), "{}", entry.spec);
        }
    }
}
