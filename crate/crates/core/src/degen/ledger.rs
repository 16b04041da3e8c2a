//! Splitting `C` off a series by specializing points onto it.
//!
//! Each threshold is the number of conditions along `C` needed before `C`
//! falls into the base locus once more. Schemes already on `C` contribute
//! first, then queued points one at a time. The point that reaches the
//! threshold with remaining need `v` leaves `δ_{m-1,m-v}`; every other
//! scheme on `C` is replaced by its residual.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::staircase::{staircase_colon, staircase_restrict, OnCurveScheme};
use crate::dims::{format_multiplicities, h0_surface_unchecked};

/// Which branch of the limit computation is used for the tipping point.
pub const LIMIT_RULE: &str = "limit-tangent-branch";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum EventSource {
    /// A scheme already lying on `C`, by its position in the on-curve list.
    Residual { index: usize, scheme: OnCurveScheme },
    /// A queued point of multiplicity `m`, by its position in the queue.
    Queue { position: usize, m: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerEvent {
    pub threshold_index: usize,
    pub source: EventSource,
    pub contributed: u32,
    pub cumulative: u32,
    pub split: bool,
    /// For the tipping point: the residual it leaves on `C`.
    pub residual: Option<OnCurveScheme>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitSnapshot {
    pub threshold: u32,
    /// Schemes on `C` right after the split.
    pub on_curve: Vec<OnCurveScheme>,
    /// Queue entries not yet specialized.
    pub pending: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralPosition {
    pub alpha: u32,
    pub beta: u32,
    pub bound: i64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerTrace {
    pub thresholds: Vec<u32>,
    pub queue: Vec<u32>,
    pub t: u32,
    pub events: Vec<LedgerEvent>,
    pub splits: Vec<SplitSnapshot>,
    pub final_residuals: Vec<OnCurveScheme>,
    pub pending: Vec<u32>,
    pub general_position: GeneralPosition,
    pub rule: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LedgerError {
    #[error("threshold {index} is zero")]
    ZeroThreshold { index: usize },
    #[error("queue multiplicities must be positive")]
    ZeroMultiplicity,
    #[error("queue exhausted at threshold {index}: gathered {gathered} of {needed}")]
    InsufficientMultiplicity { index: usize, needed: u32, gathered: u32, partial: Box<LedgerTrace> },
    #[error("residual {scheme} on C reaches threshold {index} by itself")]
    ResidualTipsSplit { index: usize, scheme: OnCurveScheme, partial: Box<LedgerTrace> },
}

/// Residuals on `C` in general position on `T` as `S` varies: `α + 2β <= h^0(O_T(2)) - 1`.
pub fn general_position_ok(alpha: u32, beta: u32, t: u32) -> bool {
    general_position(alpha, beta, t).ok
}

fn general_position(alpha: u32, beta: u32, t: u32) -> GeneralPosition {
    let bound = h0_surface_unchecked(t, 2) - 1;
    GeneralPosition { alpha, beta, bound, ok: (alpha + 2 * beta) as i64 <= bound }
}

fn position_of(on_curve: &[OnCurveScheme], t: u32) -> GeneralPosition {
    let beta = on_curve.iter().filter(|s| s.is_delta()).count() as u32;
    general_position(on_curve.len() as u32 - beta, beta, t)
}

/// Runs the thresholds in order over the queue; `t` is the degree of the
/// surface carrying the residual series.
pub fn run_ledger(queue: &[u32], thresholds: &[u32], t: u32) -> Result<LedgerTrace, LedgerError> {
    if let Some(index) = thresholds.iter().position(|&x| x == 0) {
        return Err(LedgerError::ZeroThreshold { index });
    }
    if queue.contains(&0) {
        return Err(LedgerError::ZeroMultiplicity);
    }
    let mut trace = LedgerTrace {
        thresholds: thresholds.to_vec(),
        queue: queue.to_vec(),
        t,
        events: Vec::new(),
        splits: Vec::new(),
        final_residuals: Vec::new(),
        pending: queue.to_vec(),
        general_position: general_position(0, 0, t),
        rule: LIMIT_RULE.to_string(),
    };
    let mut on_curve: Vec<OnCurveScheme> = Vec::new();
    let mut next = 0usize;
    let finish = |trace: &mut LedgerTrace, on_curve: &[OnCurveScheme], next: usize| {
        trace.final_residuals = on_curve.to_vec();
        trace.pending = queue[next..].to_vec();
        trace.general_position = position_of(on_curve, t);
    };
    for (index, &threshold) in thresholds.iter().enumerate() {
        let mut gathered = 0u32;
        for (i, &scheme) in on_curve.iter().enumerate() {
            let c = staircase_restrict(scheme);
            gathered += c;
            let split = gathered >= threshold;
            trace.events.push(LedgerEvent {
                threshold_index: index,
                source: EventSource::Residual { index: i, scheme },
                contributed: c,
                cumulative: gathered,
                split,
                residual: None,
            });
            if split {
                finish(&mut trace, &on_curve, next);
                return Err(LedgerError::ResidualTipsSplit { index, scheme, partial: Box::new(trace) });
            }
        }
        let mut fresh: Vec<OnCurveScheme> = Vec::new();
        let tip = loop {
            let Some(&m) = queue.get(next) else {
                on_curve.extend(fresh);
                finish(&mut trace, &on_curve, next);
                return Err(LedgerError::InsufficientMultiplicity {
                    index,
                    needed: threshold,
                    gathered,
                    partial: Box::new(trace),
                });
            };
            let need = threshold - gathered;
            let position = next;
            next += 1;
            if m >= need {
                let residual = OnCurveScheme::normalized(m - 1, m - need);
                gathered += need;
                trace.events.push(LedgerEvent {
                    threshold_index: index,
                    source: EventSource::Queue { position, m },
                    contributed: need,
                    cumulative: gathered,
                    split: true,
                    residual,
                });
                break residual;
            }
            gathered += m;
            trace.events.push(LedgerEvent {
                threshold_index: index,
                source: EventSource::Queue { position, m },
                contributed: m,
                cumulative: gathered,
                split: false,
                residual: None,
            });
            fresh.push(OnCurveScheme::Fat { m });
        };
        on_curve = on_curve.into_iter().chain(fresh).filter_map(staircase_colon).chain(tip).collect();
        trace.splits.push(SplitSnapshot { threshold, on_curve: on_curve.clone(), pending: queue[next..].to_vec() });
    }
    finish(&mut trace, &on_curve, next);
    Ok(trace)
}

impl fmt::Display for LedgerTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[OnCurveScheme]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", ");
        for (k, &threshold) in self.thresholds.iter().enumerate() {
            writeln!(f, "split {} (threshold {threshold}):", k + 1)?;
            for ev in self.events.iter().filter(|e| e.threshold_index == k) {
                let what = match &ev.source {
                    EventSource::Residual { scheme, .. } => format!("on C: {scheme}"),
                    EventSource::Queue { position, m } => format!("point #{} of multiplicity {m}", position + 1),
                };
                write!(f, "  {what} contributes {} (total {})", ev.contributed, ev.cumulative)?;
                if ev.split {
                    match ev.residual {
                        Some(r) => write!(f, "; C splits, leaving {r}")?,
                        None => write!(f, "; C splits, no residual")?,
                    }
                }
                writeln!(f)?;
            }
            if let Some(snap) = self.splits.get(k) {
                writeln!(f, "  on C: [{}]; pending: ({})", list(&snap.on_curve), format_multiplicities(&snap.pending))?;
            }
        }
        let gp = &self.general_position;
        writeln!(
            f,
            "residuals [{}], pending ({}); general position {} + 2*{} <= {}: {}",
            list(&self.final_residuals),
            format_multiplicities(&self.pending),
            gp.alpha,
            gp.beta,
            gp.bound,
            if gp.ok { "yes" } else { "no" }
        )
    }
}
