//! Line splitting and Cremona reduction of planar fat-point series.
//!
//! A series is reduced until it is standard (`m1 + m2 + m3 <= e`) or empty
//! (`e < 0`). The dimension of a standard terminal is its expected dimension,
//! which is unconditional while every multiplicity stays at most
//! [`SHGH_KNOWN_BOUND`].

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dims::{h0_plane, PlanarSeriesSpec};

/// Multiplicity bound up to which the planar conjecture is a theorem.
pub const SHGH_KNOWN_BOUND: u32 = 11;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanarError {
    #[error("line split needs m1 + m2 >= e + 1 on {0}")]
    NoLineToSplit(String),
    #[error("Cremona step needs m1 + m2 <= e < m1 + m2 + m3 on {0}")]
    CremonaNotApplicable(String),
}

/// A point label together with its current multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledPoint {
    pub label: usize,
    pub mult: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ReductionStep {
    /// Remove the line through the two labelled points. A label of `None`
    /// stands for zero padding when fewer than two points remain.
    LineSplit { points: [Option<usize>; 2] },
    Cremona { points: [usize; 3], amount: i64 },
    DropNonpositive { labels: Vec<usize> },
}

/// Working state used while reducing: degree plus labelled points kept in
/// descending multiplicity order (ties broken by label).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledSeries {
    pub e: i64,
    pub points: Vec<LabeledPoint>,
}

impl LabeledSeries {
    pub fn from_spec(spec: &PlanarSeriesSpec) -> Self {
        let points = spec.mults.iter().enumerate().map(|(label, &m)| LabeledPoint { label, mult: m as i64 }).collect();
        let mut s = Self { e: spec.e, points };
        s.sort();
        s
    }

    fn sort(&mut self) {
        self.points.sort_by(|a, b| b.mult.cmp(&a.mult).then(a.label.cmp(&b.label)));
    }

    fn mult(&self, i: usize) -> i64 {
        self.points.get(i).map_or(0, |p| p.mult)
    }

    pub fn to_spec(&self) -> PlanarSeriesSpec {
        PlanarSeriesSpec::new(self.e, self.points.iter().filter(|p| p.mult > 0).map(|p| p.mult as u32).collect())
    }

    fn drop_nonpositive(&mut self) -> Option<ReductionStep> {
        let labels: Vec<usize> = self.points.iter().filter(|p| p.mult <= 0).map(|p| p.label).collect();
        if labels.is_empty() {
            return None;
        }
        self.points.retain(|p| p.mult > 0);
        Some(ReductionStep::DropNonpositive { labels })
    }

    fn can_split(&self) -> bool {
        self.e >= 0 && self.mult(0) + self.mult(1) > self.e
    }

    fn split(&mut self) -> ReductionStep {
        let labels = [self.points.first().map(|p| p.label), self.points.get(1).map(|p| p.label)];
        for p in self.points.iter_mut().take(2) {
            p.mult -= 1;
        }
        self.e -= 1;
        self.sort();
        ReductionStep::LineSplit { points: labels }
    }

    fn standard(&self) -> bool {
        self.e >= 0 && self.mult(0) + self.mult(1) + self.mult(2) <= self.e
    }

    fn cremona(&mut self) -> ReductionStep {
        let amount = self.mult(0) + self.mult(1) + self.mult(2) - self.e;
        let labels = [self.points[0].label, self.points[1].label, self.points[2].label];
        for p in self.points.iter_mut().take(3) {
            p.mult -= amount;
        }
        self.e -= amount;
        self.sort();
        ReductionStep::Cremona { points: labels, amount }
    }

    /// Applies a recorded step; used to replay traces.
    pub fn apply(&mut self, step: &ReductionStep) -> Result<(), PlanarError> {
        match step {
            ReductionStep::LineSplit { points } => {
                if !self.can_split() {
                    return Err(PlanarError::NoLineToSplit(self.to_spec().to_string()));
                }
                for label in points.iter().flatten() {
                    if let Some(p) = self.points.iter_mut().find(|p| p.label == *label) {
                        p.mult -= 1;
                    }
                }
                self.e -= 1;
            }
            ReductionStep::Cremona { points, amount } => {
                for label in points {
                    if let Some(p) = self.points.iter_mut().find(|p| p.label == *label) {
                        p.mult -= amount;
                    }
                }
                self.e -= amount;
            }
            ReductionStep::DropNonpositive { labels } => {
                self.points.retain(|p| !labels.contains(&p.label));
            }
        }
        self.sort();
        Ok(())
    }
}

/// `m1 + m2 + m3 <= e` with zero padding; never true for `e < 0`.
pub fn is_standard(spec: &PlanarSeriesSpec) -> bool {
    let m = |i: usize| spec.mults.get(i).copied().unwrap_or(0) as i64;
    spec.e >= 0 && m(0) + m(1) + m(2) <= spec.e
}

/// Removes the line through the two largest points.
pub fn split_line(spec: &PlanarSeriesSpec) -> Result<PlanarSeriesSpec, PlanarError> {
    let mut s = LabeledSeries::from_spec(spec);
    if !s.can_split() {
        return Err(PlanarError::NoLineToSplit(spec.to_string()));
    }
    s.split();
    s.drop_nonpositive();
    Ok(s.to_spec())
}

/// Quadratic transformation centred at the three largest points.
/// Returns the amount `a` and the transformed series.
pub fn cremona(spec: &PlanarSeriesSpec) -> Result<(i64, PlanarSeriesSpec), PlanarError> {
    let mut s = LabeledSeries::from_spec(spec);
    if s.e < 0 || s.can_split() || s.standard() {
        return Err(PlanarError::CremonaNotApplicable(spec.to_string()));
    }
    let ReductionStep::Cremona { amount, .. } = s.cremona() else { unreachable!() };
    s.drop_nonpositive();
    Ok((amount, s.to_spec()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub initial: PlanarSeriesSpec,
    pub steps: Vec<ReductionStep>,
    pub terminal: PlanarSeriesSpec,
    /// Largest multiplicity seen anywhere along the trace.
    pub max_multiplicity: u32,
}

impl ReductionTrace {
    pub fn is_empty_terminal(&self) -> bool {
        self.terminal.e < 0
    }

    /// Replays the steps from the initial series.
    pub fn replay(&self) -> Result<PlanarSeriesSpec, PlanarError> {
        let mut s = LabeledSeries::from_spec(&self.initial);
        for step in &self.steps {
            s.apply(step)?;
        }
        Ok(s.to_spec())
    }
}

/// Drops nonpositive points, exhausts line splits, then applies a Cremona
/// step; repeats until the series is standard or empty.
pub fn reduce(spec: &PlanarSeriesSpec) -> ReductionTrace {
    let mut s = LabeledSeries::from_spec(spec);
    let mut steps = Vec::new();
    let mut max_multiplicity = spec.mults.first().copied().unwrap_or(0);
    loop {
        if let Some(step) = s.drop_nonpositive() {
            steps.push(step);
        }
        while s.can_split() {
            steps.push(s.split());
            if let Some(step) = s.drop_nonpositive() {
                steps.push(step);
            }
        }
        if s.e < 0 || s.standard() {
            break;
        }
        steps.push(s.cremona());
        max_multiplicity = max_multiplicity.max(s.mult(0).max(0) as u32);
    }
    ReductionTrace { initial: spec.clone(), steps, terminal: s.to_spec(), max_multiplicity }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Confidence {
    Unconditional,
    ShghConditional,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarVerdict {
    pub dim: i64,
    pub edim: i64,
    pub special: bool,
    pub confidence: Confidence,
    pub trace: ReductionTrace,
}

/// Dimension of a terminal (standard or empty) series.
fn terminal_dim(spec: &PlanarSeriesSpec) -> i64 {
    if spec.e < 0 {
        0
    } else if spec.mults.is_empty() {
        h0_plane(spec.e)
    } else {
        spec.edim()
    }
}

pub fn classify_planar(spec: &PlanarSeriesSpec) -> PlanarVerdict {
    let trace = reduce(spec);
    let dim = terminal_dim(&trace.terminal);
    let edim = spec.edim();
    let confidence =
        if trace.max_multiplicity <= SHGH_KNOWN_BOUND { Confidence::Unconditional } else { Confidence::ShghConditional };
    PlanarVerdict { dim, edim, special: dim != edim, confidence, trace }
}
