//! Degenerations `S ∪ T`, the splitting ledger along `C = S ∩ T`, and the
//! case analysis for points of multiplicity at most four.

pub mod ledger;
pub mod plan;
pub mod staircase;
pub mod theorem_b;

use thiserror::Error;

use crate::lowdeg::LowdegError;
use crate::oracle::OracleError;

pub use ledger::{general_position_ok, run_ledger, LedgerError, LedgerTrace};
pub use plan::{h0_modified, identity_scan, plan_hypotheses, twisted_thresholds, vdim_identity, vdim_t, DegenPlan, PlanHypotheses};
pub use staircase::{staircase_colon, staircase_restrict, OnCurveScheme, StaircaseIdeal};
pub use theorem_b::{theorem_b_sweep, verify_theorem_b, CaseKind, CaseTrace, TheoremBOutcome, TheoremBSweep, TheoremBVerifier};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegenError {
    #[error("invalid plan: {0}")]
    InvalidPlan(String),
    #[error("gluing dimension {w} outside [0, {max}]")]
    GluingOutOfRange { w: i64, max: i64 },
    #[error("hypotheses on S fail: {0}")]
    HypothesesFail(String),
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("multiplicity {0} is outside 1..=4")]
    UnsupportedMultiplicity(u32),
    #[error(transparent)]
    Lowdeg(#[from] LowdegError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Ledger(#[from] LedgerError),
}
