use std::process::ExitCode;

use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Verified,
    Violated,
    Inconclusive,
}

impl Verdict {
    pub fn code(self) -> u8 {
        match self {
            Verdict::Verified => 0,
            Verdict::Violated => 1,
            Verdict::Inconclusive => 2,
        }
    }
}

pub const USAGE_EXIT: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn usage(e: impl ToString) -> Self {
        CliError::Usage(e.to_string())
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(USAGE_EXIT)
    }
}

/// What a subcommand hands back before timing and echo are attached.
pub struct Outcome {
    pub config: Value,
    pub rules: Vec<String>,
    pub verdict: Verdict,
    pub payload: Value,
    pub text: String,
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub version: &'static str,
    pub config: Value,
    pub rules: Vec<String>,
    pub verdict: Verdict,
    pub exit_code: u8,
    pub payload: Value,
    pub duration_ms: u64,
}

impl RunReport {
    pub fn new(command: Vec<String>, outcome: &Outcome, duration_ms: u64) -> Self {
        Self {
            command,
            version: fatpoint_core::VERSION,
            config: outcome.config.clone(),
            rules: outcome.rules.clone(),
            verdict: outcome.verdict,
            exit_code: outcome.verdict.code(),
            payload: outcome.payload.clone(),
            duration_ms,
        }
    }
}

pub fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

pub fn rules(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}
