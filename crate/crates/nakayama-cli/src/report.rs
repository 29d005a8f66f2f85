//! The JSON report written by every subcommand.

use std::time::Duration;

use nakayama::verify::{overall, CheckRecord, Status};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::commands::{Context, Inputs, Outcome};

#[derive(Serialize)]
pub struct Timing {
    pub elapsed_ms: u128,
}

#[derive(Serialize)]
pub struct Report {
    pub tool_version: &'static str,
    pub command: &'static str,
    /// SHA-256 over the input files (or the gallery arguments).
    pub input_digest: String,
    pub seed: u64,
    pub status: Status,
    pub checks: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub result: Value,
    pub timing: Timing,
}

fn digest(inputs: &Inputs, fallback: &str) -> String {
    let mut h = Sha256::new();
    if inputs.files.is_empty() {
        h.update(fallback.as_bytes());
    }
    for (_, text) in &inputs.files {
        h.update((text.len() as u64).to_le_bytes());
        h.update(text.as_bytes());
    }
    format!("sha256:{:x}", h.finalize())
}

impl Report {
    pub fn new(command: &'static str, inputs: &Inputs, fallback: &str, ctx: &Context, outcome: Outcome, elapsed: Duration) -> Self {
        let status = if outcome.checks.is_empty() { Status::Pass } else { overall(&outcome.checks) };
        Report {
            tool_version: env!("CARGO_PKG_VERSION"),
            command,
            input_digest: digest(inputs, fallback),
            seed: ctx.seed,
            status,
            checks: outcome.checks,
            result: outcome.result,
            timing: Timing { elapsed_ms: elapsed.as_millis() },
        }
    }
}
