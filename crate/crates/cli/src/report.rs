//! The JSON report emitted by the verification front end.
//!
//! Reports are byte-stable across runs with identical configuration: the
//! payload section contains no timestamps or durations, every map is
//! key-ordered, and check entries are sorted by id. Wall-clock durations are
//! segregated into the `timing` section.

use std::collections::BTreeMap;
use std::time::Duration;

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Outcome of one check, including its wall-clock duration. The duration
/// never enters the payload section.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub id: String,
    pub params: BTreeMap<String, i64>,
    pub status: Status,
    pub witness: serde_json::Value,
    pub message: Option<String>,
    pub duration: Duration,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckEntry {
    pub id: String,
    pub params: BTreeMap<String, i64>,
    pub status: Status,
    #[serde(skip_serializing_if = "serde_json::Value::is_null")]
    pub witness: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Payload {
    pub checks: Vec<CheckEntry>,
    pub summary: Summary,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub total_ms: u128,
    pub per_check_ms: BTreeMap<String, u128>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfigEcho {
    pub suite: String,
    pub n: [u32; 2],
    pub g: [u32; 2],
    pub jobs: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub config: ConfigEcho,
    pub payload: Payload,
    pub timing: Timing,
}

impl Report {
    pub fn assemble(
        command: &str,
        config: ConfigEcho,
        mut results: Vec<CheckResult>,
        total: Duration,
    ) -> Report {
        results.sort_by(|a, b| a.id.cmp(&b.id));
        let summary = Summary {
            pass: results.iter().filter(|r| r.status == Status::Pass).count(),
            fail: results.iter().filter(|r| r.status == Status::Fail).count(),
            skipped: results.iter().filter(|r| r.status == Status::Skipped).count(),
        };
        let per_check_ms = results
            .iter()
            .map(|r| (r.id.clone(), r.duration.as_millis()))
            .collect();
        let checks = results
            .into_iter()
            .map(|r| CheckEntry {
                id: r.id,
                params: r.params,
                status: r.status,
                witness: r.witness,
                message: r.message,
            })
            .collect();
        Report {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            config,
            payload: Payload { checks, summary },
            timing: Timing { total_ms: total.as_millis(), per_check_ms },
        }
    }

    pub fn all_passed(&self) -> bool {
        self.payload.summary.fail == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// Human-readable rendering: one line per check plus a summary.
    pub fn to_text(&self, verbose: bool) -> String {
        let mut out = String::new();
        for check in &self.payload.checks {
            let tag = match check.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            let ms = self.timing.per_check_ms.get(&check.id).copied().unwrap_or(0);
            out.push_str(&format!("{tag}  {}  ({ms} ms)\n", check.id));
            if let Some(msg) = &check.message {
                out.push_str(&format!("      {msg}\n"));
            }
            if verbose && !check.witness.is_null() {
                out.push_str(&format!("      {}\n", check.witness));
            }
        }
        let s = &self.payload.summary;
        out.push_str(&format!(
            "{} passed, {} failed, {} skipped ({} ms)\n",
            s.pass, s.fail, s.skipped, self.timing.total_ms
        ));
        out
    }
}
