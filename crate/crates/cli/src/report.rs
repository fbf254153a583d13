//! Check records and suite reports.

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A computed value disagrees with a published one; both are in the witness.
    Flagged,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub id: String,
    pub description: String,
    pub status: Status,
    pub witness: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

impl Check {
    pub fn new(id: impl Into<String>, description: impl Into<String>, status: Status, witness: Value) -> Self {
        Check { id: id.into(), description: description.into(), status, witness, runtime_ms: None }
    }

    /// A check whose computation errored out.
    pub fn error(id: impl Into<String>, description: impl Into<String>, err: impl ToString) -> Self {
        Self::new(id, description, Status::Fail, Value::String(err.to_string()))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("suite {} (seed {})\n", self.suite, self.seed);
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Flagged => "FLAG",
            };
            out.push_str(&format!("  {tag}  {:<36} {}", c.id, c.description));
            if let Some(ms) = c.runtime_ms {
                out.push_str(&format!(" [{ms} ms]"));
            }
            out.push('\n');
            if c.status != Status::Pass {
                out.push_str(&format!("        {}\n", c.witness));
            }
        }
        out
    }
}
