use std::fmt;

use serde::{Deserialize, Serialize};

/// Outcome of one subcommand. Field order is fixed by the command, so equal
/// inputs give byte-identical output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub verdict: String,
    pub fields: Vec<(String, String)>,
    /// Set when `--expect-semistable` should turn this report into exit code 1.
    pub violation: bool,
}

impl Report {
    pub fn new(command: &str, verdict: impl Into<String>) -> Self {
        Self { command: command.into(), verdict: verdict.into(), fields: Vec::new(), violation: false }
    }

    pub fn field(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.fields.push((key.into(), value.to_string()));
        self
    }

    pub fn push(&mut self, key: &str, value: impl fmt::Display) {
        self.fields.push((key.into(), value.to_string()));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "command: {}", self.command)?;
        writeln!(f, "verdict: {}", self.verdict)?;
        for (k, v) in &self.fields {
            writeln!(f, "{k}: {v}")?;
        }
        Ok(())
    }
}
