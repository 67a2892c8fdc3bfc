//! Machine-readable report shared by every command.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Info,
    Violation,
    Error,
}

impl Severity {
    pub fn keyword(self) -> &'static str {
        match self {
            Severity::Info => "info",
            Severity::Violation => "violation",
            Severity::Error => "error",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Error,
}

impl Verdict {
    pub fn keyword(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Error => "error",
        }
    }

    /// Process exit code: 0 pass, 1 violations, 2 input error.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Error => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub severity: Severity,
    pub code: String,
    pub location: String,
    pub detail: String,
}

impl Finding {
    pub fn new(
        severity: Severity,
        code: impl Into<String>,
        location: impl Into<String>,
        detail: impl Into<String>,
    ) -> Self {
        Self {
            severity,
            code: code.into(),
            location: location.into(),
            detail: detail.into(),
        }
    }

    pub fn info(code: impl Into<String>, location: impl Into<String>, detail: impl Into<String>) -> Self {
        Self::new(Severity::Info, code, location, detail)
    }

    pub fn violation(
        code: impl Into<String>,
        location: impl Into<String>,
        detail: impl Into<String>,
    ) -> Self {
        Self::new(Severity::Violation, code, location, detail)
    }

    pub fn error(code: impl Into<String>, location: impl Into<String>, detail: impl Into<String>) -> Self {
        Self::new(Severity::Error, code, location, detail)
    }
}

/// Input file identified by base name and content digest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub version: String,
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub verdict: Verdict,
    pub summaries: BTreeMap<String, i64>,
    pub findings: Vec<Finding>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            version: TOOL_VERSION.to_string(),
            command: command.into(),
            inputs: Vec::new(),
            verdict: Verdict::Pass,
            summaries: BTreeMap::new(),
            findings: Vec::new(),
        }
    }

    pub fn summary(&mut self, key: impl Into<String>, value: impl TryInto<i64>) -> &mut Self {
        let v = value.try_into().unwrap_or(i64::MAX);
        self.summaries.insert(key.into(), v);
        self
    }

    pub fn push(&mut self, finding: Finding) -> &mut Self {
        self.findings.push(finding);
        self.finalize();
        self
    }

    pub fn extend(&mut self, findings: impl IntoIterator<Item = Finding>) -> &mut Self {
        self.findings.extend(findings);
        self.finalize();
        self
    }

    /// Merges another report's findings and summaries, prefixing summary keys.
    pub fn absorb(&mut self, prefix: &str, other: Report) -> &mut Self {
        for (k, v) in other.summaries {
            self.summaries.insert(format!("{prefix}{k}"), v);
        }
        self.extend(other.findings)
    }

    fn finalize(&mut self) {
        self.findings.sort_by(|a, b| {
            (a.code.as_str(), a.location.as_str(), a.severity, a.detail.as_str()).cmp(&(
                b.code.as_str(),
                b.location.as_str(),
                b.severity,
                b.detail.as_str(),
            ))
        });
        self.verdict = if self.findings.iter().any(|f| f.severity == Severity::Error) {
            Verdict::Error
        } else if self.findings.iter().any(|f| f.severity == Severity::Violation) {
            Verdict::Fail
        } else {
            Verdict::Pass
        };
    }

    pub fn count(&self, code: &str) -> usize {
        self.findings.iter().filter(|f| f.code == code).count()
    }

    /// Human-readable form: summaries as `key: value`, then one line per
    /// finding.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.command, self.verdict.keyword());
        for i in &self.inputs {
            let _ = writeln!(out, "input {} sha256 {}", i.name, i.sha256);
        }
        for (k, v) in &self.summaries {
            let _ = writeln!(out, "{k}: {v}");
        }
        for f in &self.findings {
            let _ = writeln!(
                out,
                "{} {} {}: {}",
                f.severity.keyword(),
                f.code,
                f.location,
                f.detail
            );
        }
        let _ = writeln!(out, "verdict: {}", self.verdict.keyword());
        out
    }
}
