//! Report-valued verification results.

use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Violation,
    Warn,
    Info,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub severity: Severity,
    pub check: String,
    pub detail: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub location: Vec<usize>,
}

impl Finding {
    pub fn violation(check: impl Into<String>, detail: impl Into<String>, location: Vec<usize>) -> Self {
        Self { severity: Severity::Violation, check: check.into(), detail: detail.into(), location }
    }

    pub fn warn(check: impl Into<String>, detail: impl Into<String>) -> Self {
        Self { severity: Severity::Warn, check: check.into(), detail: detail.into(), location: Vec::new() }
    }

    pub fn info(check: impl Into<String>, detail: impl Into<String>) -> Self {
        Self { severity: Severity::Info, check: check.into(), detail: detail.into(), location: Vec::new() }
    }
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.severity {
            Severity::Violation => "VIOLATION",
            Severity::Warn => "WARN",
            Severity::Info => "info",
        };
        write!(f, "{tag} [{}] {}", self.check, self.detail)
    }
}

/// Ordered list of findings; empty (or info-only) means the check passed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct CheckReport {
    pub findings: Vec<Finding>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, finding: Finding) {
        self.findings.push(finding);
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.findings.extend(other.findings);
    }

    pub fn violations(&self) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(|f| f.severity == Severity::Violation)
    }

    pub fn warnings(&self) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(|f| f.severity == Severity::Warn)
    }

    pub fn is_clean(&self) -> bool {
        self.violations().next().is_none()
    }

    pub fn first_violation(&self) -> Option<&Finding> {
        self.violations().next()
    }
}
