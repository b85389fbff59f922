use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};
use sweedler_core::report::{CheckReport, Finding, Severity};

use crate::error::CliError;
use crate::job::JobSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Violations,
    Warn,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    /// Command name, bound and inputs exactly as given.
    pub command: Value,
    pub status: Status,
    pub findings: Vec<Finding>,
    pub artifacts: Map<String, Value>,
}

impl Report {
    pub fn new(job: &JobSpec, checks: CheckReport, artifacts: Map<String, Value>) -> Self {
        let status = if !checks.is_clean() {
            Status::Violations
        } else if checks.warnings().next().is_some() {
            Status::Warn
        } else {
            Status::Ok
        };
        let mut echo = Map::new();
        echo.insert("name".into(), job.command.name().into());
        echo.insert("bound".into(), job.bound.into());
        echo.insert("inputs".into(), Value::Object(job.inputs.iter().map(|(k, v)| (k.clone(), v.clone())).collect()));
        Self { command: Value::Object(echo), status, findings: checks.findings, artifacts }
    }

    pub fn to_json(&self, pretty: bool) -> String {
        let s = if pretty { serde_json::to_string_pretty(self) } else { serde_json::to_string(self) };
        s.expect("report serializes")
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok | Status::Warn => 0,
            Status::Violations => 1,
        }
    }

    pub fn violations(&self) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(|f| f.severity == Severity::Violation)
    }

    pub fn warnings(&self) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(|f| f.severity == Severity::Warn)
    }

    /// Status line, findings, then every artifact that is a string or a
    /// list of strings.
    pub fn text_summary(&self) -> String {
        let name = self.command["name"].as_str().unwrap_or("?");
        let status = match self.status {
            Status::Ok => "ok",
            Status::Violations => "violations",
            Status::Warn => "warn",
        };
        let mut out = format!("{name}: {status}\n");
        for f in &self.findings {
            let _ = writeln!(out, "  {f}");
        }
        for (k, v) in &self.artifacts {
            match v {
                Value::String(s) => {
                    let _ = writeln!(out, "{k}: {s}");
                }
                Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_string) => {
                    let _ = writeln!(out, "{k}:");
                    for it in items {
                        let _ = writeln!(out, "  {}", it.as_str().unwrap_or_default());
                    }
                }
                Value::Array(items) if items.iter().all(Value::is_number) => {
                    let _ = writeln!(out, "{k}: {v}");
                }
                _ => {}
            }
        }
        out
    }
}

pub fn exit_code(result: &Result<Report, CliError>) -> i32 {
    match result {
        Ok(r) => r.exit_code(),
        Err(_) => 2,
    }
}
