use std::fmt;

use thiserror::Error;

/// Everything that makes a job unrunnable. All of these exit with code 2.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    /// A text input failed to parse; `offset` is a byte offset into `text`.
    #[error("{}", Caret { input, text, offset: *offset, message })]
    Syntax { input: String, text: String, offset: usize, message: String },
    #[error("{source_name}: line {line}, column {column}: {message}")]
    Json { source_name: String, line: usize, column: usize, message: String },
    #[error("{0}")]
    Schema(String),
    #[error("{input}: {message}")]
    Invalid { input: String, message: String },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Compute(String),
}

impl CliError {
    pub fn invalid(input: &str, message: impl fmt::Display) -> Self {
        Self::Invalid { input: input.to_string(), message: message.to_string() }
    }

    pub fn json(source_name: &str, e: &serde_json::Error) -> Self {
        let full = e.to_string();
        // serde_json appends " at line L column C"; the position is reported separately.
        let message = full.rfind(" at line ").map_or(full.as_str(), |i| &full[..i]).to_string();
        Self::Json { source_name: source_name.to_string(), line: e.line(), column: e.column(), message }
    }
}

struct Caret<'a> {
    input: &'a str,
    text: &'a str,
    offset: usize,
    message: &'a str,
}

impl fmt::Display for Caret<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let col = self.text.get(..self.offset).map_or(self.offset, |s| s.chars().count());
        write!(f, "{}: offset {}: {}\n  {}\n  {}^", self.input, self.offset, self.message, self.text, " ".repeat(col))
    }
}
