use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Error,
}

/// A located parse problem. `line` and `column` are 1-based; the column
/// counts characters and may sit one past the end of the line when the
/// problem is a missing token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub message: String,
    pub line: usize,
    pub column: usize,
    /// The offending source line.
    pub excerpt: String,
}

impl Diagnostic {
    pub fn error(message: impl Into<String>, line: usize, column: usize, excerpt: &str) -> Self {
        Self {
            severity: Severity::Error,
            message: message.into(),
            line,
            column,
            excerpt: excerpt.to_string(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let severity = match self.severity {
            Severity::Error => "error",
        };
        writeln!(
            f,
            "{}:{}: {severity}: {}",
            self.line, self.column, self.message
        )?;
        writeln!(f, "  | {}", self.excerpt)?;
        write!(f, "  | {}^", " ".repeat(self.column.saturating_sub(1)))
    }
}
