use std::fmt;

use pdot_syntax::Span;

/// A source text and where it came from.
#[derive(Clone, Debug)]
pub struct SourceProgram {
    pub text: String,
    pub origin: String,
}

impl SourceProgram {
    pub fn new(text: impl Into<String>, origin: impl Into<String>) -> SourceProgram {
        SourceProgram { text: text.into(), origin: origin.into() }
    }

    pub fn stdin(text: impl Into<String>) -> SourceProgram {
        SourceProgram::new(text, "<stdin>")
    }

    /// 1-based line and column (in characters) of a byte offset.
    pub fn line_col(&self, offset: usize) -> (usize, usize) {
        let offset = offset.min(self.text.len());
        let before = &self.text[..offset];
        let line = before.matches('\n').count() + 1;
        let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        (line, col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        })
    }
}

/// A message attributed to a source span and, optionally, a rule name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub rule: String,
    pub message: String,
    pub span: Span,
}

impl Diagnostic {
    pub fn error(rule: impl Into<String>, message: impl Into<String>, span: Span) -> Diagnostic {
        Diagnostic { severity: Severity::Error, rule: rule.into(), message: message.into(), span }
    }

    /// `file:line:col: error: <rule>: <message>`
    pub fn render(&self, src: &SourceProgram) -> String {
        let (line, col) = src.line_col(self.span.start);
        format!("{}:{}:{}: {}: {}: {}", src.origin, line, col, self.severity, self.rule, self.message)
    }

    pub fn to_json(&self, src: &SourceProgram) -> serde_json::Value {
        let (line, col) = src.line_col(self.span.start);
        serde_json::json!({
            "file": src.origin,
            "line": line,
            "col": col,
            "severity": self.severity.to_string(),
            "rule": self.rule,
            "message": self.message,
            "span": [self.span.start, self.span.end],
        })
    }
}
