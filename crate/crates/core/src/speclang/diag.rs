use std::fmt;

use serde::Serialize;

/// Location in source text. Lines and columns are 1-based and count chars.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
pub struct Span {
    pub line: usize,
    pub col: usize,
    pub len: usize,
    /// Byte offset of the first char.
    pub offset: usize,
}

impl Span {
    pub fn start() -> Self {
        Span { line: 1, col: 1, len: 0, offset: 0 }
    }

    /// Span from the start of `self` to the end of `other` (same line only;
    /// otherwise `self` is returned).
    pub fn to(self, other: Span) -> Span {
        if other.line == self.line && other.col >= self.col {
            Span { len: other.col + other.len - self.col, ..self }
        } else {
            self
        }
    }

    pub fn is_within(&self, source: &str) -> bool {
        if self.offset > source.len() || !source.is_char_boundary(self.offset) {
            return false;
        }
        let rest = &source[self.offset..];
        rest.chars().count() >= self.len
    }
}

/// A span attached to AST nodes. Equality ignores it so that two documents
/// with the same content compare equal regardless of layout.
#[derive(Debug, Clone, Copy, Default)]
pub struct Loc(pub Span);

impl PartialEq for Loc {
    fn eq(&self, _: &Loc) -> bool {
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
    Info,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
            Severity::Info => "info",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub span: Span,
    pub code: &'static str,
    pub message: String,
}

impl Diagnostic {
    pub fn error(code: &'static str, span: Span, message: impl Into<String>) -> Self {
        Diagnostic { severity: Severity::Error, span, code, message: message.into() }
    }

    pub fn warning(code: &'static str, span: Span, message: impl Into<String>) -> Self {
        Diagnostic { severity: Severity::Warning, span, code, message: message.into() }
    }

    pub fn info(code: &'static str, span: Span, message: impl Into<String>) -> Self {
        Diagnostic { severity: Severity::Info, span, code, message: message.into() }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }

    /// `file:line:col: severity[code]: message`
    pub fn render(&self, file: &str) -> String {
        format!("{}:{}:{}: {}[{}]: {}", file, self.span.line, self.span.col, self.severity, self.code, self.message)
    }
}

/// Stable order: by position, then severity, then code.
pub fn sort_diagnostics(diags: &mut [Diagnostic]) {
    diags.sort_by(|a, b| {
        (a.span.offset, a.span.line, a.span.col, a.severity, a.code)
            .cmp(&(b.span.offset, b.span.line, b.span.col, b.severity, b.code))
    });
}

pub fn has_errors(diags: &[Diagnostic]) -> bool {
    diags.iter().any(Diagnostic::is_error)
}
