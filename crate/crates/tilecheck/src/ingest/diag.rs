use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Warning,
    Error,
}

/// A message tied to a 1-based line and column of the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl Diagnostic {
    pub(crate) fn error(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self {
            severity: Severity::Error,
            line,
            column,
            message: message.into(),
        }
    }

    pub(crate) fn warning(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self {
            severity: Severity::Warning,
            line,
            column,
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.severity {
            Severity::Warning => "warning",
            Severity::Error => "error",
        };
        write!(f, "{}:{}: {kind}: {}", self.line, self.column, self.message)
    }
}

/// Every error found in one input, in source order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDiagnostics {
    pub diagnostics: Vec<Diagnostic>,
}

impl fmt::Display for ParseDiagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.diagnostics.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseDiagnostics {}

/// Lines of `text` with their 1-based number, `\r\n` endings trimmed.
pub(crate) fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.split('\n')
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)))
}

/// Splits off the first whitespace-delimited word. Returns the word, its
/// 1-based character column, the trimmed rest and the rest's column.
pub(crate) fn split_key(line: &str) -> Option<(&str, usize, &str, usize)> {
    let start = line.find(|c: char| !c.is_whitespace())?;
    let after = &line[start..];
    let end = after.find(char::is_whitespace).unwrap_or(after.len());
    let key = &after[..end];
    let rest_raw = &after[end..];
    let rest_off = rest_raw.len() - rest_raw.trim_start().len();
    let rest = rest_raw.trim();
    let key_col = line[..start].chars().count() + 1;
    let rest_col = if rest.is_empty() {
        key_col
    } else {
        key_col + key.chars().count() + rest_raw[..rest_off].chars().count()
    };
    Some((key, key_col, rest, rest_col))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_split_columns() {
        assert_eq!(split_key("  NORTHBIND  2 "), Some(("NORTHBIND", 3, "2", 14)));
        assert_eq!(split_key("CREATE"), Some(("CREATE", 1, "", 1)));
        assert_eq!(split_key("   "), None);
    }

    #[test]
    fn crlf_lines() {
        let v: Vec<_> = lines("a\r\nb\n").collect();
        assert_eq!(v, [(1, "a"), (2, "b"), (3, "")]);
    }
}
