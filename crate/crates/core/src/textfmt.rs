//! Shared helpers for the line-oriented text formats.
//!
//! Every format in this crate follows the same conventions: UTF-8, one
//! record per line, `#` starts a comment that runs to the end of the
//! line, and blank lines are ignored. The first meaningful line is a
//! `<kind> v1` header.

use thiserror::Error;

/// A parse failure in any of the text formats, with 1-based position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}{}: {message}", column.map(|c| format!(", column {c}")).unwrap_or_default())]
pub struct ParseError {
    pub line: usize,
    pub column: Option<usize>,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError { line, column: None, message: message.into() }
    }

    pub fn at(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { line, column: Some(column), message: message.into() }
    }
}

/// Iterate over meaningful lines: comments stripped, blanks skipped,
/// paired with their 1-based line number.
pub fn meaningful_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(idx, raw)| {
        let content = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let content = content.trim();
        if content.is_empty() {
            None
        } else {
            Some((idx + 1, content))
        }
    })
}

/// Check the `<kind> v1` header on the first meaningful line.
pub fn expect_header<'a, I>(lines: &mut I, kind: &str) -> Result<(), ParseError>
where
    I: Iterator<Item = (usize, &'a str)>,
{
    match lines.next() {
        Some((_, line)) if line == format!("{kind} v1") => Ok(()),
        Some((n, line)) => Err(ParseError::new(n, format!("expected `{kind} v1` header, found `{line}`"))),
        None => Err(ParseError::new(1, format!("empty input, expected `{kind} v1` header"))),
    }
}

/// Parse a whitespace-separated field, reporting the field name on failure.
pub fn parse_field<T: std::str::FromStr>(line: usize, field: &str, token: &str) -> Result<T, ParseError> {
    token
        .parse::<T>()
        .map_err(|_| ParseError::new(line, format!("invalid {field} `{token}`")))
}
