//! Text formats: DIMACS CNF, the `p csp` constraint format and covering-code
//! files. All three are line oriented ASCII; LF and CRLF are both accepted.

pub mod code;
pub mod csp;
pub mod dimacs;

use crate::error::ParseError;

/// Splits ASCII input into `(1-based line number, trimmed line)` pairs.
pub(crate) fn ascii_lines(bytes: &[u8]) -> Result<impl Iterator<Item = (usize, &str)>, ParseError> {
    if !bytes.is_ascii() {
        return Err(ParseError::NotAscii);
    }
    let text = std::str::from_utf8(bytes).map_err(|_| ParseError::NotAscii)?;
    Ok(text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())))
}

pub(crate) fn parse_int(token: &str, line: usize) -> Result<i64, ParseError> {
    token.parse::<i64>().map_err(|_| ParseError::InvalidToken {
        line,
        token: token.to_string(),
    })
}

/// Parses a `p <kind> a b ...` header into exactly `arity` non-negative
/// integers.
pub(crate) fn parse_header(line_text: &str, line: usize, kind: &str, arity: usize) -> Result<Vec<usize>, ParseError> {
    let bad = |reason: String| ParseError::BadHeader { line, reason };
    let mut tokens = line_text.split_whitespace();
    if tokens.next() != Some("p") {
        return Err(bad("expected `p`".into()));
    }
    match tokens.next() {
        Some(k) if k == kind => {}
        Some(k) => return Err(bad(format!("expected format `{kind}`, found `{k}`"))),
        None => return Err(bad(format!("expected format `{kind}`"))),
    }
    let values: Vec<&str> = tokens.collect();
    if values.len() != arity {
        return Err(bad(format!("expected {arity} numbers, found {}", values.len())));
    }
    values
        .iter()
        .map(|v| v.parse::<usize>().map_err(|_| bad(format!("`{v}` is not a non-negative integer"))))
        .collect()
}

/// Peeks at the problem line to tell DIMACS CNF from the CSP format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputKind {
    Cnf,
    Csp,
}

pub fn sniff_kind(bytes: &[u8]) -> Option<InputKind> {
    let lines = ascii_lines(bytes).ok()?;
    for (_, l) in lines {
        if l.starts_with('p') {
            let mut t = l.split_whitespace();
            t.next();
            return match t.next() {
                Some("cnf") => Some(InputKind::Cnf),
                Some("csp") => Some(InputKind::Csp),
                _ => None,
            };
        }
    }
    None
}
