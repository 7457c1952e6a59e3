//! Covering-code files.
//!
//! ```text
//! q t r size
//! 1 2 1
//! 3 1 2
//! ```
//!
//! One word per line, symbols in `1..=q` separated by single spaces. For
//! `t = 0` each word is an empty line.

use super::{ascii_lines, parse_int};
use crate::covering::{CoveringCode, KaryWord, MAX_ALPHABET};
use crate::error::ParseError;

pub fn write_code(code: &CoveringCode) -> String {
    let mut out = format!("{} {} {} {}\n", code.q(), code.t(), code.radius(), code.len());
    for w in code.words() {
        let line: Vec<String> = w.symbols().iter().map(u8::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Parses a code file. The result is unverified.
pub fn read_code(bytes: &[u8]) -> Result<CoveringCode, ParseError> {
    let mut lines = ascii_lines(bytes)?;
    let (hline, htext) = lines.by_ref().find(|(_, l)| !l.is_empty()).ok_or(ParseError::MissingHeader)?;
    let bad = |reason: String| ParseError::BadHeader { line: hline, reason };
    let fields: Vec<usize> = htext
        .split_whitespace()
        .map(|v| v.parse::<usize>().map_err(|_| bad(format!("`{v}` is not a non-negative integer"))))
        .collect::<Result<_, _>>()?;
    let [q, t, r, size] = fields[..] else {
        return Err(bad(format!("expected `q t r size`, found {} fields", fields.len())));
    };
    if !(2..=MAX_ALPHABET as usize).contains(&q) {
        return Err(bad(format!("alphabet size {q} outside 2..={MAX_ALPHABET}")));
    }
    if r > t {
        return Err(bad(format!("radius {r} exceeds length {t}")));
    }

    let mut words: Vec<KaryWord> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (line, text) in lines {
        if t > 0 && text.is_empty() {
            continue;
        }
        if words.len() == size {
            if text.is_empty() {
                continue;
            }
            return Err(ParseError::WordCount {
                declared: size,
                found: size + 1,
            });
        }
        let symbols = text
            .split_whitespace()
            .map(|tok| {
                let v = parse_int(tok, line)?;
                if v < 1 || v > q as i64 {
                    return Err(ParseError::ValueOutOfDomain { line, value: v, domain: q });
                }
                Ok(v as u8)
            })
            .collect::<Result<Vec<u8>, _>>()?;
        if symbols.len() != t {
            return Err(ParseError::WordLength {
                line,
                found: symbols.len(),
                expected: t,
            });
        }
        if !seen.insert(symbols.clone()) {
            return Err(ParseError::DuplicateWord { line });
        }
        words.push(KaryWord::new(symbols));
    }
    if words.len() != size {
        return Err(ParseError::WordCount {
            declared: size,
            found: words.len(),
        });
    }
    Ok(CoveringCode::new(q as u8, t, r, words).expect("shape checked while parsing"))
}
