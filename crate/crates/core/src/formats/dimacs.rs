//! DIMACS CNF.
//!
//! Comment lines start with `c`; the problem line is `p cnf <vars> <clauses>`;
//! clauses are whitespace-separated signed integers terminated by `0` and may
//! span lines. A line starting with `%` ends the input (SATLIB files carry
//! such a trailer).

use std::fmt::Write as _;

use super::{ascii_lines, parse_header, parse_int};
use crate::cnf::{Clause, Formula, Literal};
use crate::error::ParseError;

/// The file as written, before normalization into a [`Formula`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimacsDocument {
    pub declared_vars: usize,
    pub declared_clauses: usize,
    pub clauses: Vec<Vec<i64>>,
    /// Non-fatal problems, e.g. a clause count that disagrees with the header.
    pub warnings: Vec<String>,
}

impl DimacsDocument {
    pub fn parse(bytes: &[u8]) -> Result<DimacsDocument, ParseError> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut current: Vec<i64> = Vec::new();
        let mut last_line = 0;

        for (line, text) in ascii_lines(bytes)? {
            last_line = line;
            if text.is_empty() || text.starts_with('c') {
                continue;
            }
            if text.starts_with('%') {
                break;
            }
            if text.starts_with('p') {
                if header.is_some() {
                    return Err(ParseError::DuplicateHeader { line });
                }
                let h = parse_header(text, line, "cnf", 2)?;
                header = Some((h[0], h[1]));
                continue;
            }
            let Some((vars, _)) = header else {
                return Err(ParseError::MissingHeader);
            };
            for token in text.split_whitespace() {
                let value = parse_int(token, line)?;
                if value == 0 {
                    if current.is_empty() {
                        return Err(ParseError::EmptyClause { line });
                    }
                    clauses.push(std::mem::take(&mut current));
                } else if value.unsigned_abs() > vars as u64 {
                    return Err(ParseError::VariableOutOfRange {
                        line,
                        var: value.abs(),
                        max: vars,
                    });
                } else {
                    current.push(value);
                }
            }
        }

        let (declared_vars, declared_clauses) = header.ok_or(ParseError::MissingHeader)?;
        if !current.is_empty() {
            return Err(ParseError::MissingTerminator { line: last_line });
        }
        let mut warnings = Vec::new();
        if clauses.len() != declared_clauses {
            warnings.push(format!(
                "header declares {declared_clauses} clauses but {} were read",
                clauses.len()
            ));
        }
        Ok(DimacsDocument {
            declared_vars,
            declared_clauses,
            clauses,
            warnings,
        })
    }

    /// Deduplicates literals and drops tautological clauses.
    pub fn into_formula(self) -> Formula {
        let clauses = self
            .clauses
            .iter()
            .filter_map(|c| {
                Clause::normalized(c.iter().map(|&v| Literal::from_dimacs(v).expect("checked at parse time")))
            })
            .collect();
        Formula::new(self.declared_vars, clauses).expect("variables checked at parse time")
    }
}

/// Parses DIMACS CNF into a formula, logging any warnings.
pub fn parse_dimacs(bytes: &[u8]) -> Result<Formula, ParseError> {
    let doc = DimacsDocument::parse(bytes)?;
    for w in &doc.warnings {
        log::warn!("{w}");
    }
    Ok(doc.into_formula())
}

/// Canonical DIMACS text: header, then one clause per line.
pub fn write_dimacs(formula: &Formula) -> String {
    let mut out = format!("p cnf {} {}\n", formula.num_vars(), formula.num_clauses());
    for c in formula.clauses() {
        for l in c.literals() {
            write!(out, "{} ", l.to_dimacs()).unwrap();
        }
        out.push_str("0\n");
    }
    out
}
