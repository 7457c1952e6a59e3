//! The `p csp` format for (d,≤k)-CSP formulas.
//!
//! ```text
//! c optional comments
//! p csp <d> <n> <m>
//! 1 2 3 1 0
//! ```
//!
//! Each constraint is a list of `variable value` pairs terminated by `0`;
//! the pair `v c` is the literal `x_v ≠ c`. Values lie in `1..=d`,
//! variables in `1..=n`. A constraint may span lines.

use std::fmt::Write as _;

use super::{ascii_lines, parse_header, parse_int};
use crate::csp::CspFormula;
use crate::error::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CspDocument {
    pub domain_size: u32,
    pub num_vars: usize,
    pub declared_constraints: usize,
    /// `(variable, forbidden value)` pairs, as written.
    pub constraints: Vec<Vec<(usize, u32)>>,
    pub warnings: Vec<String>,
}

impl CspDocument {
    pub fn parse(bytes: &[u8]) -> Result<CspDocument, ParseError> {
        let mut header: Option<(u32, usize, usize)> = None;
        let mut constraints = Vec::new();
        let mut current: Vec<(usize, u32)> = Vec::new();
        let mut pending_var: Option<usize> = None;
        let mut last_line = 0;

        for (line, text) in ascii_lines(bytes)? {
            last_line = line;
            if text.is_empty() || text.starts_with('c') {
                continue;
            }
            if text.starts_with('p') {
                if header.is_some() {
                    return Err(ParseError::DuplicateHeader { line });
                }
                let h = parse_header(text, line, "csp", 3)?;
                if h[0] < 2 || h[0] > u32::MAX as usize {
                    return Err(ParseError::BadHeader {
                        line,
                        reason: "domain size must be at least 2".into(),
                    });
                }
                header = Some((h[0] as u32, h[1], h[2]));
                continue;
            }
            let Some((d, n, _)) = header else {
                return Err(ParseError::MissingHeader);
            };
            for token in text.split_whitespace() {
                let value = parse_int(token, line)?;
                match pending_var.take() {
                    Some(var) => {
                        if value < 1 || value > d as i64 {
                            return Err(ParseError::ValueOutOfDomain {
                                line,
                                value,
                                domain: d as usize,
                            });
                        }
                        current.push((var, value as u32));
                    }
                    None if value == 0 => {
                        if current.is_empty() {
                            return Err(ParseError::EmptyClause { line });
                        }
                        constraints.push(std::mem::take(&mut current));
                    }
                    None => {
                        if value < 0 || value > n as i64 {
                            return Err(ParseError::VariableOutOfRange { line, var: value, max: n });
                        }
                        pending_var = Some(value as usize);
                    }
                }
            }
        }

        let (domain_size, num_vars, declared_constraints) = header.ok_or(ParseError::MissingHeader)?;
        if pending_var.is_some() {
            return Err(ParseError::MalformedPair { line: last_line });
        }
        if !current.is_empty() {
            return Err(ParseError::MissingTerminator { line: last_line });
        }
        let mut warnings = Vec::new();
        if constraints.len() != declared_constraints {
            warnings.push(format!(
                "header declares {declared_constraints} constraints but {} were read",
                constraints.len()
            ));
        }
        Ok(CspDocument {
            domain_size,
            num_vars,
            declared_constraints,
            constraints,
            warnings,
        })
    }

    /// Deduplicates literals and drops constraints that forbid two values
    /// of the same variable (always satisfied).
    pub fn into_formula(self) -> CspFormula {
        CspFormula::normalized(self.domain_size, self.num_vars, &self.constraints)
            .expect("ranges checked at parse time")
    }
}

pub fn parse_csp(bytes: &[u8]) -> Result<CspFormula, ParseError> {
    let doc = CspDocument::parse(bytes)?;
    for w in &doc.warnings {
        log::warn!("{w}");
    }
    Ok(doc.into_formula())
}

pub fn write_csp(formula: &CspFormula) -> String {
    let mut out = format!(
        "p csp {} {} {}\n",
        formula.domain_size(),
        formula.num_vars(),
        formula.constraints().len()
    );
    for c in formula.constraints() {
        for lit in c.literals() {
            write!(out, "{} {} ", lit.var, lit.value).unwrap();
        }
        out.push_str("0\n");
    }
    out
}
