//! CNF formulas, truth assignments and restriction.
//!
//! Variables are 1-based, matching DIMACS. Clauses keep the literal order
//! they were built with; downstream code relies on "the i-th literal of a
//! clause" being stable.

use std::fmt;

use crate::error::CnfError;

/// A propositional variable, numbered from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u32);

impl Var {
    /// # Panics
    ///
    /// If `number == 0`.
    pub fn new(number: u32) -> Var {
        assert!(number >= 1, "variables are numbered from 1");
        Var(number)
    }

    pub fn number(self) -> u32 {
        self.0
    }

    /// Zero-based position of this variable in an [`Assignment`].
    pub fn index(self) -> usize {
        (self.0 - 1) as usize
    }

    pub fn from_index(index: usize) -> Var {
        Var(index as u32 + 1)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// A variable or its complement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    var: Var,
    positive: bool,
}

impl Literal {
    pub fn new(var: Var, positive: bool) -> Literal {
        Literal { var, positive }
    }

    pub fn pos(number: u32) -> Literal {
        Literal::new(Var::new(number), true)
    }

    pub fn neg(number: u32) -> Literal {
        Literal::new(Var::new(number), false)
    }

    /// DIMACS-style signed integer: `3` is x3, `-3` is its complement.
    pub fn from_dimacs(value: i64) -> Result<Literal, CnfError> {
        if value == 0 || value.unsigned_abs() > u32::MAX as u64 {
            return Err(CnfError::BadLiteral(value));
        }
        Ok(Literal::new(Var(value.unsigned_abs() as u32), value > 0))
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.var.0 as i64;
        if self.positive {
            v
        } else {
            -v
        }
    }

    pub fn var(self) -> Var {
        self.var
    }

    pub fn is_positive(self) -> bool {
        self.positive
    }

    pub fn negated(self) -> Literal {
        Literal::new(self.var, !self.positive)
    }

    /// The value the underlying variable needs for this literal to hold.
    pub fn satisfying_value(self) -> bool {
        self.positive
    }

    pub fn is_satisfied_by(self, values: &[bool]) -> bool {
        values[self.var.index()] == self.positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "{}", self.var)
        } else {
            write!(f, "¬{}", self.var)
        }
    }
}

/// A disjunction of literals over pairwise distinct variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clause {
    literals: Vec<Literal>,
}

impl Clause {
    /// Builds a clause, rejecting repeated variables.
    pub fn new(literals: Vec<Literal>) -> Result<Clause, CnfError> {
        for (i, a) in literals.iter().enumerate() {
            if literals[..i].iter().any(|b| b.var == a.var) {
                return Err(CnfError::RepeatedVariable(a.var.0));
            }
        }
        Ok(Clause { literals })
    }

    /// Parser-side normalization: exact duplicates are dropped (first
    /// occurrence wins), and a clause holding both `x` and `¬x` is a
    /// tautology, reported as `None`.
    pub fn normalized(literals: impl IntoIterator<Item = Literal>) -> Option<Clause> {
        let mut out: Vec<Literal> = Vec::new();
        for lit in literals {
            match out.iter().find(|l| l.var == lit.var) {
                Some(l) if l.positive == lit.positive => {}
                Some(_) => return None,
                None => out.push(lit),
            }
        }
        Some(Clause { literals: out })
    }

    pub fn empty() -> Clause {
        Clause { literals: Vec::new() }
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn is_satisfied_by(&self, values: &[bool]) -> bool {
        self.literals.iter().any(|l| l.is_satisfied_by(values))
    }

    pub fn contains_var(&self, var: Var) -> bool {
        self.literals.iter().any(|l| l.var == var)
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, l) in self.literals.iter().enumerate() {
            if i > 0 {
                write!(f, " ∨ ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

/// An immutable CNF formula over variables `1..=num_vars`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Formula {
    clauses: Vec<Clause>,
    num_vars: usize,
    max_width: usize,
}

impl Formula {
    pub fn new(num_vars: usize, clauses: Vec<Clause>) -> Result<Formula, CnfError> {
        for c in &clauses {
            for l in c.literals() {
                if l.var.index() >= num_vars {
                    return Err(CnfError::VariableOutOfRange {
                        var: l.var.0,
                        num_vars,
                    });
                }
            }
        }
        let max_width = clauses.iter().map(Clause::len).max().unwrap_or(0);
        Ok(Formula {
            clauses,
            num_vars,
            max_width,
        })
    }

    /// Convenience constructor from DIMACS-style integer lists.
    ///
    /// # Panics
    ///
    /// On malformed input; meant for tests and examples.
    pub fn from_dimacs_clauses(num_vars: usize, clauses: &[&[i64]]) -> Formula {
        let clauses = clauses
            .iter()
            .map(|c| {
                let lits = c
                    .iter()
                    .map(|&v| Literal::from_dimacs(v).expect("nonzero literal"))
                    .collect();
                Clause::new(lits).expect("distinct variables")
            })
            .collect();
        Formula::new(num_vars, clauses).expect("variables in range")
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Largest clause length, `k` for a (≤k)-CNF formula.
    pub fn max_width(&self) -> usize {
        self.max_width
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn has_empty_clause(&self) -> bool {
        self.clauses.iter().any(Clause::is_empty)
    }

    pub fn evaluate(&self, alpha: &Assignment) -> bool {
        self.first_unsatisfied_clause(alpha).is_none()
    }

    /// Lowest input-order index of a clause that `alpha` falsifies.
    pub fn first_unsatisfied_clause(&self, alpha: &Assignment) -> Option<usize> {
        debug_assert_eq!(alpha.len(), self.num_vars);
        self.clauses
            .iter()
            .position(|c| !c.is_satisfied_by(alpha.values()))
    }

    /// `F^[u:=1]`: drop clauses containing `u`, delete `¬u` from the rest.
    pub fn assign_literal(&self, u: Literal) -> Formula {
        let neg = u.negated();
        let clauses: Vec<Clause> = self
            .clauses
            .iter()
            .filter(|c| !c.literals.contains(&u))
            .map(|c| Clause {
                literals: c.literals.iter().copied().filter(|&l| l != neg).collect(),
            })
            .collect();
        let max_width = clauses.iter().map(Clause::len).max().unwrap_or(0);
        Formula {
            clauses,
            num_vars: self.num_vars,
            max_width,
        }
    }

    /// `F^[β]`: every variable in the domain of `beta` is fixed permanently.
    pub fn restrict(&self, beta: &PartialAssignment) -> Formula {
        let clauses: Vec<Clause> = self
            .clauses
            .iter()
            .filter(|c| {
                !c.literals
                    .iter()
                    .any(|l| beta.get(l.var) == Some(l.positive))
            })
            .map(|c| Clause {
                literals: c
                    .literals
                    .iter()
                    .copied()
                    .filter(|l| beta.get(l.var).is_none())
                    .collect(),
            })
            .collect();
        let max_width = clauses.iter().map(Clause::len).max().unwrap_or(0);
        Formula {
            clauses,
            num_vars: self.num_vars,
            max_width,
        }
    }

    /// Variables that occur in some clause.
    pub fn occurring_vars(&self) -> Vec<Var> {
        let mut seen = vec![false; self.num_vars];
        for c in &self.clauses {
            for l in &c.literals {
                seen[l.var.index()] = true;
            }
        }
        seen.iter()
            .enumerate()
            .filter(|(_, &s)| s)
            .map(|(i, _)| Var::from_index(i))
            .collect()
    }
}

/// A total truth assignment, indexed by [`Var::index`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment(Vec<bool>);

impl Assignment {
    pub fn new(values: Vec<bool>) -> Assignment {
        Assignment(values)
    }

    pub fn all_false(n: usize) -> Assignment {
        Assignment(vec![false; n])
    }

    /// Bit `i` of `bits` is the value of variable `i + 1`.
    pub fn from_bits(n: usize, bits: u64) -> Assignment {
        Assignment((0..n).map(|i| bits >> i & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, var: Var) -> bool {
        self.0[var.index()]
    }

    pub fn set(&mut self, var: Var, value: bool) {
        self.0[var.index()] = value;
    }

    pub fn flip(&mut self, var: Var) {
        let v = &mut self.0[var.index()];
        *v = !*v;
    }

    pub fn values(&self) -> &[bool] {
        &self.0
    }

    pub fn into_values(self) -> Vec<bool> {
        self.0
    }

    pub fn hamming_distance(&self, other: &Assignment) -> Result<usize, CnfError> {
        if self.len() != other.len() {
            return Err(CnfError::LengthMismatch(self.len(), other.len()));
        }
        Ok(self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count())
    }

    /// Signed DIMACS literals, one per variable.
    pub fn to_dimacs(&self) -> Vec<i64> {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &v)| if v { i as i64 + 1 } else { -(i as i64 + 1) })
            .collect()
    }
}

/// Free-function form of [`Assignment::hamming_distance`].
pub fn hamming_distance(a: &Assignment, b: &Assignment) -> Result<usize, CnfError> {
    a.hamming_distance(b)
}

/// A truth assignment defined on a subset of the variables.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PartialAssignment(Vec<Option<bool>>);

impl PartialAssignment {
    pub fn new(num_vars: usize) -> PartialAssignment {
        PartialAssignment(vec![None; num_vars])
    }

    pub fn from_pairs(num_vars: usize, pairs: &[(u32, bool)]) -> PartialAssignment {
        let mut p = PartialAssignment::new(num_vars);
        for &(v, b) in pairs {
            p.set(Var::new(v), b);
        }
        p
    }

    pub fn get(&self, var: Var) -> Option<bool> {
        self.0.get(var.index()).copied().flatten()
    }

    pub fn set(&mut self, var: Var, value: bool) {
        self.0[var.index()] = Some(value);
    }

    pub fn unset(&mut self, var: Var) {
        self.0[var.index()] = None;
    }

    pub fn domain(&self) -> impl Iterator<Item = Var> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_some())
            .map(|(i, _)| Var::from_index(i))
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    /// `alpha` overridden on the domain of `self`.
    pub fn overlay(&self, alpha: &Assignment) -> Assignment {
        Assignment(
            alpha
                .0
                .iter()
                .zip(&self.0)
                .map(|(&a, p)| p.unwrap_or(a))
                .collect(),
        )
    }
}
