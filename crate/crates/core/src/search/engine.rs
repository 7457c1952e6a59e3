//! Shared mutable search state.
//!
//! Restricting `F` by a partial assignment `ρ` is never materialized. The
//! engine keeps `cur = α ⊕ ρ` (α overridden on the domain of ρ) and a mask
//! of the variables ρ fixes. A clause of `F^[ρ]` is unsatisfied by `α`
//! exactly when the full clause is unsatisfied by `cur`, and its remaining
//! literals are the ones over unfixed variables.

use std::sync::atomic::{AtomicBool, Ordering};

use crate::cnf::{Assignment, Clause, Formula};

#[derive(Debug, Clone, Copy, Default)]
pub(super) struct Counters {
    pub nodes: u64,
    pub leaves: u64,
    pub max_depth: u32,
    pub max_arity: u32,
}

impl Counters {
    pub fn enter(&mut self, depth: u32) {
        self.nodes += 1;
        self.max_depth = self.max_depth.max(depth);
    }
}

pub(super) enum Selection {
    Satisfied,
    /// Some clause has no free literal left and is falsified.
    Dead,
    /// Lowest-index falsified clause.
    Branch(usize),
}

pub(super) struct Engine<'a> {
    pub clauses: &'a [Clause],
    pub cur: Vec<bool>,
    pub fixed: Vec<bool>,
    pub ball: Counters,
    pub fast: Counters,
    pub handoffs: u64,
    pub cancel: Option<&'a AtomicBool>,
}

impl<'a> Engine<'a> {
    pub fn new(formula: &'a Formula, alpha: &Assignment) -> Engine<'a> {
        assert_eq!(
            alpha.len(),
            formula.num_vars(),
            "assignment must cover every variable of the formula"
        );
        Engine {
            clauses: formula.clauses(),
            cur: alpha.values().to_vec(),
            fixed: vec![false; formula.num_vars()],
            ball: Counters::default(),
            fast: Counters::default(),
            handoffs: 0,
            cancel: None,
        }
    }

    pub fn cancelled(&self) -> bool {
        self.cancel.is_some_and(|c| c.load(Ordering::Relaxed))
    }

    pub fn select(&self) -> Selection {
        let mut first = None;
        for (i, c) in self.clauses.iter().enumerate() {
            let mut free = false;
            let mut sat = false;
            for l in c.literals() {
                let v = l.var().index();
                if self.cur[v] == l.is_positive() {
                    sat = true;
                    break;
                }
                free |= !self.fixed[v];
            }
            if sat {
                continue;
            }
            if !free {
                return Selection::Dead;
            }
            if first.is_none() {
                first = Some(i);
            }
        }
        first.map_or(Selection::Satisfied, Selection::Branch)
    }

    /// Plain `searchball` on `F^[ρ]` around the current free values.
    /// On success `cur` is left holding the witness; on failure it is
    /// restored.
    pub fn ball_search(&mut self, r: usize, depth: u32) -> bool {
        self.ball.enter(depth);
        let ci = match self.select() {
            Selection::Satisfied => {
                self.ball.leaves += 1;
                return true;
            }
            Selection::Dead => {
                self.ball.leaves += 1;
                return false;
            }
            Selection::Branch(ci) => ci,
        };
        if r == 0 || self.cancelled() {
            self.ball.leaves += 1;
            return false;
        }
        let clause = &self.clauses[ci];
        let arity = clause.literals().iter().filter(|l| !self.fixed[l.var().index()]).count();
        self.ball.max_arity = self.ball.max_arity.max(arity as u32);
        for l in clause.literals() {
            let v = l.var().index();
            if self.fixed[v] {
                continue;
            }
            // F^[u:=1]: fix the literal true, α unchanged elsewhere
            self.fixed[v] = true;
            self.cur[v] = l.is_positive();
            if self.ball_search(r - 1, depth + 1) {
                return true;
            }
            self.fixed[v] = false;
            self.cur[v] = !l.is_positive();
        }
        false
    }

    pub fn witness(&self) -> Assignment {
        Assignment::new(self.cur.clone())
    }
}
