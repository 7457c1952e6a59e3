//! Promise-ball search engines.
//!
//! Given a formula `F`, an assignment `α` and a radius `r`, each engine looks
//! for a satisfying assignment under the promise that one lies within
//! Hamming distance `r` of `α`. A returned assignment always satisfies `F`
//! but need not lie inside the ball.
//!
//! * [`schoening_walk`]: randomized, flips a random literal of an
//!   unsatisfied clause for a bounded number of steps.
//! * [`searchball`]: deterministic branching over the literals of an
//!   unsatisfied clause, at most `k^r` leaves.
//! * [`searchball_fast`]: processes `t` disjoint unsatisfied clauses at a
//!   time and only branches over the codewords of a covering code.

mod ball;
mod engine;
mod fast;
mod walk;

pub use ball::{searchball, searchball_restricted};
pub(crate) use fast::searchball_fast_cancellable;
pub use fast::{apply_codeword, maximal_disjoint_unsat, searchball_fast, BetaMode, FastParams};
pub use walk::{schoening_walk, schoening_walk_with_rng, WalkOutcome, WalkParams};

use serde::Serialize;

use crate::cnf::Assignment;

/// Counters for one search. For `searchball_fast` the top-level fields
/// describe the codeword recursion only; the `inner_*` fields describe the
/// plain `searchball` calls made from its small-`G` branch.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub recursion_nodes: u64,
    pub leaves: u64,
    pub max_depth: u32,
    /// Largest number of children of any plain `searchball` node.
    pub max_arity: u32,
    /// Fast-recursion leaves that handed off to plain `searchball`.
    pub handoff_leaves: u64,
    pub inner_nodes: u64,
    pub inner_leaves: u64,
}

impl SearchStats {
    /// Leaves of the whole call tree, with every hand-off leaf replaced by
    /// the `searchball` trees it spawned.
    pub fn combined_leaves(&self) -> u64 {
        self.leaves - self.handoff_leaves + self.inner_leaves
    }

    pub fn combined_nodes(&self) -> u64 {
        self.recursion_nodes + self.inner_nodes
    }

    pub fn absorb(&mut self, other: &SearchStats) {
        self.recursion_nodes += other.recursion_nodes;
        self.leaves += other.leaves;
        self.max_depth = self.max_depth.max(other.max_depth);
        self.max_arity = self.max_arity.max(other.max_arity);
        self.handoff_leaves += other.handoff_leaves;
        self.inner_nodes += other.inner_nodes;
        self.inner_leaves += other.inner_leaves;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub witness: Option<Assignment>,
    pub stats: SearchStats,
}

impl SearchOutcome {
    pub fn found(&self) -> bool {
        self.witness.is_some()
    }
}
