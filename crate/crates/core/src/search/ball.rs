use super::engine::Engine;
use super::{SearchOutcome, SearchStats};
use crate::cnf::{Assignment, Formula, PartialAssignment};

/// Recursive promise-ball search with at most `k^r` leaves.
///
/// If `α` satisfies `F` it is returned. Otherwise, while `r > 0`, the
/// lowest-index unsatisfied clause is picked and each of its literals is
/// set true in turn, recursing with radius `r − 1`.
pub fn searchball(formula: &Formula, alpha: &Assignment, r: usize) -> SearchOutcome {
    searchball_restricted(formula, alpha, &PartialAssignment::new(formula.num_vars()), r)
}

/// `searchball(F^[β], α, r)`. A returned witness agrees with `β` on its
/// domain and satisfies `F` itself.
///
/// A falsified clause with no free literals left ends the branch at once;
/// among the others the lowest index is branched on.
pub fn searchball_restricted(
    formula: &Formula,
    alpha: &Assignment,
    beta: &PartialAssignment,
    r: usize,
) -> SearchOutcome {
    let mut engine = Engine::new(formula, alpha);
    for v in beta.domain() {
        engine.fixed[v.index()] = true;
        engine.cur[v.index()] = beta.get(v).expect("in domain");
    }
    let found = engine.ball_search(r, 0);
    let witness = found.then(|| engine.witness());
    if let Some(w) = &witness {
        assert!(formula.evaluate(w), "searchball returned a non-satisfying assignment");
    }
    SearchOutcome {
        witness,
        stats: SearchStats {
            recursion_nodes: engine.ball.nodes,
            leaves: engine.ball.leaves,
            max_depth: engine.ball.max_depth,
            max_arity: engine.ball.max_arity,
            ..SearchStats::default()
        },
    }
}
