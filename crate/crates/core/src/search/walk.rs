use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cnf::{Assignment, Formula};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkParams {
    pub max_steps: usize,
    pub rng_seed: u64,
}

impl WalkParams {
    /// `max_steps = max(3n, 1)`.
    pub fn for_formula(formula: &Formula, rng_seed: u64) -> WalkParams {
        WalkParams {
            max_steps: (3 * formula.num_vars()).max(1),
            rng_seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkOutcome {
    pub witness: Option<Assignment>,
    pub steps: usize,
}

/// The random walk, seeded from `params.rng_seed` via ChaCha8.
pub fn schoening_walk(formula: &Formula, alpha: &Assignment, params: WalkParams) -> WalkOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(params.rng_seed);
    schoening_walk_with_rng(formula, alpha, params.max_steps, &mut rng)
}

/// While the current assignment falsifies some clause and fewer than
/// `max_steps` flips were made, take the lowest-index falsified clause and
/// flip the variable of one of its literals, chosen uniformly.
pub fn schoening_walk_with_rng<R: Rng>(
    formula: &Formula,
    alpha: &Assignment,
    max_steps: usize,
    rng: &mut R,
) -> WalkOutcome {
    let mut cur = alpha.clone();
    let mut steps = 0;
    loop {
        let Some(ci) = formula.first_unsatisfied_clause(&cur) else {
            return WalkOutcome {
                witness: Some(cur),
                steps,
            };
        };
        let clause = &formula.clauses()[ci];
        if steps == max_steps || clause.is_empty() {
            return WalkOutcome { witness: None, steps };
        }
        let lit = clause.literals()[rng.random_range(0..clause.len())];
        cur.flip(lit.var());
        steps += 1;
    }
}
