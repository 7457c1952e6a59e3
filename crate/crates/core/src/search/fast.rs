use std::sync::atomic::AtomicBool;
use std::sync::Arc;

use super::engine::{Engine, Selection};
use super::{SearchOutcome, SearchStats};
use crate::cnf::{Assignment, Clause, Formula};
use crate::covering::{greedy_code, CoveringCode, KaryWord};
use crate::error::SolveError;

/// How the small-`G` branch enumerates assignments `β` to `vbl(G)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BetaMode {
    /// Only `β` satisfying every clause of `G` (the promised solution does).
    #[default]
    SatisfyG,
    /// All `2^{k|G|}` assignments.
    All,
}

/// Parameters of `searchball_fast`: the clause width `k`, a verified
/// covering code of `{1..k}^t` and the guaranteed radius drop per level.
#[derive(Debug, Clone)]
pub struct FastParams {
    k: usize,
    code: Arc<CoveringCode>,
    delta: usize,
    beta_mode: BetaMode,
}

impl FastParams {
    /// Code radius used for block size `t`: `⌈t/k⌉`.
    pub fn code_radius(k: usize, t: usize) -> usize {
        t.div_ceil(k)
    }

    pub fn new(k: usize, code: Arc<CoveringCode>) -> Result<FastParams, SolveError> {
        if k < 3 {
            return Err(SolveError::Config(format!("searchball_fast needs k >= 3, got {k}")));
        }
        if code.q() as usize != k {
            return Err(SolveError::Config(format!(
                "code alphabet {} does not match clause width {k}",
                code.q()
            )));
        }
        if !code.is_verified() {
            return Err(SolveError::Config("code is not a verified covering code".into()));
        }
        let t = code.t();
        let delta = t.checked_sub(2 * code.radius()).filter(|&d| d >= 1).ok_or_else(|| {
            SolveError::Config(format!(
                "t = {t} with code radius {} leaves no radius progress",
                code.radius()
            ))
        })?;
        Ok(FastParams {
            k,
            code,
            delta,
            beta_mode: BetaMode::default(),
        })
    }

    /// Builds the greedy code of radius `⌈t/k⌉`.
    pub fn greedy(k: usize, t: usize) -> Result<FastParams, SolveError> {
        if !(3..=crate::covering::MAX_ALPHABET as usize).contains(&k) {
            return Err(SolveError::Config(format!("clause width {k} outside 3..=16")));
        }
        let code = greedy_code(k as u8, t, FastParams::code_radius(k, t))?;
        FastParams::new(k, Arc::new(code))
    }

    pub fn with_beta_mode(mut self, mode: BetaMode) -> FastParams {
        self.beta_mode = mode;
        self
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn t(&self) -> usize {
        self.code.t()
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn code(&self) -> &CoveringCode {
        &self.code
    }

    pub fn beta_mode(&self) -> BetaMode {
        self.beta_mode
    }
}

/// Greedy scan in clause order: every width-`k` clause unsatisfied by
/// `alpha` that shares no variable with an already chosen clause is taken.
/// Every unsatisfied width-`k` clause left out shares a variable with a
/// chosen one.
pub fn maximal_disjoint_unsat(formula: &Formula, alpha: &Assignment, k: usize) -> Vec<usize> {
    disjoint_unsat(formula.clauses(), alpha.values(), k)
}

fn disjoint_unsat(clauses: &[Clause], values: &[bool], k: usize) -> Vec<usize> {
    let mut used = vec![false; values.len()];
    let mut out = Vec::new();
    for (i, c) in clauses.iter().enumerate() {
        if c.len() != k || c.is_satisfied_by(values) {
            continue;
        }
        if c.literals().iter().any(|l| used[l.var().index()]) {
            continue;
        }
        for l in c.literals() {
            used[l.var().index()] = true;
        }
        out.push(i);
    }
    out
}

/// `α[H,w]`: for each `i`, flip the variable of the `w_i`-th literal
/// (1-based) of clause `H_i`.
pub fn apply_codeword(alpha: &Assignment, clauses: &[&Clause], w: &KaryWord) -> Result<Assignment, SolveError> {
    if clauses.len() != w.len() {
        return Err(SolveError::Config(format!(
            "{} clauses but a codeword of length {}",
            clauses.len(),
            w.len()
        )));
    }
    let mut out = alpha.clone();
    for (c, &s) in clauses.iter().zip(w.symbols()) {
        let lit = c
            .literals()
            .get(s as usize - 1)
            .ok_or(SolveError::CodewordOutOfRange { symbol: s, width: c.len() })?;
        out.flip(lit.var());
    }
    Ok(out)
}

/// Covering-code promise-ball search.
///
/// With `G` a maximal set of pairwise disjoint width-`k` clauses falsified
/// by `α`: if `|G| < t`, every admissible `β` on `vbl(G)` is tried with
/// plain `searchball(F^[β], α, r)`, which then branches at most `k − 1`
/// ways. Otherwise the first `t` clauses form `H` and the search recurses
/// on `α[H,w]` with radius `r − Δ` for each codeword `w`. When `r < t` in
/// that case there is no solution in the ball (each of the `t` disjoint
/// clauses needs its own flip), and the branch fails at once.
pub fn searchball_fast(formula: &Formula, alpha: &Assignment, r: usize, params: &FastParams) -> SearchOutcome {
    searchball_fast_cancellable(formula, alpha, r, params, None)
}

pub(crate) fn searchball_fast_cancellable(
    formula: &Formula,
    alpha: &Assignment,
    r: usize,
    params: &FastParams,
    cancel: Option<&AtomicBool>,
) -> SearchOutcome {
    let mut engine = Engine::new(formula, alpha);
    engine.cancel = cancel;
    let found = fast(&mut engine, params, r, 0);
    let witness = found.then(|| engine.witness());
    if let Some(w) = &witness {
        assert!(formula.evaluate(w), "searchball_fast returned a non-satisfying assignment");
    }
    SearchOutcome {
        witness,
        stats: SearchStats {
            recursion_nodes: engine.fast.nodes,
            leaves: engine.fast.leaves,
            max_depth: engine.fast.max_depth,
            max_arity: engine.ball.max_arity,
            handoff_leaves: engine.handoffs,
            inner_nodes: engine.ball.nodes,
            inner_leaves: engine.ball.leaves,
        },
    }
}

fn fast(e: &mut Engine<'_>, p: &FastParams, r: usize, depth: u32) -> bool {
    e.fast.enter(depth);
    match e.select() {
        Selection::Satisfied => {
            e.fast.leaves += 1;
            return true;
        }
        Selection::Dead => {
            e.fast.leaves += 1;
            return false;
        }
        Selection::Branch(_) => {}
    }
    if r == 0 || e.cancelled() {
        e.fast.leaves += 1;
        return false;
    }
    let t = p.t();
    let g = disjoint_unsat(e.clauses, &e.cur, p.k);
    if g.len() < t {
        e.fast.leaves += 1;
        e.handoffs += 1;
        return small_branch(e, p, &g, r, depth);
    }
    if r < t {
        e.fast.leaves += 1;
        return false;
    }
    let clauses = e.clauses;
    let h = &g[..t];
    let mut flipped = Vec::with_capacity(t);
    for w in p.code.words() {
        flipped.clear();
        for (&ci, &s) in h.iter().zip(w.symbols()) {
            let v = clauses[ci].literals()[s as usize - 1].var().index();
            e.cur[v] = !e.cur[v];
            flipped.push(v);
        }
        if fast(e, p, r - p.delta, depth + 1) {
            return true;
        }
        for &v in &flipped {
            e.cur[v] = !e.cur[v];
        }
    }
    false
}

/// Enumerates `β` on `vbl(G)` clause by clause. Pattern bit `j` of a clause
/// sets its `j`-th literal true; pattern 0 is `α`'s own (falsifying) values.
fn small_branch(e: &mut Engine<'_>, p: &FastParams, g: &[usize], r: usize, depth: u32) -> bool {
    let clauses = e.clauses;
    let first = match p.beta_mode {
        BetaMode::SatisfyG => 1u32,
        BetaMode::All => 0,
    };
    let mut patterns = vec![first; g.len()];
    for &ci in g {
        for l in clauses[ci].literals() {
            e.fixed[l.var().index()] = true;
        }
    }
    loop {
        for (&ci, &pat) in g.iter().zip(&patterns) {
            for (j, l) in clauses[ci].literals().iter().enumerate() {
                let make_true = pat >> j & 1 == 1;
                e.cur[l.var().index()] = if make_true { l.is_positive() } else { !l.is_positive() };
            }
        }
        if e.ball_search(r, depth + 1) {
            return true;
        }
        if e.cancelled() || !advance(&mut patterns, g, clauses, first) {
            break;
        }
    }
    for &ci in g {
        for l in clauses[ci].literals() {
            let v = l.var().index();
            e.fixed[v] = false;
            e.cur[v] = !l.is_positive();
        }
    }
    false
}

fn advance(patterns: &mut [u32], g: &[usize], clauses: &[Clause], first: u32) -> bool {
    for (pat, &ci) in patterns.iter_mut().zip(g).rev() {
        *pat += 1;
        if *pat < 1 << clauses[ci].len() {
            return true;
        }
        *pat = first;
    }
    false
}
