//! Complete k-SAT drivers.
//!
//! The deterministic solver walks a Boolean covering code of `{0,1}^n` and
//! runs `searchball_fast` around every codeword with the code's radius, so
//! some codeword is always close enough to any satisfying assignment. The
//! randomized solver repeats a uniform start plus a random walk. Brute force
//! is the oracle the other two are tested against.

use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cnf::{Assignment, Formula};
use crate::covering::{boolean_cover_with, CodeCache, CodeMethod, CoveringCode, MAX_ALPHABET};
use crate::error::SolveError;
use crate::search::searchball_fast_cancellable;
use crate::search::{schoening_walk_with_rng, BetaMode, FastParams, SearchStats};

/// Largest `n` accepted by [`brute_force`].
pub const BRUTE_FORCE_MAX_VARS: usize = 24;
/// Upper limit on randomized trials.
pub const TRIAL_CAP_LIMIT: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Deterministic,
    Randomized,
    Brute,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Deterministic => "deterministic",
            Mode::Randomized => "randomized",
            Mode::Brute => "brute",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub mode: Mode,
    /// Block size of the inner k-ary code; `None` picks [`default_block_size`].
    pub t: Option<usize>,
    pub epsilon: f64,
    /// Block length of the outer Boolean code.
    pub block_len: usize,
    /// Outer radius fraction; `None` means `1/(a+1)` with `a = k − 1 + ε`.
    pub rho: Option<f64>,
    pub seed: u64,
    /// Randomized trials; `None` means `⌈20·(2(k−1)/k)^n⌉`.
    pub trial_cap: Option<u64>,
    pub beta_mode: BetaMode,
    /// Worker threads for the outer codeword loop.
    pub jobs: usize,
    /// Block length of the greedy 2-box cover used for odd CSP domains.
    pub box_block_len: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            mode: Mode::Deterministic,
            t: None,
            epsilon: 0.1,
            block_len: 10,
            rho: None,
            seed: 0,
            trial_cap: None,
            beta_mode: BetaMode::SatisfyG,
            jobs: 1,
            box_block_len: 4,
        }
    }
}

impl SolverConfig {
    pub fn with_mode(mode: Mode) -> SolverConfig {
        SolverConfig {
            mode,
            ..SolverConfig::default()
        }
    }

    pub fn validate(&self) -> Result<(), SolveError> {
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(SolveError::Config(format!("epsilon must be positive, got {}", self.epsilon)));
        }
        if !(1..=20).contains(&self.block_len) {
            return Err(SolveError::Config(format!("block length {} outside 1..=20", self.block_len)));
        }
        if let Some(rho) = self.rho {
            if !(rho > 0.0 && rho <= 0.5) {
                return Err(SolveError::Config(format!("rho {rho} outside (0, 1/2]")));
            }
        }
        if !(1..=5).contains(&self.box_block_len) {
            return Err(SolveError::Config(format!("box block length {} outside 1..=5", self.box_block_len)));
        }
        if self.jobs == 0 {
            return Err(SolveError::Config("jobs must be at least 1".into()));
        }
        Ok(())
    }

    /// Outer radius fraction for clause width `k`.
    pub fn rho_for(&self, k: usize) -> f64 {
        self.rho.unwrap_or(1.0 / (k as f64 + self.epsilon))
    }
}

/// Default inner block size: 6 for k = 3, 8 for k = 4, otherwise the
/// largest `t ≤ k` with `k^t ≤ 10^6`.
pub fn default_block_size(k: usize) -> usize {
    match k {
        0..=3 => 6,
        4 => 8,
        _ => (3..=k)
            .rev()
            .find(|&t| crate::covering::space_size(k.min(255) as u8, t) <= 1_000_000)
            .unwrap_or(3),
    }
}

/// `2(k−1)/k`, the base of the randomized running time.
pub fn schoening_base(k: usize) -> f64 {
    let k = k.max(2) as f64;
    2.0 * (k - 1.0) / k
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Sat,
    Unsat,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Sat => "SATISFIABLE",
            Status::Unsat => "UNSATISFIABLE",
            Status::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub status: Status,
    pub witness: Option<Assignment>,
    /// The procedure that produced the verdict (k ≤ 2 is routed to brute force).
    pub engine: Mode,
    pub stats: SearchStats,
    pub codewords_tried: u64,
    pub outer_code_size: u64,
    pub outer_radius: u64,
    pub trials: u64,
    pub wall_time: Duration,
}

impl SolveResult {
    fn new(engine: Mode) -> SolveResult {
        SolveResult {
            status: Status::Unknown,
            witness: None,
            engine,
            stats: SearchStats::default(),
            codewords_tried: 0,
            outer_code_size: 0,
            outer_radius: 0,
            trials: 0,
            wall_time: Duration::ZERO,
        }
    }

    fn finish(mut self, witness: Option<Assignment>, miss: Status, start: Instant) -> SolveResult {
        self.status = if witness.is_some() { Status::Sat } else { miss };
        self.witness = witness;
        self.wall_time = start.elapsed();
        self
    }
}

/// Exhaustive search in lexicographic order (`x1` most significant).
pub fn brute_force(formula: &Formula) -> Result<SolveResult, SolveError> {
    let start = Instant::now();
    let n = formula.num_vars();
    if n > BRUTE_FORCE_MAX_VARS {
        return Err(SolveError::TooLarge(format!(
            "{n} variables, brute force handles at most {BRUTE_FORCE_MAX_VARS}"
        )));
    }
    // bit (n-1-i) of the counter is variable i+1
    let masks: Vec<(u32, u32)> = formula
        .clauses()
        .iter()
        .map(|c| {
            c.literals().iter().fold((0, 0), |(p, q), l| {
                let bit = 1u32 << (n - 1 - l.var().index());
                if l.is_positive() {
                    (p | bit, q)
                } else {
                    (p, q | bit)
                }
            })
        })
        .collect();
    let mut result = SolveResult::new(Mode::Brute);
    let found = (0..1u64 << n).map(|x| x as u32).find(|&x| {
        result.stats.recursion_nodes += 1;
        masks.iter().all(|&(p, q)| (x & p) | (!x & q) != 0)
    });
    let witness = found.map(|x| Assignment::new((0..n).map(|i| x >> (n - 1 - i) & 1 == 1).collect()));
    Ok(result.finish(witness, Status::Unsat, start))
}

/// Repeated uniform start plus random walk; reports `Unknown` rather than
/// `Unsat` when every trial fails.
///
/// Trial `i` draws from ChaCha8 stream `i` of `cfg.seed`.
pub fn solve_schoening(formula: &Formula, cfg: &SolverConfig) -> SolveResult {
    let start = Instant::now();
    let n = formula.num_vars();
    let cap = cfg.trial_cap.unwrap_or_else(|| default_trial_cap(formula.max_width(), n)).max(1);
    let steps = (3 * n).max(1);
    let mut result = SolveResult::new(Mode::Randomized);
    let mut witness = None;
    for trial in 0..cap {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(trial);
        let alpha = Assignment::new((0..n).map(|_| rng.random_bool(0.5)).collect());
        let out = schoening_walk_with_rng(formula, &alpha, steps, &mut rng);
        result.trials += 1;
        result.stats.recursion_nodes += out.steps as u64;
        if out.witness.is_some() {
            witness = out.witness;
            break;
        }
    }
    result.finish(witness, Status::Unknown, start)
}

/// `⌈20·(2(k−1)/k)^n⌉`, capped at [`TRIAL_CAP_LIMIT`].
pub fn default_trial_cap(k: usize, n: usize) -> u64 {
    let x = 20.0 * schoening_base(k).powi(n as i32);
    if x >= TRIAL_CAP_LIMIT as f64 {
        TRIAL_CAP_LIMIT
    } else {
        (x.ceil() as u64).max(1)
    }
}

/// One-shot deterministic solve. Use [`Solver`] to reuse codes across calls.
pub fn solve_deterministic(formula: &Formula, cfg: &SolverConfig) -> Result<SolveResult, SolveError> {
    Solver::new(cfg.clone()).solve_deterministic(formula)
}

/// A solver that keeps its covering codes between calls.
#[derive(Debug)]
pub struct Solver {
    cfg: SolverConfig,
    cache: CodeCache,
}

impl Solver {
    pub fn new(cfg: SolverConfig) -> Solver {
        Solver::with_cache(cfg, CodeCache::in_memory())
    }

    pub fn with_cache(cfg: SolverConfig, cache: CodeCache) -> Solver {
        Solver { cfg, cache }
    }

    pub fn config(&self) -> &SolverConfig {
        &self.cfg
    }

    /// Dispatches on the configured mode.
    pub fn solve(&mut self, formula: &Formula) -> Result<SolveResult, SolveError> {
        self.cfg.validate()?;
        match self.cfg.mode {
            Mode::Deterministic => self.solve_deterministic(formula),
            Mode::Randomized => Ok(solve_schoening(formula, &self.cfg)),
            Mode::Brute => brute_force(formula),
        }
    }

    /// Inner search parameters for clause width `k`.
    pub fn fast_params(&mut self, k: usize) -> Result<FastParams, SolveError> {
        if !(3..=MAX_ALPHABET as usize).contains(&k) {
            return Err(SolveError::Config(format!("clause width {k} outside 3..={MAX_ALPHABET}")));
        }
        let t = self.cfg.t.unwrap_or_else(|| default_block_size(k));
        let code = self
            .cache
            .get(k as u8, t, FastParams::code_radius(k, t), CodeMethod::Greedy)?;
        Ok(FastParams::new(k, code)?.with_beta_mode(self.cfg.beta_mode))
    }

    /// Outer Boolean cover of `{0,1}^n` for clause width `k`.
    pub fn outer_code(&mut self, n: usize, k: usize) -> Result<CoveringCode, SolveError> {
        let rho = self.cfg.rho_for(k);
        let cache = &mut self.cache;
        Ok(boolean_cover_with(n, rho, self.cfg.block_len, |len, r| {
            cache.get(2, len, r, CodeMethod::Greedy)
        })?)
    }

    pub fn solve_deterministic(&mut self, formula: &Formula) -> Result<SolveResult, SolveError> {
        self.cfg.validate()?;
        let start = Instant::now();
        let n = formula.num_vars();
        let width = formula.max_width();
        if (1..3).contains(&width) && n <= BRUTE_FORCE_MAX_VARS {
            return brute_force(formula);
        }
        let k = width.max(3);
        // caps are checked before any search
        let params = self.fast_params(k)?;
        let outer = self.outer_code(n, k)?;
        assert!(outer.is_verified(), "outer code must be a verified cover");

        let mut result = SolveResult::new(Mode::Deterministic);
        result.outer_code_size = outer.len() as u64;
        result.outer_radius = outer.radius() as u64;
        if formula.has_empty_clause() {
            return Ok(result.finish(None, Status::Unsat, start));
        }

        let witness = if self.cfg.jobs <= 1 {
            let mut witness = None;
            for i in 0..outer.len() {
                let gamma = outer.word_as_assignment(i);
                let out = searchball_fast_cancellable(formula, &gamma, outer.radius(), &params, None);
                result.codewords_tried += 1;
                result.stats.absorb(&out.stats);
                if out.witness.is_some() {
                    witness = out.witness;
                    break;
                }
            }
            witness
        } else {
            self.parallel_codewords(formula, &outer, &params, &mut result)
        };
        Ok(result.finish(witness, Status::Unsat, start))
    }

    fn parallel_codewords(
        &self,
        formula: &Formula,
        outer: &CoveringCode,
        params: &FastParams,
        result: &mut SolveResult,
    ) -> Option<Assignment> {
        let stop = AtomicBool::new(false);
        let next = AtomicU64::new(0);
        let found: Mutex<Option<(usize, Assignment)>> = Mutex::new(None);
        let stats = Mutex::new((SearchStats::default(), 0u64));
        std::thread::scope(|s| {
            for _ in 0..self.cfg.jobs {
                s.spawn(|| loop {
                    if stop.load(Ordering::Relaxed) {
                        return;
                    }
                    let i = next.fetch_add(1, Ordering::Relaxed) as usize;
                    if i >= outer.len() {
                        return;
                    }
                    let gamma = outer.word_as_assignment(i);
                    let out = searchball_fast_cancellable(formula, &gamma, outer.radius(), params, Some(&stop));
                    {
                        let mut st = stats.lock().unwrap();
                        st.0.absorb(&out.stats);
                        st.1 += 1;
                    }
                    if let Some(w) = out.witness {
                        stop.store(true, Ordering::Relaxed);
                        let mut slot = found.lock().unwrap();
                        if slot.as_ref().is_none_or(|(j, _)| i < *j) {
                            *slot = Some((i, w));
                        }
                    }
                });
            }
        });
        let (st, tried) = stats.into_inner().unwrap();
        result.stats.absorb(&st);
        result.codewords_tried = tried;
        found.into_inner().unwrap().map(|(_, w)| w)
    }
}
