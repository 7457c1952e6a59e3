//! (d,≤k)-CSP formulas and their reduction to Boolean CNF.
//!
//! A literal `(x_i ≠ c)` forbids one value of one variable. A 2-box
//! `P_1 × … × P_n` keeps two values per variable; inside a box each
//! variable becomes Boolean (`y_i = 1` selects the larger value of `P_i`)
//! and the CSP turns into a (≤k)-CNF. A cover of `{1..d}^n` by 2-boxes
//! therefore reduces one CSP to a family of k-SAT instances.

use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::cnf::{Assignment, Clause, Formula, Literal, Var};
use crate::error::{CspError, SolveError};
use crate::search::SearchStats;
use crate::solver::{solve_schoening, Mode, SolveResult, Solver, SolverConfig, Status};

/// Largest `d^n` accepted by [`brute_force_csp`].
pub const CSP_BRUTE_FORCE_CAP: u128 = 10_000_000;
/// Largest `d^b` for a greedy 2-box block.
pub const BOX_BLOCK_CAP: u128 = 100_000;
/// Whole covers are re-checked point by point when `d^n` is at most this.
pub const BOX_VERIFY_CAP: u128 = 1_000_000;

/// `(x_var ≠ value)`, with `var` 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CspLiteral {
    pub var: usize,
    pub value: u32,
}

impl CspLiteral {
    pub fn is_satisfied_by(self, values: &[u32]) -> bool {
        values[self.var - 1] != self.value
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Constraint {
    literals: Vec<CspLiteral>,
}

impl Constraint {
    pub fn literals(&self) -> &[CspLiteral] {
        &self.literals
    }

    pub fn pairs(&self) -> Vec<(usize, u32)> {
        self.literals.iter().map(|l| (l.var, l.value)).collect()
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn is_satisfied_by(&self, values: &[u32]) -> bool {
        self.literals.iter().any(|l| l.is_satisfied_by(values))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CspFormula {
    domain_size: u32,
    num_vars: usize,
    constraints: Vec<Constraint>,
}

impl CspFormula {
    /// Strict constructor: rejects empty constraints, repeated variables and
    /// out-of-range variables or values.
    pub fn new(domain_size: u32, num_vars: usize, constraints: &[Vec<(usize, u32)>]) -> Result<CspFormula, CspError> {
        check_domain(domain_size)?;
        let mut out = Vec::with_capacity(constraints.len());
        for raw in constraints {
            let c = build_constraint(domain_size, num_vars, raw)?;
            let mut vars: Vec<usize> = c.literals.iter().map(|l| l.var).collect();
            vars.sort_unstable();
            if let Some(w) = vars.windows(2).find(|w| w[0] == w[1]) {
                return Err(CspError::RepeatedVariable(w[0]));
            }
            out.push(c);
        }
        Ok(CspFormula {
            domain_size,
            num_vars,
            constraints: out,
        })
    }

    /// Like [`CspFormula::new`], but removes repeated literals and drops
    /// constraints that forbid two different values of one variable, which
    /// every assignment satisfies.
    pub fn normalized(
        domain_size: u32,
        num_vars: usize,
        constraints: &[Vec<(usize, u32)>],
    ) -> Result<CspFormula, CspError> {
        check_domain(domain_size)?;
        let mut out = Vec::with_capacity(constraints.len());
        'next: for raw in constraints {
            let c = build_constraint(domain_size, num_vars, raw)?;
            let mut kept: Vec<CspLiteral> = Vec::with_capacity(c.len());
            for l in c.literals {
                match kept.iter().find(|k| k.var == l.var) {
                    Some(k) if k.value == l.value => {}
                    Some(_) => continue 'next,
                    None => kept.push(l),
                }
            }
            out.push(Constraint { literals: kept });
        }
        Ok(CspFormula {
            domain_size,
            num_vars,
            constraints: out,
        })
    }

    pub fn domain_size(&self) -> u32 {
        self.domain_size
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn max_width(&self) -> usize {
        self.constraints.iter().map(Constraint::len).max().unwrap_or(0)
    }

    /// True iff every constraint has a literal whose variable avoids the
    /// forbidden value.
    pub fn evaluate(&self, values: &[u32]) -> Result<bool, CspError> {
        if values.len() != self.num_vars {
            return Err(CspError::LengthMismatch {
                found: values.len(),
                expected: self.num_vars,
            });
        }
        if let Some((i, &v)) = values.iter().enumerate().find(|(_, &v)| v == 0 || v > self.domain_size) {
            return Err(CspError::ValueOutOfDomain {
                var: i + 1,
                value: v,
                domain: self.domain_size,
            });
        }
        Ok(self.constraints.iter().all(|c| c.is_satisfied_by(values)))
    }
}

fn check_domain(d: u32) -> Result<(), CspError> {
    if d < 2 {
        return Err(CspError::InvalidParameters(format!("domain size {d} < 2")));
    }
    Ok(())
}

fn build_constraint(d: u32, n: usize, raw: &[(usize, u32)]) -> Result<Constraint, CspError> {
    if raw.is_empty() {
        return Err(CspError::EmptyConstraint);
    }
    let mut literals = Vec::with_capacity(raw.len());
    for &(var, value) in raw {
        if var == 0 || var > n {
            return Err(CspError::VariableOutOfRange { var, num_vars: n });
        }
        if value == 0 || value > d {
            return Err(CspError::ValueOutOfDomain { var, value, domain: d });
        }
        literals.push(CspLiteral { var, value });
    }
    Ok(Constraint { literals })
}

/// `P_1 × … × P_n` with `|P_i| = 2`, stored as `(lo, hi)` with `lo < hi`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwoBox {
    pairs: Vec<(u32, u32)>,
}

impl TwoBox {
    pub fn new(pairs: Vec<(u32, u32)>) -> Result<TwoBox, CspError> {
        if let Some(&(a, b)) = pairs.iter().find(|(a, b)| a == b || *a == 0 || *b == 0) {
            return Err(CspError::InvalidParameters(format!("pair ({a},{b}) is not two distinct values")));
        }
        Ok(TwoBox {
            pairs: pairs.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect(),
        })
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, values: &[u32]) -> bool {
        values.len() == self.pairs.len() && self.pairs.iter().zip(values).all(|(&(a, b), &v)| v == a || v == b)
    }

    fn concat(&self, other: &TwoBox) -> TwoBox {
        let mut pairs = self.pairs.clone();
        pairs.extend_from_slice(&other.pairs);
        TwoBox { pairs }
    }
}

/// A product of per-block box lists. Box `i` is read in mixed radix over
/// the blocks, first block most significant, so nothing is materialized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxCover {
    domain_size: u32,
    num_vars: usize,
    blocks: Vec<Arc<Vec<TwoBox>>>,
    verified: bool,
}

impl BoxCover {
    pub fn domain_size(&self) -> u32 {
        self.domain_size
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Number of boxes, saturating.
    pub fn len(&self) -> u128 {
        self.blocks.iter().fold(1u128, |acc, b| acc.saturating_mul(b.len() as u128))
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn box_at(&self, mut index: u128) -> TwoBox {
        let mut parts = Vec::with_capacity(self.blocks.len());
        for b in self.blocks.iter().rev() {
            let len = b.len() as u128;
            parts.push(&b[(index % len) as usize]);
            index /= len;
        }
        parts
            .into_iter()
            .rev()
            .fold(TwoBox { pairs: Vec::new() }, |acc, b| acc.concat(b))
    }

    pub fn iter(&self) -> impl Iterator<Item = TwoBox> + '_ {
        (0..self.len()).map(|i| self.box_at(i))
    }

    /// Marks every point of every box and checks that all `d^n` points are
    /// hit. Refuses when `d^n` exceeds [`BOX_VERIFY_CAP`].
    pub fn covers_exhaustively(&self) -> Result<bool, CspError> {
        let d = self.domain_size as u128;
        let size = d.checked_pow(self.num_vars as u32).unwrap_or(u128::MAX);
        if size > BOX_VERIFY_CAP {
            return Err(CspError::CapExceeded {
                size,
                cap: BOX_VERIFY_CAP,
            });
        }
        let mut hit = vec![false; size as usize];
        for bx in self.iter() {
            for corner in 0..1u64 << self.num_vars {
                let idx = bx.pairs.iter().enumerate().fold(0usize, |acc, (i, &(lo, hi))| {
                    let v = if corner >> i & 1 == 1 { hi } else { lo };
                    acc * self.domain_size as usize + (v - 1) as usize
                });
                hit[idx] = true;
            }
        }
        Ok(hit.into_iter().all(|h| h))
    }
}

/// A cover of `{1..d}^n` by 2-boxes.
///
/// Even `d` uses the product of the pairs `{1,2}, {3,4}, …` in every
/// coordinate, `(d/2)^n` boxes. Odd `d` runs greedy set cover on
/// `{1..d}^b` (candidates: all `C(d,2)^b` boxes, ties to the first in
/// lexicographic pair order) and concatenates `⌈n/b⌉` blocks, the last one
/// shorter when `b` does not divide `n`.
pub fn two_box_cover(d: u32, n: usize, b: usize) -> Result<BoxCover, CspError> {
    check_domain(d)?;
    if b == 0 {
        return Err(CspError::InvalidParameters("block length must be positive".into()));
    }
    let mut blocks = Vec::new();
    if d % 2 == 0 {
        let single: Vec<TwoBox> = (1..=d / 2)
            .map(|j| TwoBox {
                pairs: vec![(2 * j - 1, 2 * j)],
            })
            .collect();
        blocks = vec![Arc::new(single); n];
    } else {
        if d > 5 || b > 5 {
            return Err(CspError::CapExceeded {
                size: (d as u128).saturating_pow(b as u32),
                cap: BOX_BLOCK_CAP,
            });
        }
        let full = n / b;
        if full > 0 {
            blocks.extend(std::iter::repeat_n(Arc::new(greedy_box_block(d, b)?), full));
        }
        if n % b > 0 {
            blocks.push(Arc::new(greedy_box_block(d, n % b)?));
        }
    }
    let mut cover = BoxCover {
        domain_size: d,
        num_vars: n,
        blocks,
        verified: true,
    };
    let points = (d as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if points <= BOX_VERIFY_CAP && cover.len().saturating_mul(1u128 << n.min(100)) <= 100_000_000 {
        cover.verified = cover.covers_exhaustively()?;
    }
    Ok(cover)
}

/// Greedy set cover of `{1..d}^len` by 2-boxes.
fn greedy_box_block(d: u32, len: usize) -> Result<Vec<TwoBox>, CspError> {
    let points = (d as u128).pow(len as u32);
    if points > BOX_BLOCK_CAP {
        return Err(CspError::CapExceeded {
            size: points,
            cap: BOX_BLOCK_CAP,
        });
    }
    let pairs: Vec<(u32, u32)> = (1..=d).flat_map(|a| (a + 1..=d).map(move |b| (a, b))).collect();
    let np = pairs.len();
    let ncand = np.pow(len as u32);
    let npoints = points as usize;
    let d = d as usize;
    // pairs_with[v] = indices of the pairs containing value v+1
    let pairs_with: Vec<Vec<usize>> = (1..=d as u32)
        .map(|v| (0..np).filter(|&i| pairs[i].0 == v || pairs[i].1 == v).collect())
        .collect();

    let mut gain = vec![1u32 << len; ncand];
    let mut covered = vec![false; npoints];
    let mut remaining = npoints;
    let mut chosen = Vec::new();
    let digits = |mut x: usize, base: usize| {
        let mut out = vec![0; len];
        for slot in out.iter_mut().rev() {
            *slot = x % base;
            x /= base;
        }
        out
    };

    while remaining > 0 {
        let (best, _) = gain
            .iter()
            .enumerate()
            .fold((0, 0), |acc, (i, &g)| if g > acc.1 { (i, g) } else { acc });
        let cand = digits(best, np);
        chosen.push(TwoBox {
            pairs: cand.iter().map(|&p| pairs[p]).collect(),
        });
        for corner in 0..1usize << len {
            let point: Vec<usize> = cand
                .iter()
                .enumerate()
                .map(|(i, &p)| {
                    let (lo, hi) = pairs[p];
                    (if corner >> (len - 1 - i) & 1 == 1 { hi } else { lo }) as usize - 1
                })
                .collect();
            let idx = point.iter().fold(0, |acc, &v| acc * d + v);
            if covered[idx] {
                continue;
            }
            covered[idx] = true;
            remaining -= 1;
            // every candidate containing this point loses one
            let mut odo = vec![0usize; len];
            'each: loop {
                let c = (0..len).fold(0, |acc, i| acc * np + pairs_with[point[i]][odo[i]]);
                gain[c] -= 1;
                for i in (0..len).rev() {
                    odo[i] += 1;
                    if odo[i] < d - 1 {
                        continue 'each;
                    }
                    odo[i] = 0;
                }
                break;
            }
        }
    }
    Ok(chosen)
}

/// The Boolean CNF of `formula` inside `bx`: variable `i` true means
/// `x_i` takes the larger value of its pair.
///
/// A constraint with a literal whose value lies outside its pair is always
/// satisfied inside the box and is dropped; `(x_i ≠ lo)` becomes `y_i` and
/// `(x_i ≠ hi)` becomes `¬y_i`.
pub fn restrict_to_box(formula: &CspFormula, bx: &TwoBox) -> Formula {
    assert_eq!(bx.len(), formula.num_vars(), "box dimension");
    let clauses = formula
        .constraints()
        .iter()
        .filter_map(|c| {
            c.literals()
                .iter()
                .map(|l| {
                    let (lo, hi) = bx.pairs[l.var - 1];
                    let var = Var::new(l.var as u32);
                    if l.value == lo {
                        Some(Literal::new(var, true))
                    } else if l.value == hi {
                        Some(Literal::new(var, false))
                    } else {
                        None
                    }
                })
                .collect::<Option<Vec<_>>>()
        })
        .map(|lits| Clause::new(lits).expect("constraint variables are distinct"))
        .collect();
    Formula::new(formula.num_vars(), clauses).expect("variables in range")
}

/// Maps a Boolean assignment back into the box.
pub fn decode(bx: &TwoBox, y: &Assignment) -> Vec<u32> {
    bx.pairs
        .iter()
        .zip(y.values())
        .map(|(&(lo, hi), &b)| if b { hi } else { lo })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CspSolveResult {
    pub status: Status,
    pub witness: Option<Vec<u32>>,
    pub engine: Mode,
    pub stats: SearchStats,
    pub cover_size: u128,
    pub boxes_tried: u64,
    pub codewords_tried: u64,
    pub trials: u64,
    pub wall_time: Duration,
}

impl CspSolveResult {
    fn new(engine: Mode) -> CspSolveResult {
        CspSolveResult {
            status: Status::Unknown,
            witness: None,
            engine,
            stats: SearchStats::default(),
            cover_size: 0,
            boxes_tried: 0,
            codewords_tried: 0,
            trials: 0,
            wall_time: Duration::ZERO,
        }
    }
}

/// Exhaustive search over `{1..d}^n` in lexicographic order.
pub fn brute_force_csp(formula: &CspFormula) -> Result<CspSolveResult, SolveError> {
    let start = Instant::now();
    let d = formula.domain_size();
    let n = formula.num_vars();
    let size = (d as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > CSP_BRUTE_FORCE_CAP {
        return Err(CspError::CapExceeded {
            size,
            cap: CSP_BRUTE_FORCE_CAP,
        }
        .into());
    }
    let mut result = CspSolveResult::new(Mode::Brute);
    let mut values = vec![1u32; n];
    loop {
        result.stats.recursion_nodes += 1;
        if formula.constraints().iter().all(|c| c.is_satisfied_by(&values)) {
            result.witness = Some(values);
            break;
        }
        // odometer, last variable fastest
        let mut i = n;
        while i > 0 && values[i - 1] == d {
            values[i - 1] = 1;
            i -= 1;
        }
        if i == 0 {
            break;
        }
        values[i - 1] += 1;
    }
    result.status = if result.witness.is_some() { Status::Sat } else { Status::Unsat };
    result.wall_time = start.elapsed();
    Ok(result)
}

/// Reduces through a 2-box cover and solves box after box with the
/// configured Boolean engine, stopping at the first satisfiable box.
///
/// Deterministic mode is complete. Randomized mode reports `Unknown`
/// when no box yields a witness. Brute mode and formulas of width at most
/// 2 go straight to [`brute_force_csp`] when it is within its cap.
pub fn solve_csp(formula: &CspFormula, cfg: &SolverConfig) -> Result<CspSolveResult, SolveError> {
    solve_csp_with(formula, &mut Solver::new(cfg.clone()))
}

/// [`solve_csp`] reusing the covering codes held by `solver`.
pub fn solve_csp_with(formula: &CspFormula, solver: &mut Solver) -> Result<CspSolveResult, SolveError> {
    let start = Instant::now();
    let cfg = solver.config().clone();
    cfg.validate()?;
    let within_brute = (formula.domain_size() as u128)
        .checked_pow(formula.num_vars() as u32)
        .is_some_and(|s| s <= CSP_BRUTE_FORCE_CAP);
    if cfg.mode == Mode::Brute || ((1..3).contains(&formula.max_width()) && within_brute) {
        return brute_force_csp(formula);
    }

    let cover = two_box_cover(formula.domain_size(), formula.num_vars(), cfg.box_block_len)?;
    assert!(cover.is_verified(), "2-box cover must cover the domain");
    let mut result = CspSolveResult::new(cfg.mode);
    result.cover_size = cover.len();
    let miss = if cfg.mode == Mode::Randomized { Status::Unknown } else { Status::Unsat };
    for bx in cover.iter() {
        let reduced = restrict_to_box(formula, &bx);
        let r: SolveResult = match cfg.mode {
            Mode::Randomized => solve_schoening(&reduced, &cfg),
            _ => solver.solve_deterministic(&reduced)?,
        };
        result.boxes_tried += 1;
        result.stats.absorb(&r.stats);
        result.codewords_tried += r.codewords_tried;
        result.trials += r.trials;
        if let Some(y) = r.witness {
            let values = decode(&bx, &y);
            debug_assert!(formula.evaluate(&values).unwrap());
            result.witness = Some(values);
            break;
        }
    }
    result.status = if result.witness.is_some() { Status::Sat } else { miss };
    result.wall_time = start.elapsed();
    Ok(result)
}
