//! Planted instances and scaling runs.
//!
//! A planted instance is a random k-CNF built around a hidden satisfying
//! assignment, together with a start point at a chosen Hamming distance
//! from it. Scaling runs sweep that distance and record the size of the
//! search tree of each engine.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::cnf::{Assignment, Clause, Formula, Literal, Var};
use crate::error::SolveError;
use crate::search::{schoening_walk_with_rng, searchball, searchball_fast, FastParams};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlantedInstance {
    pub formula: Formula,
    pub planted: Assignment,
    pub start: Assignment,
    /// Hamming distance between `start` and `planted`.
    pub r: usize,
}

/// `m` clauses of width `k` over `n` variables, each satisfied by a
/// uniformly drawn planted assignment, and a start point obtained by
/// flipping `flips` distinct variables of it.
///
/// Clause variables are a uniform `k`-subset; signs are redrawn until the
/// planted assignment satisfies the clause.
pub fn gen_planted(k: usize, n: usize, m: usize, flips: usize, seed: u64) -> PlantedInstance {
    assert!(k >= 1 && k <= n, "clause width {k} needs 1 ≤ k ≤ n = {n}");
    assert!(flips <= n, "cannot flip {flips} of {n} variables");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let planted = Assignment::new((0..n).map(|_| rng.random_bool(0.5)).collect());
    let mut clauses = Vec::with_capacity(m);
    for _ in 0..m {
        let vars = sample(&mut rng, n, k).into_vec();
        let lits = loop {
            let lits: Vec<Literal> = vars
                .iter()
                .map(|&v| Literal::new(Var::from_index(v), rng.random_bool(0.5)))
                .collect();
            if lits.iter().any(|l| l.is_satisfied_by(planted.values())) {
                break lits;
            }
        };
        clauses.push(Clause::new(lits).expect("distinct variables"));
    }
    let formula = Formula::new(n, clauses).expect("variables in range");
    assert!(formula.evaluate(&planted));
    let mut start = planted.clone();
    for v in sample(&mut rng, n, flips) {
        start.flip(Var::from_index(v));
    }
    PlantedInstance {
        formula,
        planted,
        start,
        r: flips,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    Searchball,
    SearchballFast,
    SchoeningWalk,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Searchball => "searchball",
            Engine::SearchballFast => "searchball_fast",
            Engine::SchoeningWalk => "schoening_walk",
        })
    }
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> Result<Engine, String> {
        match s {
            "searchball" => Ok(Engine::Searchball),
            "searchball_fast" | "fast" => Ok(Engine::SearchballFast),
            "schoening_walk" | "walk" => Ok(Engine::SchoeningWalk),
            _ => Err(format!("unknown engine {s:?}")),
        }
    }
}

/// One row of a scaling run.
///
/// `leaves` and `nodes` cover the whole call tree. For `searchball_fast`
/// that includes the plain searches started from its small-`G` branch;
/// `branch_leaves` counts only the leaves of its own recursion. For the
/// walk, `nodes` is the number of flips plus one and `leaves` is 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BenchRecord {
    pub engine: Engine,
    pub k: usize,
    pub n: usize,
    pub r: usize,
    pub t: usize,
    pub trial: usize,
    pub code_size: usize,
    pub leaves: u64,
    pub branch_leaves: u64,
    pub nodes: u64,
    pub wall_time_us: u64,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Found,
    Missed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingConfig {
    pub engine: Engine,
    pub k: usize,
    /// Inner block size for `searchball_fast`; ignored by the others.
    pub t: usize,
    pub r_min: usize,
    pub r_max: usize,
    pub trials: usize,
    pub seed: u64,
    /// Variables per instance; `None` means `max(2·r_max, 10)`.
    pub n: Option<usize>,
    /// Clauses per variable.
    pub density: f64,
}

impl ScalingConfig {
    pub fn new(engine: Engine, k: usize, t: usize, r_min: usize, r_max: usize, trials: usize, seed: u64) -> Self {
        ScalingConfig {
            engine,
            k,
            t,
            r_min,
            r_max,
            trials,
            seed,
            n: None,
            density: 4.0,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.n.unwrap_or((2 * self.r_max).max(10))
    }

    pub fn num_clauses(&self) -> usize {
        (self.density * self.num_vars() as f64).round() as usize
    }

    /// Seed of the instance for `(r, trial)`. It does not depend on the
    /// engine, so two engines run with the same settings see the same
    /// instances.
    pub fn instance_seed(&self, r: usize, trial: usize) -> u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(((r as u64) << 32) | trial as u64);
        rng.random()
    }
}

/// Runs every `(r, trial)` pair in order and returns one record each.
///
/// Panics if a search exceeds its hard leaf envelope (`k^r` for
/// `searchball`, `|code|^⌈r/Δ⌉` on the branch leaves of `searchball_fast`).
pub fn run_scaling(cfg: &ScalingConfig) -> Result<Vec<BenchRecord>, SolveError> {
    let n = cfg.num_vars();
    if cfg.r_min > cfg.r_max || cfg.r_max > n || cfg.k > n || cfg.k < 2 {
        return Err(SolveError::Config(format!(
            "need k ≤ n, r_min ≤ r_max ≤ n (k={}, n={n}, r={}..{})",
            cfg.k, cfg.r_min, cfg.r_max
        )));
    }
    let params = match cfg.engine {
        Engine::SearchballFast => Some(FastParams::greedy(cfg.k, cfg.t)?),
        _ => None,
    };
    let code_size = params.as_ref().map_or(0, |p| p.code().len());
    let m = cfg.num_clauses();
    let mut out = Vec::with_capacity((cfg.r_max - cfg.r_min + 1) * cfg.trials);
    for r in cfg.r_min..=cfg.r_max {
        for trial in 0..cfg.trials {
            let seed = cfg.instance_seed(r, trial);
            let inst = gen_planted(cfg.k, n, m, r, seed);
            let start = Instant::now();
            let (found, leaves, branch_leaves, nodes) = match cfg.engine {
                Engine::Searchball => {
                    let o = searchball(&inst.formula, &inst.start, r);
                    assert!(o.stats.leaves as f64 <= (cfg.k as f64).powi(r as i32), "leaf envelope");
                    (o.found(), o.stats.leaves, o.stats.leaves, o.stats.recursion_nodes)
                }
                Engine::SearchballFast => {
                    let p = params.as_ref().unwrap();
                    let o = searchball_fast(&inst.formula, &inst.start, r, p);
                    let levels = r.div_ceil(p.delta()) as i32;
                    assert!(o.stats.leaves as f64 <= (code_size as f64).powi(levels), "leaf envelope");
                    (o.found(), o.stats.combined_leaves(), o.stats.leaves, o.stats.combined_nodes())
                }
                Engine::SchoeningWalk => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(1);
                    let o = schoening_walk_with_rng(&inst.formula, &inst.start, (3 * n).max(1), &mut rng);
                    (o.witness.is_some(), 1, 1, o.steps as u64 + 1)
                }
            };
            out.push(BenchRecord {
                engine: cfg.engine,
                k: cfg.k,
                n,
                r,
                t: if params.is_some() { cfg.t } else { 0 },
                trial,
                code_size,
                leaves,
                branch_leaves,
                nodes,
                wall_time_us: start.elapsed().as_micros() as u64,
                outcome: if found { Outcome::Found } else { Outcome::Missed },
            });
        }
    }
    Ok(out)
}

/// Least-squares fit of `ln(mean leaves)` against `r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BaseFit {
    /// `exp(slope)`.
    pub base: f64,
    /// 95% interval for the base.
    pub low: f64,
    pub high: f64,
    pub points: usize,
}

impl BaseFit {
    pub fn midpoint(&self) -> f64 {
        (self.low + self.high) / 2.0
    }
}

/// Mean of `metric` per radius, in increasing `r`.
pub fn mean_by_radius(records: &[BenchRecord], metric: impl Fn(&BenchRecord) -> u64) -> Vec<(usize, f64)> {
    let mut rs: Vec<usize> = records.iter().map(|r| r.r).collect();
    rs.sort_unstable();
    rs.dedup();
    rs.into_iter()
        .map(|r| {
            let vals: Vec<f64> = records.iter().filter(|x| x.r == r).map(|x| metric(x) as f64).collect();
            (r, vals.iter().sum::<f64>() / vals.len() as f64)
        })
        .collect()
}

/// Fits the exponential base of `metric` over the records; `None` with
/// fewer than three radii.
pub fn fit_base(records: &[BenchRecord], metric: impl Fn(&BenchRecord) -> u64) -> Option<BaseFit> {
    let pts: Vec<(f64, f64)> = mean_by_radius(records, metric)
        .into_iter()
        .map(|(r, m)| (r as f64, m.max(1.0).ln()))
        .collect();
    let n = pts.len();
    if n < 3 {
        return None;
    }
    let nf = n as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / nf;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / nf;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let icept = my - slope * mx;
    let sse: f64 = pts.iter().map(|p| (p.1 - icept - slope * p.0).powi(2)).sum();
    let se = (sse / (nf - 2.0) / sxx).sqrt();
    let half = student_t_975(n - 2) * se;
    Some(BaseFit {
        base: slope.exp(),
        low: (slope - half).exp(),
        high: (slope + half).exp(),
        points: n,
    })
}

/// Two-sided 95% quantile of Student's t.
fn student_t_975(df: usize) -> f64 {
    if df == 0 {
        return f64::INFINITY;
    }
    StudentsT::new(0.0, 1.0, df as f64)
        .expect("positive degrees of freedom")
        .inverse_cdf(0.975)
}

/// Writes records as CSV with one header row. Rows are sorted by
/// `(engine, r, trial)` first.
pub fn write_csv<W: Write>(records: &[BenchRecord], out: W) -> Result<(), csv::Error> {
    let mut sorted: Vec<&BenchRecord> = records.iter().collect();
    sorted.sort_by_key(|r| (r.engine as u8, r.r, r.trial));
    let mut w = csv::Writer::from_writer(out);
    for r in sorted {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
