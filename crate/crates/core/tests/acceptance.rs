//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Every expected value is computed here by an oracle that does not call
//! the code under test: bitmask brute force for SAT, CSP and Hamming-ball
//! questions, direct set-membership checks for covers, and the size bounds
//! evaluated from their closed forms.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use derandsat::bench::{fit_base, gen_planted, run_scaling, Engine, Outcome, ScalingConfig};
use derandsat::covering::{code_size_bound, greedy_code, random_code, CoveringCode};
use derandsat::csp::{solve_csp_with, two_box_cover, BoxCover, CspFormula};
use derandsat::formats::code::{read_code, write_code};
use derandsat::formats::csp::{parse_csp, write_csp};
use derandsat::formats::dimacs::{parse_dimacs, write_dimacs};
use derandsat::search::{apply_codeword, schoening_walk_with_rng};
use derandsat::{searchball, searchball_fast, Assignment, Clause, FastParams, Formula, Literal, Solver, SolverConfig, Status, Var};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---- oracles ----

/// Clauses as (positive mask, negative mask); bit i is variable i+1.
fn masks(f: &Formula) -> Vec<(u32, u32)> {
    f.clauses()
        .iter()
        .map(|c| {
            c.literals().iter().fold((0, 0), |(p, q), l| {
                let bit = 1 << l.var().index();
                if l.is_positive() {
                    (p | bit, q)
                } else {
                    (p, q | bit)
                }
            })
        })
        .collect()
}

fn sat_by(ms: &[(u32, u32)], x: u32) -> bool {
    ms.iter().all(|&(p, q)| x & p != 0 || !x & q != 0)
}

fn oracle_sat(f: &Formula) -> bool {
    let ms = masks(f);
    (0..1u32 << f.num_vars()).any(|x| sat_by(&ms, x))
}

fn bits(a: &Assignment) -> u32 {
    a.values().iter().enumerate().fold(0, |acc, (i, &b)| acc | (b as u32) << i)
}

fn oracle_ball_sat(f: &Formula, alpha: &Assignment, r: usize) -> bool {
    let ms = masks(f);
    let a = bits(alpha);
    (0..1u32 << f.num_vars()).any(|x| (x ^ a).count_ones() as usize <= r && sat_by(&ms, x))
}

fn oracle_csp_sat(f: &CspFormula) -> bool {
    let d = f.domain_size();
    let n = f.num_vars();
    let total = (d as u64).pow(n as u32);
    (0..total).any(|mut code| {
        let mut vals = vec![0u32; n];
        for v in vals.iter_mut() {
            *v = (code % d as u64) as u32 + 1;
            code /= d as u64;
        }
        f.constraints().iter().all(|c| c.literals().iter().any(|l| vals[l.var - 1] != l.value))
    })
}

fn hamming(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Independent coverage check over all `q^t` words.
fn oracle_covers(code: &CoveringCode) -> bool {
    let (q, t, r) = (code.q() as usize, code.t(), code.radius());
    let total = q.pow(t as u32);
    (0..total).all(|mut x| {
        let mut w = vec![0u8; t];
        for s in w.iter_mut() {
            *s = (x % q) as u8 + 1;
            x /= q;
        }
        code.words().iter().any(|c| hamming(c.symbols(), &w) <= r)
    })
}

fn oracle_box_covers(cover: &BoxCover) -> bool {
    let d = cover.domain_size();
    let n = cover.num_vars();
    let boxes: Vec<_> = cover.iter().collect();
    (0..(d as u64).pow(n as u32)).all(|mut x| {
        let mut vals = vec![0u32; n];
        for v in vals.iter_mut() {
            *v = (x % d as u64) as u32 + 1;
            x /= d as u64;
        }
        boxes.iter().any(|b| b.pairs().iter().zip(&vals).all(|(&(lo, hi), &v)| v == lo || v == hi))
    })
}

fn binom(n: u64, k: u64) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `⌈t·ln q·q^t / (C(t,r)(q−1)^r)⌉` evaluated directly.
fn bound_formula(q: u64, t: u64, r: u64) -> u64 {
    let x = t as f64 * (q as f64).ln() * (q as f64).powi(t as i32) / (binom(t, r) * ((q - 1) as f64).powi(r as i32));
    x.ceil() as u64
}

// ---- corpora ----

fn subsets(pool: &[Vec<i64>], max: usize, mut visit: impl FnMut(&[&[i64]])) {
    fn go<'a>(pool: &'a [Vec<i64>], start: usize, max: usize, cur: &mut Vec<&'a [i64]>, visit: &mut dyn FnMut(&[&[i64]])) {
        visit(cur);
        if cur.len() == max {
            return;
        }
        for i in start..pool.len() {
            cur.push(&pool[i]);
            go(pool, i + 1, max, cur, visit);
            cur.pop();
        }
    }
    go(pool, 0, max, &mut Vec::new(), &mut visit);
}

/// Every non-empty clause over `n ≤ 3` variables.
fn full_pool(n: usize) -> Vec<Vec<i64>> {
    (1..3usize.pow(n as u32))
        .map(|mut x| {
            let mut c = Vec::new();
            for v in 1..=n as i64 {
                match x % 3 {
                    1 => c.push(v),
                    2 => c.push(-v),
                    _ => {}
                }
                x /= 3;
            }
            c
        })
        .collect()
}

/// Twenty clauses over four variables: all sign patterns on (1,2,3) and on
/// (2,3,4), two units and two binaries.
fn pool_four() -> Vec<Vec<i64>> {
    let mut pool = Vec::new();
    for vars in [[1i64, 2, 3], [2, 3, 4]] {
        for m in 0..8 {
            pool.push(vars.iter().enumerate().map(|(i, &v)| if m >> i & 1 == 1 { -v } else { v }).collect());
        }
    }
    pool.extend([vec![1], vec![-4], vec![1, -4], vec![-1, 4]]);
    pool
}

fn random_formula(rng: &mut ChaCha8Rng, n: usize, m: usize, widths: &[usize]) -> Formula {
    let clauses = (0..m)
        .map(|_| {
            let w = widths[rng.random_range(0..widths.len())].min(n);
            let lits = sample(rng, n, w)
                .into_iter()
                .map(|v| Literal::new(Var::from_index(v), rng.random_bool(0.5)))
                .collect();
            Clause::new(lits).unwrap()
        })
        .collect();
    Formula::new(n, clauses).unwrap()
}

// ---- criteria ----

fn check_witness(f: &Formula, status: Status, witness: Option<&Assignment>) -> Result<(), String> {
    match (status, witness) {
        (Status::Sat, Some(w)) => ensure(f.evaluate(w), || "witness does not satisfy".into()),
        (Status::Sat, None) => Err("sat without witness".into()),
        (_, Some(_)) => Err("witness on a non-sat result".into()),
        _ => Ok(()),
    }
}

#[derive(Default)]
struct Tally {
    total: u64,
    sats: u64,
    covering_runs: u64,
    err: Option<String>,
}

impl Tally {
    fn run(&mut self, f: &Formula, solver: &mut Solver) {
        if self.err.is_none() {
            if let Err(e) = self.check(f, solver) {
                self.err = Some(e);
            }
        }
    }

    fn check(&mut self, f: &Formula, solver: &mut Solver) -> Result<(), String> {
        let expected = oracle_sat(f);
        let r = solver.solve_deterministic(f).map_err(|e| e.to_string())?;
        self.total += 1;
        self.sats += expected as u64;
        self.covering_runs += (r.engine == derandsat::Mode::Deterministic) as u64;
        ensure((r.status == Status::Sat) == expected && r.status != Status::Unknown, || {
            format!("status {:?}, oracle sat={expected} on {:?}", r.status, f)
        })?;
        check_witness(f, r.status, r.witness.as_ref())?;
        ensure(r.codewords_tried <= r.outer_code_size.max(1), || {
            "more codewords tried than the outer code holds".into()
        })
    }
}

fn c1_sat_oracle() -> Check {
    let start = Instant::now();
    let mut solver = Solver::new(SolverConfig::default());
    let mut tally = Tally::default();
    for n in 1..=3 {
        subsets(&full_pool(n), 6, |cs| tally.run(&Formula::from_dimacs_clauses(n, cs), &mut solver));
    }
    subsets(&pool_four(), 6, |cs| tally.run(&Formula::from_dimacs_clauses(4, cs), &mut solver));
    let exhaustive = tally.total;
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0001);
    for _ in 0..2000 {
        let n = rng.random_range(3..=12);
        let m = rng.random_range(n..=6 * n);
        let f = random_formula(&mut rng, n, m, &[3, 3, 3, 2]);
        tally.run(&f, &mut solver);
    }
    if let Some(e) = tally.err {
        return Err(e);
    }
    let (total, sats, det) = (tally.total, tally.sats, tally.covering_runs);
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(300), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{total} instances ({exhaustive} exhaustive, {sats} sat, {det} through the covering-code search) agree with brute force in {:.1}s",
        elapsed.as_secs_f64()
    ))
}

fn csp(n: usize, cs: &[Vec<(usize, u32)>]) -> CspFormula {
    CspFormula::new(3, n, cs).unwrap()
}

fn c2_csp_oracle() -> Check {
    let start = Instant::now();
    let mut solver = Solver::new(SolverConfig::default());
    let mut corpus: Vec<CspFormula> = Vec::new();
    for n in 1..=3usize {
        // all constraints over n variables, width ≤ 3
        let mut pool: Vec<Vec<(usize, u32)>> = Vec::new();
        for mut x in 1..4usize.pow(n as u32) {
            let mut c = Vec::new();
            for v in 1..=n {
                if x % 4 > 0 {
                    c.push((v, (x % 4) as u32));
                }
                x /= 4;
            }
            pool.push(c);
        }
        let depth = if n == 3 { 3 } else { 4 };
        let mut pick = Vec::new();
        fn go(pool: &[Vec<(usize, u32)>], start: usize, depth: usize, pick: &mut Vec<Vec<(usize, u32)>>, n: usize, out: &mut Vec<CspFormula>) {
            out.push(csp(n, pick));
            if pick.len() == depth {
                return;
            }
            for i in start..pool.len() {
                pick.push(pool[i].clone());
                go(pool, i + 1, depth, pick, n, out);
                pick.pop();
            }
        }
        go(&pool, 0, depth, &mut pick, n, &mut corpus);
    }
    let pool4: Vec<Vec<(usize, u32)>> = {
        let mut p: Vec<Vec<(usize, u32)>> = Vec::new();
        for vars in [[1usize, 2, 3], [2, 3, 4]] {
            for c in 1..=3 {
                p.push(vars.iter().map(|&v| (v, c)).collect());
            }
        }
        p.extend([vec![(1, 1)], vec![(4, 3)], vec![(1, 2), (4, 2)], vec![(2, 3), (3, 1)]]);
        p
    };
    let mut pick = Vec::new();
    fn go4(pool: &[Vec<(usize, u32)>], start: usize, pick: &mut Vec<Vec<(usize, u32)>>, out: &mut Vec<CspFormula>) {
        out.push(csp(4, pick));
        if pick.len() == 4 {
            return;
        }
        for i in start..pool.len() {
            pick.push(pool[i].clone());
            go4(pool, i + 1, pick, out);
            pick.pop();
        }
    }
    go4(&pool4, 0, &mut pick, &mut corpus);
    // every tuple of (x1,x2,x3) forbidden: unsatisfiable at width 3
    let all: Vec<Vec<(usize, u32)>> = (0..27u32).map(|x| vec![(1, x % 3 + 1), (2, x / 3 % 3 + 1), (3, x / 9 + 1)]).collect();
    corpus.push(csp(4, &all));
    // four pigeons, three holes
    let mut ph = Vec::new();
    for a in 1..=4 {
        for b in a + 1..=4 {
            for c in 1..=3 {
                ph.push(vec![(a, c), (b, c)]);
            }
        }
    }
    corpus.push(csp(4, &ph));
    let exhaustive = corpus.len();

    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0002);
    for _ in 0..500 {
        let n = rng.random_range(3..=8);
        let m = rng.random_range(2 * n..=8 * n);
        let cs: Vec<Vec<(usize, u32)>> = (0..m)
            .map(|_| {
                let w = [1, 2, 2, 2, 3, 3][rng.random_range(0..6)].min(n);
                sample(&mut rng, n, w).into_iter().map(|v| (v + 1, rng.random_range(1..=3))).collect()
            })
            .collect();
        corpus.push(csp(n, &cs));
    }

    let (mut sats, mut random_sats, mut reduced) = (0, 0, 0);
    for (idx, f) in corpus.iter().enumerate() {
        let expected = oracle_csp_sat(f);
        let r = solve_csp_with(f, &mut solver).map_err(|e| e.to_string())?;
        sats += expected as usize;
        random_sats += (idx >= exhaustive && expected) as usize;
        reduced += (r.engine != derandsat::Mode::Brute) as usize;
        ensure((r.status == Status::Sat) == expected && r.status != Status::Unknown, || {
            format!("status {:?}, oracle sat={expected} on {:?}", r.status, f)
        })?;
        if let Some(w) = &r.witness {
            ensure(f.evaluate(w) == Ok(true), || format!("bad witness {w:?}"))?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(300), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} instances ({exhaustive} exhaustive, {sats} sat, {random_sats}/500 random sat, {reduced} solved through 2-boxes) agree with brute force in {:.1}s",
        corpus.len(),
        elapsed.as_secs_f64()
    ))
}

fn c3_code_bounds() -> Check {
    let cases = [(3u8, 6usize, 2usize, 81u64), (2, 4, 1, 12), (2, 6, 2, 18), (3, 3, 1, 15), (4, 4, 1, 119)];
    let mut parts = Vec::new();
    for (q, t, r, frozen) in cases {
        let bound = bound_formula(q as u64, t as u64, r as u64);
        ensure(bound == frozen, || format!("formula gives {bound} for ({q},{t},{r}), expected {frozen}"))?;
        ensure(code_size_bound(q, t, r) == Ok(bound), || format!("library bound differs at ({q},{t},{r})"))?;
        let code = greedy_code(q, t, r).map_err(|e| e.to_string())?;
        ensure(oracle_covers(&code), || format!("greedy ({q},{t},{r}) does not cover"))?;
        ensure(code.len() as u64 <= bound, || format!("greedy ({q},{t},{r}) has {} > {bound}", code.len()))?;
        parts.push(format!("({q},{t},{r}):{}≤{bound}", code.len()));
    }
    Ok(parts.join(" "))
}

fn c4_random_codes() -> Check {
    let mut ok = 0;
    for seed in 0..100 {
        if let Ok(code) = random_code(3, 6, 2, 81, seed) {
            ensure(oracle_covers(&code), || format!("seed {seed}: accepted code does not cover"))?;
            ok += 1;
        }
    }
    ensure(ok >= 95, || format!("{ok}/100 seeds succeeded"))?;
    Ok(format!("{ok}/100 seeds produced a cover"))
}

fn c5_promise() -> Check {
    let fast3 = FastParams::greedy(3, 3).map_err(|e| e.to_string())?;
    let fast6 = FastParams::greedy(3, 6).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0005);
    let (mut promised, mut checks) = (0, 0);
    for i in 0..1000 {
        let n = rng.random_range(3..=10);
        let m = rng.random_range(n..=5 * n);
        let flips = rng.random_range(0..=n);
        let inst = gen_planted(3, n, m, flips, rng.random());
        // query radius independent of the planted distance, so some balls are empty
        let r = if i % 2 == 0 { flips } else { rng.random_range(0..=n) };
        let has = oracle_ball_sat(&inst.formula, &inst.start, r);
        promised += has as usize;
        let outs = [
            ("searchball", searchball(&inst.formula, &inst.start, r)),
            ("fast t=3", searchball_fast(&inst.formula, &inst.start, r, &fast3)),
            ("fast t=6", searchball_fast(&inst.formula, &inst.start, r, &fast6)),
        ];
        for (name, o) in outs {
            checks += 1;
            if let Some(w) = &o.witness {
                ensure(inst.formula.evaluate(w), || format!("{name}: witness does not satisfy"))?;
            } else {
                ensure(!has, || format!("{name} missed a solution within radius {r} (instance {i})"))?;
            }
        }
    }
    Ok(format!("{promised} instances with a solution in the ball, {checks} engine runs, 0 misses"))
}

fn c6_separation() -> Check {
    let plain = run_scaling(&ScalingConfig::new(Engine::Searchball, 3, 6, 4, 14, 50, 6)).map_err(|e| e.to_string())?;
    let fast = run_scaling(&ScalingConfig::new(Engine::SearchballFast, 3, 6, 4, 14, 50, 6)).map_err(|e| e.to_string())?;
    for rec in plain.iter().chain(&fast) {
        ensure(rec.outcome == Outcome::Found, || format!("{:?} missed at r={}", rec.engine, rec.r))?;
        ensure(rec.leaves <= rec.nodes, || "leaves exceed nodes".into())?;
    }
    for rec in &plain {
        ensure(rec.leaves <= 3u64.pow(rec.r as u32), || format!("searchball leaves {} > 3^{}", rec.leaves, rec.r))?;
    }
    for rec in &fast {
        let env = (rec.code_size as f64).powi(rec.r.div_ceil(2) as i32);
        ensure(rec.branch_leaves as f64 <= env, || format!("fast leaves {} > |C|^⌈r/2⌉", rec.branch_leaves))?;
    }
    let fp = fit_base(&plain, |r| r.leaves).unwrap();
    let ff = fit_base(&fast, |r| r.leaves).unwrap();
    let line = format!(
        "searchball base {:.3} [{:.3},{:.3}], searchball_fast base {:.3} [{:.3},{:.3}]",
        fp.base, fp.low, fp.high, ff.base, ff.low, ff.high
    );
    ensure(ff.midpoint() < fp.midpoint() && ff.base < fp.base, || format!("no separation: {line}"))?;
    ensure(fp.midpoint() <= 3.05, || format!("searchball base too large: {line}"))?;
    Ok(line)
}

fn c7_walk_rate() -> Check {
    let start = Instant::now();
    let n = 10;
    let (mut hits, mut trials) = (0u64, 0u64);
    for seed in 0..200 {
        let f = gen_planted(3, n, 43, 0, 0xACCE_0700 + seed).formula;
        let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0007 ^ seed);
        for _ in 0..500 {
            let alpha = Assignment::new((0..n).map(|_| rng.random_bool(0.5)).collect());
            let o = schoening_walk_with_rng(&f, &alpha, 3 * n, &mut rng);
            if let Some(w) = &o.witness {
                ensure(f.evaluate(w), || "walk returned a non-witness".into())?;
                hits += 1;
            }
            trials += 1;
        }
    }
    let rate = hits as f64 / trials as f64;
    let floor = 0.8 * 0.75f64.powi(n as i32);
    ensure(rate >= floor, || format!("rate {rate:.4} < {floor:.4}"))?;
    ensure(start.elapsed() < Duration::from_secs(600), || "over budget".into())?;
    Ok(format!("pooled rate {rate:.4} ≥ {floor:.4} over {trials} walks"))
}

fn c8_distance_progress() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0008);
    let k = 3;
    let mut slack = i64::MAX;
    for i in 0..100 {
        let t: usize = if i % 2 == 0 { 3 } else { 6 };
        let radius = t.div_ceil(k);
        let code = greedy_code(k as u8, t, radius).map_err(|e| e.to_string())?;
        let n = 30;
        let alpha = Assignment::new((0..n).map(|_| rng.random_bool(0.5)).collect());
        let vars = sample(&mut rng, n, t * k).into_vec();
        let mut target = alpha.clone();
        let mut clauses = Vec::new();
        let mut w_star = Vec::new();
        for block in vars.chunks(k) {
            // falsified by alpha
            let lits: Vec<Literal> = block.iter().map(|&v| Literal::new(Var::from_index(v), !alpha.values()[v])).collect();
            // target disagrees with alpha on a non-empty subset of the clause
            let mask = rng.random_range(1..1u32 << k);
            let sat: Vec<usize> = (0..k).filter(|j| mask >> j & 1 == 1).collect();
            for &j in &sat {
                target.flip(lits[j].var());
            }
            w_star.push(sat[rng.random_range(0..sat.len())] as u8 + 1);
            clauses.push(Clause::new(lits).unwrap());
        }
        for v in 0..n {
            if !vars.contains(&v) && rng.random_bool(0.3) {
                target.flip(Var::from_index(v));
            }
        }
        let w_best = code
            .words()
            .iter()
            .min_by_key(|w| hamming(w.symbols(), &w_star))
            .unwrap();
        let refs: Vec<&Clause> = clauses.iter().collect();
        let moved = apply_codeword(&alpha, &refs, w_best).map_err(|e| e.to_string())?;
        let dist = |a: &Assignment| a.values().iter().zip(target.values()).filter(|(x, y)| x != y).count() as i64;
        let gain = dist(&alpha) - dist(&moved);
        let need = (t - 2 * radius) as i64;
        ensure(gain >= need, || format!("triple {i}: distance dropped by {gain}, need {need}"))?;
        slack = slack.min(gain - need);
    }
    Ok(format!("100 triples, every step gained at least t - 2⌈t/k⌉ (minimum slack {slack})"))
}

fn c9_box_covers() -> Check {
    let odd = two_box_cover(3, 4, 4).map_err(|e| e.to_string())?;
    let bound = (4.0 * 3f64.ln() * 1.5f64.powi(4)).ceil() as u128;
    ensure(bound == 23, || format!("bound evaluates to {bound}"))?;
    ensure(oracle_box_covers(&odd), || "d=3 cover misses a point".into())?;
    ensure(odd.len() <= bound, || format!("{} boxes > {bound}", odd.len()))?;
    let even = two_box_cover(4, 3, 4).map_err(|e| e.to_string())?;
    ensure(even.len() == 8, || format!("even cover has {} boxes", even.len()))?;
    ensure(oracle_box_covers(&even), || "d=4 cover misses a point".into())?;
    Ok(format!("d=3,b=4: {} ≤ {bound} boxes; d=4,n=3: 8 boxes; both cover", odd.len()))
}

// ---- criterion 10: fuzzing ----

fn noise(rng: &mut ChaCha8Rng) -> &'static str {
    [" ", "  ", "\t", " \t "][rng.random_range(0..4)]
}

fn fuzz_dimacs(rng: &mut ChaCha8Rng) -> (String, usize, usize) {
    let n = rng.random_range(1..=12);
    let m = rng.random_range(0..=10);
    let mut s = String::new();
    if rng.random_bool(0.5) {
        s.push_str("c generated\n");
    }
    s.push_str(&format!("p{}cnf{}{n}{}{m}\n", noise(rng), noise(rng), noise(rng)));
    for _ in 0..m {
        let w = rng.random_range(1..=4.min(n));
        for _ in 0..w {
            let v = rng.random_range(1..=n) as i64;
            s.push_str(&format!("{}{}", if rng.random_bool(0.5) { v } else { -v }, noise(rng)));
            if rng.random_bool(0.1) {
                s.push('\n');
            }
        }
        s.push_str("0\n");
        if rng.random_bool(0.1) {
            s.push_str("c mid\n");
        }
    }
    (s, n, m)
}

fn fuzz_csp(rng: &mut ChaCha8Rng) -> (String, u32, usize, usize) {
    let d = rng.random_range(2..=6);
    let n = rng.random_range(1..=8);
    let m = rng.random_range(0..=8);
    let mut s = format!("c x\np csp {d}{}{n} {m}\n", noise(rng));
    for _ in 0..m {
        for _ in 0..rng.random_range(1..=3) {
            s.push_str(&format!("{} {}{}", rng.random_range(1..=n), rng.random_range(1..=d), noise(rng)));
        }
        s.push_str("0\n");
    }
    (s, d, n, m)
}

fn fuzz_code(rng: &mut ChaCha8Rng) -> (String, u8, usize) {
    let q = rng.random_range(2..=5u8);
    let t = rng.random_range(1..=5);
    let r = rng.random_range(0..=t);
    let space = (q as usize).pow(t as u32);
    let size = rng.random_range(1..=space.min(12));
    let picks = sample(rng, space, size);
    let mut s = format!("{q}{}{t} {r} {size}\n", noise(rng));
    for mut x in picks {
        let mut w = Vec::new();
        for _ in 0..t {
            w.push(((x % q as usize) + 1).to_string());
            x /= q as usize;
        }
        s.push_str(&w.join(noise(rng)));
        s.push('\n');
    }
    (s, q, t)
}

fn roundtrip<T: PartialEq + std::fmt::Debug, E: std::fmt::Debug>(
    text: &str,
    parse: impl Fn(&[u8]) -> Result<T, E>,
    write: impl Fn(&T) -> String,
) -> Result<(), String> {
    let a = parse(text.as_bytes()).map_err(|e| format!("valid document rejected: {e:?}\n{text}"))?;
    let canon = write(&a);
    let b = parse(canon.as_bytes()).map_err(|e| format!("canonical form rejected: {e:?}"))?;
    ensure(a == b, || "value changed across round trip".into())?;
    ensure(write(&b) == canon, || "canonical form not stable".into())
}

fn no_panic<T, E>(bytes: &[u8], parse: impl Fn(&[u8]) -> Result<T, E>) -> Result<bool, String> {
    catch_unwind(AssertUnwindSafe(|| parse(bytes).is_err())).map_err(|_| format!("parser panicked on {bytes:?}"))
}

fn c10_fuzz() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0010);
    let prev_hook = std::panic::take_hook();
    std::panic::set_hook(Box::new(|_| {}));
    let result = (|| -> Result<String, String> {
        let mut structured = 0;
        for _ in 0..1000 {
            let (doc, n, _) = fuzz_dimacs(&mut rng);
            roundtrip(&doc, parse_dimacs, write_dimacs)?;
            let bad = match rng.random_range(0..5) {
                0 => format!("{doc}{} 0\n", n + 1),
                1 => format!("{doc}1 x 0\n"),
                2 => format!("{doc}1 2\n"),
                3 => doc.replace("p", "q"),
                _ => format!("{doc}c \u{e9}\n"),
            };
            ensure(no_panic(bad.as_bytes(), parse_dimacs)?, || format!("accepted invalid DIMACS:\n{bad}"))?;
            structured += 1;

            let (doc, d, n, _) = fuzz_csp(&mut rng);
            roundtrip(&doc, parse_csp, write_csp)?;
            let bad = match rng.random_range(0..5) {
                0 => format!("{doc}1 {} 0\n", d + 1),
                1 => format!("{doc}{} 1 0\n", n + 1),
                2 => format!("{doc}1 1 2 0\n"),
                3 => doc.replace("p csp", "p cnf"),
                _ => format!("{doc}1 1\u{ff} 0\n"),
            };
            ensure(no_panic(bad.as_bytes(), parse_csp)?, || format!("accepted invalid CSP:\n{bad}"))?;
            structured += 1;

            let (doc, q, t) = fuzz_code(&mut rng);
            roundtrip(&doc, read_code, write_code)?;
            let mut lines: Vec<String> = doc.lines().map(str::to_string).collect();
            let bad = match rng.random_range(0..4) {
                0 => {
                    lines[1] = format!("{} {}", q + 1, vec!["1"; t - 1].join(" ")).trim().to_string();
                    lines.join("\n") + "\n"
                }
                1 => {
                    lines[1].push_str(" 1");
                    lines.join("\n") + "\n"
                }
                2 => {
                    let first = lines[1].clone();
                    let hdr: Vec<usize> = lines[0].split_whitespace().map(|x| x.parse().unwrap()).collect();
                    lines[0] = format!("{} {} {} {}", hdr[0], hdr[1], hdr[2], hdr[3] + 1);
                    lines.push(first);
                    lines.join("\n") + "\n"
                }
                _ => {
                    let hdr: Vec<usize> = lines[0].split_whitespace().map(|x| x.parse().unwrap()).collect();
                    lines[0] = format!("{} {} {} {}", hdr[0], hdr[1], hdr[1] + 1, hdr[3]);
                    lines.join("\n") + "\n"
                }
            };
            ensure(no_panic(bad.as_bytes(), read_code)?, || format!("accepted invalid code file:\n{bad}"))?;
            structured += 1;
        }
        // unstructured garbage: anything but a panic is fine
        for _ in 0..1000 {
            let len = rng.random_range(0..120);
            let mut bytes: Vec<u8> = (0..len).map(|_| rng.random()).collect();
            if rng.random_bool(0.5) {
                let (doc, _, _) = fuzz_dimacs(&mut rng);
                bytes = doc.into_bytes();
                for _ in 0..rng.random_range(1..4) {
                    let i = rng.random_range(0..bytes.len());
                    bytes[i] = rng.random();
                }
            }
            no_panic(&bytes, parse_dimacs)?;
            no_panic(&bytes, parse_csp)?;
            no_panic(&bytes, read_code)?;
        }
        Ok(format!("3000 valid documents round-trip, {structured} invalid ones rejected, 3000 garbage streams without a crash"))
    })();
    std::panic::set_hook(prev_hook);
    result
}

fn main() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("oracle agreement, SAT", c1_sat_oracle),
        ("oracle agreement, CSP", c2_csp_oracle),
        ("covering-code size bounds", c3_code_bounds),
        ("random covering codes", c4_random_codes),
        ("promise completeness", c5_promise),
        ("leaf-count separation", c6_separation),
        ("random-walk success rate", c7_walk_rate),
        ("distance progress", c8_distance_progress),
        ("2-box covers", c9_box_covers),
        ("format round trips", c10_fuzz),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = catch_unwind(f).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg} ({secs:.1}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {msg} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
