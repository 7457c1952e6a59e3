//! Command-line front end.
//!
//! Exit codes: 10 satisfiable, 20 unsatisfiable, 30 unknown, 0 success of
//! a non-solving command, 1 usage, parse or I/O error, 2 resource cap.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bench::{fit_base, run_scaling, write_csv, Engine, ScalingConfig};
use crate::covering::{code_size_bound, greedy_code, random_code, CodeCache};
use crate::error::CodeError;
use crate::csp::{restrict_to_box, solve_csp_with, two_box_cover};
use crate::error::SolveError;
use crate::formats::code::{read_code, write_code};
use crate::formats::csp::parse_csp;
use crate::formats::dimacs::{parse_dimacs, write_dimacs};
use crate::formats::{sniff_kind, InputKind};
use crate::solver::{schoening_base, Mode, Solver, SolverConfig, Status};

pub const EXIT_OK: i32 = 0;
pub const EXIT_SAT: i32 = 10;
pub const EXIT_UNSAT: i32 = 20;
pub const EXIT_UNKNOWN: i32 = 30;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CAP: i32 = 2;

/// Version of the `--stats` JSON layout.
pub const STATS_SCHEMA: u32 = 1;

/// Largest number of files `reduce` will write.
pub const REDUCE_FILE_CAP: u128 = 1_000_000;

#[derive(Debug, Parser)]
#[command(name = "derandsat", version, about = "Deterministic local search for k-SAT and (d,<=k)-CSP")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a DIMACS CNF or `p csp` file.
    Solve(SolveArgs),
    /// Build a q-ary covering code and print it in code-file format.
    Gencode(GencodeArgs),
    /// Check a code file's covering radius exhaustively.
    Verifycode {
        file: PathBuf,
    },
    /// Write one DIMACS file per 2-box of a CSP plus a manifest.
    Reduce(ReduceArgs),
    /// Paired scaling run over planted instances.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Det,
    Rand,
    Brute,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Det => Mode::Deterministic,
            ModeArg::Rand => Mode::Randomized,
            ModeArg::Brute => Mode::Brute,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Cnf,
    Csp,
}

#[derive(Debug, clap::Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "det")]
    pub mode: ModeArg,
    /// Inner code block size (default 6 for k=3, 8 for k=4).
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    /// Outer Boolean code block length.
    #[arg(long, default_value_t = 10)]
    pub block_len: usize,
    /// Outer radius fraction (default 1/(k+epsilon)).
    #[arg(long)]
    pub rho: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Randomized mode: number of trials.
    #[arg(long)]
    pub trial_cap: Option<u64>,
    /// Block length of the 2-box cover for odd CSP domains.
    #[arg(long, default_value_t = 4)]
    pub box_block: usize,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Override header sniffing.
    #[arg(long, value_enum)]
    pub kind: Option<KindArg>,
    /// Write a JSON report here.
    #[arg(long)]
    pub stats: Option<PathBuf>,
    /// Directory for cached covering codes.
    #[arg(long)]
    pub code_cache: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Greedy,
    Random,
}

#[derive(Debug, clap::Args)]
pub struct GencodeArgs {
    #[arg(long)]
    pub q: u8,
    #[arg(long)]
    pub t: usize,
    #[arg(long)]
    pub radius: usize,
    #[arg(long, value_enum, default_value = "greedy")]
    pub method: MethodArg,
    /// Random method: number of sampled words (default: the size bound).
    #[arg(long)]
    pub size: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct ReduceArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub outdir: PathBuf,
    #[arg(long, default_value_t = 4)]
    pub box_block: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Searchball,
    SearchballFast,
    SchoeningWalk,
    /// `searchball` and `searchball_fast` on the same instances.
    Paired,
}

#[derive(Debug, clap::Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    #[arg(long, default_value_t = 6)]
    pub t: usize,
    /// Radius range `LO:HI`, inclusive.
    #[arg(long, default_value = "4:14", value_parser = parse_range)]
    pub r: (usize, usize),
    #[arg(long, default_value_t = 50)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "paired")]
    pub engine: EngineArg,
    /// Variables per instance (default max(2·HI, 10)).
    #[arg(long)]
    pub n: Option<usize>,
    /// Clauses per variable.
    #[arg(long, default_value_t = 4.0)]
    pub density: f64,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected LO:HI, got {s:?}"))?;
    let lo: usize = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let hi: usize = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}:{hi}"));
    }
    Ok((lo, hi))
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Failure {
        Failure {
            code: if e.is_resource_cap() { EXIT_CAP } else { EXIT_USAGE },
            message: e.to_string(),
        }
    }
}

impl From<CodeError> for Failure {
    fn from(e: CodeError) -> Failure {
        SolveError::from(e).into()
    }
}

impl From<crate::error::CspError> for Failure {
    fn from(e: crate::error::CspError) -> Failure {
        SolveError::from(e).into()
    }
}

fn read_input(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn write_output(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

/// Parses `args` (program name first) and runs the command, writing to
/// `out`. Returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

/// [`run_with`] on standard output.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    run_with(args, &mut lock)
}

fn dispatch(cmd: Command, out: &mut dyn std::io::Write) -> Result<i32, Failure> {
    match cmd {
        Command::Solve(a) => solve(a, out),
        Command::Gencode(a) => gencode(a, out),
        Command::Verifycode { file } => verifycode(&file, out),
        Command::Reduce(a) => reduce(a, out),
        Command::Bench(a) => bench(a, out),
    }
}

fn emit(out: &mut dyn std::io::Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::usage(format!("write failed: {e}")))
}

fn status_exit(s: Status) -> i32 {
    match s {
        Status::Sat => EXIT_SAT,
        Status::Unsat => EXIT_UNSAT,
        Status::Unknown => EXIT_UNKNOWN,
    }
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Sat => "sat",
        Status::Unsat => "unsat",
        Status::Unknown => "unknown",
    }
}

fn solve(a: SolveArgs, out: &mut dyn std::io::Write) -> Result<i32, Failure> {
    let cfg = SolverConfig {
        mode: a.mode.into(),
        t: a.t,
        epsilon: a.epsilon,
        block_len: a.block_len,
        rho: a.rho,
        seed: a.seed,
        trial_cap: a.trial_cap,
        jobs: a.jobs,
        box_block_len: a.box_block,
        ..SolverConfig::default()
    };
    cfg.validate()?;
    let bytes = read_input(&a.input)?;
    let kind = match a.kind {
        Some(KindArg::Cnf) => InputKind::Cnf,
        Some(KindArg::Csp) => InputKind::Csp,
        None => sniff_kind(&bytes).ok_or_else(|| Failure::usage("no \"p cnf\" or \"p csp\" header found"))?,
    };
    let cache = match &a.code_cache {
        Some(dir) => CodeCache::with_dir(dir),
        None => CodeCache::in_memory(),
    };
    let mut solver = Solver::with_cache(cfg.clone(), cache);

    let (status, report) = match kind {
        InputKind::Cnf => {
            let f = parse_dimacs(&bytes).map_err(|e| Failure::usage(e.to_string()))?;
            let r = solver.solve(&f)?;
            let mut text = format!("s {}\n", r.status);
            if let Some(w) = &r.witness {
                assert!(f.evaluate(w), "witness must satisfy the input");
                let lits: Vec<String> = w.to_dimacs().iter().map(i64::to_string).collect();
                text.push_str(&format!("v {}{}0\n", lits.join(" "), if lits.is_empty() { "" } else { " " }));
            }
            emit(out, &text)?;
            let k = f.max_width();
            let report = json!({
                "schema": STATS_SCHEMA,
                "input_kind": "cnf",
                "mode": cfg.mode,
                "engine": r.engine,
                "status": status_name(r.status),
                "num_vars": f.num_vars(),
                "num_clauses": f.num_clauses(),
                "max_width": k,
                "base_bound": schoening_base(k),
                "search": r.stats,
                "codewords_tried": r.codewords_tried,
                "outer_code_size": r.outer_code_size,
                "outer_radius": r.outer_radius,
                "trials": r.trials,
                "wall_time_s": r.wall_time.as_secs_f64(),
            });
            (r.status, report)
        }
        InputKind::Csp => {
            let f = parse_csp(&bytes).map_err(|e| Failure::usage(e.to_string()))?;
            let r = solve_csp_with(&f, &mut solver)?;
            let mut text = format!("s {}\n", r.status);
            if let Some(w) = &r.witness {
                assert!(f.evaluate(w)?, "witness must satisfy the input");
                for (i, v) in w.iter().enumerate() {
                    text.push_str(&format!("v x{}={}\n", i + 1, v));
                }
            }
            emit(out, &text)?;
            let report = json!({
                "schema": STATS_SCHEMA,
                "input_kind": "csp",
                "mode": cfg.mode,
                "engine": r.engine,
                "status": status_name(r.status),
                "domain_size": f.domain_size(),
                "num_vars": f.num_vars(),
                "num_clauses": f.constraints().len(),
                "max_width": f.max_width(),
                "search": r.stats,
                "cover_size": r.cover_size.to_string(),
                "boxes_tried": r.boxes_tried,
                "codewords_tried": r.codewords_tried,
                "trials": r.trials,
                "wall_time_s": r.wall_time.as_secs_f64(),
            });
            (r.status, report)
        }
    };
    if let Some(path) = &a.stats {
        let text = serde_json::to_string_pretty(&report).expect("json values serialize") + "\n";
        write_output(path, &text)?;
    }
    Ok(status_exit(status))
}

fn gencode(a: GencodeArgs, out: &mut dyn std::io::Write) -> Result<i32, Failure> {
    let code = match a.method {
        MethodArg::Greedy => greedy_code(a.q, a.t, a.radius)?,
        MethodArg::Random => {
            let size = match a.size {
                Some(s) => s,
                None => code_size_bound(a.q, a.t, a.radius)? as usize,
            };
            random_code(a.q, a.t, a.radius, size, a.seed)?
        }
    };
    let text = write_code(&code);
    match &a.out {
        Some(path) => {
            write_output(path, &text)?;
            log::info!("wrote {} words to {}", code.len(), path.display());
        }
        None => emit(out, &text)?,
    }
    Ok(EXIT_OK)
}

fn verifycode(path: &Path, out: &mut dyn std::io::Write) -> Result<i32, Failure> {
    let bytes = read_input(path)?;
    let mut code = read_code(&bytes).map_err(|e| Failure::usage(e.to_string()))?;
    if code.verify_cover()? {
        emit(
            out,
            &format!(
                "ok: {} words cover {{1..{}}}^{} with radius {}\n",
                code.len(),
                code.q(),
                code.t(),
                code.radius()
            ),
        )?;
        Ok(EXIT_OK)
    } else {
        Err(Failure::usage(format!(
            "{} words do not cover {{1..{}}}^{} with radius {}",
            code.len(),
            code.q(),
            code.t(),
            code.radius()
        )))
    }
}

fn reduce(a: ReduceArgs, out: &mut dyn std::io::Write) -> Result<i32, Failure> {
    let bytes = read_input(&a.input)?;
    let f = parse_csp(&bytes).map_err(|e| Failure::usage(e.to_string()))?;
    let cover = two_box_cover(f.domain_size(), f.num_vars(), a.box_block)?;
    if cover.len() > REDUCE_FILE_CAP {
        return Err(SolveError::TooLarge(format!("{} boxes exceed the file cap {REDUCE_FILE_CAP}", cover.len())).into());
    }
    fs::create_dir_all(&a.outdir).map_err(|e| Failure::usage(format!("{}: {e}", a.outdir.display())))?;
    let mut manifest = String::from("file\tpairs\n");
    for (i, bx) in cover.iter().enumerate() {
        let name = format!("box_{i:06}.cnf");
        write_output(&a.outdir.join(&name), &write_dimacs(&restrict_to_box(&f, &bx)))?;
        let pairs: Vec<String> = bx.pairs().iter().map(|(lo, hi)| format!("{lo},{hi}")).collect();
        manifest.push_str(&format!("{name}\t{}\n", pairs.join(" ")));
    }
    write_output(&a.outdir.join("manifest.tsv"), &manifest)?;
    emit(out, &format!("wrote {} files to {}\n", cover.len(), a.outdir.display()))?;
    Ok(EXIT_OK)
}

fn bench(a: BenchArgs, out: &mut dyn std::io::Write) -> Result<i32, Failure> {
    let engines: &[Engine] = match a.engine {
        EngineArg::Searchball => &[Engine::Searchball],
        EngineArg::SearchballFast => &[Engine::SearchballFast],
        EngineArg::SchoeningWalk => &[Engine::SchoeningWalk],
        EngineArg::Paired => &[Engine::Searchball, Engine::SearchballFast],
    };
    if a.trials == 0 {
        return Err(Failure::usage("trials must be positive"));
    }
    if !(a.density > 0.0 && a.density.is_finite()) {
        return Err(Failure::usage(format!("density {} must be positive", a.density)));
    }
    let mut all = Vec::new();
    for &engine in engines {
        let cfg = ScalingConfig {
            n: a.n,
            density: a.density,
            ..ScalingConfig::new(engine, a.k, a.t, a.r.0, a.r.1, a.trials, a.seed)
        };
        let recs = run_scaling(&cfg)?;
        let found = recs.iter().filter(|r| r.outcome == crate::bench::Outcome::Found).count();
        let line = match fit_base(&recs, |r| r.leaves) {
            Some(fit) => format!(
                "{engine}: base {:.4} (95% {:.4}..{:.4}) over {} radii, {found}/{} found\n",
                fit.base,
                fit.low,
                fit.high,
                fit.points,
                recs.len()
            ),
            None => format!("{engine}: too few radii to fit, {found}/{} found\n", recs.len()),
        };
        emit(out, &line)?;
        all.extend(recs);
    }
    if let Some(path) = &a.csv {
        let file = fs::File::create(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
        let mut w = std::io::BufWriter::new(file);
        write_csv(&all, &mut w).map_err(|e| Failure::usage(e.to_string()))?;
        w.flush().map_err(|e| Failure::usage(e.to_string()))?;
    }
    Ok(EXIT_OK)
}
