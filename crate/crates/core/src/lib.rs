//! Deterministic local search for k-SAT and (d,≤k)-CSP.
//!
//! The library is organized bottom-up:
//!
//! * [`cnf`]: formulas, assignments, restriction and Hamming distance.
//! * [`formats`]: DIMACS CNF, the `p csp` format and covering-code files.
//! * [`covering`]: q-ary covering codes (greedy, random, concatenated).
//! * [`search`]: promise-ball engines (`searchball`, `searchball_fast`, the random walk).
//! * [`solver`]: complete k-SAT solvers built on them, plus brute force.
//! * [`csp`]: 2-box covers and the CSP to k-SAT reduction.
//! * [`bench`]: planted instances and scaling runs.
//! * [`cli`]: the `derandsat` command line.

pub mod bench;
pub mod cli;
pub mod cnf;
pub mod covering;
pub mod csp;
pub mod error;
pub mod formats;
pub mod search;
pub mod solver;

pub use cnf::{Assignment, Clause, Formula, Literal, PartialAssignment, Var};
pub use covering::{CoveringCode, KaryWord};
pub use csp::{CspFormula, TwoBox};
pub use error::{CnfError, CodeError, CspError, ParseError, SolveError};
pub use search::{searchball, searchball_fast, FastParams, SearchOutcome, SearchStats};
pub use solver::{brute_force, solve_deterministic, solve_schoening, Mode, SolveResult, Solver, SolverConfig, Status};
